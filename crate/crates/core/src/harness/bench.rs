//! Benchmark sweeps: approximate against exact values on generated families,
//! with the theoretical `n^theta` / `n^alpha` envelopes alongside.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::dksh::{approx_dksh, BaseOracle, DkshConfig, GreedyBase};
use crate::error::{Error, Result};
use crate::exponents::{alpha, theta};
use crate::gen::{self, GenKind, GenSpec};
use crate::oracle::{binomial, exact_dksh, exact_sukp, OracleBudget};
use crate::rational::{int, ratio, to_f64, Rational};
use crate::sukp::{approx_sukp, SukpConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BenchFamily {
    DkshUniform,
    DkshPlanted,
    SukpRandom,
    SukpCorrelated,
    SukpEdgeFree,
}

impl BenchFamily {
    pub const ALL: [BenchFamily; 5] = [
        BenchFamily::DkshUniform,
        BenchFamily::DkshPlanted,
        BenchFamily::SukpRandom,
        BenchFamily::SukpCorrelated,
        BenchFamily::SukpEdgeFree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchFamily::DkshUniform => "dksh-uniform",
            BenchFamily::DkshPlanted => "dksh-planted",
            BenchFamily::SukpRandom => "sukp-random",
            BenchFamily::SukpCorrelated => "sukp-correlated",
            BenchFamily::SukpEdgeFree => "sukp-edge-free",
        }
    }

    fn is_dksh(self) -> bool {
        matches!(self, BenchFamily::DkshUniform | BenchFamily::DkshPlanted)
    }
}

impl fmt::Display for BenchFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BenchFamily::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| {
            let names: Vec<&str> = BenchFamily::ALL.iter().map(|f| f.name()).collect();
            Error::Domain(format!("unknown family {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

#[derive(Clone)]
pub struct BenchOptions {
    pub family: BenchFamily,
    pub n_values: Vec<usize>,
    pub per_n: usize,
    /// Edge size (largest edge size for knapsack families).
    pub m: usize,
    /// Cardinality budget; `max(m, n/2)` when absent.
    pub k: Option<usize>,
    pub seed: u64,
    pub epsilon: Rational,
    pub base: Arc<dyn BaseOracle>,
    /// Compute exact optima (rows whose oracle refuses keep `exact: null`).
    pub exact: bool,
    /// Record wall-clock times. Off by default so that output is reproducible.
    pub timings: bool,
    pub oracle_budget: OracleBudget,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            family: BenchFamily::DkshUniform,
            n_values: vec![8, 10, 12],
            per_n: 3,
            m: 3,
            k: None,
            seed: 0,
            epsilon: ratio(1, 10),
            base: Arc::new(GreedyBase),
            exact: true,
            timings: false,
            oracle_budget: OracleBudget::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub family: BenchFamily,
    pub n: usize,
    pub m: usize,
    /// `k` for densest-subhypergraph rows, the budget for knapsack rows.
    pub k_or_budget: String,
    pub seed: u64,
    pub exact: Option<String>,
    pub approx: String,
    /// `exact / approx`; `"inf"` when the answer is zero but the optimum is not.
    pub ratio: Option<String>,
    pub envelope_theta: Option<f64>,
    pub envelope_alpha: Option<f64>,
    /// Planted rows: whether the value reaches `core / (m k^(m-1))`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub planted_floor_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

fn envelope(n: usize, e: Result<Rational>) -> Option<f64> {
    e.ok().map(|e| (n as f64).powf(to_f64(&e)))
}

fn ratio_string(exact: &Rational, approx: &Rational) -> String {
    if approx.is_zero() {
        if exact.is_zero() { "1".into() } else { "inf".into() }
    } else {
        (exact / approx).to_string()
    }
}

fn oracle_or_none(r: Result<crate::instance::Solution>) -> Result<Option<Rational>> {
    match r {
        Ok(s) => Ok(Some(s.value)),
        Err(Error::OracleRefused(why)) => {
            log::info!("bench: exact value skipped: {why}");
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn bench_one(opts: &BenchOptions, n: usize, seed: u64) -> Result<BenchRow> {
    let m = opts.m;
    let start = Instant::now();
    let (k_or_budget, exact, approx, floor_ok) = if opts.family.is_dksh() {
        let k = opts.k.unwrap_or((n / 2).max(m)).min(n);
        let cfg = DkshConfig { epsilon: opts.epsilon.clone(), seed, ..DkshConfig::default() }.with_base(opts.base.clone());
        let (g, core) = match opts.family {
            BenchFamily::DkshPlanted => {
                let mut spec = GenSpec::new(GenKind::PlantedDense, n, m, seed);
                spec.core_size = Some(k);
                let room = binomial(n, m).saturating_sub(binomial(k, m)) as usize;
                spec.edge_count = Some(n.min(room));
                (gen::hypergraph(&spec)?, Some(binomial(k, m)))
            }
            _ => {
                let count = (2 * n).min(binomial(n, m) as usize);
                (gen::hypergraph(&GenSpec::new(GenKind::UniformRandom, n, m, seed).with_edges(count))?, None)
            }
        };
        let sol = approx_dksh(&g, k, m, &cfg)?;
        let exact = if opts.exact { oracle_or_none(exact_dksh(&g, k, &opts.oracle_budget))? } else { None };
        // Value floor for a fully planted core of size k.
        let floor_ok = core.map(|c| sol.value.clone() * int((m * k.pow(m as u32 - 1)) as i64) >= int(c as i64));
        (k.to_string(), exact, sol.value, floor_ok)
    } else {
        let mut spec = match opts.family {
            BenchFamily::SukpCorrelated => GenSpec::new(GenKind::SukpCorrelated, n, m, seed),
            _ => GenSpec::new(GenKind::SukpRandom, n, m, seed),
        };
        if opts.family == BenchFamily::SukpEdgeFree {
            spec.min_edge_size = Some(1);
            spec.edge_count = Some(0);
            spec.vertex_profit_probability = 1.0;
        } else {
            let cap: usize = (2..=m).map(|t| binomial(n, t) as usize).sum();
            spec.edge_count = Some((2 * n).min(cap));
            spec.vertex_profit_probability = 0.2;
        }
        let inst = gen::sukp(&spec)?;
        let cfg = SukpConfig { epsilon: opts.epsilon.clone(), seed, ..SukpConfig::default() };
        let sol = approx_sukp(&inst, &cfg)?;
        let exact = if opts.exact { oracle_or_none(exact_sukp(&inst, &opts.oracle_budget))? } else { None };
        (inst.budget().to_string(), exact, sol.value, None)
    };
    let wall_ms = opts.timings.then(|| start.elapsed().as_secs_f64() * 1e3);
    Ok(BenchRow {
        family: opts.family,
        n,
        m,
        k_or_budget,
        seed,
        ratio: exact.as_ref().map(|e| ratio_string(e, &approx)),
        exact: exact.map(|e| e.to_string()),
        approx: approx.to_string(),
        envelope_theta: if opts.family.is_dksh() { envelope(n, theta(m as u64)) } else { None },
        envelope_alpha: envelope(n, alpha(m as u64)),
        planted_floor_ok: floor_ok,
        wall_ms,
    })
}

pub fn bench(opts: &BenchOptions) -> Result<BenchReport> {
    if opts.m < 2 && opts.family != BenchFamily::SukpEdgeFree {
        return Err(Error::Domain("bench needs m >= 2".into()));
    }
    let mut jobs = Vec::new();
    for &n in &opts.n_values {
        if n < opts.m {
            return Err(Error::Domain(format!("n = {n} is below m = {}", opts.m)));
        }
        for i in 0..opts.per_n {
            jobs.push((n, opts.seed.wrapping_add(i as u64)));
        }
    }
    jobs.sort_unstable();
    let rows: Result<Vec<BenchRow>> = jobs.into_par_iter().map(|(n, seed)| bench_one(opts, n, seed)).collect();
    Ok(BenchReport { rows: rows? })
}

impl BenchReport {
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            out.push_str(&serde_json::to_string(row).expect("rows serialize"));
            out.push('\n');
        }
        out
    }

    pub fn to_table(&self) -> String {
        let timed = self.rows.iter().any(|r| r.wall_ms.is_some());
        let mut header = vec!["family", "n", "m", "k/B", "seed", "exact", "approx", "ratio", "n^theta", "n^alpha"];
        if timed {
            header.push("ms");
        }
        let float = |x: Option<f64>| x.map_or_else(|| "-".to_string(), |v| format!("{v:.3}"));
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                let ratio = r.ratio.as_deref().map_or_else(
                    || "-".to_string(),
                    |s| crate::rational::parse_rational(s).map_or(s.to_string(), |q| format!("{:.3}", to_f64(&q))),
                );
                let mut row = vec![
                    r.family.to_string(),
                    r.n.to_string(),
                    r.m.to_string(),
                    r.k_or_budget.clone(),
                    r.seed.to_string(),
                    r.exact.clone().unwrap_or_else(|| "-".into()),
                    r.approx.clone(),
                    ratio,
                    float(r.envelope_theta),
                    float(r.envelope_alpha),
                ];
                if timed {
                    row.push(float(r.wall_ms));
                }
                row
            })
            .collect();
        let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, row: &[String]| {
            let parts: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        line(&mut out, &header.iter().map(|h| h.to_string()).collect::<Vec<_>>());
        for row in &cells {
            line(&mut out, row);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_sorted_and_reproducible() {
        let opts = BenchOptions { n_values: vec![10, 8], per_n: 2, ..BenchOptions::default() };
        let a = bench(&opts).unwrap();
        let keys: Vec<(usize, u64)> = a.rows.iter().map(|r| (r.n, r.seed)).collect();
        assert_eq!(keys, vec![(8, 0), (8, 1), (10, 0), (10, 1)]);
        assert_eq!(a.to_jsonl(), bench(&opts).unwrap().to_jsonl());
        assert!(a.rows.iter().all(|r| r.wall_ms.is_none()));
    }

    #[test]
    fn every_family_runs() {
        for family in BenchFamily::ALL {
            let opts = BenchOptions { family, n_values: vec![9], per_n: 1, ..BenchOptions::default() };
            let rep = bench(&opts).unwrap();
            assert_eq!(rep.rows.len(), 1);
            let row = &rep.rows[0];
            assert!(row.exact.is_some());
            if family == BenchFamily::DkshPlanted {
                assert_eq!(row.planted_floor_ok, Some(true));
            }
            assert!(rep.to_table().lines().count() == 2);
        }
    }

    #[test]
    fn family_names() {
        assert_eq!("sukp-edge-free".parse::<BenchFamily>().unwrap(), BenchFamily::SukpEdgeFree);
        assert!("nope".parse::<BenchFamily>().is_err());
    }
}
