//! Seeded property checks against brute-force ground truth.
//!
//! Trial `t` of a run with seed `s` uses seed `s + t` for both its parameter
//! draws and its instance, so any reported violation can be replayed alone.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dksh::{approx_dksh, round_weights, solve_trivial, solve_weighted, DkshConfig, ExactBase, GreedyBase};
use crate::error::{Error, Result};
use crate::exponents::verify_identities;
use crate::gen::{self, GenKind, GenSpec};
use crate::hypergraph::Hypergraph;
use crate::oracle::{binomial, exact_dksh, exact_sukp, exact_weighted_dksh, max_edges, OracleBudget};
use crate::rational::{floor_usize, int, ratio, Rational};
use crate::sukp::{
    approx_sukp, blow_up, class1_projection, degree_select, effective_epsilon, fold_unit_edges, knapsack_fptas_report,
    normalize_class3, prune, round_profits, ClassInstance, ClassTag, Layer, SukpConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Lemma22,
    Lemma23,
    Rounding4x,
    Blowup,
    Identities,
    Feasibility,
    Dksh,
    Sukp,
    Fptas,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::Lemma22,
        Check::Lemma23,
        Check::Rounding4x,
        Check::Blowup,
        Check::Identities,
        Check::Feasibility,
        Check::Dksh,
        Check::Sukp,
        Check::Fptas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Lemma22 => "lemma22",
            Check::Lemma23 => "lemma23",
            Check::Rounding4x => "rounding4x",
            Check::Blowup => "blowup",
            Check::Identities => "identities",
            Check::Feasibility => "feasibility",
            Check::Dksh => "dksh",
            Check::Sukp => "sukp",
            Check::Fptas => "fptas",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
                Error::Domain(format!("unknown check {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
    /// Fixed edge size; drawn per trial when absent.
    pub m: Option<usize>,
    /// Fixed item count; drawn per trial when absent.
    pub n: Option<usize>,
    /// Fixed budget for cardinality checks.
    pub k: Option<usize>,
    pub epsilon: Rational,
    /// Largest order for the identities check.
    pub m_max: u64,
    pub oracle_budget: OracleBudget,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            trials: 100,
            seed: 0,
            m: None,
            n: None,
            k: None,
            epsilon: ratio(1, 10),
            m_max: 50,
            oracle_budget: OracleBudget::default(),
        }
    }
}

impl VerifyOptions {
    pub fn trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub check: Check,
    pub bound: String,
    pub trials: usize,
    pub violations: usize,
    /// Trials where an oracle declined, so the comparison was not made.
    pub unchecked: usize,
    /// Largest observed value of each monitored ratio (`"inf"` when a
    /// positive optimum met a zero answer).
    pub worst_ratio: BTreeMap<String, String>,
    pub violation_seeds: Vec<u64>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn summary(&self) -> String {
        let ratios: Vec<String> = self.worst_ratio.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!(
            "{:<12} {} trials={} violations={} unchecked={} worst[{}]",
            self.check.name(),
            if self.passed() { "PASS" } else { "FAIL" },
            self.trials,
            self.violations,
            self.unchecked,
            ratios.join(" ")
        )
    }
}

/// Outcome of one trial. A ratio of `None` stands for infinity.
#[derive(Debug, Default)]
struct Trial {
    violated: bool,
    unchecked: bool,
    ratios: Vec<(&'static str, Option<Rational>)>,
}

impl Trial {
    fn require(&mut self, ok: bool, what: &str, seed: u64) {
        if !ok {
            log::warn!("seed {seed}: {what} violated");
            self.violated = true;
        }
    }

    fn ratio(&mut self, name: &'static str, num: &Rational, den: &Rational) {
        let r = if den.is_zero() {
            if num.is_zero() {
                Some(Rational::one())
            } else {
                None
            }
        } else {
            Some(num / den)
        };
        self.ratios.push((name, r));
    }
}

fn run_trials<F>(check: Check, bound: &str, opts: &VerifyOptions, trial: F) -> Result<VerifyReport>
where
    F: Fn(u64, &mut ChaCha8Rng) -> Result<Trial> + Sync,
{
    let outcomes: Vec<(u64, Result<Trial>)> = (0..opts.trials)
        .into_par_iter()
        .map(|t| {
            let seed = opts.seed.wrapping_add(t as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (seed, trial(seed, &mut rng))
        })
        .collect();
    let mut report = VerifyReport {
        check,
        bound: bound.to_string(),
        trials: opts.trials,
        violations: 0,
        unchecked: 0,
        worst_ratio: BTreeMap::new(),
        violation_seeds: Vec::new(),
    };
    let mut worst: BTreeMap<&'static str, Option<Rational>> = BTreeMap::new();
    for (seed, outcome) in outcomes {
        let trial = match outcome {
            Ok(t) => t,
            Err(Error::OracleRefused(why)) => {
                return Err(Error::OracleRefused(format!(
                    "{check} trial with seed {seed}: {why}; lower --n or --k"
                )))
            }
            Err(e) => return Err(e),
        };
        if trial.violated {
            report.violations += 1;
            report.violation_seeds.push(seed);
        }
        if trial.unchecked {
            report.unchecked += 1;
        }
        for (name, r) in trial.ratios {
            let slot = worst.entry(name).or_insert(Some(Rational::zero()));
            *slot = match (slot.take(), r) {
                (None, _) | (_, None) => None,
                (Some(a), Some(b)) => Some(a.max(b)),
            };
        }
    }
    report.worst_ratio = worst
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.map_or_else(|| "inf".to_string(), |r| r.to_string())))
        .collect();
    Ok(report)
}

pub fn verify(check: Check, opts: &VerifyOptions) -> Result<VerifyReport> {
    match check {
        Check::Lemma22 => lemma22(opts),
        Check::Lemma23 => lemma23(opts),
        Check::Rounding4x => rounding4x(opts),
        Check::Blowup => blowup(opts),
        Check::Identities => identities(opts),
        Check::Feasibility => {
            let mut a = dksh_check(opts)?;
            let b = sukp_check(opts)?;
            a.check = Check::Feasibility;
            a.bound = format!("{}; {}", a.bound, b.bound);
            a.trials += b.trials;
            a.violations += b.violations;
            a.unchecked += b.unchecked;
            a.violation_seeds.extend(b.violation_seeds);
            a.worst_ratio.extend(b.worst_ratio);
            Ok(a)
        }
        Check::Dksh => dksh_check(opts),
        Check::Sukp => sukp_check(opts),
        Check::Fptas => fptas_check(opts),
    }
}

fn uniform_graph(rng: &mut ChaCha8Rng, seed: u64, n: usize, m: usize) -> Result<Hypergraph> {
    let cap = binomial(n, m) as usize;
    if rng.gen_bool(0.3) {
        let mut spec = GenSpec::new(GenKind::PlantedDense, n, m, seed);
        spec.core_size = Some(rng.gen_range(m..=n));
        spec.core_density = rng.gen_range(0.5..=1.0);
        let core_max = binomial(spec.core_size.unwrap(), m) as usize;
        spec.edge_count = Some(rng.gen_range(0..=(cap - core_max).min(2 * n)));
        gen::hypergraph(&spec)
    } else {
        let count = rng.gen_range(0..=cap.min(4 * n));
        gen::hypergraph(&GenSpec::new(GenKind::UniformRandom, n, m, seed).with_edges(count))
    }
}

fn lemma22(opts: &VerifyOptions) -> Result<VerifyReport> {
    if let (Some(m), Some(k)) = (opts.m, opts.k) {
        if k < 4 * m {
            return Err(Error::Domain(format!("the halving bound needs k >= 4m, got k = {k}, m = {m}")));
        }
    }
    run_trials(Check::Lemma22, "MAX[G,k] <= 3^m MAX[G,floor(k/2)]", opts, |seed, rng| {
        let default_m = if seed % 10 == 9 { 3 } else { 2 };
        let m = opts.m.unwrap_or(default_m);
        let n = opts.n.unwrap_or(if m == 3 && opts.m.is_none() { 13 } else { rng.gen_range((4 * m).max(8)..=12.max(4 * m)) });
        let k = opts.k.unwrap_or(if m == 3 && opts.n.is_none() { 12.min(n) } else { rng.gen_range(4 * m..=n) });
        if k > n || k < 4 * m {
            return Err(Error::Domain(format!("need 4m <= k <= n, got m = {m}, n = {n}, k = {k}")));
        }
        let g = uniform_graph(rng, seed, n, m)?;
        let hi = int(max_edges(&g, k, &opts.oracle_budget)? as i64);
        let lo = int(max_edges(&g, k / 2, &opts.oracle_budget)? as i64);
        let mut t = Trial::default();
        t.require(hi <= int(3i64.pow(m as u32)) * &lo, "halving bound", seed);
        t.ratio("full_over_half", &hi, &lo);
        Ok(t)
    })
}

fn lemma23(opts: &VerifyOptions) -> Result<VerifyReport> {
    run_trials(
        Check::Lemma23,
        "OPT_w <= 4(l+2) solve_weighted; OPT_w <= 4 MAX[G*,k]",
        opts,
        |seed, rng| {
            let m = opts.m.unwrap_or_else(|| rng.gen_range(2..=3));
            let n = opts.n.unwrap_or_else(|| rng.gen_range(m + 1..=10));
            let k = opts.k.unwrap_or_else(|| rng.gen_range(m..=n));
            let cap = binomial(n, m) as usize;
            let mut spec = GenSpec::new(GenKind::WeightedRandom, n, m, seed).with_edges(rng.gen_range(1..=cap.min(3 * n)));
            // Wide weight ranges make the rounding levels matter.
            spec.profit_range = [1, *[8u64, 100, 10_000].choose(rng).unwrap()];
            let g = gen::weighted(&spec)?;
            let opt = exact_weighted_dksh(&g, k, &opts.oracle_budget)?.value;
            let budget = opts.oracle_budget;
            let sol = solve_weighted(&g, k, |h, kk| exact_dksh(h, kk, &budget))?;
            let rounded = round_weights(&g)?;
            let rounded_opt = exact_weighted_dksh(&rounded.rounded, k, &opts.oracle_budget)?.value;
            let l = int(rounded.l as i64);
            let mut t = Trial::default();
            t.require(sol.vertices.len() <= k, "cardinality", seed);
            t.require(sol.value == g.induced_weight(&sol.vertices)?, "recomputed value", seed);
            t.require(opt <= (int(4) * (&l + int(2)) * &sol.value), "weighted reduction bound", seed);
            t.require(opt <= int(4) * &rounded_opt, "rounded graph bound", seed);
            t.ratio("opt_over_weighted", &opt, &sol.value);
            t.ratio("opt_over_rounded_opt", &opt, &rounded_opt);
            Ok(t)
        },
    )
}

fn random_sukp(rng: &mut ChaCha8Rng, seed: u64, n: usize, m: usize, wide_profits: bool) -> Result<crate::instance::SukpInstance> {
    let kind = if rng.gen_bool(0.5) { GenKind::SukpRandom } else { GenKind::SukpCorrelated };
    let cap: usize = (2..=m).map(|t| binomial(n, t) as usize).sum();
    let mut spec = GenSpec::new(kind, n, m, seed).with_edges(rng.gen_range(1..=cap.min(2 * n)));
    spec.vertex_profit_probability = *[0.0, 0.3].choose(rng).unwrap();
    spec.budget_fraction = ["1/4", "1/3", "1/2"].choose(rng).unwrap().to_string();
    if rng.gen_bool(0.2) {
        spec.cost_range = [0, 16];
    }
    if wide_profits || rng.gen_bool(0.3) {
        spec.profit_range = [1, 1000];
    }
    gen::sukp(&spec)
}

fn rounding4x(opts: &VerifyOptions) -> Result<VerifyReport> {
    run_trials(
        Check::Rounding4x,
        "OPT(pruned) = OPT; OPT <= 4 OPT(rounded)",
        opts,
        |seed, rng| {
            let m = opts.m.unwrap_or_else(|| rng.gen_range(2..=3));
            let n = opts.n.unwrap_or_else(|| rng.gen_range(m.max(3)..=10));
            let inst = random_sukp(rng, seed, n, m, true)?;
            let opt = exact_sukp(&inst, &opts.oracle_budget)?.value;
            let pruned = prune(&fold_unit_edges(&inst)?)?;
            let pruned_opt = exact_sukp(&pruned.instance, &opts.oracle_budget)?.value;
            let rounded = round_profits(&pruned.instance)?;
            let rounded_opt = exact_sukp(&rounded, &opts.oracle_budget)?.value;
            let mut t = Trial::default();
            t.require(pruned_opt == opt, "pruning keeps the optimum", seed);
            t.require(opt <= int(4) * &rounded_opt, "rounding bound", seed);
            t.ratio("opt_over_rounded_opt", &opt, &rounded_opt);
            Ok(t)
        },
    )
}

/// A small normalized class 3 subproblem with disjoint layers.
fn tiny_banded(rng: &mut ChaCha8Rng) -> ClassInstance {
    loop {
        let r = rng.gen_range(2..=3);
        let mut copies = vec![1usize];
        for _ in 1..r {
            let prev = *copies.last().unwrap();
            copies.push(prev * if rng.gen_bool(0.6) { 2 } else { 1 });
        }
        let sizes: Vec<usize> = (0..r).map(|_| rng.gen_range(1..=3)).collect();
        let total: usize = sizes.iter().zip(&copies).map(|(s, a)| s * a).sum();
        if total > 14 {
            continue;
        }
        let mut next = 0;
        let mut layers = Vec::new();
        let mut costs = Vec::new();
        for j in 0..r {
            let vertices: Vec<usize> = (next..next + sizes[j]).collect();
            next += sizes[j];
            for _ in &vertices {
                let a = int(copies[j] as i64);
                costs.push(&a * (int(1) + ratio(rng.gen_range(1..=4), 4)));
            }
            layers.push(Layer { bucket: 10 - copies[j].trailing_zeros() as usize, vertices, floor: int(copies[j] as i64) });
        }
        let mut edges = Vec::new();
        let mut digit = vec![0usize; r];
        loop {
            if rng.gen_bool(0.5) {
                edges.push((0..r).map(|j| layers[j].vertices[digit[j]]).collect::<Vec<usize>>());
            }
            let mut j = 0;
            while j < r {
                digit[j] += 1;
                if digit[j] < sizes[j] {
                    break;
                }
                digit[j] = 0;
                j += 1;
            }
            if j == r {
                break;
            }
        }
        if edges.is_empty() {
            continue;
        }
        let total_cost: Rational = costs.iter().sum();
        let budget = ratio(rng.gen_range(4..=floor_usize(&(total_cost * int(4))).max(4) as i64), 4);
        let n = costs.len();
        return ClassInstance {
            class_tag: ClassTag::Banded,
            profit_level: Some(int(1)),
            layers,
            edges,
            budget,
            costs,
            vertex_profits: vec![int(0); n],
        };
    }
}

fn blowup(opts: &VerifyOptions) -> Result<VerifyReport> {
    run_trials(
        Check::Blowup,
        "prod(a_j) OPT(H,B) <= OPT(H*,floor(B)); degree selection layer cost <= B/r",
        opts,
        |seed, rng| {
            let ci = tiny_banded(rng);
            let norm = normalize_class3(&ci)?;
            let hstar = blow_up(&norm, &Default::default())?;
            let r = ci.order();
            let b = &norm.instance.budget;
            let opt_h = exact_sukp(&norm.instance.to_instance()?, &opts.oracle_budget)?.value;
            let k = floor_usize(b).min(hstar.vertices.len());
            let opt_star = if k == 0 { int(0) } else { exact_dksh(&hstar.graph, k, &opts.oracle_budget)?.value };
            let scale: usize = hstar.copies.iter().product();
            let scaled = int(scale as i64) * &opt_h;
            let mut t = Trial::default();
            t.require(scaled <= opt_star, "blow-up bound", seed);
            t.ratio("scaled_opt_over_blowup_opt", &scaled, &opt_star);
            if k >= 1 {
                let approx = approx_dksh(&hstar.graph, k, r, &DkshConfig::default())?;
                let exact = exact_dksh(&hstar.graph, k, &opts.oracle_budget)?;
                for chosen in [approx.vertices, exact.vertices] {
                    let sel = degree_select(&hstar, &chosen, b)?;
                    let per_layer = b / int(r as i64);
                    t.require(sel.layer_costs.iter().all(|c| c <= &per_layer), "layer cost", seed);
                    t.require(&sel.solution.total_cost <= b, "selection cost", seed);
                    t.require(
                        sel.solution.value == int(norm.instance.covered_edges(&sel.solution.vertices) as i64),
                        "selection value",
                        seed,
                    );
                }
            }
            Ok(t)
        },
    )
}

fn identities(opts: &VerifyOptions) -> Result<VerifyReport> {
    let checks = verify_identities(opts.m_max)?;
    let mut report = VerifyReport {
        check: Check::Identities,
        bound: format!("theta recurrence and alpha-theta identity for 3 <= r <= {}", opts.m_max),
        trials: checks.len(),
        violations: 0,
        unchecked: 0,
        worst_ratio: BTreeMap::new(),
        violation_seeds: Vec::new(),
    };
    for c in checks.iter().filter(|c| !c.holds) {
        report.violations += 1;
        report.violation_seeds.push(c.r);
    }
    Ok(report)
}

fn dksh_check(opts: &VerifyOptions) -> Result<VerifyReport> {
    run_trials(
        Check::Dksh,
        "approx_dksh: |S| <= k, value recomputed, trivial <= value <= OPT",
        opts,
        |seed, rng| {
            let m = opts.m.unwrap_or_else(|| rng.gen_range(2..=4));
            let n_hi = if m == 4 { 18 } else { 14 };
            let n = opts.n.unwrap_or_else(|| rng.gen_range(m + 2..=n_hi));
            let k = opts.k.unwrap_or_else(|| rng.gen_range(1..=n)).min(n);
            let g = uniform_graph(rng, seed, n, m)?;
            let cfg = if seed % 2 == 0 {
                DkshConfig::default().with_base(Arc::new(GreedyBase))
            } else {
                DkshConfig::default().with_base(Arc::new(ExactBase::default()))
            };
            let sol = approx_dksh(&g, k, m, &cfg)?;
            let trivial = solve_trivial(&g, k, m)?;
            let mut t = Trial::default();
            t.require(sol.vertices.len() <= k, "cardinality", seed);
            t.require(sol.value == g.induced_value(&sol.vertices)?, "recomputed value", seed);
            t.require(sol.value >= trivial.value, "trivial floor", seed);
            match exact_dksh(&g, k, &opts.oracle_budget) {
                Ok(opt) => {
                    t.require(sol.value <= opt.value, "optimum ceiling", seed);
                    t.ratio("opt_over_approx", &opt.value, &sol.value);
                }
                Err(Error::OracleRefused(_)) => t.unchecked = true,
                Err(e) => return Err(e),
            }
            Ok(t)
        },
    )
}

fn sukp_check(opts: &VerifyOptions) -> Result<VerifyReport> {
    run_trials(
        Check::Sukp,
        "approx_sukp: cost <= B, knapsack class <= value <= OPT; OPT(pruned) = OPT; OPT <= 4 OPT(rounded)",
        opts,
        |seed, rng| {
            let m = opts.m.unwrap_or_else(|| rng.gen_range(2..=3));
            let n = opts.n.unwrap_or_else(|| rng.gen_range(m.max(4)..=14));
            let inst = random_sukp(rng, seed, n, m, false)?;
            let cfg = SukpConfig { epsilon: opts.epsilon.clone(), exact_cutoff_n: 0, seed, ..SukpConfig::default() };
            let sol = approx_sukp(&inst, &cfg)?;
            let opt = exact_sukp(&inst, &opts.oracle_budget)?.value;
            let class1 = knapsack_fptas_report(inst.costs(), &class1_projection(&inst)?, inst.budget(), &opts.epsilon)?;
            let pruned = prune(&fold_unit_edges(&inst)?)?;
            let pruned_opt = exact_sukp(&pruned.instance, &opts.oracle_budget)?.value;
            let rounded_opt = exact_sukp(&round_profits(&pruned.instance)?, &opts.oracle_budget)?.value;
            let mut t = Trial::default();
            t.require(inst.is_feasible(&sol), "budget", seed);
            t.require(sol == inst.evaluate(&sol.vertices)?, "recomputed value", seed);
            t.require(sol.value <= opt, "optimum ceiling", seed);
            t.require(sol.value >= class1.solution.value, "knapsack class floor", seed);
            t.require(pruned_opt == opt, "pruning keeps the optimum", seed);
            t.require(opt <= int(4) * &rounded_opt, "rounding bound", seed);
            t.ratio("opt_over_approx", &opt, &sol.value);
            Ok(t)
        },
    )
}

fn fptas_check(opts: &VerifyOptions) -> Result<VerifyReport> {
    let eps_eff = effective_epsilon(&opts.epsilon);
    run_trials(
        Check::Fptas,
        "knapsack: value >= (1 - eps') OPT; exact when lossless",
        opts,
        |seed, rng| {
            let n = opts.n.unwrap_or_else(|| rng.gen_range(1..=20));
            let wide = rng.gen_range(0..3);
            let costs: Vec<Rational> = (0..n).map(|_| int(rng.gen_range(1..=50))).collect();
            let profits: Vec<Rational> = (0..n)
                .map(|_| match wide {
                    0 => int(rng.gen_range(1..=100)),
                    1 => int(rng.gen_range(1..=1_000_000)),
                    _ => ratio(rng.gen_range(1..=500), rng.gen_range(1..=12)),
                })
                .collect();
            let total: Rational = costs.iter().sum();
            let budget = int(floor_usize(&(total * ratio(rng.gen_range(1..=9), 10))) as i64);
            let inst = crate::instance::SukpInstance::new(n, 1, costs.clone(), budget.clone(), vec![], profits.clone())?;
            let opt = exact_sukp(&inst, &opts.oracle_budget)?.value;
            let rep = knapsack_fptas_report(&costs, &profits, &budget, &opts.epsilon)?;
            let mut t = Trial::default();
            t.require(rep.solution.total_cost <= budget, "budget", seed);
            t.require(rep.solution.value >= (int(1) - &eps_eff) * &opt, "approximation bound", seed);
            if rep.lossless {
                t.require(rep.solution.value == opt, "lossless exactness", seed);
            }
            t.ratio("opt_over_value", &opt, &rep.solution.value);
            Ok(t)
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("lemma99".parse::<Check>().is_err());
    }

    #[test]
    fn small_runs_pass() {
        for c in Check::ALL {
            let report = verify(c, &VerifyOptions::default().trials(6).seed(11)).unwrap();
            assert!(report.passed(), "{}", report.summary());
        }
    }

    #[test]
    fn report_is_deterministic() {
        let opts = VerifyOptions::default().trials(10).seed(3);
        let a = verify(Check::Sukp, &opts).unwrap().to_json();
        let b = verify(Check::Sukp, &opts).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn fixed_parameters() {
        let opts = VerifyOptions { m: Some(2), n: Some(10), k: Some(8), ..VerifyOptions::default().trials(20) };
        assert!(verify(Check::Lemma22, &opts).unwrap().passed());
        let bad = VerifyOptions { m: Some(3), k: Some(8), ..VerifyOptions::default() };
        assert!(matches!(verify(Check::Lemma22, &bad), Err(Error::Domain(_))));
    }
}
