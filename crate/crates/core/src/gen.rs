//! Seeded instance generators.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(spec.seed)`, so the
//! same spec always yields the same instance (and the same serialized bytes).

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, WeightedHypergraph};
use crate::instance::SukpInstance;
use crate::io::Instance;
use crate::oracle::{binomial, Combinations};
use crate::rational::{floor_usize, int, parse_rational, sum, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenKind {
    UniformRandom,
    PlantedDense,
    WeightedRandom,
    SukpRandom,
    SukpCorrelated,
}

fn default_cost_range() -> [u64; 2] {
    [1, 16]
}

fn default_profit_range() -> [u64; 2] {
    [1, 32]
}

fn default_budget_fraction() -> String {
    "1/3".into()
}

fn default_density() -> f64 {
    1.0
}

/// Parameters for one generated instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    /// Maximum edge size.
    pub m: usize,
    /// Smallest edge size; defaults to `m` for hypergraph kinds and 2 for
    /// knapsack kinds.
    #[serde(default)]
    pub min_edge_size: Option<usize>,
    #[serde(default)]
    pub edge_count: Option<usize>,
    #[serde(default)]
    pub edge_probability: Option<f64>,
    #[serde(default)]
    pub core_size: Option<usize>,
    #[serde(default = "default_density")]
    pub core_density: f64,
    /// Inclusive integer range for costs (knapsack kinds).
    #[serde(default = "default_cost_range")]
    pub cost_range: [u64; 2],
    /// Inclusive integer range for edge profits / weights.
    #[serde(default = "default_profit_range")]
    pub profit_range: [u64; 2],
    /// Probability that an item carries a vertex profit.
    #[serde(default)]
    pub vertex_profit_probability: f64,
    /// Budget as a fraction of the total cost, e.g. `"1/3"`.
    #[serde(default = "default_budget_fraction")]
    pub budget_fraction: String,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(kind: GenKind, n: usize, m: usize, seed: u64) -> Self {
        GenSpec {
            kind,
            n,
            m,
            min_edge_size: None,
            edge_count: None,
            edge_probability: None,
            core_size: None,
            core_density: default_density(),
            cost_range: default_cost_range(),
            profit_range: default_profit_range(),
            vertex_profit_probability: 0.0,
            budget_fraction: default_budget_fraction(),
            seed,
        }
    }

    pub fn with_edges(mut self, count: usize) -> Self {
        self.edge_count = Some(count);
        self
    }

    fn min_size(&self) -> usize {
        self.min_edge_size.unwrap_or(match self.kind {
            GenKind::SukpRandom | GenKind::SukpCorrelated => 2.min(self.m),
            _ => self.m,
        })
    }

    fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::Spec("m must be at least 1".into()));
        }
        let lo = self.min_size();
        if lo == 0 || lo > self.m {
            return Err(Error::Spec(format!("edge sizes {lo}..={} are empty", self.m)));
        }
        if self.m > self.n {
            return Err(Error::Spec(format!("m = {} exceeds n = {}", self.m, self.n)));
        }
        for (name, [a, b]) in [("cost_range", self.cost_range), ("profit_range", self.profit_range)] {
            if a > b {
                return Err(Error::Spec(format!("{name} is empty")));
            }
        }
        if let Some(p) = self.edge_probability {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Spec(format!("edge_probability {p} outside [0, 1]")));
            }
        }
        if !(0.0..=1.0).contains(&self.core_density) || !(0.0..=1.0).contains(&self.vertex_profit_probability) {
            return Err(Error::Spec("probabilities must lie in [0, 1]".into()));
        }
        Ok(())
    }
}

/// Draw `count` distinct edges with sizes uniform in `lo..=hi`.
fn random_edges(rng: &mut ChaCha8Rng, n: usize, lo: usize, hi: usize, count: usize) -> Result<Vec<Vec<usize>>> {
    let capacity: u64 = (lo..=hi).map(|t| binomial(n, t)).fold(0u64, u64::saturating_add);
    if count as u64 > capacity {
        return Err(Error::Spec(format!(
            "{count} distinct edges requested but only {capacity} exist"
        )));
    }
    let mut seen = BTreeSet::new();
    // Dense requests: enumerate and shuffle-select instead of rejection sampling.
    if capacity <= 200_000 && count as u64 * 2 > capacity {
        let all: Vec<Vec<usize>> = (lo..=hi).flat_map(|t| Combinations::new(n, t)).collect();
        let picked = sample(rng, all.len(), count);
        return Ok(picked.into_iter().map(|i| all[i].clone()).collect());
    }
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let t = rng.gen_range(lo..=hi);
        let mut e = sample(rng, n, t).into_vec();
        e.sort_unstable();
        if seen.insert(e.clone()) {
            out.push(e);
        }
    }
    Ok(out)
}

fn edges_by_probability(rng: &mut ChaCha8Rng, n: usize, lo: usize, hi: usize, p: f64) -> Result<Vec<Vec<usize>>> {
    let total: u64 = (lo..=hi).map(|t| binomial(n, t)).fold(0u64, u64::saturating_add);
    if total > 5_000_000 {
        return Err(Error::Spec(format!("{total} candidate edges is too many for probability sampling")));
    }
    Ok((lo..=hi)
        .flat_map(|t| Combinations::new(n, t))
        .filter(|_| rng.gen_bool(p))
        .collect())
}

fn base_edges(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<usize>>> {
    let (lo, hi) = (spec.min_size(), spec.m);
    match (spec.edge_count, spec.edge_probability) {
        (Some(c), None) => random_edges(rng, spec.n, lo, hi, c),
        (None, Some(p)) => edges_by_probability(rng, spec.n, lo, hi, p),
        (None, None) => random_edges(rng, spec.n, lo, hi, spec.n.min(
            (lo..=hi).map(|t| binomial(spec.n, t)).fold(0u64, u64::saturating_add) as usize,
        )),
        (Some(_), Some(_)) => Err(Error::Spec("give edge_count or edge_probability, not both".into())),
    }
}

fn uniform_int(rng: &mut ChaCha8Rng, [lo, hi]: [u64; 2]) -> Rational {
    int(rng.gen_range(lo..=hi) as i64)
}

pub fn generate(spec: &GenSpec) -> Result<Instance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.kind {
        GenKind::UniformRandom => {
            let edges = base_edges(spec, &mut rng)?;
            Ok(Instance::Hypergraph(Hypergraph::new(spec.n, spec.m, edges)?))
        }
        GenKind::PlantedDense => {
            let core_size = spec
                .core_size
                .ok_or_else(|| Error::Spec("planted-dense needs core_size".into()))?;
            if core_size > spec.n || core_size < spec.m {
                return Err(Error::Spec(format!(
                    "core_size {core_size} must lie in {}..={}",
                    spec.m, spec.n
                )));
            }
            let mut core = sample(&mut rng, spec.n, core_size).into_vec();
            core.sort_unstable();
            let mut edges: BTreeSet<Vec<usize>> = Combinations::new(core_size, spec.m)
                .filter(|_| spec.core_density >= 1.0 || rng.gen_bool(spec.core_density))
                .map(|c| c.into_iter().map(|i| core[i]).collect())
                .collect();
            let background = spec.edge_count.unwrap_or(0);
            let capacity = binomial(spec.n, spec.m);
            if (edges.len() + background) as u64 > capacity {
                return Err(Error::Spec("background edges do not fit".into()));
            }
            let target = edges.len() + background;
            while edges.len() < target {
                let mut e = sample(&mut rng, spec.n, spec.m).into_vec();
                e.sort_unstable();
                edges.insert(e);
            }
            Ok(Instance::Hypergraph(Hypergraph::new(spec.n, spec.m, edges.into_iter().collect())?))
        }
        GenKind::WeightedRandom => {
            let edges = base_edges(spec, &mut rng)?;
            let weighted = edges
                .into_iter()
                .map(|e| {
                    let w = uniform_int(&mut rng, [spec.profit_range[0].max(1), spec.profit_range[1].max(1)]);
                    (e, w)
                })
                .collect();
            Ok(Instance::Weighted(WeightedHypergraph::from_weighted_edges(spec.n, spec.m, weighted)?))
        }
        GenKind::SukpRandom | GenKind::SukpCorrelated => {
            let costs: Vec<Rational> = (0..spec.n).map(|_| uniform_int(&mut rng, spec.cost_range)).collect();
            let edges = base_edges(spec, &mut rng)?;
            let correlated = spec.kind == GenKind::SukpCorrelated;
            let edges = edges
                .into_iter()
                .map(|e| {
                    let noise = uniform_int(&mut rng, spec.profit_range);
                    let p = if correlated { sum(e.iter().map(|&v| &costs[v])) + noise } else { noise };
                    (e, p)
                })
                .collect();
            let vertex_profits = (0..spec.n)
                .map(|_| {
                    if spec.vertex_profit_probability > 0.0 && rng.gen_bool(spec.vertex_profit_probability) {
                        uniform_int(&mut rng, spec.profit_range)
                    } else {
                        int(0)
                    }
                })
                .collect();
            let fraction = parse_rational(&spec.budget_fraction)?;
            let total = sum(&costs);
            // Integral budgets keep generated files tidy.
            let budget = int(floor_usize(&(total * fraction)) as i64);
            Ok(Instance::Sukp(SukpInstance::new(spec.n, spec.m, costs, budget, edges, vertex_profits)?))
        }
    }
}

/// Shorthand used throughout the harness and tests.
pub fn hypergraph(spec: &GenSpec) -> Result<Hypergraph> {
    match generate(spec)? {
        Instance::Hypergraph(g) => Ok(g),
        _ => Err(Error::Spec("spec does not produce a hypergraph".into())),
    }
}

pub fn weighted(spec: &GenSpec) -> Result<WeightedHypergraph> {
    match generate(spec)? {
        Instance::Weighted(g) => Ok(g),
        _ => Err(Error::Spec("spec does not produce a weighted hypergraph".into())),
    }
}

pub fn sukp(spec: &GenSpec) -> Result<SukpInstance> {
    match generate(spec)? {
        Instance::Sukp(s) => Ok(s),
        _ => Err(Error::Spec("spec does not produce a knapsack instance".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::instance_to_string;

    #[test]
    fn deterministic_in_seed() {
        let spec = GenSpec::new(GenKind::UniformRandom, 10, 3, 7).with_edges(20);
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        assert_eq!(instance_to_string(&a), instance_to_string(&b));
        let Instance::Hypergraph(g) = a else { panic!() };
        assert_eq!(g.edge_count(), 20);
        assert_eq!(g.uniform_size(), Some(3));
        let other = generate(&GenSpec { seed: 8, ..spec }).unwrap();
        assert_ne!(instance_to_string(&other), instance_to_string(&Instance::Hypergraph(g)));
    }

    #[test]
    fn planted_core_is_complete() {
        let mut spec = GenSpec::new(GenKind::PlantedDense, 12, 3, 1);
        spec.core_size = Some(5);
        let g = hypergraph(&spec).unwrap();
        assert_eq!(g.edge_count() as u64, binomial(5, 3));
        spec.edge_count = Some(4);
        assert_eq!(hypergraph(&spec).unwrap().edge_count() as u64, binomial(5, 3) + 4);
    }

    #[test]
    fn sukp_instances_are_valid() {
        let mut spec = GenSpec::new(GenKind::SukpRandom, 12, 3, 3).with_edges(15);
        spec.vertex_profit_probability = 0.3;
        let s = sukp(&spec).unwrap();
        assert_eq!(s.n(), 12);
        assert_eq!(s.edge_count(), 15);
        assert!(s.edges().iter().all(|e| (2..=3).contains(&e.len())));
        // Round-trips through the validating constructor.
        let again = SukpInstance::new(
            s.n(),
            s.m_cap(),
            s.costs().to_vec(),
            s.budget().clone(),
            s.edges().iter().cloned().zip(s.profits().iter().cloned()).collect(),
            s.vertex_profits().to_vec(),
        )
        .unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn infeasible_specs_rejected() {
        let spec = GenSpec::new(GenKind::UniformRandom, 5, 3, 0).with_edges(11);
        assert!(matches!(generate(&spec), Err(Error::Spec(_))));
        let spec = GenSpec::new(GenKind::UniformRandom, 3, 4, 0);
        assert!(matches!(generate(&spec), Err(Error::Spec(_))));
    }

    #[test]
    fn spec_json_parses() {
        let spec: GenSpec =
            serde_json::from_str(r#"{"kind":"sukp-correlated","n":8,"m":2,"edge_count":6,"seed":9}"#).unwrap();
        assert_eq!(spec.kind, GenKind::SukpCorrelated);
        let s = sukp(&spec).unwrap();
        assert!(s.profits().iter().all(|p| *p > int(0)));
    }
}
