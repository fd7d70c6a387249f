//! Densest k-subhypergraph approximation.
//!
//! [`approx_dksh`] runs every applicable strategy and keeps the best feasible
//! answer, evaluated in the input graph:
//!
//! * exact enumeration for small `n` or `k < 4m` (when within budget),
//! * the edge-union solver ([`solve_trivial`]),
//! * for edge size 2, the configured [`BaseOracle`],
//! * for edge size `m >= 3`, the link recursion: the vertices are cut into
//!   consecutive blocks of `floor(k/2)` ids; each block's link
//!   multi-hypergraph (edge size `m - 1`) is solved as a weighted instance with
//!   budget `floor(k/2)` through [`solve_weighted`] and a recursive call, and
//!   the answer is united with the block,
//! * for graphs with mixed edge sizes, the same solver on each smaller
//!   edge-size layer.

mod base;
mod trivial;
mod weighted;

use std::sync::Arc;

use num_traits::Signed;
use rayon::prelude::*;

pub use base::{exact_base_oracle, greedy_base_oracle, peel, top_degree, BaseOracle, ExactBase, GreedyBase};
pub use trivial::solve_trivial;
pub use weighted::{level_count, round_weights, solve_weighted, RoundedWeights, WeightLevel};

use crate::error::{Error, Result};
use crate::exponents::theta_with_base;
use crate::hypergraph::{link_multihypergraph, normalize_set, Hypergraph};
use crate::instance::{best_of, Solution};
use crate::oracle::{exact_dksh, OracleBudget};
use crate::rational::{int, ratio, to_f64, Rational};

/// Enumeration budget for the exact branch inside the approximation. Kept well
/// below the standalone oracle default so nested calls stay cheap.
pub const DEFAULT_INNER_SUBSETS: u64 = 200_000;

#[derive(Debug, Clone)]
pub struct DkshConfig {
    /// Carried through the recursion unchanged; the implemented strategies do
    /// not trade accuracy for time.
    pub epsilon: Rational,
    /// Instances with `n <= exact_cutoff_n` are also solved exactly.
    pub exact_cutoff_n: usize,
    pub base: Arc<dyn BaseOracle>,
    pub seed: u64,
    pub oracle_budget: OracleBudget,
}

impl Default for DkshConfig {
    fn default() -> Self {
        DkshConfig {
            epsilon: ratio(1, 10),
            exact_cutoff_n: 0,
            base: Arc::new(GreedyBase),
            seed: 0,
            oracle_budget: OracleBudget {
                max_subsets: DEFAULT_INNER_SUBSETS,
                ..OracleBudget::default()
            },
        }
    }
}

impl DkshConfig {
    pub fn with_base(mut self, base: Arc<dyn BaseOracle>) -> Self {
        self.base = base;
        self
    }

    pub fn with_exact_cutoff(mut self, n: usize) -> Self {
        self.exact_cutoff_n = n;
        self
    }

    /// Guarantee exponent `theta_m` implied by the base oracle's exponent.
    pub fn guarantee_exponent(&self, m: usize) -> Option<Rational> {
        if m < 2 {
            return Some(int(0));
        }
        theta_with_base(m as u64, &self.base.claimed_exponent()).ok()
    }
}

fn check_args(graph: &Hypergraph, k: usize, m: usize, cfg: &DkshConfig) -> Result<()> {
    if !cfg.epsilon.is_positive() {
        return Err(Error::Domain("epsilon must be positive".into()));
    }
    if k < 1 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    if k > graph.n() {
        return Err(Error::Domain(format!("k = {k} exceeds n = {}", graph.n())));
    }
    if m < 1 {
        return Err(Error::Domain("m must be at least 1".into()));
    }
    if let Some(e) = graph.edges().iter().find(|e| e.len() > m) {
        return Err(Error::Input(format!("edge {e:?} has more than m = {m} vertices")));
    }
    Ok(())
}

/// Approximate `MAX[G, k]` for a hypergraph with edges of size at most `m`.
pub fn approx_dksh(graph: &Hypergraph, k: usize, m: usize, cfg: &DkshConfig) -> Result<Solution> {
    check_args(graph, k, m, cfg)?;
    let n = graph.n();
    let mut candidates = vec![solve_trivial(graph, k, m)?];

    if graph.edge_count() == 0 {
        return Ok(candidates.pop().unwrap());
    }

    if n <= cfg.exact_cutoff_n || k < 4 * m {
        match exact_dksh(graph, k, &cfg.oracle_budget) {
            Ok(sol) => {
                candidates.push(sol);
                return Ok(best_of(candidates).unwrap());
            }
            Err(Error::OracleRefused(why)) => log::debug!("exact branch skipped: {why}"),
            Err(e) => return Err(e),
        }
    } else {
        // Smaller selections stay feasible; keeps the value monotone in k
        // across the switch from the exact branch.
        match exact_dksh(graph, 4 * m - 1, &cfg.oracle_budget) {
            Ok(sol) => candidates.push(sol),
            Err(Error::OracleRefused(why)) => log::debug!("small exact branch skipped: {why}"),
            Err(e) => return Err(e),
        }
    }

    if m >= 2 && log::log_enabled!(log::Level::Debug) {
        let th = theta_with_base(m as u64, &cfg.base.claimed_exponent())
            .map(|t| to_f64(&t))
            .unwrap_or(f64::NAN);
        let threshold = (n as f64).powf(th / (m as f64 - 1.0).max(1.0));
        log::debug!("n={n} k={k} m={m}: k-threshold n^(theta/(m-1)) = {threshold:.3}");
    }

    let top = graph.layer(m);
    if top.edge_count() > 0 {
        if m == 2 {
            let sol = cfg.base.solve(&top, k)?;
            candidates.push(sol);
        } else if m >= 3 {
            candidates.extend(link_branch(&top, k, m, cfg)?);
            // Heuristic only; carries no guarantee of its own.
            candidates.push(Solution::counted(peel(&top, k), int(0)));
        }
    }

    // Smaller edge sizes are handled as their own uniform instances.
    for t in graph.edge_sizes() {
        if t < m && t >= 2 {
            candidates.push(approx_dksh(&graph.layer(t), k, t, cfg)?);
        }
    }

    let evaluated = candidates
        .into_iter()
        .map(|c| {
            if c.vertices.len() > k {
                return Err(Error::Input(format!("branch returned {} > k vertices", c.vertices.len())));
            }
            let value = graph.induced_value(&c.vertices)?;
            Ok(Solution::counted(c.vertices, value))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(best_of(evaluated).expect("trivial candidate is always present"))
}

/// One candidate per vertex block: solve the block's link graph with budget
/// `floor(k/2)` and add the block back.
fn link_branch(top: &Hypergraph, k: usize, m: usize, cfg: &DkshConfig) -> Result<Vec<Solution>> {
    let half = k / 2;
    if half == 0 {
        return Ok(Vec::new());
    }
    let ids: Vec<usize> = (0..top.n()).collect();
    let blocks: Vec<&[usize]> = ids.chunks(half).collect();
    log::trace!("link branch: m={m} k={k} blocks={}", blocks.len());
    let results: Vec<Result<Option<Solution>>> = blocks
        .par_iter()
        .map(|block| {
            let link = link_multihypergraph(top, block)?;
            if link.edge_count() == 0 {
                return Ok(None);
            }
            let sub = solve_weighted(&link, half, |g, kk| approx_dksh(g, kk, m - 1, cfg))?;
            let mut vertices = sub.vertices;
            vertices.extend_from_slice(block);
            let vertices = normalize_set(vertices);
            Ok(Some(Solution::counted(vertices, int(0))))
        })
        .collect();
    results
        .into_iter()
        .filter_map(Result::transpose)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Combinations;

    fn exact_cfg() -> DkshConfig {
        DkshConfig::default().with_base(Arc::new(ExactBase::default()))
    }

    #[test]
    fn clique_k4() {
        let g = Hypergraph::new(4, 2, Combinations::new(4, 2).collect()).unwrap();
        assert_eq!(approx_dksh(&g, 3, 2, &exact_cfg()).unwrap().value, int(3));
    }

    #[test]
    fn two_disjoint_triples() {
        let g = Hypergraph::new(12, 3, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let sol = approx_dksh(&g, 3, 3, &exact_cfg()).unwrap();
        assert_eq!(sol.value, int(1));
        assert!(sol.vertices.len() <= 3);
    }

    #[test]
    fn no_edges() {
        let g = Hypergraph::empty(9, 3);
        assert_eq!(approx_dksh(&g, 4, 3, &DkshConfig::default()).unwrap().value, int(0));
    }

    #[test]
    fn argument_checks() {
        let g = Hypergraph::empty(3, 2);
        assert!(matches!(approx_dksh(&g, 4, 2, &DkshConfig::default()), Err(Error::Domain(_))));
        assert!(matches!(approx_dksh(&g, 0, 2, &DkshConfig::default()), Err(Error::Domain(_))));
        let bad_eps = DkshConfig { epsilon: int(0), ..DkshConfig::default() };
        assert!(approx_dksh(&g, 1, 2, &bad_eps).is_err());
    }

    #[test]
    fn link_branch_runs_without_exact() {
        // Large enough that the exact branch is refused, so the link branch matters.
        let mut edges: Vec<Vec<usize>> = Combinations::new(8, 3).collect();
        edges.extend((8..40).step_by(3).map(|v| vec![v, v + 1, v + 2]).filter(|e| e[2] < 40));
        let g = Hypergraph::new(40, 3, edges).unwrap();
        let cfg = DkshConfig {
            oracle_budget: OracleBudget { max_subsets: 10, ..OracleBudget::default() },
            ..DkshConfig::default()
        };
        let sol = approx_dksh(&g, 16, 3, &cfg).unwrap();
        assert!(sol.vertices.len() <= 16);
        // The planted K_8^(3) holds 56 edges; it fits in 16 vertices.
        assert!(sol.value >= int(56), "value {}", sol.value);
        let trivial = solve_trivial(&g, 16, 3).unwrap();
        assert!(sol.value >= trivial.value);
    }

    #[test]
    fn mixed_edge_sizes() {
        let g = Hypergraph::new(
            30,
            3,
            vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![1, 3], vec![0, 3], vec![2, 3], vec![10, 11, 12]],
        )
        .unwrap();
        let cfg = DkshConfig {
            oracle_budget: OracleBudget { max_subsets: 10, ..OracleBudget::default() },
            ..DkshConfig::default()
        };
        let sol = approx_dksh(&g, 4, 3, &cfg).unwrap();
        assert_eq!(sol.value, int(6));
    }
}
