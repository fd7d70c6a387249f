//! Weighted densest-k-subhypergraph via geometric weight levels.
//!
//! With `w` the largest weight, every weight is rounded down to the nearest of
//! `w, w/2, ..., w/2^l` (or dropped below `w/2^l`), where
//! `l = ceil(log2 C(n, m))`. Each nonempty level is an unweighted instance;
//! the unweighted solver runs on every level and the level answer with the
//! largest original weight wins. The rounded graph loses at most a factor 4
//! and the level split at most another `l + 2`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, WeightedHypergraph};
use crate::instance::{best_of, Solution};
use crate::oracle::binomial_big;
use crate::rational::{ceil_log2, floor_log2_int, pow2, Rational};

#[derive(Debug, Clone)]
pub struct WeightLevel {
    /// Rounded weight `w / 2^j` shared by every edge of this level.
    pub weight: Rational,
    pub index: usize,
    pub graph: Hypergraph,
}

#[derive(Debug, Clone)]
pub struct RoundedWeights {
    pub l: usize,
    pub max_weight: Rational,
    /// Nonempty levels, heaviest first.
    pub levels: Vec<WeightLevel>,
    /// The rounded graph with every surviving edge at its level weight.
    pub rounded: WeightedHypergraph,
}

/// `l = ceil(log2 C(n, m))`, zero when `C(n, m) <= 1`.
pub fn level_count(n: usize, m: usize) -> usize {
    let x = binomial_big(n, m);
    if x <= num_bigint::BigInt::from(1) {
        return 0;
    }
    let f = floor_log2_int(&x);
    let exact = (num_bigint::BigInt::from(1) << f as usize) == x;
    (if exact { f } else { f + 1 }) as usize
}

pub fn round_weights(graph: &WeightedHypergraph) -> Result<RoundedWeights> {
    let n = graph.n();
    let l = level_count(n, graph.m_cap());
    let Some(w) = graph.weights().iter().max().cloned() else {
        return Ok(RoundedWeights {
            l,
            max_weight: Rational::from_integer(0.into()),
            levels: Vec::new(),
            rounded: graph.clone(),
        });
    };
    let mut per_level: Vec<Vec<Vec<usize>>> = vec![Vec::new(); l + 1];
    for (e, wt) in graph.edges() {
        // Smallest j with w / 2^j <= wt.
        let j = ceil_log2(&(&w / wt));
        debug_assert!(j >= 0);
        if (j as usize) <= l {
            per_level[j as usize].push(e.clone());
        }
    }
    let mut levels = Vec::new();
    let mut rounded_edges = Vec::new();
    for (j, edges) in per_level.into_iter().enumerate() {
        if edges.is_empty() {
            continue;
        }
        let weight = &w * pow2(-(j as i64));
        rounded_edges.extend(edges.iter().map(|e| (e.clone(), weight.clone())));
        levels.push(WeightLevel {
            weight,
            index: j,
            graph: Hypergraph::new(n, graph.m_cap(), edges)?,
        });
    }
    Ok(RoundedWeights {
        l,
        max_weight: w,
        levels,
        rounded: WeightedHypergraph::from_weighted_edges(n, graph.m_cap(), rounded_edges)?,
    })
}

/// Solve a weighted instance with an unweighted solver, one call per
/// nonempty weight level. The returned value is the ORIGINAL induced weight.
pub fn solve_weighted<F>(graph: &WeightedHypergraph, k: usize, solver: F) -> Result<Solution>
where
    F: Fn(&Hypergraph, usize) -> Result<Solution> + Sync,
{
    if k < 1 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    if k > graph.n() {
        return Err(Error::Domain(format!("k = {k} exceeds n = {}", graph.n())));
    }
    let rounded = round_weights(graph)?;
    log::trace!(
        "weighted solve: n={} k={k} l={} nonempty levels={}",
        graph.n(),
        rounded.l,
        rounded.levels.len()
    );
    let results: Vec<Result<Solution>> = rounded
        .levels
        .par_iter()
        .map(|level| {
            let sol = solver(&level.graph, k)?;
            if sol.vertices.len() > k {
                return Err(Error::Input(format!(
                    "level solver returned {} vertices for k = {k}",
                    sol.vertices.len()
                )));
            }
            let value = graph.induced_weight(&sol.vertices)?;
            Ok(Solution::counted(sol.vertices, value))
        })
        .collect();
    let sols = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(best_of(sols).unwrap_or_else(Solution::empty))
}
