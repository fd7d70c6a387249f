//! Pluggable densest-k-subgraph oracles for edge size two.
//!
//! The recursion bottoms out in a graph (edge size <= 2) oracle. Two are
//! provided: brute force within an enumeration budget, and greedy peeling.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::instance::{best_of, Solution};
use crate::oracle::{exact_dksh, OracleBudget};
use crate::rational::{int, Rational};

pub trait BaseOracle: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;

    /// Exponent `a` of the oracle's `n^a` ratio, used to report the
    /// recursion's guarantee exponent.
    fn claimed_exponent(&self) -> Rational;

    /// Must return at most `k` vertices with the value equal to their induced
    /// edge count.
    fn solve(&self, graph: &Hypergraph, k: usize) -> Result<Solution>;
}

fn check_graph(graph: &Hypergraph, k: usize) -> Result<()> {
    if let Some(e) = graph.edges().iter().find(|e| e.len() > 2) {
        return Err(Error::Input(format!("base oracle needs edges of size <= 2, found {e:?}")));
    }
    if k > graph.n() {
        return Err(Error::Domain(format!("k = {k} exceeds n = {}", graph.n())));
    }
    Ok(())
}

#[derive(Debug, Clone, Default)]
pub struct ExactBase {
    pub budget: OracleBudget,
}

impl BaseOracle for ExactBase {
    fn name(&self) -> &str {
        "exact"
    }

    fn claimed_exponent(&self) -> Rational {
        int(0)
    }

    fn solve(&self, graph: &Hypergraph, k: usize) -> Result<Solution> {
        exact_base_oracle(graph, k, &self.budget)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GreedyBase;

impl BaseOracle for GreedyBase {
    fn name(&self) -> &str {
        "greedy"
    }

    fn claimed_exponent(&self) -> Rational {
        int(1)
    }

    fn solve(&self, graph: &Hypergraph, k: usize) -> Result<Solution> {
        greedy_base_oracle(graph, k)
    }
}

pub fn exact_base_oracle(graph: &Hypergraph, k: usize, budget: &OracleBudget) -> Result<Solution> {
    check_graph(graph, k)?;
    exact_dksh(graph, k, budget)
}

/// Better of min-degree peeling down to `k` vertices and the `k` highest
/// degree vertices. Degree ties go to the lowest id.
pub fn greedy_base_oracle(graph: &Hypergraph, k: usize) -> Result<Solution> {
    check_graph(graph, k)?;
    let peeled = peel(graph, k);
    let top = top_degree(graph, k);
    let candidates = [peeled, top]
        .into_iter()
        .map(|vs| {
            let value = graph.induced_value(&vs)?;
            Ok(Solution::counted(vs, value))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(best_of(candidates).expect("two candidates"))
}

fn incidence(graph: &Hypergraph) -> Vec<Vec<usize>> {
    let mut inc = vec![Vec::new(); graph.n()];
    for (i, e) in graph.edges().iter().enumerate() {
        for &v in e {
            inc[v].push(i);
        }
    }
    inc
}

/// Remove a minimum-degree vertex until `k` remain. Works for any edge size:
/// an edge stops counting once any of its vertices is gone.
pub fn peel(graph: &Hypergraph, k: usize) -> Vec<usize> {
    let n = graph.n();
    let inc = incidence(graph);
    let mut degree: Vec<usize> = inc.iter().map(Vec::len).collect();
    let mut alive_edge = vec![true; graph.edge_count()];
    let mut alive = vec![true; n];
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (degree[v], v)).collect();
    let mut remaining = n;
    while remaining > k {
        let (_, v) = queue.pop_first().expect("remaining > k >= 0");
        alive[v] = false;
        remaining -= 1;
        for &ei in &inc[v] {
            if !alive_edge[ei] {
                continue;
            }
            alive_edge[ei] = false;
            for &u in &graph.edges()[ei] {
                if alive[u] {
                    queue.remove(&(degree[u], u));
                    degree[u] -= 1;
                    queue.insert((degree[u], u));
                }
            }
        }
    }
    (0..n).filter(|&v| alive[v]).collect()
}

pub fn top_degree(graph: &Hypergraph, k: usize) -> Vec<usize> {
    let inc = incidence(graph);
    let mut order: Vec<usize> = (0..graph.n()).collect();
    order.sort_by(|&a, &b| inc[b].len().cmp(&inc[a].len()).then(a.cmp(&b)));
    order.truncate(k);
    order.sort_unstable();
    order
}
