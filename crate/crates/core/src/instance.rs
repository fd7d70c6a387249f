//! Set-union-knapsack instances and solver results.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{membership, normalize_set};
use crate::rational::{int, sum, Rational};

/// Items `0..n` with costs, a budget, profit-carrying item subsets ("edges")
/// and optional per-item profits. All quantities are nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SukpInstance {
    n: usize,
    m_cap: usize,
    costs: Vec<Rational>,
    budget: Rational,
    edges: Vec<Vec<usize>>,
    profits: Vec<Rational>,
    vertex_profits: Vec<Rational>,
}

impl SukpInstance {
    /// Validates every invariant. Edges are sorted internally and the edge
    /// list is ordered lexicographically (profits follow their edge).
    pub fn new(
        n: usize,
        m_cap: usize,
        costs: Vec<Rational>,
        budget: Rational,
        edges: Vec<(Vec<usize>, Rational)>,
        vertex_profits: Vec<Rational>,
    ) -> Result<Self> {
        if costs.len() != n {
            return Err(Error::Input(format!("{} costs for {n} items", costs.len())));
        }
        if vertex_profits.len() != n {
            return Err(Error::Input(format!(
                "{} vertex profits for {n} items",
                vertex_profits.len()
            )));
        }
        if let Some(i) = costs.iter().position(Signed::is_negative) {
            return Err(Error::Input(format!("cost of item {i} is negative")));
        }
        if let Some(i) = vertex_profits.iter().position(Signed::is_negative) {
            return Err(Error::Input(format!("vertex profit of item {i} is negative")));
        }
        if budget.is_negative() {
            return Err(Error::Input("budget is negative".into()));
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for (i, (mut e, p)) in edges.into_iter().enumerate() {
            if e.is_empty() {
                return Err(Error::Input(format!("edge {i} is empty")));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Input(format!("edge {i} repeats an item")));
            }
            if e[e.len() - 1] >= n {
                return Err(Error::Input(format!("edge {i} has item id >= n = {n}")));
            }
            if e.len() > m_cap {
                return Err(Error::Input(format!("edge {i} exceeds the size cap {m_cap}")));
            }
            if p.is_negative() {
                return Err(Error::Input(format!("edge {i} has negative profit")));
            }
            pairs.push((e, p));
        }
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = pairs.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::Input(format!("duplicate edge {:?}", w[0].0)));
        }
        let (edges, profits) = pairs.into_iter().unzip();
        Ok(SukpInstance {
            n,
            m_cap,
            costs,
            budget,
            edges,
            profits,
            vertex_profits,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m_cap(&self) -> usize {
        self.m_cap
    }

    pub fn costs(&self) -> &[Rational] {
        &self.costs
    }

    pub fn budget(&self) -> &Rational {
        &self.budget
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn profits(&self) -> &[Rational] {
        &self.profits
    }

    pub fn vertex_profits(&self) -> &[Rational] {
        &self.vertex_profits
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Largest edge size present (0 when edgeless).
    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn with_budget(&self, budget: Rational) -> Result<Self> {
        if budget.is_negative() {
            return Err(Error::Input("budget is negative".into()));
        }
        Ok(SukpInstance { budget, ..self.clone() })
    }

    pub fn cost_of(&self, vertices: &[usize]) -> Result<Rational> {
        membership(self.n, vertices)?;
        Ok(sum(normalize_set(vertices.to_vec()).iter().map(|&v| &self.costs[v])))
    }

    /// Vertex profits of the selection plus profits of every edge it contains.
    pub fn induced_value(&self, vertices: &[usize]) -> Result<Rational> {
        let mask = membership(self.n, vertices)?;
        Ok(self.value_with_mask(&mask))
    }

    pub(crate) fn value_with_mask(&self, mask: &[bool]) -> Rational {
        let mut total = Rational::zero();
        for (v, p) in self.vertex_profits.iter().enumerate() {
            if mask[v] && !p.is_zero() {
                total += p;
            }
        }
        for (e, p) in self.edges.iter().zip(&self.profits) {
            if e.iter().all(|&v| mask[v]) {
                total += p;
            }
        }
        total
    }

    /// Recompute cost and value for a selection.
    pub fn evaluate(&self, vertices: &[usize]) -> Result<Solution> {
        let vertices = normalize_set(vertices.to_vec());
        let value = self.induced_value(&vertices)?;
        let total_cost = self.cost_of(&vertices)?;
        Ok(Solution { vertices, total_cost, value })
    }

    pub fn is_feasible(&self, solution: &Solution) -> bool {
        solution.total_cost <= self.budget
    }
}

/// A selected vertex set with its recomputed cost and objective value.
///
/// For cardinality problems the cost is the number of selected vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub vertices: Vec<usize>,
    #[serde(with = "crate::rational::as_string")]
    pub total_cost: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub value: Rational,
}

impl Solution {
    pub fn empty() -> Self {
        Solution {
            vertices: Vec::new(),
            total_cost: Rational::zero(),
            value: Rational::zero(),
        }
    }

    /// Cardinality-problem solution: cost = |vertices|.
    pub fn counted(vertices: Vec<usize>, value: Rational) -> Self {
        let vertices = normalize_set(vertices);
        let total_cost = int(vertices.len() as i64);
        Solution { vertices, total_cost, value }
    }

    /// Preference order used by every solver: higher value first, then the
    /// lexicographically smaller vertex list. `Greater` means `self` wins.
    pub fn preference(&self, other: &Solution) -> Ordering {
        self.value
            .cmp(&other.value)
            .then_with(|| other.vertices.cmp(&self.vertices))
    }
}

/// Deterministic max over candidates under [`Solution::preference`].
pub fn best_of(candidates: impl IntoIterator<Item = Solution>) -> Option<Solution> {
    candidates.into_iter().fold(None, |best, c| match best {
        Some(b) if b.preference(&c) != Ordering::Less => Some(b),
        _ => Some(c),
    })
}
