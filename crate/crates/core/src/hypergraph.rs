//! Hypergraphs and integer/rational edge-weighted hypergraphs.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Membership bitmap for a vertex selection, rejecting ids `>= n`.
pub fn membership(n: usize, vertices: &[usize]) -> Result<Vec<bool>> {
    let mut mask = vec![false; n];
    for &v in vertices {
        if v >= n {
            return Err(Error::Input(format!("vertex id {v} out of range (n = {n})")));
        }
        mask[v] = true;
    }
    Ok(mask)
}

/// Sort and dedup a vertex list.
pub fn normalize_set(mut vertices: Vec<usize>) -> Vec<usize> {
    vertices.sort_unstable();
    vertices.dedup();
    vertices
}

/// Validate one edge against `n`/`m_cap`, returning it sorted.
fn checked_edge(n: usize, m_cap: usize, mut edge: Vec<usize>, idx: usize) -> Result<Vec<usize>> {
    if edge.is_empty() {
        return Err(Error::Input(format!("edge {idx} is empty")));
    }
    edge.sort_unstable();
    if edge.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Input(format!("edge {idx} repeats a vertex")));
    }
    if let Some(&v) = edge.last().filter(|&&v| v >= n) {
        return Err(Error::Input(format!("edge {idx} has vertex {v} >= n = {n}")));
    }
    if edge.len() > m_cap {
        return Err(Error::Input(format!(
            "edge {idx} has {} vertices, above the cap {m_cap}",
            edge.len()
        )));
    }
    Ok(edge)
}

/// A hypergraph on vertices `0..n` with distinct edges of size `1..=m_cap`.
///
/// Edges are stored sorted internally and the edge list is kept in
/// lexicographic order, so two hypergraphs with the same edge set compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    m_cap: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n: usize, m_cap: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut edges = edges
            .into_iter()
            .enumerate()
            .map(|(i, e)| checked_edge(n, m_cap, e, i))
            .collect::<Result<Vec<_>>>()?;
        edges.sort();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Input(format!("duplicate edge {:?}", w[0])));
        }
        Ok(Hypergraph { n, m_cap, edges })
    }

    pub fn empty(n: usize, m_cap: usize) -> Self {
        Hypergraph { n, m_cap, edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m_cap(&self) -> usize {
        self.m_cap
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Common edge size, if every edge has the same size. `None` for an
    /// edgeless graph.
    pub fn uniform_size(&self) -> Option<usize> {
        let first = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == first).then_some(first)
    }

    /// The sub-hypergraph keeping only edges of exactly `size` vertices.
    pub fn layer(&self, size: usize) -> Hypergraph {
        Hypergraph {
            n: self.n,
            m_cap: self.m_cap,
            edges: self.edges.iter().filter(|e| e.len() == size).cloned().collect(),
        }
    }

    /// Sizes that occur among the edges, ascending.
    pub fn edge_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.edges.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        sizes.dedup();
        sizes
    }

    /// Number of edges fully contained in `vertices`.
    pub fn induced_count(&self, vertices: &[usize]) -> Result<usize> {
        let mask = membership(self.n, vertices)?;
        Ok(self.count_with_mask(&mask))
    }

    pub(crate) fn count_with_mask(&self, mask: &[bool]) -> usize {
        self.edges.iter().filter(|e| e.iter().all(|&v| mask[v])).count()
    }

    pub fn induced_value(&self, vertices: &[usize]) -> Result<Rational> {
        Ok(int(self.induced_count(vertices)? as i64))
    }

    /// Vertices that lie on at least one edge, ascending.
    pub fn incident_vertices(&self) -> Vec<usize> {
        normalize_set(self.edges.iter().flatten().copied().collect())
    }
}

/// A hypergraph with a positive rational weight on each edge. Multi-hypergraphs
/// are represented with integer weights equal to edge multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedHypergraph {
    base: Hypergraph,
    weights: Vec<Rational>,
}

impl WeightedHypergraph {
    /// Build from `(edge, weight)` pairs. Repeated edges accumulate their
    /// weights; edges whose total weight is zero are dropped; negative weights
    /// are rejected.
    pub fn from_weighted_edges(
        n: usize,
        m_cap: usize,
        edges: Vec<(Vec<usize>, Rational)>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        for (i, (e, w)) in edges.into_iter().enumerate() {
            if w.is_negative() {
                return Err(Error::Input(format!("edge {i} has negative weight {w}")));
            }
            let e = checked_edge(n, m_cap, e, i)?;
            *acc.entry(e).or_insert_with(Rational::zero) += w;
        }
        let (edges, weights): (Vec<_>, Vec<_>) = acc.into_iter().filter(|(_, w)| !w.is_zero()).unzip();
        Ok(WeightedHypergraph {
            base: Hypergraph { n, m_cap, edges },
            weights,
        })
    }

    /// Every edge of `graph` with weight one.
    pub fn unit(graph: Hypergraph) -> Self {
        let weights = vec![int(1); graph.edge_count()];
        WeightedHypergraph { base: graph, weights }
    }

    pub fn base(&self) -> &Hypergraph {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n
    }

    pub fn m_cap(&self) -> usize {
        self.base.m_cap
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.base.edges.iter().zip(&self.weights)
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }

    pub fn total_weight(&self) -> Rational {
        crate::rational::sum(&self.weights)
    }

    pub fn induced_weight(&self, vertices: &[usize]) -> Result<Rational> {
        let mask = membership(self.n(), vertices)?;
        Ok(self
            .edges()
            .filter(|(e, _)| e.iter().all(|&v| mask[v]))
            .fold(Rational::zero(), |acc, (_, w)| acc + w))
    }
}

/// The link multi-hypergraph of a vertex block: every `r`-edge `e` contributes
/// `e \ {v}` once for each `v` in `e ∩ block`. Multiplicities become integer
/// weights. `graph` must be `r`-uniform with `r >= 2`.
pub fn link_multihypergraph(graph: &Hypergraph, block: &[usize]) -> Result<WeightedHypergraph> {
    if block.is_empty() {
        return Err(Error::Input("link block must be nonempty".into()));
    }
    let in_block = membership(graph.n(), block)?;
    let r = match graph.uniform_size() {
        Some(r) => r,
        None if graph.edge_count() == 0 => graph.m_cap(),
        None => return Err(Error::Input("link construction needs a uniform hypergraph".into())),
    };
    if r < 2 {
        return Err(Error::Input(format!("link construction needs edge size >= 2, got {r}")));
    }
    let mut links = Vec::new();
    for e in graph.edges() {
        for &v in e.iter().filter(|&&v| in_block[v]) {
            let rest: Vec<usize> = e.iter().copied().filter(|&u| u != v).collect();
            links.push((rest, int(1)));
        }
    }
    WeightedHypergraph::from_weighted_edges(graph.n(), r - 1, links)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize, m: usize) -> Hypergraph {
        let edges = crate::oracle::Combinations::new(n, m).collect();
        Hypergraph::new(n, m, edges).unwrap()
    }

    #[test]
    fn induced_counts() {
        let k4 = complete(4, 2);
        assert_eq!(k4.induced_count(&[0, 1, 2]).unwrap(), 3);
        assert_eq!(k4.induced_count(&[]).unwrap(), 0);
        assert!(k4.induced_count(&[4]).is_err());
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Hypergraph::new(3, 2, vec![vec![0, 3]]).is_err());
        assert!(Hypergraph::new(3, 2, vec![vec![0, 1, 2]]).is_err());
        assert!(Hypergraph::new(3, 2, vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(Hypergraph::new(3, 2, vec![vec![]]).is_err());
        assert!(Hypergraph::new(3, 2, vec![vec![1, 1]]).is_err());
    }

    #[test]
    fn link_single_vertex() {
        let g = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let l = link_multihypergraph(&g, &[0]).unwrap();
        let got: Vec<_> = l.edges().map(|(e, w)| (e.clone(), w.clone())).collect();
        assert_eq!(got, vec![(vec![1, 2], int(1))]);
    }

    #[test]
    fn link_two_vertices() {
        let g = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let l = link_multihypergraph(&g, &[0, 1]).unwrap();
        let got: Vec<_> = l.edges().map(|(e, w)| (e.clone(), w.clone())).collect();
        assert_eq!(got, vec![(vec![0, 2], int(1)), (vec![1, 2], int(1))]);
    }

    #[test]
    fn link_two_edges() {
        let g = Hypergraph::new(4, 3, vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        let l = link_multihypergraph(&g, &[0]).unwrap();
        let got: Vec<_> = l.edges().map(|(e, w)| (e.clone(), w.clone())).collect();
        assert_eq!(got, vec![(vec![1, 2], int(1)), (vec![1, 3], int(1))]);
    }

    #[test]
    fn link_multiplicity_accumulates() {
        let g = Hypergraph::new(4, 3, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let l = link_multihypergraph(&g, &[0, 3]).unwrap();
        let got: Vec<_> = l.edges().map(|(e, w)| (e.clone(), w.clone())).collect();
        assert_eq!(got, vec![(vec![1, 2], int(2))]);
    }

    #[test]
    fn link_rejects_non_uniform() {
        let g = Hypergraph::new(4, 3, vec![vec![0, 1, 2], vec![1, 3]]).unwrap();
        assert!(link_multihypergraph(&g, &[0]).is_err());
        assert!(link_multihypergraph(&g.layer(3), &[]).is_err());
    }

    #[test]
    fn weighted_drops_zero_and_rejects_negative() {
        let w = WeightedHypergraph::from_weighted_edges(
            3,
            2,
            vec![(vec![0, 1], int(0)), (vec![1, 2], int(3))],
        )
        .unwrap();
        assert_eq!(w.edge_count(), 1);
        assert!(WeightedHypergraph::from_weighted_edges(3, 2, vec![(vec![0, 1], int(-1))]).is_err());
    }
}
