//! Splitting a rounded, bucketed instance into single-profit-level,
//! fixed-bucket-signature subproblems.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::hypergraph::normalize_set;
use crate::instance::{Solution, SukpInstance};
use crate::rational::{floor_log2, int, pow2, Rational};

use super::prepare::BucketedInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ClassTag {
    /// Vertex profits only.
    Knapsack = 1,
    /// Layer 1 is the tiny-cost bucket.
    TinyLayer = 2,
    /// Every layer has a proper cost band.
    Banded = 3,
}

impl ClassTag {
    pub fn number(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Layer {
    pub bucket: usize,
    pub vertices: Vec<usize>,
    /// Exclusive lower cost bound of the bucket (zero for the tiny bucket).
    #[serde(with = "crate::rational::as_string")]
    pub floor: Rational,
}

/// One subproblem. Edges are positional: `edges[e][j]` lies in `layers[j]`,
/// and layers are ordered from the cheapest bucket to the most expensive.
/// Layers built from the same bucket may share vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassInstance {
    pub class_tag: ClassTag,
    /// Common edge profit; `None` for the knapsack class.
    pub profit_level: Option<Rational>,
    pub layers: Vec<Layer>,
    pub edges: Vec<Vec<usize>>,
    pub budget: Rational,
    /// Costs of every item of the parent instance (ids are shared).
    pub costs: Vec<Rational>,
    /// Nonzero only for the knapsack class.
    pub vertex_profits: Vec<Rational>,
}

impl ClassInstance {
    pub fn n(&self) -> usize {
        self.costs.len()
    }

    pub fn order(&self) -> usize {
        self.layers.len()
    }

    pub fn signature(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.bucket).collect()
    }

    /// The subproblem as a standalone instance on the parent's ids.
    pub fn to_instance(&self) -> Result<SukpInstance> {
        let level = self.profit_level.clone().unwrap_or_else(|| int(0));
        SukpInstance::new(
            self.n(),
            self.order().max(1),
            self.costs.clone(),
            self.budget.clone(),
            self.edges.iter().map(|e| (e.clone(), level.clone())).collect(),
            self.vertex_profits.clone(),
        )
    }

    pub fn cost_of(&self, vertices: &[usize]) -> Rational {
        vertices.iter().map(|&v| &self.costs[v]).sum()
    }

    /// Number of class edges inside the selection.
    pub fn covered_edges(&self, vertices: &[usize]) -> usize {
        let mut mask = vec![false; self.n()];
        for &v in vertices {
            mask[v] = true;
        }
        self.edges.iter().filter(|e| e.iter().all(|&v| mask[v])).count()
    }

    /// Cost and value of a selection within this subproblem.
    pub fn evaluate(&self, vertices: &[usize]) -> Solution {
        let vertices = normalize_set(vertices.to_vec());
        let mut value = self
            .profit_level
            .as_ref()
            .map_or_else(|| int(0), |p| p * int(self.covered_edges(&vertices) as i64));
        for &v in &vertices {
            value += &self.vertex_profits[v];
        }
        Solution { total_cost: self.cost_of(&vertices), vertices, value }
    }
}

/// Positional order of an edge: cheapest bucket first, then by id.
fn positional(edge: &[usize], bucket_of: &[usize]) -> Vec<usize> {
    let mut e = edge.to_vec();
    e.sort_by_key(|&v| (Reverse(bucket_of[v]), v));
    e
}

/// Class 1 first, then one instance per (profit level, bucket signature) with
/// at least one edge, heaviest level first. Single-item edges are credited to
/// the knapsack class as vertex profits.
pub fn decompose(b: &BucketedInstance) -> Vec<ClassInstance> {
    let inst = &b.base;
    let mut vertex_profits = inst.vertex_profits().to_vec();
    let mut groups: BTreeMap<(Reverse<i64>, Vec<usize>), Vec<Vec<usize>>> = BTreeMap::new();
    for (e, p) in inst.edges().iter().zip(inst.profits()) {
        if e.len() == 1 {
            vertex_profits[e[0]] += p;
            continue;
        }
        let level = floor_log2(p);
        debug_assert_eq!(&pow2(level), p, "profits must be rounded first");
        let pos = positional(e, &b.bucket_of);
        let sig: Vec<usize> = pos.iter().map(|&v| b.bucket_of[v]).collect();
        groups.entry((Reverse(level), sig)).or_default().push(pos);
    }

    let mut out = vec![ClassInstance {
        class_tag: ClassTag::Knapsack,
        profit_level: None,
        layers: Vec::new(),
        edges: Vec::new(),
        budget: inst.budget().clone(),
        costs: inst.costs().to_vec(),
        vertex_profits,
    }];
    for ((Reverse(level), sig), edges) in groups {
        let layers = sig
            .iter()
            .enumerate()
            .map(|(j, &bucket)| {
                let mut vertices: Vec<usize> = edges.iter().map(|e| e[j]).collect();
                vertices.sort_unstable();
                vertices.dedup();
                Layer { bucket, vertices, floor: b.bucket_floor(bucket) }
            })
            .collect();
        let class_tag = if sig[0] == b.tiny() { ClassTag::TinyLayer } else { ClassTag::Banded };
        out.push(ClassInstance {
            class_tag,
            profit_level: Some(pow2(level)),
            layers,
            edges,
            budget: inst.budget().clone(),
            costs: inst.costs().to_vec(),
            vertex_profits: vec![int(0); inst.n()],
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::prepare::{bucket_costs, round_profits};
    use super::*;
    use crate::rational::ratio;

    fn bucketed(costs: Vec<Rational>, edges: Vec<(Vec<usize>, Rational)>) -> BucketedInstance {
        let n = costs.len();
        let inst = SukpInstance::new(n, 3, costs, int(100), edges, vec![int(0); n]).unwrap();
        bucket_costs(&round_profits(&inst).unwrap())
    }

    #[test]
    fn single_edge_gives_two_classes() {
        let b = bucketed(vec![int(8), int(3), int(1)], vec![(vec![0, 1], int(4))]);
        let cs = decompose(&b);
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0].class_tag, ClassTag::Knapsack);
        assert_eq!(cs[1].class_tag, ClassTag::Banded);
        assert_eq!(cs[1].edges, vec![vec![1, 0]]);
        assert_eq!(cs[1].signature(), vec![2, 1]);
    }

    #[test]
    fn two_levels_same_buckets() {
        let b = bucketed(
            vec![int(4), int(4), int(4), int(4)],
            vec![(vec![0, 1], int(8)), (vec![2, 3], int(2))],
        );
        let cs = decompose(&b);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[1].profit_level, Some(int(8)));
        assert_eq!(cs[2].profit_level, Some(int(2)));
    }

    #[test]
    fn tiny_bucket_goes_first() {
        // n = 3, s = 2, tiny bucket 5 holds costs <= 2^(3-4) = 1/2.
        let b = bucketed(vec![int(8), ratio(1, 4), int(2)], vec![(vec![0, 1, 2], int(1))]);
        let cs = decompose(&b);
        assert_eq!(cs[1].class_tag, ClassTag::TinyLayer);
        assert_eq!(cs[1].edges, vec![vec![1, 2, 0]]);
        assert_eq!(cs[1].layers[0].floor, int(0));
        assert_eq!(cs[1].layers[2].floor, int(4));
    }

    #[test]
    fn shared_bucket_layers() {
        let b = bucketed(
            vec![int(4), int(4), int(4)],
            vec![(vec![0, 1], int(1)), (vec![1, 2], int(1))],
        );
        let cs = decompose(&b);
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[1].layers[0].vertices, vec![0, 1]);
        assert_eq!(cs[1].layers[1].vertices, vec![1, 2]);
    }
}
