//! Instance preparation: unit-edge folding, pruning, profit rounding and cost
//! bucketing.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::instance::SukpInstance;
use crate::rational::{ceil_log2, floor_log2, floor_log2_int, int, pow2, Rational};

/// Move the profit of every single-item edge onto that item's vertex profit.
pub fn fold_unit_edges(inst: &SukpInstance) -> Result<SukpInstance> {
    if inst.edges().iter().all(|e| e.len() >= 2) {
        return Ok(inst.clone());
    }
    let mut vertex_profits = inst.vertex_profits().to_vec();
    let mut edges = Vec::new();
    for (e, p) in inst.edges().iter().zip(inst.profits()) {
        if e.len() == 1 {
            vertex_profits[e[0]] += p;
        } else {
            edges.push((e.clone(), p.clone()));
        }
    }
    SukpInstance::new(
        inst.n(),
        inst.m_cap(),
        inst.costs().to_vec(),
        inst.budget().clone(),
        edges,
        vertex_profits,
    )
}

/// A pruned instance on compact ids; `original_ids[v]` is the input id of `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pruned {
    pub instance: SukpInstance,
    pub original_ids: Vec<usize>,
}

impl Pruned {
    pub fn to_original(&self, vertices: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = vertices.iter().map(|&v| self.original_ids[v]).collect();
        out.sort_unstable();
        out
    }
}

/// Drop items costing more than `B`, edges whose items cost more than `B` in
/// total, and zero-profit edges. None of them can contribute to a feasible
/// selection, so the optimum is unchanged.
pub fn prune(inst: &SukpInstance) -> Result<Pruned> {
    let b = inst.budget();
    let original_ids: Vec<usize> = (0..inst.n()).filter(|&v| &inst.costs()[v] <= b).collect();
    let mut new_id = vec![usize::MAX; inst.n()];
    for (i, &v) in original_ids.iter().enumerate() {
        new_id[v] = i;
    }
    let mut edges = Vec::new();
    for (e, p) in inst.edges().iter().zip(inst.profits()) {
        if p.is_zero() || e.iter().any(|&v| new_id[v] == usize::MAX) {
            continue;
        }
        let total: Rational = e.iter().map(|&v| &inst.costs()[v]).sum();
        if &total > b {
            continue;
        }
        edges.push((e.iter().map(|&v| new_id[v]).collect(), p.clone()));
    }
    let instance = SukpInstance::new(
        original_ids.len(),
        inst.m_cap(),
        original_ids.iter().map(|&v| inst.costs()[v].clone()).collect(),
        b.clone(),
        edges,
        original_ids.iter().map(|&v| inst.vertex_profits()[v].clone()).collect(),
    )?;
    Ok(Pruned { instance, original_ids })
}

/// `q`: the smallest integer above `r * log2 n`.
pub fn rounding_depth(n: usize, r: usize) -> i64 {
    if n == 0 {
        return 1;
    }
    floor_log2_int(&BigInt::from(n).pow(r as u32)) + 1
}

/// Round every edge profit down to the nearest of `2^l, ..., 2^(l-q)` (with
/// `2^l <= max profit < 2^(l+1)`), dropping edges that fall below `2^(l-q)`.
/// Vertex profits are untouched.
pub fn round_profits(inst: &SukpInstance) -> Result<SukpInstance> {
    let positive: Vec<&Rational> = inst.profits().iter().filter(|p| p.is_positive()).collect();
    let Some(max) = positive.iter().max() else {
        return SukpInstance::new(
            inst.n(),
            inst.m_cap(),
            inst.costs().to_vec(),
            inst.budget().clone(),
            Vec::new(),
            inst.vertex_profits().to_vec(),
        );
    };
    let l = floor_log2(max);
    let q = rounding_depth(inst.n(), inst.max_edge_size().max(1));
    let edges = inst
        .edges()
        .iter()
        .zip(inst.profits())
        .filter(|(_, p)| p.is_positive())
        .filter_map(|(e, p)| {
            let j = floor_log2(p);
            (j >= l - q).then(|| (e.clone(), pow2(j)))
        })
        .collect();
    SukpInstance::new(
        inst.n(),
        inst.m_cap(),
        inst.costs().to_vec(),
        inst.budget().clone(),
        edges,
        inst.vertex_profits().to_vec(),
    )
}

/// Items grouped into power-of-two cost bands `1..=s+3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BucketedInstance {
    pub base: SukpInstance,
    pub bucket_of: Vec<usize>,
    /// `2^k_pow` is the smallest power of two at least the largest cost.
    pub k_pow: i64,
    /// The smallest integer above `log2 n`.
    pub s: usize,
}

impl BucketedInstance {
    /// Index of the tiny-cost bucket.
    pub fn tiny(&self) -> usize {
        self.s + 3
    }

    /// Exclusive lower cost bound of bucket `i` (`0` for the tiny bucket).
    pub fn bucket_floor(&self, i: usize) -> Rational {
        if i >= self.tiny() {
            int(0)
        } else {
            pow2(self.k_pow - i as i64)
        }
    }

    /// Inclusive upper cost bound of bucket `i`.
    pub fn bucket_ceiling(&self, i: usize) -> Rational {
        if i >= self.tiny() {
            pow2(self.k_pow - self.s as i64 - 2)
        } else {
            pow2(self.k_pow + 1 - i as i64)
        }
    }

    pub fn members(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, &b) in self.bucket_of.iter().enumerate() {
            out.entry(b).or_default().push(v);
        }
        out
    }
}

pub fn bucket_costs(inst: &SukpInstance) -> BucketedInstance {
    let n = inst.n();
    let s = if n == 0 { 1 } else { floor_log2_int(&BigInt::from(n)) as usize + 1 };
    let tiny = s + 3;
    let max = inst.costs().iter().max().cloned().unwrap_or_else(Rational::zero);
    let k_pow = if max.is_positive() { ceil_log2(&max) } else { 0 };
    let bucket_of = inst
        .costs()
        .iter()
        .map(|c| {
            if !c.is_positive() {
                return tiny;
            }
            // 2^(k-i) < c <= 2^(k+1-i)  <=>  i = k + 1 - ceil(log2 c)
            let i = k_pow + 1 - ceil_log2(c);
            debug_assert!(i >= 1);
            if i as usize > s + 2 {
                tiny
            } else {
                i as usize
            }
        })
        .collect();
    BucketedInstance { base: inst.clone(), bucket_of, k_pow, s }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{exact_sukp, OracleBudget};
    use crate::rational::ratio;

    fn sukp(costs: Vec<Rational>, b: Rational, edges: Vec<(Vec<usize>, Rational)>) -> SukpInstance {
        let n = costs.len();
        SukpInstance::new(n, 3, costs, b, edges, vec![int(0); n]).unwrap()
    }

    #[test]
    fn prune_expensive_vertex() {
        let inst = sukp(vec![int(5), int(1)], int(2), vec![(vec![0, 1], int(3))]);
        let p = prune(&inst).unwrap();
        assert_eq!(p.instance.n(), 1);
        assert_eq!(p.original_ids, vec![1]);
        assert_eq!(p.instance.edge_count(), 0);
    }

    #[test]
    fn prune_zero_profit_edge() {
        let inst = sukp(vec![int(1), int(1)], int(2), vec![(vec![0, 1], int(0))]);
        let p = prune(&inst).unwrap();
        assert_eq!(p.instance.edge_count(), 0);
        assert_eq!(exact_sukp(&p.instance, &OracleBudget::default()).unwrap().value, int(0));
    }

    #[test]
    fn prune_identity_when_feasible() {
        let inst = sukp(vec![int(1), int(1), int(1)], int(3), vec![(vec![0, 1], int(2)), (vec![1, 2], int(1))]);
        let p = prune(&inst).unwrap();
        assert_eq!(p.instance, inst);
    }

    #[test]
    fn prune_heavy_edge() {
        let inst = sukp(vec![int(2), int(2), int(1)], int(3), vec![(vec![0, 1], int(9)), (vec![1, 2], int(1))]);
        let p = prune(&inst).unwrap();
        assert_eq!(p.instance.edges(), &[vec![1, 2]]);
    }

    #[test]
    fn rounding_example() {
        let inst = SukpInstance::new(
            4,
            2,
            vec![int(1); 4],
            int(4),
            vec![
                (vec![0, 1], int(10)),
                (vec![1, 2], int(7)),
                (vec![2, 3], int(3)),
                (vec![0, 3], int(1)),
            ],
            vec![int(0); 4],
        )
        .unwrap();
        assert_eq!(rounding_depth(4, 2), 5);
        let r = round_profits(&inst).unwrap();
        assert_eq!(r.profits(), &[int(8), int(1), int(4), int(2)]);
    }

    #[test]
    fn rounding_single() {
        let inst = sukp(vec![int(1), int(1)], int(2), vec![(vec![0, 1], int(5))]);
        assert_eq!(round_profits(&inst).unwrap().profits(), &[int(4)]);
    }

    #[test]
    fn rounding_drops_tiny_profits() {
        // n = 3, r = 2: q = 4, so next to 100 (l = 6) anything below 4 vanishes.
        let inst = SukpInstance::new(
            3,
            2,
            vec![int(1); 3],
            int(3),
            vec![(vec![0, 1], int(100)), (vec![0, 2], int(5)), (vec![1, 2], ratio(7, 2))],
            vec![int(0); 3],
        )
        .unwrap();
        let r = round_profits(&inst).unwrap();
        assert_eq!(r.edges(), &[vec![0, 1], vec![0, 2]]);
        assert_eq!(r.profits(), &[int(64), int(4)]);
    }

    #[test]
    fn all_zero_profits_give_edge_free() {
        let inst = sukp(vec![int(1), int(1)], int(2), vec![(vec![0, 1], int(0))]);
        assert_eq!(round_profits(&inst).unwrap().edge_count(), 0);
    }

    #[test]
    fn buckets_equal_costs() {
        let b = bucket_costs(&sukp(vec![int(8); 3], int(8), vec![]));
        assert_eq!(b.k_pow, 3);
        assert_eq!(b.bucket_of, vec![1, 1, 1]);
    }

    #[test]
    fn buckets_follow_inequalities() {
        let b = bucket_costs(&sukp(vec![int(8), int(3), int(1), ratio(1, 64)], int(8), vec![]));
        assert_eq!(b.s, 3);
        assert_eq!(b.bucket_of, vec![1, 2, 4, 6]);
        for (v, &i) in b.bucket_of.iter().enumerate() {
            let c = &b.base.costs()[v];
            assert!(c > &b.bucket_floor(i) && c <= &b.bucket_ceiling(i));
        }
    }

    #[test]
    fn tiny_bucket_boundary() {
        // n = 3: s = 2, tiny bucket holds costs <= 2^(k-4).
        let b = bucket_costs(&sukp(vec![int(16), ratio(1, 2), int(0)], int(16), vec![]));
        assert_eq!(b.k_pow, 4);
        assert_eq!(b.s, 2);
        assert_eq!(b.bucket_of, vec![1, 5, 5]);
        let b = bucket_costs(&sukp(vec![int(16), int(2)], int(16), vec![]));
        assert_eq!(b.bucket_of, vec![1, 4]);
    }

    #[test]
    fn fold_moves_unit_edges() {
        let inst = SukpInstance::new(
            3,
            2,
            vec![int(1); 3],
            int(2),
            vec![(vec![1], int(4)), (vec![0, 2], int(1))],
            vec![int(1), int(0), int(0)],
        )
        .unwrap();
        let f = fold_unit_edges(&inst).unwrap();
        assert_eq!(f.vertex_profits(), &[int(1), int(4), int(0)]);
        assert_eq!(f.edge_count(), 1);
    }
}
