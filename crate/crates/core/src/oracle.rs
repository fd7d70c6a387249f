//! Exhaustive ground-truth solvers.
//!
//! These enumerate every candidate and never approximate: if enumeration
//! would exceed the configured budget they refuse with
//! [`Error::OracleRefused`]. Witnesses are the lexicographically least
//! optimal vertex lists.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, WeightedHypergraph};
use crate::instance::{SukpInstance, Solution};
use crate::rational::{common_scale_i128, int, Rational};

pub const DEFAULT_MAX_SUBSETS: u64 = 10_000_000;
pub const DEFAULT_MAX_SUKP_ITEMS: usize = 24;

/// Enumeration limits for the exact oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest `C(n, k)` the cardinality oracles will enumerate.
    pub max_subsets: u64,
    /// Largest `n` for which the knapsack oracle enumerates all `2^n` sets.
    pub max_sukp_items: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_subsets: DEFAULT_MAX_SUBSETS,
            max_sukp_items: DEFAULT_MAX_SUKP_ITEMS,
        }
    }
}

/// `C(n, k)` saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Exact `C(n, k)` as a big integer.
pub fn binomial_big(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All `k`-subsets of `0..n` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let k = cur.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if cur[i] < self.n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

fn edge_masks(edges: &[Vec<usize>]) -> Vec<u128> {
    edges
        .iter()
        .map(|e| e.iter().fold(0u128, |m, &v| m | (1u128 << v)))
        .collect()
}

fn check_cardinality(n: usize, k: usize, budget: &OracleBudget) -> Result<()> {
    if k > n {
        return Err(Error::Domain(format!("k = {k} exceeds n = {n}")));
    }
    if n > 128 {
        return Err(Error::OracleRefused(format!("n = {n} exceeds the 128-vertex oracle limit")));
    }
    let count = binomial(n, k);
    if count > budget.max_subsets {
        return Err(Error::OracleRefused(format!(
            "C({n}, {k}) = {count} exceeds the enumeration budget {}",
            budget.max_subsets
        )));
    }
    Ok(())
}

/// Best `k`-subset under an arbitrary per-edge score; returns the witness and
/// the index-sum of contained edges' scores.
fn best_k_subset<T>(n: usize, k: usize, masks: &[u128], scores: &[T]) -> (Vec<usize>, T)
where
    T: Copy + Zero + PartialOrd + std::ops::AddAssign,
{
    let mut best: Option<(Vec<usize>, T)> = None;
    for combo in Combinations::new(n, k) {
        let sel = combo.iter().fold(0u128, |m, &v| m | (1u128 << v));
        let mut val = T::zero();
        for (em, s) in masks.iter().zip(scores) {
            if em & sel == *em {
                val += *s;
            }
        }
        if best.as_ref().is_none_or(|(_, b)| val > *b) {
            best = Some((combo, val));
        }
    }
    best.expect("at least one subset")
}

/// `MAX[G, k]`: the most edges induced by any `k` vertices.
pub fn exact_dksh(graph: &Hypergraph, k: usize, budget: &OracleBudget) -> Result<Solution> {
    check_cardinality(graph.n(), k, budget)?;
    let masks = edge_masks(graph.edges());
    let ones = vec![1u64; masks.len()];
    let (vertices, val) = best_k_subset(graph.n(), k, &masks, &ones);
    Ok(Solution::counted(vertices, int(val as i64)))
}

/// Weighted `MAX[G, k]`: the largest total edge weight induced by `k` vertices.
pub fn exact_weighted_dksh(
    graph: &WeightedHypergraph,
    k: usize,
    budget: &OracleBudget,
) -> Result<Solution> {
    check_cardinality(graph.n(), k, budget)?;
    let masks = edge_masks(graph.base().edges());
    let vertices = match common_scale_i128(graph.weights()) {
        Some((scaled, _)) => best_k_subset(graph.n(), k, &masks, &scaled).0,
        None => {
            // Arbitrary precision fallback.
            let mut best: Option<(Vec<usize>, Rational)> = None;
            for combo in Combinations::new(graph.n(), k) {
                let val = graph.induced_weight(&combo)?;
                if best.as_ref().is_none_or(|(_, b)| val > *b) {
                    best = Some((combo, val));
                }
            }
            best.expect("at least one subset").0
        }
    };
    let value = graph.induced_weight(&vertices)?;
    Ok(Solution::counted(vertices, value))
}

fn mask_to_vec(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Lexicographic comparison of the sorted vertex lists of two masks.
fn lex_less(a: u64, b: u64) -> bool {
    mask_to_vec(a) < mask_to_vec(b)
}

/// Split lookup: value of a mask as `low[mask & LOW] + high[mask >> SPLIT]`.
struct SplitTable {
    split: usize,
    low: Vec<i128>,
    high: Vec<i128>,
}

impl SplitTable {
    fn new(values: &[i128]) -> Self {
        let n = values.len();
        let split = n / 2;
        let build = |vals: &[i128]| {
            let mut t = vec![0i128; 1 << vals.len()];
            for mask in 1..t.len() {
                let low = mask.trailing_zeros() as usize;
                t[mask] = t[mask & (mask - 1)] + vals[low];
            }
            t
        };
        SplitTable {
            split,
            low: build(&values[..split]),
            high: build(&values[split..]),
        }
    }

    fn get(&self, mask: u64) -> i128 {
        let lo = (mask & ((1u64 << self.split) - 1)) as usize;
        let hi = (mask >> self.split) as usize;
        self.low[lo] + self.high[hi]
    }
}

/// `MAX[H, B]`: the best feasible selection over all `2^n` subsets.
pub fn exact_sukp(inst: &SukpInstance, budget: &OracleBudget) -> Result<Solution> {
    let n = inst.n();
    if n > budget.max_sukp_items.min(40) {
        return Err(Error::OracleRefused(format!(
            "2^{n} subsets exceeds the enumeration budget (n <= {})",
            budget.max_sukp_items.min(40)
        )));
    }
    let mut costs = inst.costs().to_vec();
    costs.push(inst.budget().clone());
    let mut profits = inst.vertex_profits().to_vec();
    profits.extend_from_slice(inst.profits());
    let (Some((c_scaled, _)), Some((p_scaled, _))) = (common_scale_i128(&costs), common_scale_i128(&profits))
    else {
        return exact_sukp_slow(inst);
    };
    let cap = c_scaled[n];
    let cost_table = SplitTable::new(&c_scaled[..n]);
    let vprofit_table = SplitTable::new(&p_scaled[..n]);
    let edge_profits = &p_scaled[n..];
    let masks: Vec<u64> = inst
        .edges()
        .iter()
        .map(|e| e.iter().fold(0u64, |m, &v| m | (1u64 << v)))
        .collect();

    let mut best_mask = 0u64;
    let mut best_val = i128::MIN;
    for sel in 0..(1u64 << n) {
        if cost_table.get(sel) > cap {
            continue;
        }
        let mut val = vprofit_table.get(sel);
        for (em, p) in masks.iter().zip(edge_profits) {
            if em & sel == *em {
                val += p;
            }
        }
        if val > best_val || (val == best_val && lex_less(sel, best_mask)) {
            best_val = val;
            best_mask = sel;
        }
    }
    inst.evaluate(&mask_to_vec(best_mask))
}

fn exact_sukp_slow(inst: &SukpInstance) -> Result<Solution> {
    let n = inst.n();
    let mut best: Option<Solution> = None;
    for sel in 0..(1u64 << n) {
        let sol = inst.evaluate(&mask_to_vec(sel))?;
        if !inst.is_feasible(&sol) {
            continue;
        }
        best = crate::instance::best_of(best.into_iter().chain(std::iter::once(sol)));
    }
    Ok(best.expect("the empty set is always feasible"))
}

/// Convenience for tests and the harness: `MAX[G, k]` as a plain count.
pub fn max_edges(graph: &Hypergraph, k: usize, budget: &OracleBudget) -> Result<u64> {
    let sol = exact_dksh(graph, k, budget)?;
    Ok(sol.value.to_integer().to_u64().unwrap_or(u64::MAX))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn complete(n: usize, m: usize) -> Hypergraph {
        Hypergraph::new(n, m, Combinations::new(n, m).collect()).unwrap()
    }

    #[test]
    fn combinations_lexicographic() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
        assert_eq!(Combinations::new(12, 5).count() as u64, binomial(12, 5));
    }

    #[test]
    fn exact_dksh_closed_forms() {
        let sol = exact_dksh(&complete(4, 2), 3, &OracleBudget::default()).unwrap();
        assert_eq!(sol.value, int(3));
        assert_eq!(sol.vertices, vec![0, 1, 2]);
        let sol = exact_dksh(&complete(6, 3), 4, &OracleBudget::default()).unwrap();
        assert_eq!(sol.value, int(4));
    }

    #[test]
    fn exact_dksh_refuses_over_budget() {
        let g = Hypergraph::empty(40, 2);
        let tight = OracleBudget { max_subsets: 1000, ..OracleBudget::default() };
        assert!(matches!(exact_dksh(&g, 20, &tight), Err(Error::OracleRefused(_))));
        assert!(matches!(exact_dksh(&g, 41, &tight), Err(Error::Domain(_))));
    }

    #[test]
    fn exact_weighted_single_edge() {
        let g = WeightedHypergraph::from_weighted_edges(5, 3, vec![(vec![1, 2, 4], int(7))]).unwrap();
        let sol = exact_weighted_dksh(&g, 3, &OracleBudget::default()).unwrap();
        assert_eq!(sol.value, int(7));
        assert_eq!(sol.vertices, vec![1, 2, 4]);
    }

    #[test]
    fn exact_weighted_uniform_matches_unweighted() {
        let g = complete(6, 3);
        let w = WeightedHypergraph::from_weighted_edges(
            6,
            3,
            g.edges().iter().map(|e| (e.clone(), ratio(5, 2))).collect(),
        )
        .unwrap();
        let a = exact_dksh(&g, 4, &OracleBudget::default()).unwrap();
        let b = exact_weighted_dksh(&w, 4, &OracleBudget::default()).unwrap();
        assert_eq!(b.value, a.value * ratio(5, 2));
    }

    fn small_sukp() -> SukpInstance {
        SukpInstance::new(
            3,
            2,
            vec![int(1), int(1), int(2)],
            int(2),
            vec![(vec![0, 1], int(5)), (vec![1, 2], int(4))],
            vec![int(0); 3],
        )
        .unwrap()
    }

    #[test]
    fn exact_sukp_small() {
        let sol = exact_sukp(&small_sukp(), &OracleBudget::default()).unwrap();
        assert_eq!(sol.value, int(5));
        assert_eq!(sol.vertices, vec![0, 1]);
        assert_eq!(exact_sukp_slow(&small_sukp()).unwrap(), sol);
    }

    #[test]
    fn exact_sukp_everything_fits() {
        let inst = small_sukp().with_budget(int(10)).unwrap();
        let sol = exact_sukp(&inst, &OracleBudget::default()).unwrap();
        assert_eq!(sol.vertices, vec![0, 1, 2]);
        assert_eq!(sol.value, int(9));
    }

    #[test]
    fn exact_sukp_zero_budget() {
        let inst = small_sukp().with_budget(int(0)).unwrap();
        assert_eq!(exact_sukp(&inst, &OracleBudget::default()).unwrap().value, int(0));
    }
}
