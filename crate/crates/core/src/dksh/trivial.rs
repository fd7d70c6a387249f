use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::instance::Solution;
use crate::rational::int;

/// Edge-union solver with an `O(k^(m-1))` guarantee.
///
/// Repeatedly adds the not-yet-covered edge needing the fewest new vertices
/// (ties: lowest edge index) until the next one would exceed `k` vertices.
/// Every step adds at most `m` vertices, so at least `floor(k/m)` edges are
/// taken; when fewer than `k/m` edges exist all of them are taken, which is
/// optimal, and the selection is padded with the lowest unused ids.
///
/// The edge sequence does not depend on `k`, so the selection grows
/// monotonically with `k`.
pub fn solve_trivial(graph: &Hypergraph, k: usize, m: usize) -> Result<Solution> {
    let n = graph.n();
    if k < 1 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    if k > n {
        return Err(Error::Domain(format!("k = {k} exceeds n = {n}")));
    }
    if let Some(e) = graph.edges().iter().find(|e| e.len() > m) {
        return Err(Error::Input(format!("edge {e:?} has more than m = {m} vertices")));
    }

    let edges = graph.edges();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in edges.iter().enumerate() {
        for &v in e {
            incident[v].push(i);
        }
    }
    let mut missing: Vec<usize> = edges.iter().map(Vec::len).collect();
    let mut queue: BTreeSet<(usize, usize)> = missing.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut selected = vec![false; n];
    let mut count = 0usize;

    while let Some(&(need, idx)) = queue.first() {
        if count + need > k {
            break;
        }
        for &v in &edges[idx] {
            if selected[v] {
                continue;
            }
            selected[v] = true;
            count += 1;
            for &j in &incident[v] {
                queue.remove(&(missing[j], j));
                missing[j] -= 1;
                if missing[j] > 0 {
                    queue.insert((missing[j], j));
                }
            }
        }
    }

    if queue.is_empty() {
        for v in 0..n {
            if count >= k {
                break;
            }
            if !selected[v] {
                selected[v] = true;
                count += 1;
            }
        }
    }

    let vertices: Vec<usize> = (0..n).filter(|&v| selected[v]).collect();
    let value = graph.count_with_mask(&selected);
    Ok(Solution::counted(vertices, int(value as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{exact_dksh, Combinations, OracleBudget};

    #[test]
    fn few_edges_is_optimal() {
        let g = Hypergraph::new(8, 3, vec![vec![0, 1, 2]]).unwrap();
        let sol = solve_trivial(&g, 6, 3).unwrap();
        assert!(sol.vertices.len() <= 6);
        assert!([0, 1, 2].iter().all(|v| sol.vertices.contains(v)));
        assert_eq!(sol.value, int(1));
        assert_eq!(exact_dksh(&g, 6, &OracleBudget::default()).unwrap().value, int(1));
    }

    #[test]
    fn no_edges() {
        let g = Hypergraph::empty(5, 3);
        assert_eq!(solve_trivial(&g, 2, 3).unwrap().value, int(0));
    }

    #[test]
    fn complete_three_uniform() {
        let g = Hypergraph::new(5, 3, Combinations::new(5, 3).collect()).unwrap();
        let sol = solve_trivial(&g, 3, 3).unwrap();
        assert_eq!(sol.value, int(1));
        assert_eq!(exact_dksh(&g, 3, &OracleBudget::default()).unwrap().value, int(1));
    }

    #[test]
    fn rejects_bad_k() {
        let g = Hypergraph::empty(3, 2);
        assert!(solve_trivial(&g, 0, 2).is_err());
        assert!(solve_trivial(&g, 4, 2).is_err());
    }
}
