//! Subproblems whose cheapest layer is the tiny-cost bucket.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::Solution;
use crate::oracle::Combinations;

use super::classes::{ClassInstance, ClassTag};
use super::{best_branch, solve_residual, Branch, SukpConfig};

pub fn solve_class2(ci: &ClassInstance, cfg: &SukpConfig) -> Result<Solution> {
    Ok(best_branch(ci, &class2_branches(ci, cfg)?))
}

/// Fixing a set `X` of layer-`i` items keeps only the edges through `X`;
/// fixing all of layer 1 keeps every edge. Either way one layer disappears
/// and the rest is solved recursively on the remaining budget.
pub fn class2_branches(ci: &ClassInstance, cfg: &SukpConfig) -> Result<Vec<Branch>> {
    if ci.class_tag != ClassTag::TinyLayer {
        return Err(Error::Domain("class 2 solver needs a tiny-cost first layer".into()));
    }
    let r = ci.order();
    let mut jobs: Vec<(String, Vec<usize>, Vec<usize>)> = Vec::new();
    for i in 1..r {
        let layer = &ci.layers[i].vertices;
        for size in 1..=3.min(layer.len()) {
            for pick in Combinations::new(layer.len(), size) {
                let x: Vec<usize> = pick.iter().map(|&p| layer[p]).collect();
                if ci.cost_of(&x) > ci.budget {
                    continue;
                }
                let through: Vec<usize> = (0..ci.edges.len()).filter(|&e| x.contains(&ci.edges[e][i])).collect();
                jobs.push((format!("layer{} {:?}", i + 1, x), x, through));
            }
        }
    }
    let first = &ci.layers[0].vertices;
    if ci.cost_of(first) <= ci.budget {
        jobs.push(("all-of-layer1".into(), first.clone(), (0..ci.edges.len()).collect()));
    } else {
        log::debug!("class 2: layer 1 exceeds the budget, branch skipped");
    }

    let profit = ci.profit_level.clone().expect("class 2 has a profit level");
    let solved: Vec<Result<Option<Branch>>> = jobs
        .into_par_iter()
        .map(|(label, fixed, through)| {
            let edges: Vec<&Vec<usize>> = through.iter().map(|&e| &ci.edges[e]).collect();
            let picked = solve_residual(&ci.costs, &edges, &profit, &fixed, &ci.budget, cfg)?;
            Ok(picked.map(|vertices| Branch { label, vertices }))
        })
        .collect();
    let mut out = vec![Branch { label: "empty".into(), vertices: Vec::new() }];
    for b in solved {
        out.extend(b?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::classes::Layer;
    use super::*;
    use crate::rational::{int, ratio, Rational};

    fn class(costs: Vec<Rational>, layers: Vec<Vec<usize>>, edges: Vec<Vec<usize>>, b: Rational) -> ClassInstance {
        let n = costs.len();
        ClassInstance {
            class_tag: ClassTag::TinyLayer,
            profit_level: Some(int(2)),
            layers: layers
                .into_iter()
                .enumerate()
                .map(|(j, vertices)| Layer { bucket: 10 - j, vertices, floor: int(0) })
                .collect(),
            edges,
            budget: b,
            costs,
            vertex_profits: vec![int(0); n],
        }
    }

    #[test]
    fn two_layer_example() {
        // t tiny, u and v cost 4 each, B = 5: only one of the edges fits.
        let ci = class(
            vec![ratio(1, 8), int(4), int(4)],
            vec![vec![0], vec![1, 2]],
            vec![vec![0, 1], vec![0, 2]],
            int(5),
        );
        let sol = solve_class2(&ci, &SukpConfig::default()).unwrap();
        assert_eq!(sol.value, int(2));
        assert!(sol.total_cost <= int(5));
    }

    #[test]
    fn no_edges() {
        let ci = class(vec![ratio(1, 8), int(4)], vec![vec![], vec![]], vec![], int(5));
        assert_eq!(solve_class2(&ci, &SukpConfig::default()).unwrap().value, int(0));
    }

    #[test]
    fn budget_below_layer_two() {
        let ci = class(
            vec![ratio(1, 8), int(4), int(4)],
            vec![vec![0], vec![1, 2]],
            vec![vec![0, 1], vec![0, 2]],
            int(3),
        );
        let branches = class2_branches(&ci, &SukpConfig::default()).unwrap();
        assert!(branches.iter().any(|b| b.label == "all-of-layer1"));
        assert_eq!(best_branch(&ci, &branches).value, int(0));
    }

    #[test]
    fn wrong_class_rejected() {
        let mut ci = class(vec![int(1)], vec![vec![0]], vec![], int(1));
        ci.class_tag = ClassTag::Banded;
        assert!(solve_class2(&ci, &SukpConfig::default()).is_err());
    }
}
