//! Subproblems whose layers all have proper cost bands.
//!
//! After normalization layer `j` costs lie in `(a_j, 2a_j]` with `a_1 = 1`.
//! Four strategies run and the best answer is kept: fixing one top-layer item,
//! fixing all of layer 1, enumerating small top-layer sets (small budgets),
//! and, for large budgets, the blow-up into a cardinality problem.

use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::dksh::approx_dksh;
use crate::error::{Error, Result};
use crate::hypergraph::{normalize_set, Hypergraph};
use crate::instance::Solution;
use crate::oracle::{binomial, Combinations};
use crate::rational::{floor_usize, int, Rational};

use super::classes::{ClassInstance, ClassTag};
use super::{best_branch, solve_residual, Branch, SukpConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    /// Costs divided by `lambda`, budget divided by `lambda`, profit level 1,
    /// layer floors equal to the copy counts `a_j`.
    pub instance: ClassInstance,
    pub lambda: Rational,
    pub kappa: Rational,
}

impl Normalized {
    /// Value in the original subproblem of a normalized value.
    pub fn restore_value(&self, value: &Rational) -> Rational {
        value * &self.kappa
    }

    pub fn copies(&self) -> Result<Vec<usize>> {
        self.instance
            .layers
            .iter()
            .map(|l| {
                if !l.floor.is_integer() || !l.floor.is_positive() {
                    return Err(Error::Domain(format!("layer floor {} is not a positive integer", l.floor)));
                }
                l.floor
                    .to_integer()
                    .to_usize()
                    .ok_or_else(|| Error::Domain("copy count overflows".into()))
            })
            .collect()
    }
}

pub fn normalize_class3(ci: &ClassInstance) -> Result<Normalized> {
    if ci.class_tag != ClassTag::Banded {
        return Err(Error::Domain("normalization needs a class 3 subproblem".into()));
    }
    let lambda = ci.layers[0].floor.clone();
    let kappa = ci.profit_level.clone().expect("class 3 has a profit level");
    let mut instance = ci.clone();
    instance.costs = ci.costs.iter().map(|c| c / &lambda).collect();
    instance.budget = &ci.budget / &lambda;
    instance.profit_level = Some(int(1));
    for layer in &mut instance.layers {
        layer.floor = &layer.floor / &lambda;
    }
    Ok(Normalized { instance, lambda, kappa })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlowUpLimits {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for BlowUpLimits {
    fn default() -> Self {
        BlowUpLimits { max_vertices: 4096, max_edges: 100_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CopyVertex {
    pub layer: usize,
    pub original: usize,
    pub copy: usize,
}

/// Layer `j` replaced by `a_j` copies, each copy costing `1/a_j` of the
/// original; every combination of copies of an edge is an edge.
#[derive(Debug, Clone)]
pub struct BlowUpGraph {
    pub copies: Vec<usize>,
    pub vertices: Vec<CopyVertex>,
    pub costs: Vec<Rational>,
    pub graph: Hypergraph,
    /// Positional edges and normalized costs of the source subproblem.
    base_edges: Vec<Vec<usize>>,
    base_costs: Vec<Rational>,
    layer_vertices: Vec<Vec<usize>>,
    layer_offset: Vec<usize>,
}

impl BlowUpGraph {
    pub fn order(&self) -> usize {
        self.copies.len()
    }

    pub fn back_map(&self, id: usize) -> usize {
        self.vertices[id].original
    }

    pub fn project(&self, edge: &[usize]) -> Vec<usize> {
        edge.iter().map(|&v| self.back_map(v)).collect()
    }

    pub fn id_of(&self, layer: usize, original: usize, copy: usize) -> Option<usize> {
        let pos = self.layer_vertices[layer].binary_search(&original).ok()?;
        (copy < self.copies[layer]).then(|| self.layer_offset[layer] + pos * self.copies[layer] + copy)
    }

    pub fn base_edges(&self) -> &[Vec<usize>] {
        &self.base_edges
    }
}

pub fn blow_up(norm: &Normalized, limits: &BlowUpLimits) -> Result<BlowUpGraph> {
    let ci = &norm.instance;
    let copies = norm.copies()?;
    if copies[0] != 1 {
        return Err(Error::Domain("layer 1 must be normalized to a single copy".into()));
    }
    let vertex_total = ci
        .layers
        .iter()
        .zip(&copies)
        .try_fold(0usize, |acc, (l, &a)| acc.checked_add(l.vertices.len().checked_mul(a)?));
    let edge_total = copies
        .iter()
        .try_fold(ci.edges.len(), |acc, &a| acc.checked_mul(a));
    match (vertex_total, edge_total) {
        (Some(v), Some(e)) if v <= limits.max_vertices && e <= limits.max_edges => {}
        (v, e) => {
            return Err(Error::OracleRefused(format!(
                "blow-up with {} vertices and {} edges exceeds the limits",
                v.map_or("too many".into(), |x| x.to_string()),
                e.map_or("too many".into(), |x| x.to_string()),
            )))
        }
    }

    let mut vertices = Vec::new();
    let mut costs = Vec::new();
    let mut layer_offset = Vec::new();
    for (j, layer) in ci.layers.iter().enumerate() {
        layer_offset.push(vertices.len());
        let a = copies[j];
        for &v in &layer.vertices {
            let c = &ci.costs[v] / int(a as i64);
            for p in 0..a {
                vertices.push(CopyVertex { layer: j, original: v, copy: p });
                costs.push(c.clone());
            }
        }
    }
    let layer_vertices: Vec<Vec<usize>> = ci.layers.iter().map(|l| l.vertices.clone()).collect();
    let mut out = BlowUpGraph {
        copies,
        vertices,
        costs,
        graph: Hypergraph::empty(0, 1),
        base_edges: ci.edges.clone(),
        base_costs: ci.costs.clone(),
        layer_vertices,
        layer_offset,
    };

    let r = out.order();
    let mut edges = Vec::with_capacity(edge_total.unwrap_or(0));
    for e in &ci.edges {
        let mut digit = vec![0usize; r];
        loop {
            let edge: Vec<usize> = (0..r)
                .map(|j| out.id_of(j, e[j], digit[j]).expect("edge vertex lies in its layer"))
                .collect();
            edges.push(edge);
            let mut j = 0;
            while j < r {
                digit[j] += 1;
                if digit[j] < out.copies[j] {
                    break;
                }
                digit[j] = 0;
                j += 1;
            }
            if j == r {
                break;
            }
        }
    }
    out.graph = Hypergraph::new(out.vertices.len(), r, edges)?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSelection {
    /// Original vertices, normalized cost, value in the normalized subproblem.
    pub solution: Solution,
    pub kept: Vec<Vec<usize>>,
    /// Normalized cost of the items kept in each layer.
    pub layer_costs: Vec<Rational>,
}

/// Layer by layer, keep the `floor(B / (2r a_j))` original items whose best
/// copy has the highest degree among the surviving edges of `chosen`, then
/// restrict the edges to those through the kept copies.
pub fn degree_select(hstar: &BlowUpGraph, chosen: &[usize], budget: &Rational) -> Result<DegreeSelection> {
    let r = hstar.order();
    let n_star = hstar.vertices.len();
    let mut in_chosen = vec![false; n_star];
    for &v in chosen {
        if v >= n_star {
            return Err(Error::Input(format!("vertex {v} is not in the blow-up")));
        }
        in_chosen[v] = true;
    }
    let mut live: Vec<&Vec<usize>> = hstar
        .graph
        .edges()
        .iter()
        .filter(|e| e.iter().all(|&v| in_chosen[v]))
        .collect();
    let empty = DegreeSelection {
        solution: Solution::empty(),
        kept: vec![Vec::new(); r],
        layer_costs: vec![int(0); r],
    };
    let caps: Vec<usize> = hstar
        .copies
        .iter()
        .map(|&a| floor_usize(&(budget / int((2 * r * a) as i64))))
        .collect();
    if caps.contains(&0) {
        log::debug!("degree selection: a layer cap is zero");
        return Ok(empty);
    }

    let mut kept = Vec::with_capacity(r);
    for j in 0..r {
        let mut degree = vec![0usize; n_star];
        for e in &live {
            degree[e[j]] += 1;
        }
        // Best copy per original item: highest degree, lowest copy on ties.
        let mut best: Vec<(usize, usize, usize)> = Vec::new();
        for (pos, &orig) in hstar.layer_vertices[j].iter().enumerate() {
            let base = hstar.layer_offset[j] + pos * hstar.copies[j];
            let (d, copy) = (0..hstar.copies[j])
                .map(|p| (degree[base + p], p))
                .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
                .expect("at least one copy");
            if d > 0 {
                best.push((d, orig, base + copy));
            }
        }
        best.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        best.truncate(caps[j]);
        let keep_ids: Vec<usize> = best.iter().map(|t| t.2).collect();
        live.retain(|e| keep_ids.contains(&e[j]));
        let mut originals: Vec<usize> = best.iter().map(|t| t.1).collect();
        originals.sort_unstable();
        kept.push(originals);
    }

    let layer_costs: Vec<Rational> = kept
        .iter()
        .map(|vs| vs.iter().map(|&v| &hstar.base_costs[v]).sum())
        .collect();
    let vertices = normalize_set(kept.iter().flatten().copied().collect());
    let total_cost: Rational = vertices.iter().map(|&v| &hstar.base_costs[v]).sum();
    let mut mask = vec![false; hstar.base_costs.len()];
    for &v in &vertices {
        mask[v] = true;
    }
    let covered = hstar.base_edges.iter().filter(|e| e.iter().all(|&v| mask[v])).count();
    Ok(DegreeSelection {
        solution: Solution { vertices, total_cost, value: int(covered as i64) },
        kept,
        layer_costs,
    })
}

pub fn solve_class3(ci: &ClassInstance, cfg: &SukpConfig) -> Result<Solution> {
    Ok(best_branch(ci, &class3_branches(ci, cfg)?))
}

/// Top-layer subsets of size `1..=2r` within budget, truncated to a
/// profit-density prefix of the layer when there are too many.
fn top_subsets(ci: &ClassInstance, limit: usize) -> Vec<Vec<usize>> {
    let r = ci.order();
    let top = &ci.layers[r - 1].vertices;
    let max_size = (2 * r).min(top.len());
    let count = |len: usize| -> u64 { (1..=max_size.min(len)).map(|t| binomial(len, t)).fold(0u64, u64::saturating_add) };
    let mut pool = top.clone();
    if count(pool.len()) > limit as u64 {
        let degree = |v: usize| ci.edges.iter().filter(|e| e[r - 1] == v).count();
        pool.sort_by(|&a, &b| {
            let da = int(degree(a) as i64) / &ci.costs[a];
            let db = int(degree(b) as i64) / &ci.costs[b];
            db.cmp(&da).then(a.cmp(&b))
        });
        let mut len = pool.len();
        while len > 0 && count(len) > limit as u64 {
            len -= 1;
        }
        log::info!(
            "class 3: {} top-layer subsets exceed the enumeration budget {limit}; using the densest {len} items",
            count(pool.len())
        );
        pool.truncate(len);
    }
    let mut out = Vec::new();
    for size in 1..=max_size.min(pool.len()) {
        for pick in Combinations::new(pool.len(), size) {
            let x = normalize_set(pick.iter().map(|&p| pool[p]).collect());
            if ci.cost_of(&x) <= ci.budget {
                out.push(x);
            }
        }
    }
    out
}

pub fn class3_branches(ci: &ClassInstance, cfg: &SukpConfig) -> Result<Vec<Branch>> {
    let norm = normalize_class3(ci)?;
    let r = ci.order();
    let copies = norm.copies()?;
    let b_norm = &norm.instance.budget;
    let threshold = int((2 * r * copies[r - 1]) as i64);
    let through_top = |x: &[usize]| -> Vec<usize> {
        (0..ci.edges.len()).filter(|&e| x.contains(&ci.edges[e][r - 1])).collect()
    };

    let mut jobs: Vec<(String, Vec<usize>, Vec<usize>)> = Vec::new();
    for &x in &ci.layers[r - 1].vertices {
        if ci.costs[x] <= ci.budget {
            jobs.push((format!("top-vertex {x}"), vec![x], through_top(&[x])));
        }
    }
    let first = &ci.layers[0].vertices;
    if ci.cost_of(first) <= ci.budget {
        jobs.push(("all-of-layer1".into(), first.clone(), (0..ci.edges.len()).collect()));
    }
    if *b_norm <= threshold {
        for x in top_subsets(ci, cfg.enumeration_budget) {
            let through = through_top(&x);
            jobs.push((format!("top-subset {x:?}"), x, through));
        }
    }

    let profit = ci.profit_level.clone().expect("class 3 has a profit level");
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

    if *b_norm > threshold {
        match blow_up(&norm, &cfg.blowup) {
            Ok(hstar) => {
                let k = floor_usize(b_norm).min(hstar.vertices.len());
                if k >= 1 {
                    let chosen = approx_dksh(&hstar.graph, k, r, &cfg.dksh)?;
                    let sel = degree_select(&hstar, &chosen.vertices, b_norm)?;
                    out.push(Branch { label: "blow-up".into(), vertices: sel.solution.vertices });
                }
            }
            Err(Error::OracleRefused(why)) => log::info!("class 3: blow-up skipped: {why}"),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
