//! Set union knapsack approximation.
//!
//! The pipeline folds single-item edges into item profits, prunes, rounds
//! edge profits to powers of two, buckets costs, and splits the edges into
//! subproblems with one profit level and one bucket signature. Class 1 (item
//! profits only) is a plain knapsack; classes 2 and 3 fix some items, delete a
//! layer and recurse on the smaller edges through this same pipeline. Every
//! candidate is re-scored against the caller's instance.

mod class2;
mod class3;
mod classes;
mod fptas;
mod prepare;

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

pub use class2::{class2_branches, solve_class2};
pub use class3::{
    blow_up, class3_branches, degree_select, normalize_class3, solve_class3, BlowUpGraph, BlowUpLimits, CopyVertex,
    DegreeSelection, Normalized,
};
pub use classes::{decompose, ClassInstance, ClassTag, Layer};
pub use fptas::{effective_epsilon, knapsack_fptas, knapsack_fptas_report, FptasReport, FPTAS_EXACT_LIMIT};
pub use prepare::{bucket_costs, fold_unit_edges, prune, round_profits, rounding_depth, BucketedInstance, Pruned};

use crate::dksh::DkshConfig;
use crate::error::{Error, Result};
use crate::instance::{best_of, Solution, SukpInstance};
use crate::oracle::{exact_sukp, OracleBudget};
use crate::rational::{ratio, Rational};

#[derive(Debug, Clone)]
pub struct SukpConfig {
    pub epsilon: Rational,
    /// Instances (and recursive subinstances) with at most this many items
    /// are also solved exactly.
    pub exact_cutoff_n: usize,
    pub dksh: DkshConfig,
    pub seed: u64,
    pub oracle_budget: OracleBudget,
    pub blowup: BlowUpLimits,
    /// Most top-layer subsets enumerated by one class 3 subproblem.
    pub enumeration_budget: usize,
}

impl Default for SukpConfig {
    fn default() -> Self {
        SukpConfig {
            epsilon: ratio(1, 10),
            exact_cutoff_n: 0,
            dksh: DkshConfig::default(),
            seed: 0,
            oracle_budget: OracleBudget::default(),
            blowup: BlowUpLimits::default(),
            enumeration_budget: 4096,
        }
    }
}

impl SukpConfig {
    fn check(&self) -> Result<()> {
        if !self.epsilon.is_positive() {
            return Err(Error::Domain("epsilon must be positive".into()));
        }
        Ok(())
    }
}

/// One strategy's selection within a subproblem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub label: String,
    pub vertices: Vec<usize>,
}

/// Best feasible branch, evaluated in the subproblem.
pub(crate) fn best_branch(ci: &ClassInstance, branches: &[Branch]) -> Solution {
    best_of(
        branches
            .iter()
            .map(|b| ci.evaluate(&b.vertices))
            .filter(|s| s.total_cost <= ci.budget),
    )
    .unwrap_or_else(Solution::empty)
}

/// Select `fixed`, remove it from `edges`, and solve what is left on the
/// remaining budget. Returns `fixed` plus the recursive selection, or `None`
/// when `fixed` alone is over budget.
pub(crate) fn solve_residual(
    costs: &[Rational],
    edges: &[&Vec<usize>],
    profit: &Rational,
    fixed: &[usize],
    budget: &Rational,
    cfg: &SukpConfig,
) -> Result<Option<Vec<usize>>> {
    let spent: Rational = fixed.iter().map(|&v| &costs[v]).sum();
    if &spent > budget {
        return Ok(None);
    }
    let rest_budget = budget - spent;
    let mut compact: BTreeMap<usize, usize> = BTreeMap::new();
    let mut rests = Vec::with_capacity(edges.len());
    for e in edges {
        let rest: Vec<usize> = e.iter().copied().filter(|v| !fixed.contains(v)).collect();
        for &v in &rest {
            compact.insert(v, 0);
        }
        rests.push(rest);
    }
    let ids: Vec<usize> = compact.keys().copied().collect();
    for (i, v) in compact.values_mut().enumerate() {
        *v = i;
    }
    let mut vertex_profits = vec![Rational::zero(); ids.len()];
    let mut merged: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    for rest in rests {
        match rest.len() {
            // Already covered by `fixed`.
            0 => {}
            1 => vertex_profits[compact[&rest[0]]] += profit,
            _ => {
                let mut e: Vec<usize> = rest.iter().map(|v| compact[v]).collect();
                e.sort_unstable();
                *merged.entry(e).or_insert_with(Rational::zero) += profit;
            }
        }
    }
    let mut out = fixed.to_vec();
    if ids.is_empty() {
        out.sort_unstable();
        return Ok(Some(out));
    }
    let m_cap = merged.keys().map(Vec::len).max().unwrap_or(1);
    let sub = SukpInstance::new(
        ids.len(),
        m_cap,
        ids.iter().map(|&v| costs[v].clone()).collect(),
        rest_budget,
        merged.into_iter().collect(),
        vertex_profits,
    )?;
    let sol = solve_instance(&sub, cfg, None)?;
    out.extend(sol.vertices.iter().map(|&v| ids[v]));
    out.sort_unstable();
    out.dedup();
    Ok(Some(out))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    Prepared {
        items: usize,
        pruned_items: usize,
        edges: usize,
        rounded_edges: usize,
        buckets: usize,
    },
    Shortcut {
        #[serde(with = "crate::rational::as_string")]
        value: Rational,
    },
    Exact {
        #[serde(with = "crate::rational::as_string")]
        value: Rational,
    },
    Class {
        index: usize,
        class: u8,
        #[serde(with = "crate::rational::as_string::option")]
        profit_level: Option<Rational>,
        signature: Vec<usize>,
        edges: usize,
        /// Value of the class's best selection in the full instance.
        #[serde(with = "crate::rational::as_string")]
        value: Rational,
        vertices: Vec<usize>,
    },
    Branch {
        class_index: usize,
        branch: String,
        /// Value within the class subproblem.
        #[serde(with = "crate::rational::as_string")]
        value: Rational,
        #[serde(with = "crate::rational::as_string")]
        cost: Rational,
    },
}

impl TraceEvent {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace events serialize")
    }
}

/// Best selection found by the full pipeline, evaluated against `inst`.
pub fn approx_sukp(inst: &SukpInstance, cfg: &SukpConfig) -> Result<Solution> {
    cfg.check()?;
    solve_instance(inst, cfg, None)
}

/// As [`approx_sukp`], also returning per-class and per-branch records.
pub fn approx_sukp_traced(inst: &SukpInstance, cfg: &SukpConfig) -> Result<(Solution, Vec<TraceEvent>)> {
    cfg.check()?;
    let mut trace = Vec::new();
    let sol = solve_instance(inst, cfg, Some(&mut trace))?;
    Ok((sol, trace))
}

/// Item profits (including single-item edges) used by the knapsack class.
pub fn class1_projection(inst: &SukpInstance) -> Result<Vec<Rational>> {
    Ok(fold_unit_edges(inst)?.vertex_profits().to_vec())
}

fn relevant_items(inst: &SukpInstance) -> Vec<usize> {
    let mut mark = vec![false; inst.n()];
    for (v, p) in inst.vertex_profits().iter().enumerate() {
        mark[v] |= p.is_positive();
    }
    for (e, p) in inst.edges().iter().zip(inst.profits()) {
        if p.is_positive() {
            e.iter().for_each(|&v| mark[v] = true);
        }
    }
    (0..inst.n()).filter(|&v| mark[v]).collect()
}

fn class_branches(ci: &ClassInstance, cfg: &SukpConfig) -> Result<Vec<Branch>> {
    match ci.class_tag {
        ClassTag::Knapsack => {
            let sol = knapsack_fptas(&ci.costs, &ci.vertex_profits, &ci.budget, &cfg.epsilon)?;
            Ok(vec![Branch { label: "knapsack".into(), vertices: sol.vertices }])
        }
        ClassTag::TinyLayer => class2_branches(ci, cfg),
        ClassTag::Banded => class3_branches(ci, cfg),
    }
}

fn solve_instance(inst: &SukpInstance, cfg: &SukpConfig, mut trace: Option<&mut Vec<TraceEvent>>) -> Result<Solution> {
    let relevant = relevant_items(inst);
    if inst.cost_of(&relevant)? <= *inst.budget() {
        let sol = inst.evaluate(&relevant)?;
        if let Some(t) = trace.as_deref_mut() {
            t.push(TraceEvent::Shortcut { value: sol.value.clone() });
        }
        return Ok(sol);
    }
    let zero_cost: Vec<usize> = relevant.iter().copied().filter(|&v| inst.costs()[v].is_zero()).collect();
    let finish = |vertices: Vec<usize>| -> Result<Solution> {
        let sol = inst.evaluate(&vertices)?;
        if zero_cost.is_empty() {
            return Ok(sol);
        }
        let mut more = vertices;
        more.extend_from_slice(&zero_cost);
        let boosted = inst.evaluate(&more)?;
        Ok(if boosted.value > sol.value { boosted } else { sol })
    };

    let mut candidates = Vec::new();
    if inst.n() <= cfg.exact_cutoff_n {
        match exact_sukp(inst, &cfg.oracle_budget) {
            Ok(sol) => {
                if let Some(t) = trace.as_deref_mut() {
                    t.push(TraceEvent::Exact { value: sol.value.clone() });
                }
                candidates.push(sol);
            }
            Err(Error::OracleRefused(why)) => log::debug!("exact cutoff skipped: {why}"),
            Err(e) => return Err(e),
        }
    }

    let folded = fold_unit_edges(inst)?;
    let pruned = prune(&folded)?;
    let rounded = round_profits(&pruned.instance)?;
    let bucketed = bucket_costs(&rounded);
    let classes = decompose(&bucketed);
    if let Some(t) = trace.as_deref_mut() {
        t.push(TraceEvent::Prepared {
            items: inst.n(),
            pruned_items: pruned.instance.n(),
            edges: inst.edge_count(),
            rounded_edges: rounded.edge_count(),
            buckets: bucketed.tiny(),
        });
    }
    log::debug!(
        "sukp: n={} pruned={} edges={} classes={}",
        inst.n(),
        pruned.instance.n(),
        rounded.edge_count(),
        classes.len()
    );

    let outcomes: Vec<Result<Vec<Branch>>> = classes.par_iter().map(|ci| class_branches(ci, cfg)).collect();
    for (index, (ci, branches)) in classes.iter().zip(outcomes).enumerate() {
        let branches = branches?;
        let best = best_branch(ci, &branches);
        let sol = finish(pruned.to_original(&best.vertices))?;
        if let Some(t) = trace.as_deref_mut() {
            for b in &branches {
                let s = ci.evaluate(&b.vertices);
                t.push(TraceEvent::Branch {
                    class_index: index,
                    branch: b.label.clone(),
                    value: s.value,
                    cost: s.total_cost,
                });
            }
            t.push(TraceEvent::Class {
                index,
                class: ci.class_tag.number(),
                profit_level: ci.profit_level.clone(),
                signature: ci.signature(),
                edges: ci.edges.len(),
                value: sol.value.clone(),
                vertices: sol.vertices.clone(),
            });
        }
        candidates.push(sol);
    }
    let feasible: Vec<Solution> = candidates.into_iter().filter(|s| inst.is_feasible(s)).collect();
    Ok(best_of(feasible).unwrap_or_else(Solution::empty))
}
