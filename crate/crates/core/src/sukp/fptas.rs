//! Profit-scaling knapsack dynamic program.

use std::ops::Add;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::instance::Solution;
use crate::rational::{common_scale_i128, int, sum, Rational};

/// Profit totals (in units of the profits' common denominator) up to this size
/// are solved with unit scaling, i.e. exactly.
pub const FPTAS_EXACT_LIMIT: u64 = 1 << 16;

/// Loss parameter actually used by the scaled program: `eps / (1 + eps)`, so
/// `value >= (1 - eps') OPT >= OPT / (1 + eps)`.
pub fn effective_epsilon(epsilon: &Rational) -> Rational {
    epsilon / (int(1) + epsilon)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FptasReport {
    pub solution: Solution,
    /// True when profits were scaled by their common denominator, so the
    /// answer is optimal.
    pub lossless: bool,
}

pub fn knapsack_fptas(costs: &[Rational], profits: &[Rational], budget: &Rational, epsilon: &Rational) -> Result<Solution> {
    Ok(knapsack_fptas_report(costs, profits, budget, epsilon)?.solution)
}

pub fn knapsack_fptas_report(
    costs: &[Rational],
    profits: &[Rational],
    budget: &Rational,
    epsilon: &Rational,
) -> Result<FptasReport> {
    if costs.len() != profits.len() {
        return Err(Error::Input(format!("{} costs but {} profits", costs.len(), profits.len())));
    }
    if !epsilon.is_positive() {
        return Err(Error::Domain("epsilon must be positive".into()));
    }
    if budget.is_negative() || costs.iter().chain(profits).any(Signed::is_negative) {
        return Err(Error::Input("knapsack inputs must be nonnegative".into()));
    }
    let free: Vec<usize> = (0..costs.len())
        .filter(|&i| costs[i].is_zero() && profits[i].is_positive())
        .collect();
    let items: Vec<usize> = (0..costs.len())
        .filter(|&i| costs[i].is_positive() && &costs[i] <= budget && profits[i].is_positive())
        .collect();

    let finish = |chosen: Vec<usize>, lossless: bool| {
        let mut vertices = free.clone();
        vertices.extend(chosen);
        vertices.sort_unstable();
        let total_cost = sum(vertices.iter().map(|&i| &costs[i]));
        let value = sum(vertices.iter().map(|&i| &profits[i]));
        FptasReport { solution: Solution { vertices, total_cost, value }, lossless }
    };

    if items.is_empty() || sum(items.iter().map(|&i| &costs[i])) <= *budget {
        return Ok(finish(items, true));
    }

    let item_profits: Vec<Rational> = items.iter().map(|&i| profits[i].clone()).collect();
    let denom = item_profits
        .iter()
        .fold(BigInt::from(1), |acc, p| num_integer::Integer::lcm(&acc, p.denom()));
    let unit_total: BigInt = item_profits.iter().map(|p| (p * Rational::from_integer(denom.clone())).to_integer()).sum();
    let lossless = unit_total <= BigInt::from(FPTAS_EXACT_LIMIT);
    let unit = if lossless {
        Rational::new(BigInt::from(1), denom)
    } else {
        let max = item_profits.iter().max().expect("nonempty");
        effective_epsilon(epsilon) * max / int(items.len() as i64)
    };
    let scaled: Vec<usize> = item_profits
        .iter()
        .map(|p| (p / &unit).floor().to_integer().to_usize().expect("scaled profit fits"))
        .collect();

    let mut all_costs: Vec<Rational> = items.iter().map(|&i| costs[i].clone()).collect();
    all_costs.push(budget.clone());
    let chosen_pos = match common_scale_i128(&all_costs) {
        Some((ints, _)) => {
            let (cap, item_costs) = ints.split_last().expect("budget present");
            min_cost_dp(item_costs, &scaled, cap)
        }
        None => {
            let (cap, item_costs) = all_costs.split_last().expect("budget present");
            min_cost_dp(item_costs, &scaled, cap)
        }
    };
    Ok(finish(chosen_pos.into_iter().map(|p| items[p]).collect(), lossless))
}

/// `dp[t]` = least cost reaching scaled profit exactly `t`. Returns the item
/// positions of a least-cost set with the largest reachable profit within
/// `cap`.
fn min_cost_dp<C>(costs: &[C], profits: &[usize], cap: &C) -> Vec<usize>
where
    C: Clone + Ord + Zero,
    for<'a> &'a C: Add<&'a C, Output = C>,
{
    let total: usize = profits.iter().sum();
    let words = (total + 1).div_ceil(64);
    let mut dp: Vec<Option<C>> = vec![None; total + 1];
    dp[0] = Some(C::zero());
    // took[i] marks the profits whose table entry item i improved last.
    let mut took: Vec<Vec<u64>> = Vec::with_capacity(costs.len());
    let mut reached = 0usize;
    for (c, &p) in costs.iter().zip(profits) {
        let mut bits = vec![0u64; words];
        if p > 0 {
            for t in (p..=reached + p).rev() {
                let Some(prev) = dp[t - p].as_ref() else { continue };
                let cand = prev + c;
                if &cand > cap {
                    continue;
                }
                if dp[t].as_ref().is_none_or(|cur| cand < *cur) {
                    dp[t] = Some(cand);
                    bits[t / 64] |= 1 << (t % 64);
                }
            }
        }
        reached += p;
        took.push(bits);
    }
    let Some(mut t) = (1..=total).rev().find(|&t| dp[t].is_some()) else {
        return Vec::new();
    };
    let mut chosen = Vec::new();
    for i in (0..costs.len()).rev() {
        if t == 0 {
            break;
        }
        if took[i][t / 64] >> (t % 64) & 1 == 1 {
            chosen.push(i);
            t -= profits[i];
        }
    }
    debug_assert_eq!(t, 0);
    chosen.reverse();
    chosen
}
