use std::sync::Arc;

use proptest::prelude::*;

use hypersukp::dksh::{approx_dksh, solve_trivial, DkshConfig, ExactBase, GreedyBase};
use hypersukp::gen::{self, GenKind, GenSpec};
use hypersukp::io::{instance_to_string, parse_instance, Instance};
use hypersukp::oracle::{binomial, exact_dksh, exact_sukp, OracleBudget};
use hypersukp::rational::{int, ratio};
use hypersukp::sukp::{
    approx_sukp, class1_projection, effective_epsilon, fold_unit_edges, knapsack_fptas_report, prune, round_profits,
    SukpConfig,
};
use hypersukp::{Hypergraph, SukpInstance};

fn graph() -> impl Strategy<Value = (Hypergraph, usize, usize)> {
    (2usize..=4, 0u64..u64::MAX).prop_flat_map(|(m, seed)| {
        (Just(m), Just(seed), m + 1..=11usize).prop_flat_map(|(m, seed, n)| {
            let cap = binomial(n, m) as usize;
            (0..=cap.min(3 * n), 1..=n).prop_map(move |(count, k)| {
                let g = gen::hypergraph(&GenSpec::new(GenKind::UniformRandom, n, m, seed).with_edges(count)).unwrap();
                (g, m, k)
            })
        })
    })
}

fn sukp_instance() -> impl Strategy<Value = SukpInstance> {
    (0u64..u64::MAX, 3usize..=10, 2usize..=3, 0usize..3, any::<bool>()).prop_map(|(seed, n, m, frac, correlated)| {
        let kind = if correlated { GenKind::SukpCorrelated } else { GenKind::SukpRandom };
        let mut spec = GenSpec::new(kind, n, m.min(n), seed).with_edges(n);
        spec.vertex_profit_probability = 0.25;
        spec.budget_fraction = ["1/4", "1/3", "1/2"][frac].into();
        spec.profit_range = [1, 200];
        gen::sukp(&spec).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dksh_solution_is_feasible((g, m, k) in graph(), exact in any::<bool>()) {
        let cfg = if exact {
            DkshConfig::default().with_base(Arc::new(ExactBase::default()))
        } else {
            DkshConfig::default().with_base(Arc::new(GreedyBase))
        };
        let sol = approx_dksh(&g, k, m, &cfg).unwrap();
        prop_assert!(sol.vertices.len() <= k);
        prop_assert!(sol.vertices.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(&sol.value, &g.induced_value(&sol.vertices).unwrap());
        prop_assert!(sol.value >= solve_trivial(&g, k, m).unwrap().value);
        prop_assert!(sol.value <= exact_dksh(&g, k, &OracleBudget::default()).unwrap().value);
    }

    #[test]
    fn trivial_floor((g, m, k) in graph()) {
        prop_assume!(k >= m);
        let t = solve_trivial(&g, k, m).unwrap();
        let e = g.edge_count();
        if e * m >= k {
            prop_assert!(t.value >= int((k / m) as i64));
        } else {
            prop_assert_eq!(t.value, int(e as i64));
        }
    }

    #[test]
    fn induced_value_monotone((g, _m, k) in graph(), extra in 0usize..11) {
        let base: Vec<usize> = (0..k).collect();
        let mut more = base.clone();
        if extra < g.n() && !more.contains(&extra) {
            more.push(extra);
        }
        prop_assert!(g.induced_value(&more).unwrap() >= g.induced_value(&base).unwrap());
    }

    #[test]
    fn sukp_solution_is_feasible(inst in sukp_instance()) {
        let sol = approx_sukp(&inst, &SukpConfig::default()).unwrap();
        prop_assert!(inst.is_feasible(&sol));
        prop_assert_eq!(&sol, &inst.evaluate(&sol.vertices).unwrap());
        let opt = exact_sukp(&inst, &OracleBudget::default()).unwrap();
        prop_assert!(sol.value <= opt.value);
        let eps = ratio(1, 10);
        let ks = knapsack_fptas_report(inst.costs(), &class1_projection(&inst).unwrap(), inst.budget(), &eps).unwrap();
        prop_assert!(sol.value >= ks.solution.value);
    }

    #[test]
    fn pruning_and_rounding(inst in sukp_instance()) {
        let budget = OracleBudget::default();
        let opt = exact_sukp(&inst, &budget).unwrap().value;
        let pruned = prune(&fold_unit_edges(&inst).unwrap()).unwrap();
        prop_assert_eq!(&exact_sukp(&pruned.instance, &budget).unwrap().value, &opt);
        let rounded = round_profits(&pruned.instance).unwrap();
        prop_assert!(rounded.profits().iter().zip(pruned.instance.profits()).all(|(r, p)| r <= p));
        prop_assert!(exact_sukp(&rounded, &budget).unwrap().value * int(4) >= opt);
    }

    #[test]
    fn fptas_bound(
        seed in 0u64..u64::MAX,
        n in 1usize..=14,
        eps_den in 2i64..=20,
    ) {
        let mut spec = GenSpec::new(GenKind::SukpRandom, n, 1, seed).with_edges(0);
        spec.min_edge_size = Some(1);
        spec.vertex_profit_probability = 1.0;
        spec.profit_range = [1, 100_000];
        let inst = gen::sukp(&spec).unwrap();
        let eps = ratio(1, eps_den);
        let rep = knapsack_fptas_report(inst.costs(), inst.vertex_profits(), inst.budget(), &eps).unwrap();
        let opt = exact_sukp(&inst, &OracleBudget::default()).unwrap().value;
        prop_assert!(rep.solution.total_cost <= *inst.budget());
        prop_assert!(rep.solution.value >= (int(1) - effective_epsilon(&eps)) * &opt);
        if rep.lossless {
            prop_assert_eq!(rep.solution.value, opt);
        }
    }

    #[test]
    fn instance_text_round_trip(inst in sukp_instance()) {
        let wrapped = Instance::Sukp(inst);
        let text = instance_to_string(&wrapped);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(instance_to_string(&back), text);
    }
}

/// Sampled check that a larger cardinality budget never yields a smaller value.
#[test]
fn dksh_value_monotone_in_k() {
    let mut drops = Vec::new();
    for seed in 0..150u64 {
        let m = 2 + (seed % 3) as usize;
        let n = 8 + (seed % 7) as usize;
        let count = (2 * n).min(binomial(n, m) as usize);
        let g = gen::hypergraph(&GenSpec::new(GenKind::UniformRandom, n, m, seed).with_edges(count)).unwrap();
        let cfg = DkshConfig::default();
        let mut prev = int(0);
        for k in 1..=n {
            let v = approx_dksh(&g, k, m, &cfg).unwrap().value;
            if v < prev {
                drops.push((seed, k));
            }
            prev = v;
        }
    }
    assert!(drops.is_empty(), "value dropped when k grew: {drops:?}");
}
