mod common;

use proptest::prelude::*;
use rand::Rng;

use parhom::compile::{bridge_graph, classify, compile_is_instance, compile_unchecked};
use parhom::fixtures;
use parhom::gadget::{
    find_hardness_gadget, make_caterpillar, make_neighbourhood, verify_hardness_gadget, HardnessGadget,
};
use parhom::generate::{battery_graphs, caterpillar_cases, random_graph, random_square_free_graph, seeded};
use parhom::hom::{count_pinned_parity, enumerate_homs};
use parhom::structure::is_square_free;
use parhom::symmetry::{involution_free_reduction, is_involution_free, SearchBudget};
use parhom::Graph;

fn neighbours(h: &Graph, v: &str) -> Vec<String> {
    let ix = h.index_of(v).unwrap();
    h.neighbours(ix).iter().map(|&w| h.name(w).to_string()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn caterpillar_count_conditions(seed in any::<u64>()) {
        let case = caterpillar_cases(seed, 1).pop().unwrap();
        let (h, p) = (&case.host, &case.path);
        let k = p.len() - 1;
        let cat = make_caterpillar(h, p).unwrap();
        let (i, s) = (&p[1], &p[k - 1]);
        let count = |a: &str, b: &str| common::count_pinned(&cat.part, h, &[(&cat.y, a), (&cat.z, b)]);
        prop_assert_eq!(count(i, s) % 2, 1);
        for o in neighbours(h, &p[0]).iter().filter(|o| *o != i) {
            prop_assert_eq!(count(o, s), 1);
            for x in neighbours(h, &p[k]).iter().filter(|x| *x != s) {
                prop_assert_eq!(count(o, x), 0);
            }
        }
        for x in neighbours(h, &p[k]).iter().filter(|x| *x != s) {
            prop_assert_eq!(count(i, x), 1);
        }
    }

    #[test]
    fn caterpillar_spine_is_forced(seed in any::<u64>()) {
        let case = caterpillar_cases(seed, 1).pop().unwrap();
        let (h, p) = (&case.host, &case.path);
        let k = p.len() - 1;
        let cat = make_caterpillar(h, p).unwrap();
        for a in neighbours(h, &p[0]).iter().filter(|a| **a != p[1]) {
            let j = cat.part.with_pin(&cat.y, a).unwrap();
            for sigma in enumerate_homs(&j, h, usize::MAX).unwrap().assignments {
                for step in 1..k {
                    prop_assert_eq!(&sigma[&format!("u{step}")], &p[step - 1]);
                }
            }
        }
        for b in neighbours(h, &p[k]).iter().filter(|b| **b != p[k - 1]) {
            let j = cat.part.with_pin(&cat.z, b).unwrap();
            for sigma in enumerate_homs(&j, h, usize::MAX).unwrap().assignments {
                for step in 1..k {
                    prop_assert_eq!(&sigma[&format!("u{step}")], &p[step + 1]);
                }
            }
        }
    }

    #[test]
    fn found_gadgets_verify(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let n = rng.gen_range(3..=9);
        let extra = rng.gen_range(0..=n / 2);
        let h = random_square_free_graph(&mut rng, n, extra);
        prop_assume!(!common::has_involution(&h));
        let found = find_hardness_gadget(&h, &SearchBudget::default());
        let routed = found.unwrap();
        prop_assert!(verify_hardness_gadget(&routed.gadget, &h).is_accepted());
    }

    #[test]
    fn triangle_edges_lie_in_one_triangle(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let n = rng.gen_range(3..=10);
        let h = random_square_free_graph(&mut rng, n, n);
        prop_assert!(is_square_free(&h));
        for (u, v) in h.edges() {
            let c = common::cycles_through_edge(&h, u, v, 3);
            prop_assert!(c <= 1);
        }
    }

    #[test]
    fn classification_ignores_reduction(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.2..0.6);
        let h = random_graph(&mut rng, n, p);
        let budget = SearchBudget::default();
        let reduced = involution_free_reduction(&h).result;
        let a = classify(&h, &budget).unwrap();
        let b = classify(&reduced, &budget).unwrap();
        prop_assert_eq!(a.kind(), b.kind());
    }
}

fn tree_gadget() -> (Graph, HardnessGadget) {
    let h = fixtures::tree7();
    let g = find_hardness_gadget(&h, &SearchBudget::default()).unwrap().gadget;
    (h, g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn legitimate_homs_decide_parity(seed in any::<u64>()) {
        let (h, gadget) = tree_gadget();
        let mut rng = seeded(seed);
        let n = rng.gen_range(1..=3);
        let p = rng.gen_range(0.3..1.0);
        let g = random_graph(&mut rng, n, p);
        let compiled = compile_is_instance(&g, &gadget, &h).unwrap();
        let k = bridge_graph(&g, &gadget).unwrap();
        let kg = k.graph();
        let index = |set: &std::collections::BTreeSet<String>| -> Vec<usize> {
            set.iter().map(|v| h.index_of(v).unwrap()).collect()
        };
        let mut allowed: Vec<Option<Vec<usize>>> = vec![None; kg.vertex_count()];
        for (v, t) in k.pinning() {
            allowed[kg.index_of(v).unwrap()] = Some(vec![h.index_of(t).unwrap()]);
        }
        for anchor in compiled.vertex_anchors.values() {
            if let Some(ix) = kg.index_of(anchor) {
                allowed[ix] = Some(index(&gadget.omega_y));
            }
        }
        for e in &compiled.edge_anchors {
            allowed[kg.index_of(&e.anchor).unwrap()] = Some(index(&gadget.omega_z));
        }
        // y anchors of isolated input vertices are not in K; each such vertex
        // contributes a factor |Ω_y|, which is even
        let isolated = (0..g.vertex_count()).any(|v| g.degree(v) == 0);
        let legit = if isolated { 0 } else { common::count_restricted(kg, &h, &allowed) % 2 };
        let parity = count_pinned_parity(&compiled.instance, &h).unwrap() as u128;
        prop_assert_eq!(legit, parity);
    }
}

#[test]
fn corrupted_gadget_is_caught_by_the_battery() {
    let (h, gadget) = tree_gadget();
    // i replaced by another member of Ω_y
    let o = gadget.omega_y.iter().find(|v| **v != gadget.i).unwrap().clone();
    let mut broken = gadget.clone();
    broken.i = o;
    assert!(!verify_hardness_gadget(&broken, &h).is_accepted());
    // J1 replaced by the neighbourhood of a leaf, so Ω_y = {c} is odd
    let mut swapped = gadget.clone();
    swapped.j1 = make_neighbourhood(&h, "a1").unwrap();
    assert!(!verify_hardness_gadget(&swapped, &h).is_accepted());
    let witness = battery_graphs(5, 20).into_iter().find(|g| {
        let j = compile_unchecked(g, &swapped).unwrap();
        let hom = count_pinned_parity(&j.instance, &h).unwrap();
        hom != (common::independent_sets(g) % 2 == 1)
    });
    assert!(witness.is_some());
}

#[test]
fn involution_detection_matches_the_oracle() {
    for g in battery_graphs(9, 30) {
        assert!(g.vertex_count() <= 8);
        assert_eq!(is_involution_free(&g), !common::has_involution(&g));
    }
}
