//! Randomized invariants across modules: weighted sum-set algebra,
//! membership characterizations, factorization distances, and quadratic
//! form reduction.

use std::sync::Arc;

use proptest::prelude::*;
use wzs_core::group::{FiniteAbelianGroup, WeightSet};
use wzs_core::monoid::{distance, MonoidHandle};
use wzs_core::qform::{enumerate_reduced, reduce, Discriminant, QForm};
use wzs_core::sequence::Sequence;

const GROUP_FACTORS: &[&[u64]] = &[&[2], &[3], &[4], &[2, 2], &[5], &[6], &[2, 4], &[8], &[3, 3]];

fn group_of(idx: usize) -> Arc<FiniteAbelianGroup> {
    FiniteAbelianGroup::new(GROUP_FACTORS[idx % GROUP_FACTORS.len()]).unwrap()
}

fn seq_from(group: &Arc<FiniteAbelianGroup>, raw: &[u16]) -> Sequence {
    let elems: Vec<_> = raw
        .iter()
        .map(|&r| wzs_core::Elem(r % group.order() as u16))
        .collect();
    Sequence::from_elems(group.clone(), &elems)
}

fn weights_of(group: &Arc<FiniteAbelianGroup>, which: u8) -> WeightSet {
    match which % 3 {
        0 => WeightSet::identity(group),
        1 => WeightSet::plus_minus(group),
        _ => WeightSet::full_aut(group).unwrap(),
    }
}

proptest! {
    #[test]
    fn sigma_gamma_is_additive(
        gi in 0usize..GROUP_FACTORS.len(),
        which in 0u8..3,
        raw_s in proptest::collection::vec(any::<u16>(), 0..5),
        raw_t in proptest::collection::vec(any::<u16>(), 0..5),
    ) {
        let g = group_of(gi);
        let gamma = weights_of(&g, which);
        let s = seq_from(&g, &raw_s);
        let t = seq_from(&g, &raw_t);
        let st = s.mul(&t).unwrap();
        prop_assert_eq!(
            st.sigma_gamma(&gamma),
            g.sumset(s.sigma_gamma(&gamma), t.sigma_gamma(&gamma))
        );
    }

    #[test]
    fn membership_is_zero_in_sigma_gamma(
        gi in 0usize..GROUP_FACTORS.len(),
        which in 0u8..3,
        raw in proptest::collection::vec(any::<u16>(), 0..6),
    ) {
        let g = group_of(gi);
        let gamma = weights_of(&g, which);
        let s = seq_from(&g, &raw);
        let member = s.is_empty() || s.sigma_gamma(&gamma).contains(g.zero());
        prop_assert_eq!(s.is_wzs(&gamma), member);
    }

    #[test]
    fn squares_are_members_under_pm(
        gi in 0usize..GROUP_FACTORS.len(),
        raw in proptest::collection::vec(any::<u16>(), 0..5),
    ) {
        let g = group_of(gi);
        let pm = WeightSet::plus_minus(&g);
        let s = seq_from(&g, &raw);
        prop_assert!(s.pow(2).is_wzs(&pm));
    }

    #[test]
    fn big_sigma_contains_every_subsequence_sum(
        gi in 0usize..GROUP_FACTORS.len(),
        which in 0u8..3,
        raw in proptest::collection::vec(any::<u16>(), 1..5),
    ) {
        let g = group_of(gi);
        let gamma = weights_of(&g, which);
        let s = seq_from(&g, &raw);
        let big = s.big_sigma_gamma(&gamma);
        // the full-sequence value set is one of the united subsequence sets
        let full = s.sigma_gamma(&gamma);
        prop_assert_eq!(big.0 & full.0, full.0);
    }

    #[test]
    fn subgroup_generated_is_idempotent(
        gi in 0usize..GROUP_FACTORS.len(),
        raw in proptest::collection::vec(any::<u16>(), 0..4),
    ) {
        let g = group_of(gi);
        let gens: Vec<_> = raw
            .iter()
            .map(|&r| wzs_core::Elem(r % g.order() as u16))
            .collect();
        let h = g.subgroup_generated(&gens);
        prop_assert!(g.is_subgroup(h));
        let h_elems: Vec<_> = h.iter().collect();
        prop_assert_eq!(g.subgroup_generated(&h_elems), h);
    }

    #[test]
    fn factorization_distances_form_a_metric(
        raw in proptest::collection::vec(0u16..5, 2..7),
    ) {
        let g = FiniteAbelianGroup::new(&[5]).unwrap();
        let pm = WeightSet::plus_minus(&g);
        let s = seq_from(&g, &raw).pow(2); // squares are always members
        let handle = MonoidHandle::new(g, pm);
        let zs = handle.factorizations(&s).unwrap();
        for z1 in &zs {
            prop_assert_eq!(distance(z1, z1).unwrap(), 0);
            for z2 in &zs {
                let d12 = distance(z1, z2).unwrap();
                prop_assert_eq!(d12, distance(z2, z1).unwrap());
                let diff = (z1.len() as i64 - z2.len() as i64).unsigned_abs() as u32;
                if z1.indices() != z2.indices() {
                    prop_assert!(d12 >= diff.max(1));
                }
                for z3 in &zs {
                    prop_assert!(distance(z1, z3).unwrap() <= d12 + distance(z2, z3).unwrap());
                }
            }
        }
    }

    #[test]
    fn reduce_is_constant_on_unimodular_orbits(
        delta_idx in 0usize..40,
        form_pick in any::<u16>(),
        word in proptest::collection::vec(0u8..2, 0..6),
    ) {
        // scan discriminants -3 .. -200
        let delta = -(3 + (delta_idx as i64) * 5);
        let delta = if delta.rem_euclid(4) > 1 { delta - 1 } else { delta };
        let Ok(d) = Discriminant::new(delta) else {
            return Ok(());
        };
        let forms = enumerate_reduced(&d);
        prop_assume!(!forms.is_empty());
        let f = forms[form_pick as usize % forms.len()];
        let mut g = f;
        for &step in &word {
            g = if step == 0 {
                // S: (a,b,c) -> (c,-b,a)
                QForm { a: g.c, b: -g.b, c: g.a }
            } else {
                // T: (a,b,c) -> (a, b+2a, a+b+c)
                QForm { a: g.a, b: g.b + 2 * g.a, c: g.a + g.b + g.c }
            };
        }
        prop_assert_eq!(g.discriminant(), delta);
        prop_assert_eq!(reduce(&g), f);
        prop_assert_eq!(reduce(&reduce(&g)), f);
    }
}
