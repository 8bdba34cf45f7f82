mod common;

use std::collections::HashMap;

use common::ideal;
use proptest::prelude::*;
use subadd::taylor::{bar_components, taylor_differential, TaylorBasisElement};
use subadd::{Caps, FieldSpec, MonomialIdeal};

/// `∂(∂ e_F)` as a map `(subset, coefficient exponents) -> integer`.
fn double_boundary(i: &MonomialIdeal, subset: u32) -> HashMap<(u32, Vec<u32>), i64> {
    let mut acc = HashMap::new();
    let f = TaylorBasisElement::new(i, subset).unwrap();
    for outer in taylor_differential(&f, i).unwrap() {
        if outer.target.subset == 0 {
            continue;
        }
        for inner in taylor_differential(&outer.target, i).unwrap() {
            let coef: Vec<u32> = outer
                .coefficient
                .exponents()
                .iter()
                .zip(inner.coefficient.exponents())
                .map(|(a, b)| a + b)
                .collect();
            *acc.entry((inner.target.subset, coef)).or_insert(0) += i64::from(outer.sign * inner.sign);
        }
    }
    acc.retain(|_, v| *v != 0);
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn taylor_differential_squares_to_zero(i in ideal(4, 3, 5)) {
        for subset in 1u32..1 << i.ngens() {
            prop_assert!(double_boundary(&i, subset).is_empty(), "subset {:b} of {}", subset, i);
        }
    }

    #[test]
    fn differential_terms_are_homogeneous(i in ideal(4, 3, 5)) {
        for subset in 1u32..1 << i.ngens() {
            let f = TaylorBasisElement::new(&i, subset).unwrap();
            for term in taylor_differential(&f, &i).unwrap() {
                let total: Vec<u32> = term
                    .coefficient
                    .exponents()
                    .iter()
                    .zip(term.target.mdeg.exponents())
                    .map(|(a, b)| a + b)
                    .collect();
                prop_assert_eq!(&total[..], f.mdeg.exponents());
            }
        }
    }

    #[test]
    fn bar_components_satisfy_euler_and_boundary_identities(i in ideal(4, 3, 5)) {
        for comp in bar_components(&i, Caps::default()).unwrap() {
            let mut a = 1;
            while let (Some(d), Some(e)) = (comp.differential(a), comp.differential(a + 1)) {
                prop_assert!(d.mul(e).is_zero());
                a += 1;
            }
            for f in [FieldSpec::GF2, FieldSpec::Rationals] {
                let h = comp.homology(f);
                let chi_basis: i64 = comp.bases.iter().enumerate()
                    .map(|(k, b)| if k % 2 == 0 { b.len() as i64 } else { -(b.len() as i64) })
                    .sum();
                let chi_h: i64 = h.iter().enumerate()
                    .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
                    .sum();
                prop_assert_eq!(chi_basis, chi_h);
            }
        }
    }
}
