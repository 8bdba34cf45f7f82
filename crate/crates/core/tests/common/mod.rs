#![allow(dead_code)]

use proptest::prelude::*;
use subadd::monomial::Monomial;
use subadd::{MonomialIdeal, SimplicialComplex};

/// Nonzero proper monomial ideals on `1..=n_max` variables with exponents
/// at most `e_max` and at most `r_max` generators before minimalization.
pub fn ideal(n_max: usize, e_max: u32, r_max: usize) -> impl Strategy<Value = MonomialIdeal> {
    (1..=n_max)
        .prop_flat_map(move |n| prop::collection::vec(prop::collection::vec(0..=e_max, n), 1..=r_max))
        .prop_filter_map("unit generator", |rows| {
            let n = rows[0].len();
            if rows.iter().any(|e| e.iter().all(|&x| x == 0)) {
                return None;
            }
            MonomialIdeal::with_default_names(n, rows.into_iter().map(Monomial::new).collect()).ok()
        })
}

pub fn squarefree_ideal(n_max: usize, r_max: usize) -> impl Strategy<Value = MonomialIdeal> {
    ideal(n_max, 1, r_max)
}

/// Complexes on `[n]` given by up to five random facets.
pub fn complex(n: usize) -> impl Strategy<Value = SimplicialComplex> {
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    prop::collection::vec(0..=full, 0..=5).prop_map(move |facets| {
        if facets.is_empty() {
            SimplicialComplex::empty(n)
        } else {
            SimplicialComplex::from_facets(n, &facets).expect("facets inside [n]")
        }
    })
}

/// Six-vertex triangulation of the real projective plane.
pub fn rp2() -> SimplicialComplex {
    SimplicialComplex::parse_fixture(
        "facets: 1 2 3; 1 3 4; 1 4 5; 1 5 6; 1 2 6; 2 3 5; 2 4 5; 2 4 6; 3 4 6; 3 5 6",
    )
    .expect("valid fixture")
}

/// `Σ (-1)^k f_k` over faces of every size, the empty face included.
pub fn reduced_euler_of_faces(c: &SimplicialComplex) -> i64 {
    c.faces_by_size()
        .iter()
        .enumerate()
        .map(|(s, layer)| if s % 2 == 1 { layer.len() as i64 } else { -(layer.len() as i64) })
        .sum()
}
