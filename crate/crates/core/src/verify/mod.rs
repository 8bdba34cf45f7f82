//! Instance verifiers for the union lemma and the induced-union vanishing
//! proposition, plus the seeded fuzz harness that drives every checker.

mod campaign;
mod instances;
mod random;

pub use campaign::{
    fuzz_campaign, replay_bundle, replay_csv, run_trial, CampaignReport, CampaignSummary, CheckStatus,
    rows_from_csv, rows_to_csv, ReplayReport, ReproBundle, TrialOutcome, TrialRow,
};
pub use instances::{
    lemma_campaign, prop_campaign, random_complex, random_prop_instance, InstanceCampaign,
    PropInstance,
};
pub use random::{random_ideal, FuzzConfig};

use serde::{Deserialize, Serialize};

use crate::betti::{betti_hochster, max_shifts, Caps};
use crate::error::Result;
use crate::field::FieldSpec;
use crate::homology::reduced_homology;
use crate::simplicial::{intersect_of, union_of, SimplicialComplex, SubcomplexFamily};
use crate::subadditivity::{ConditionalOutcome, Verdict};

/// If `H̃_{j-r+1}` of every `r`-fold intersection of members vanishes,
/// then `H̃_j` of the union vanishes. The hypothesis is checked over all
/// `2^t - 1` nonempty index sets.
pub fn verify_lemma_ab1(fam: &SubcomplexFamily, j: i32, field: FieldSpec) -> ConditionalOutcome {
    let members = fam.members();
    let t = members.len();
    let n = fam.n();
    let hypothesis = (1u32..1 << t).all(|sel| {
        let r = sel.count_ones() as i32;
        let chosen: Vec<SimplicialComplex> = (0..t)
            .filter(|&i| sel >> i & 1 == 1)
            .map(|i| members[i].clone())
            .collect();
        reduced_homology(&intersect_of(n, &chosen), field).get(j - r + 1) == 0
    });
    let conclusion = if hypothesis {
        Verdict::from_bool(reduced_homology(&union_of(n, members), field).get(j) == 0)
    } else {
        Verdict::Skipped
    };
    ConditionalOutcome {
        hypothesis,
        conclusion,
    }
}

/// Why a proposed instance does not meet the preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropCheck {
    pub preconditions: bool,
    pub reason: Option<String>,
    pub conclusion: Verdict,
    /// Homological degree `t_a - a + s` that must vanish.
    pub degree: Option<i64>,
}

impl PropCheck {
    pub fn is_violation(&self) -> bool {
        self.preconditions && self.conclusion == Verdict::Fails
    }
}

/// Given `|W| = t_a + s + l + 1`, `A ⊆ W` with `|A| = s' + l`,
/// `0 <= s' <= s`, `l >= 1`, `a <= projdim`: the union of `Δ[W ∖ B]` over
/// `B ⊆ A`, `|B| = l`, has vanishing `H̃_{t_a - a + s}`.
///
/// `t_a` is read from the Hochster table of `I_Δ`.
#[allow(clippy::too_many_arguments)]
pub fn verify_prop_ab2(
    delta: &SimplicialComplex,
    w: u32,
    a_set: u32,
    a: usize,
    s: usize,
    l: usize,
    field: FieldSpec,
    caps: Caps,
) -> Result<PropCheck> {
    let skip = |reason: String| {
        Ok(PropCheck {
            preconditions: false,
            reason: Some(reason),
            conclusion: Verdict::Skipped,
            degree: None,
        })
    };
    if a_set & !w != 0 {
        return skip("A is not a subset of W".into());
    }
    if l < 1 {
        return skip("l must be at least 1".into());
    }
    let size_a = a_set.count_ones() as usize;
    if size_a < l || size_a - l > s {
        return skip(format!("|A|={size_a} is not s'+l with 0<=s'<=s={s}, l={l}"));
    }
    let shifts = max_shifts(&betti_hochster(delta, field, caps)?);
    if a > shifts.p {
        return skip(format!("a={a} exceeds projdim {}", shifts.p));
    }
    let t_a = shifts.t[a];
    let size_w = w.count_ones() as usize;
    if size_w != t_a + s + l + 1 {
        return skip(format!("|W|={size_w} but t_a+s+l+1={}", t_a + s + l + 1));
    }

    let degree = t_a as i64 - a as i64 + s as i64;
    let pieces: Vec<SimplicialComplex> = subsets_of_size(a_set, l)
        .into_iter()
        .map(|b| delta.induced(w & !b))
        .collect();
    let union = union_of(delta.n(), &pieces);
    let vanishes = reduced_homology(&union, field).get(degree as i32) == 0;
    Ok(PropCheck {
        preconditions: true,
        reason: None,
        conclusion: Verdict::from_bool(vanishes),
        degree: Some(degree),
    })
}

/// Subsets of `mask` with exactly `k` elements, ascending.
pub(crate) fn subsets_of_size(mask: u32, k: usize) -> Vec<u32> {
    let mut out = Vec::new();
    let mut sub = mask;
    loop {
        if sub.count_ones() as usize == k {
            out.push(sub);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & mask;
    }
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::parse_ideal;

    #[test]
    fn lemma_single_member_is_consistent() {
        for fixture in ["facets: 1 2; 2 3; 3 1", "facets: 1 2 3", "n=3; facets: {}"] {
            let c = SimplicialComplex::parse_fixture(fixture).unwrap();
            let fam = SubcomplexFamily::new(vec![c.clone()]).unwrap();
            for j in -1..3 {
                let out = verify_lemma_ab1(&fam, j, FieldSpec::GF2);
                assert_eq!(out.hypothesis, reduced_homology(&c, FieldSpec::GF2).get(j) == 0);
                assert!(!out.is_violation());
            }
        }
    }

    #[test]
    fn lemma_two_edges() {
        let e12 = SimplicialComplex::parse_fixture("n=3; facets: 1 2").unwrap();
        let e23 = SimplicialComplex::parse_fixture("n=3; facets: 2 3").unwrap();
        let fam = SubcomplexFamily::new(vec![e12, e23]).unwrap();
        let out = verify_lemma_ab1(&fam, 0, FieldSpec::Rationals);
        assert_eq!(out, ConditionalOutcome { hypothesis: true, conclusion: Verdict::Holds });
    }

    #[test]
    fn lemma_hypothesis_false_is_skipped() {
        // two disjoint points: the intersection is {∅}, so H̃_{-1} ≠ 0
        let p1 = SimplicialComplex::parse_fixture("n=2; facets: 1").unwrap();
        let p2 = SimplicialComplex::parse_fixture("n=2; facets: 2").unwrap();
        let fam = SubcomplexFamily::new(vec![p1, p2]).unwrap();
        let out = verify_lemma_ab1(&fam, 0, FieldSpec::GF2);
        assert_eq!(out.conclusion, Verdict::Skipped);
        assert!(!out.hypothesis);
    }

    #[test]
    fn prop_single_term_union() {
        // hollow triangle: t_0 = 0, so a = 0, s = 0, l = 2 needs |W| = 3
        let delta = SimplicialComplex::simplex_boundary(3);
        let check = verify_prop_ab2(&delta, 0b111, 0b011, 0, 0, 2, FieldSpec::GF2, Caps::default()).unwrap();
        assert!(check.preconditions);
        assert_eq!(check.degree, Some(0));
        assert_eq!(check.conclusion, Verdict::Holds);
    }

    #[test]
    fn prop_nonconforming_is_skipped() {
        let delta = SimplicialComplex::simplex_boundary(3);
        let check = verify_prop_ab2(&delta, 0b111, 0b001, 0, 0, 1, FieldSpec::GF2, Caps::default()).unwrap();
        assert!(!check.preconditions);
        assert!(check.reason.unwrap().contains("|W|"));
        let check = verify_prop_ab2(&delta, 0b011, 0b100, 0, 0, 1, FieldSpec::GF2, Caps::default()).unwrap();
        assert!(!check.preconditions);
    }

    #[test]
    fn prop_on_edge_ideal() {
        let ideal = parse_ideal("x1*x2; x2*x3; x3*x4; x4*x1").unwrap();
        let delta = SimplicialComplex::from_stanley_reisner(&ideal).unwrap();
        // t_1 = 2; a = 1, s = 0, l = 1 needs |W| = 4
        let check = verify_prop_ab2(&delta, 0b1111, 0b0001, 1, 0, 1, FieldSpec::GF2, Caps::default()).unwrap();
        assert!(check.preconditions);
        assert_eq!(check.conclusion, Verdict::Holds);
    }

    #[test]
    fn subsets_of_size_enumerates() {
        assert_eq!(subsets_of_size(0b1011, 2), vec![0b0011, 0b1001, 0b1010]);
        assert_eq!(subsets_of_size(0b101, 0), vec![0]);
        assert_eq!(subsets_of_size(0b101, 3), Vec::<u32>::new());
    }
}
