//! The Taylor complex of a monomial ideal and its reduction mod the
//! maximal ideal.
//!
//! Basis elements are subsets `F` of the generator list, encoded as `u32`
//! bitmasks over generator indices. After tensoring with the residue field
//! a differential entry survives only where deleting a generator keeps the
//! lcm unchanged, so the reduced complex splits into independent
//! components, one per lcm. Each component is tiny; homology is computed
//! per component and never on the full `2^r` complex.

use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::betti::{max_shifts, BettiTable, Caps, MaxShifts};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{in_column_space, rank, Matrix};
use crate::monomial::{Monomial, MonomialIdeal};

/// `[F]` with its multidegree `lcm(F)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TaylorBasisElement {
    pub subset: u32,
    pub mdeg: Monomial,
}

impl TaylorBasisElement {
    pub fn new(ideal: &MonomialIdeal, subset: u32) -> Result<Self> {
        if ideal.ngens() < 32 && subset >> ideal.ngens() != 0 {
            return Err(Error::OutOfRange(format!(
                "subset {subset:#b} names generators beyond r={}",
                ideal.ngens()
            )));
        }
        Ok(TaylorBasisElement {
            subset,
            mdeg: lcm_of_subset(ideal, subset),
        })
    }

    /// Homological degree `|F|`.
    pub fn degree(&self) -> usize {
        self.subset.count_ones() as usize
    }

    /// Generator indices in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        bits(self.subset).collect()
    }
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| mask >> i & 1 == 1)
}

fn lcm_of_subset(ideal: &MonomialIdeal, subset: u32) -> Monomial {
    bits(subset).fold(Monomial::one(ideal.nvars()), |acc, i| {
        acc.lcm_unchecked(&ideal.gens()[i])
    })
}

/// One term `sign * coefficient * [target]` of the S-linear differential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaylorTerm {
    pub sign: i8,
    pub coefficient: Monomial,
    pub target: TaylorBasisElement,
}

/// Differential of the (unreduced) Taylor complex:
/// `[F] ↦ Σ_k (-1)^{k-1} lcm(F)/lcm(F∖m_{j_k}) [F∖m_{j_k}]`, with the
/// generators of `F` taken in stored order.
pub fn taylor_differential(f: &TaylorBasisElement, ideal: &MonomialIdeal) -> Result<Vec<TaylorTerm>> {
    if f.subset == 0 {
        return Err(Error::OutOfRange("the differential of [∅] is not part of the complex".into()));
    }
    Ok(f.indices()
        .into_iter()
        .enumerate()
        .map(|(k, j)| {
            let target = TaylorBasisElement::new(ideal, f.subset & !(1 << j)).expect("subset of F");
            let coefficient = f
                .mdeg
                .quotient(&target.mdeg)
                .expect("same ring")
                .expect("lcm of a subset divides lcm(F)");
            TaylorTerm {
                sign: if k % 2 == 0 { 1 } else { -1 },
                coefficient,
                target,
            }
        })
        .collect())
}

/// The part of the reduced Taylor complex living in one multidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarComponent {
    pub mdeg: Monomial,
    /// `bases[a]` lists the subsets of size `a` with this lcm, ascending.
    pub bases: Vec<Vec<u32>>,
    /// `differentials[a - 1]` is `∂_a : bases[a] -> bases[a - 1]`.
    differentials: Vec<Matrix>,
}

impl BarComponent {
    fn build(mdeg: Monomial, mut subsets: Vec<u32>) -> Self {
        subsets.sort_unstable_by_key(|&s| (s.count_ones(), s));
        let top = subsets.last().map_or(0, |s| s.count_ones() as usize);
        let mut bases = vec![Vec::new(); top + 1];
        for s in subsets {
            bases[s.count_ones() as usize].push(s);
        }
        let differentials = (1..=top)
            .map(|a| {
                let (rows, cols) = (&bases[a - 1], &bases[a]);
                let mut m = Matrix::zeros(rows.len(), cols.len());
                for (c, &f) in cols.iter().enumerate() {
                    for (k, j) in bits(f).enumerate() {
                        // lcm(F∖m) = lcm(F) iff F∖m is in this component
                        if let Ok(r) = rows.binary_search(&(f & !(1 << j))) {
                            m.set(r, c, if k % 2 == 0 { 1 } else { -1 });
                        }
                    }
                }
                m
            })
            .collect();
        BarComponent {
            mdeg,
            bases,
            differentials,
        }
    }

    /// `∂_a`, or `None` when either side is out of range.
    pub fn differential(&self, a: usize) -> Option<&Matrix> {
        if a == 0 {
            return None;
        }
        self.differentials.get(a - 1)
    }

    pub fn basis(&self, a: usize) -> &[u32] {
        self.bases.get(a).map_or(&[], Vec::as_slice)
    }

    fn rank_of(&self, a: usize, field: FieldSpec) -> usize {
        self.differential(a).map_or(0, |m| rank(m, field))
    }

    /// `dim H_a` for `a = 0..bases.len()`.
    pub fn homology(&self, field: FieldSpec) -> Vec<u64> {
        let ranks: Vec<usize> = (0..=self.bases.len()).map(|a| self.rank_of(a, field)).collect();
        (0..self.bases.len())
            .map(|a| (self.bases[a].len() - ranks[a] - ranks[a + 1]) as u64)
            .collect()
    }

    /// Whether `[F]` lies in the image of `∂_{|F|+1}` on this component.
    pub fn is_boundary(&self, subset: u32, field: FieldSpec) -> bool {
        let a = subset.count_ones() as usize;
        let basis = self.basis(a);
        let Ok(pos) = basis.binary_search(&subset) else {
            return false;
        };
        let Some(d) = self.differential(a + 1) else {
            return false;
        };
        let mut v = vec![0i64; basis.len()];
        v[pos] = 1;
        in_column_space(d, &v, field)
    }
}

fn check_taylor_input(ideal: &MonomialIdeal, caps: Caps) -> Result<()> {
    ideal.ensure_proper_nonzero()?;
    let r = ideal.ngens();
    let cap = caps.taylor_gens.min(31);
    if r > cap {
        return Err(Error::CapExceeded {
            what: "generator count for Taylor",
            value: r,
            cap,
        });
    }
    Ok(())
}

/// Partition the nonempty subsets of the generators by lcm and build the
/// reduced differential on each part. Components are ordered by
/// `(degree, exponent vector)` of their multidegree.
pub fn bar_components(ideal: &MonomialIdeal, caps: Caps) -> Result<Vec<BarComponent>> {
    check_taylor_input(ideal, caps)?;
    let n = ideal.nvars();
    let r = ideal.ngens();
    let count = 1usize << r;

    // lcm of every subset, built from the subset without its lowest bit
    let mut lcms = vec![0u32; count * n];
    for s in 1..count {
        let low = s.trailing_zeros() as usize;
        let prev = s & (s - 1);
        let g = ideal.gens()[low].exponents();
        for v in 0..n {
            lcms[s * n + v] = lcms[prev * n + v].max(g[v]);
        }
    }

    let mut groups: HashMap<&[u32], Vec<u32>> = HashMap::new();
    for s in 1..count {
        groups.entry(&lcms[s * n..(s + 1) * n]).or_default().push(s as u32);
    }
    let mut keyed: Vec<(Monomial, Vec<u32>)> = groups
        .into_iter()
        .map(|(k, v)| (Monomial::new(k.to_vec()), v))
        .collect();
    keyed.sort_by(|a, b| (a.0.degree(), &a.0).cmp(&(b.0.degree(), &b.0)));

    Ok(keyed
        .into_par_iter()
        .map(|(mdeg, subsets)| BarComponent::build(mdeg, subsets))
        .collect())
}

/// Betti table from the per-multidegree homology of the reduced Taylor
/// complex, `β_{a,b} = dim_K H_a` summed over components of degree `b`.
pub fn betti_taylor(ideal: &MonomialIdeal, field: FieldSpec, caps: Caps) -> Result<BettiTable> {
    let components = bar_components(ideal, caps)?;
    Ok(table_from_components(ideal.nvars(), &components, field))
}

fn table_from_components(n: usize, components: &[BarComponent], field: FieldSpec) -> BettiTable {
    let parts: Vec<(usize, Vec<u64>)> = components
        .par_iter()
        .map(|c| (c.mdeg.degree() as usize, c.homology(field)))
        .collect();
    let mut table = BettiTable::new(n, field);
    table.add(0, 0, 1);
    for (deg, dims) in parts {
        for (a, d) in dims.into_iter().enumerate() {
            table.add(a, deg, d);
        }
    }
    table
}

/// Per-candidate outcome of the witness search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateDiagnostic {
    pub generators: Vec<usize>,
    pub cycle_ok: bool,
    pub nonboundary_ok: bool,
}

/// Result of searching for a single basis element `[F]` with `|F| = c`,
/// `deg lcm(F) = t_c`, whose class in `H_c` is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub c: usize,
    pub t_c: usize,
    pub field: FieldSpec,
    pub found: Option<TaylorBasisElement>,
    pub cycle_ok: bool,
    pub nonboundary_ok: bool,
    pub degree_ok: bool,
    /// Number of basis elements of degree `c` with `deg lcm = t_c`.
    pub candidates: usize,
    /// When nothing qualifies: the first few candidates in subset-lex order.
    pub diagnostics: Vec<CandidateDiagnostic>,
    /// With a witness, `t_c <= t_a + t_b` for every split `a + b = c`.
    pub implied: Vec<(usize, usize, bool)>,
}

impl WitnessReport {
    /// A missing basis-element witness does not show the hypothesis
    /// fails; general cycles are not searched.
    pub fn established(&self) -> bool {
        self.found.is_some()
    }
}

const DIAGNOSTIC_LIMIT: usize = 5;

/// Precomputed Taylor data reused across several queries on one ideal.
pub struct TaylorComplex<'a> {
    ideal: &'a MonomialIdeal,
    components: Vec<BarComponent>,
    by_mdeg: HashMap<Monomial, usize>,
}

impl<'a> TaylorComplex<'a> {
    pub fn new(ideal: &'a MonomialIdeal, caps: Caps) -> Result<Self> {
        let components = bar_components(ideal, caps)?;
        let by_mdeg = components
            .iter()
            .enumerate()
            .map(|(i, c)| (c.mdeg.clone(), i))
            .collect();
        Ok(TaylorComplex {
            ideal,
            components,
            by_mdeg,
        })
    }

    pub fn components(&self) -> &[BarComponent] {
        &self.components
    }

    pub fn betti(&self, field: FieldSpec) -> BettiTable {
        table_from_components(self.ideal.nvars(), &self.components, field)
    }

    fn is_cycle(&self, subset: u32, mdeg: &Monomial) -> bool {
        bits(subset).all(|j| lcm_of_subset(self.ideal, subset & !(1 << j)) != *mdeg)
    }

    fn diagnose(&self, subset: u32, mdeg: &Monomial, field: FieldSpec) -> CandidateDiagnostic {
        let comp = &self.components[self.by_mdeg[mdeg]];
        CandidateDiagnostic {
            generators: bits(subset).collect(),
            cycle_ok: self.is_cycle(subset, mdeg),
            nonboundary_ok: !comp.is_boundary(subset, field),
        }
    }

    /// Witness search at homological degree `c` against the shifts `t`.
    pub fn witness(&self, c: usize, shifts: &MaxShifts, field: FieldSpec) -> Result<WitnessReport> {
        if c < 1 || c > shifts.p {
            return Err(Error::OutOfRange(format!(
                "witness degree c={c} outside 1..={}",
                shifts.p
            )));
        }
        let t_c = shifts.t[c];
        let r = self.ideal.ngens();
        let candidates: Vec<(u32, Monomial)> = (0..r)
            .combinations(c)
            .map(|idx| idx.iter().fold(0u32, |acc, &i| acc | 1 << i))
            .map(|s| (s, lcm_of_subset(self.ideal, s)))
            .filter(|(_, m)| m.degree() as usize == t_c)
            .collect();

        let found = candidates
            .par_iter()
            .find_first(|(s, m)| {
                let d = self.diagnose(*s, m, field);
                d.cycle_ok && d.nonboundary_ok
            })
            .map(|(s, m)| TaylorBasisElement {
                subset: *s,
                mdeg: m.clone(),
            });

        let implied = (0..=c)
            .map(|a| (a, c - a, shifts.t(c) <= shifts.t(a) + shifts.t(c - a)))
            .collect();

        let mut report = WitnessReport {
            c,
            t_c,
            field,
            found: None,
            cycle_ok: false,
            nonboundary_ok: false,
            degree_ok: false,
            candidates: candidates.len(),
            diagnostics: Vec::new(),
            implied,
        };
        match found {
            Some(w) => {
                report.found = Some(w);
                report.cycle_ok = true;
                report.nonboundary_ok = true;
                report.degree_ok = true;
            }
            None => {
                report.implied.clear();
                report.diagnostics = candidates
                    .iter()
                    .take(DIAGNOSTIC_LIMIT)
                    .map(|(s, m)| self.diagnose(*s, m, field))
                    .collect();
                if let Some(best) = report
                    .diagnostics
                    .iter()
                    .max_by_key(|d| (d.cycle_ok as u8 + d.nonboundary_ok as u8, std::cmp::Reverse(d.generators.clone())))
                {
                    report.cycle_ok = best.cycle_ok;
                    report.nonboundary_ok = best.nonboundary_ok;
                    report.degree_ok = true;
                }
            }
        }
        Ok(report)
    }
}

/// Search for a basis-element witness at degree `c` (see [`WitnessReport`]).
pub fn witness_ab5(ideal: &MonomialIdeal, c: usize, field: FieldSpec, caps: Caps) -> Result<WitnessReport> {
    let tc = TaylorComplex::new(ideal, caps)?;
    let shifts = max_shifts(&tc.betti(field));
    tc.witness(c, &shifts, field)
}

/// The ratios `lcm(G) / lcm(G ∖ m_i)` and whether each is a non-unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LcmRatioCriterion {
    pub holds: bool,
    pub ratios: Vec<Monomial>,
}

pub fn criterion_ab6(ideal: &MonomialIdeal) -> Result<LcmRatioCriterion> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let full = ideal.lcm_all();
    let ratios: Vec<Monomial> = (0..ideal.ngens())
        .map(|i| {
            let rest = ideal
                .gens()
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .fold(Monomial::one(ideal.nvars()), |acc, (_, g)| acc.lcm_unchecked(g));
            full.quotient(&rest)
                .expect("same ring")
                .expect("lcm of a subset divides the full lcm")
        })
        .collect();
    Ok(LcmRatioCriterion {
        holds: ratios.iter().all(|m| m.degree() > 0),
        ratios,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{parse_ideal, render_monomial};

    fn ideal(s: &str) -> MonomialIdeal {
        parse_ideal(s).unwrap()
    }

    fn rendered(i: &MonomialIdeal, ms: &[Monomial]) -> Vec<String> {
        ms.iter().map(|m| render_monomial(i.var_names(), m)).collect()
    }

    #[test]
    fn differential_of_a_pair() {
        let i = ideal("x*y; y*z");
        let f = TaylorBasisElement::new(&i, 0b11).unwrap();
        let terms = taylor_differential(&f, &i).unwrap();
        let shown: Vec<(i8, String, u32)> = terms
            .iter()
            .map(|t| (t.sign, i.render_monomial(&t.coefficient), t.target.subset))
            .collect();
        assert_eq!(shown, vec![(1, "x".into(), 0b10), (-1, "z".into(), 0b01)]);
    }

    #[test]
    fn differential_of_a_singleton_and_empty() {
        let i = ideal("x*y; y*z");
        let f = TaylorBasisElement::new(&i, 0b10).unwrap();
        let terms = taylor_differential(&f, &i).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!((terms[0].sign, i.render_monomial(&terms[0].coefficient)), (1, "y*z".into()));
        assert_eq!(terms[0].target.subset, 0);
        let empty = TaylorBasisElement::new(&i, 0).unwrap();
        assert!(taylor_differential(&empty, &i).is_err());
        assert!(TaylorBasisElement::new(&i, 0b100).is_err());
    }

    #[test]
    fn worked_example_top_differential() {
        let i = ideal("a^4*b*c; b^3*c^2; c^5*a^3");
        let f = TaylorBasisElement::new(&i, 0b111).unwrap();
        let terms = taylor_differential(&f, &i).unwrap();
        let coeffs: Vec<String> = terms.iter().map(|t| i.render_monomial(&t.coefficient)).collect();
        assert_eq!(coeffs, vec!["a", "b^2", "c^3"]);
        assert_eq!(terms.iter().map(|t| t.sign).collect::<Vec<_>>(), vec![1, -1, 1]);
    }

    #[test]
    fn principal_component() {
        let i = ideal("x^2*y");
        let comps = bar_components(&i, Caps::default()).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].homology(FieldSpec::GF2), vec![0, 1]);
        let t = betti_taylor(&i, FieldSpec::GF2, Caps::default()).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![(0, 0, 1), (1, 3, 1)]);
    }

    #[test]
    fn two_generators_top_component() {
        let i = ideal("x*y; y*z");
        let comps = bar_components(&i, Caps::default()).unwrap();
        let top = comps.iter().find(|c| c.mdeg.degree() == 3).unwrap();
        assert_eq!(top.bases, vec![vec![], vec![], vec![0b11]]);
        assert!(top.differential(2).unwrap().is_zero());
        let t = betti_taylor(&i, FieldSpec::Rationals, Caps::default()).unwrap();
        assert_eq!(t.get(2, 3), 1);
    }

    #[test]
    fn triangle_edge_ideal() {
        let i = ideal("x*y; y*z; z*x");
        for f in [FieldSpec::GF2, FieldSpec::Rationals] {
            let t = betti_taylor(&i, f, Caps::default()).unwrap();
            assert_eq!(t.entries().collect::<Vec<_>>(), vec![(0, 0, 1), (1, 2, 3), (2, 3, 2)]);
            let s = max_shifts(&t);
            assert_eq!((s.p, s.t), (2, vec![0, 2, 3]));
        }
    }

    #[test]
    fn cap_refusal() {
        let caps = Caps {
            hochster_vars: 16,
            taylor_gens: 2,
        };
        assert!(matches!(
            betti_taylor(&ideal("x; y; z"), FieldSpec::GF2, caps),
            Err(Error::CapExceeded { value: 3, cap: 2, .. })
        ));
    }

    #[test]
    fn criterion_examples() {
        let i = ideal("a^4*b*c; b^3*c^2; c^5*a^3");
        let crit = criterion_ab6(&i).unwrap();
        assert!(crit.holds);
        assert_eq!(rendered(&i, &crit.ratios), vec!["a", "b^2", "c^3"]);

        let tri = ideal("x*y; y*z; z*x");
        let crit = criterion_ab6(&tri).unwrap();
        assert!(!crit.holds);
        assert_eq!(rendered(&tri, &crit.ratios), vec!["1", "1", "1"]);

        let single = ideal("x^2*y");
        let crit = criterion_ab6(&single).unwrap();
        assert!(crit.holds);
        assert_eq!(rendered(&single, &crit.ratios), vec!["x^2*y"]);
    }

    #[test]
    fn witness_examples() {
        let caps = Caps::default();
        let i = ideal("a^4*b*c; b^3*c^2; c^5*a^3");
        let w = witness_ab5(&i, 3, FieldSpec::GF2, caps).unwrap();
        assert_eq!(w.found.as_ref().map(|f| f.subset), Some(0b111));
        assert!(w.cycle_ok && w.nonboundary_ok && w.degree_ok);
        assert!(w.implied.iter().all(|x| x.2));

        let ci = ideal("x; y");
        let w = witness_ab5(&ci, 2, FieldSpec::Rationals, caps).unwrap();
        assert_eq!(w.found.map(|f| f.subset), Some(0b11));
        assert_eq!(w.t_c, 2);

        assert!(witness_ab5(&ci, 0, FieldSpec::GF2, caps).is_err());
        assert!(witness_ab5(&ci, 3, FieldSpec::GF2, caps).is_err());
    }

    #[test]
    fn witness_for_triangle_pairs() {
        // every pair is a cycle; the one triple maps to (1, -1, 1), so a
        // single pair is never a boundary
        let i = ideal("x*y; y*z; z*x");
        let w = witness_ab5(&i, 2, FieldSpec::GF2, Caps::default()).unwrap();
        assert_eq!(w.found.map(|f| f.subset), Some(0b011));
        assert_eq!(w.candidates, 3);
        assert_eq!(w.implied, vec![(0, 2, true), (1, 1, true), (2, 0, true)]);
    }

    #[test]
    fn witness_absent_reports_diagnostics() {
        // 4-cycle edge ideal: every triple keeps its lcm abcd after
        // dropping a middle edge, so no basis element is a cycle, although
        // beta_{3,4} = 1
        let i = ideal("a*b; b*c; c*d; d*a");
        let t = betti_taylor(&i, FieldSpec::GF2, Caps::default()).unwrap();
        assert_eq!(t.get(3, 4), 1);
        let w = witness_ab5(&i, 3, FieldSpec::GF2, Caps::default()).unwrap();
        assert!(w.found.is_none());
        assert!(!w.established());
        assert_eq!(w.candidates, 4);
        assert_eq!(w.diagnostics.len(), 4);
        assert!(w.diagnostics.iter().all(|d| !d.cycle_ok));
        assert!(w.implied.is_empty());
    }

    #[test]
    fn components_compose_to_zero() {
        let i = ideal("a^2*b; b^2*c; a*c^2; a*b*c");
        for comp in bar_components(&i, Caps::default()).unwrap() {
            for a in 2..comp.bases.len() {
                let prod = comp.differential(a - 1).unwrap().mul(comp.differential(a).unwrap());
                assert!(prod.is_zero());
            }
        }
    }
}
