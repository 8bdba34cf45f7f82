//! Graded Betti tables, maximal shifts, and the Hochster engine.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::homology::{reduced_homology, HomologyMemo};
use crate::monomial::{polarize, MonomialIdeal};
use crate::simplicial::SimplicialComplex;
use crate::taylor::betti_taylor;

/// Size limits past which the engines refuse to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest vertex count for the Hochster sum (2^n subsets).
    pub hochster_vars: usize,
    /// Largest generator count for the Taylor complex (2^r subsets).
    pub taylor_gens: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            hochster_vars: 16,
            taylor_gens: 18,
        }
    }
}

/// Graded Betti numbers `β_{i,j}(S/I)` over a fixed field. Only nonzero
/// entries are stored, keyed by `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub n: usize,
    pub field: FieldSpec,
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn new(n: usize, field: FieldSpec) -> Self {
        BettiTable {
            n,
            field,
            entries: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, i: usize, j: usize, v: u64) {
        if v > 0 {
            *self.entries.entry((i, j)).or_insert(0) += v;
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// `Σ_j β_{i,j}`.
    pub fn total(&self, i: usize) -> u64 {
        self.entries().filter(|e| e.0 == i).map(|e| e.2).sum()
    }

    /// Check the structural invariants of a table of `S/I` with `I`
    /// proper and nonzero.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::OutOfRange(msg));
        if self.get(0, 0) != 1 || self.entries().any(|(i, j, _)| i == 0 && j != 0) {
            return bad("row 0 must be exactly β_{0,0} = 1".into());
        }
        if let Some((i, j, _)) = self.entries().find(|&(i, j, _)| i > self.n || j < i) {
            return bad(format!("entry ({i},{j}) outside 0 <= i <= n, i <= j"));
        }
        Ok(())
    }

    /// First `(i, j)` where the two tables differ.
    pub fn first_difference(&self, other: &BettiTable) -> Option<(usize, usize)> {
        self.entries
            .keys()
            .chain(other.entries.keys())
            .filter(|&&(i, j)| self.get(i, j) != other.get(i, j))
            .min()
            .copied()
    }

    /// Standard Betti diagram: columns are `i`, rows are `j - i`.
    pub fn diagram(&self) -> String {
        let p = self.projective_dimension();
        let max_row = self.entries().map(|(i, j, _)| j - i).max().unwrap_or(0);
        let mut cells: Vec<Vec<String>> = Vec::new();
        let mut header = vec!["".to_string()];
        header.extend((0..=p).map(|i| i.to_string()));
        cells.push(header);
        let mut total = vec!["total:".to_string()];
        total.extend((0..=p).map(|i| self.total(i).to_string()));
        cells.push(total);
        for row in 0..=max_row {
            let mut line = vec![format!("{row}:")];
            line.extend((0..=p).map(|i| match self.get(i, i + row) {
                0 => ".".to_string(),
                v => v.to_string(),
            }));
            cells.push(line);
        }
        let ncols = p + 2;
        let widths: Vec<usize> = (0..ncols)
            .map(|c| cells.iter().map(|r| r[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for r in &cells {
            let line: Vec<String> = r
                .iter()
                .zip(&widths)
                .map(|(s, &w)| format!("{s:>w$}"))
                .collect();
            let _ = writeln!(out, "{}", line.join(" ").trim_end());
        }
        out
    }

    pub fn to_json(&self) -> BettiJson {
        let shifts = max_shifts(self);
        BettiJson {
            field: self.field,
            betti: self.entries().map(|(i, j, v)| [i as u64, j as u64, v]).collect(),
            t: shifts.t.clone(),
            projdim: shifts.p,
        }
    }
}

/// Wire form: `{"field":"GF(2)","betti":[[i,j,v],...],"t":[...],"projdim":p}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiJson {
    pub field: FieldSpec,
    pub betti: Vec<[u64; 3]>,
    pub t: Vec<usize>,
    pub projdim: usize,
}

/// Maximal shifts `t_0..t_p` of a Betti table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxShifts {
    pub p: usize,
    pub t: Vec<usize>,
    pub field: FieldSpec,
}

impl MaxShifts {
    pub fn new(t: Vec<usize>, field: FieldSpec) -> Self {
        assert!(!t.is_empty(), "t_0 is always defined");
        MaxShifts {
            p: t.len() - 1,
            t,
            field,
        }
    }

    pub fn t(&self, i: usize) -> i64 {
        self.t[i] as i64
    }
}

/// `t_i = max{j : β_{i,j} ≠ 0}` for `0 <= i <= p`.
pub fn max_shifts(table: &BettiTable) -> MaxShifts {
    let p = table.projective_dimension();
    let mut t = vec![0usize; p + 1];
    for (i, j, _) in table.entries() {
        t[i] = t[i].max(j);
    }
    MaxShifts {
        p,
        t,
        field: table.field,
    }
}

/// Hochster's formula: `β_{i,i+j}(S/I_Δ) = Σ_{|W|=i+j} dim H̃_{j-1}(Δ[W])`,
/// summed over all `2^n` vertex subsets.
pub fn betti_hochster(c: &SimplicialComplex, field: FieldSpec, caps: Caps) -> Result<BettiTable> {
    hochster_impl(c, field, caps, None)
}

/// As [`betti_hochster`], drawing induced homology from a shared memo.
pub fn betti_hochster_memo(
    c: &SimplicialComplex,
    field: FieldSpec,
    caps: Caps,
    memo: &HomologyMemo,
) -> Result<BettiTable> {
    hochster_impl(c, field, caps, Some(memo))
}

fn hochster_impl(
    c: &SimplicialComplex,
    field: FieldSpec,
    caps: Caps,
    memo: Option<&HomologyMemo>,
) -> Result<BettiTable> {
    let n = c.n();
    if c.is_void() {
        return Err(Error::UnitIdeal);
    }
    if c.non_faces().is_empty() {
        return Err(Error::ZeroIdeal);
    }
    if n > caps.hochster_vars {
        return Err(Error::CapExceeded {
            what: "variable count for Hochster",
            value: n,
            cap: caps.hochster_vars,
        });
    }

    // Δ[W] is a cone unless W is a union of minimal non-faces, so only
    // those subsets can contribute.
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for w in 0..(1u64 << n) {
        let w = w as u32;
        let covered = c
            .non_faces()
            .iter()
            .filter(|&&nf| nf & !w == 0)
            .fold(0u32, |acc, &nf| acc | nf);
        if covered == w {
            by_size[w.count_ones() as usize].push(w);
        }
    }

    let mut table = BettiTable::new(n, field);
    for (size, ws) in by_size.iter().enumerate() {
        let contributions: Vec<(usize, u64)> = ws
            .par_iter()
            .map(|&w| match memo {
                Some(m) => m.induced(c, w, field),
                None => reduced_homology(&c.induced(w), field),
            })
            .flat_map_iter(|h| {
                // H̃_{j-1}(Δ[W]) contributes to β_{i, |W|} with i = |W| - j
                h.nonzero()
                    .map(|(k, d)| (size as i64 - (k as i64 + 1), d))
                    .filter(|&(i, _)| i >= 0)
                    .map(|(i, d)| (i as usize, d))
                    .collect::<Vec<_>>()
            })
            .collect();
        for (i, d) in contributions {
            table.add(i, size, d);
        }
    }
    Ok(table)
}

/// Which engine computes the table in [`betti_of_ideal`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Hochster,
    Taylor,
    #[default]
    Both,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hochster" => Ok(Method::Hochster),
            "taylor" => Ok(Method::Taylor),
            "both" => Ok(Method::Both),
            other => Err(Error::Config(format!("unknown method `{other}`"))),
        }
    }
}

/// Betti table through polarization and Hochster's formula.
pub fn betti_hochster_of_ideal(ideal: &MonomialIdeal, field: FieldSpec, caps: Caps) -> Result<BettiTable> {
    let (pol, _) = polarize(ideal)?;
    if pol.nvars() > caps.hochster_vars {
        return Err(Error::CapExceeded {
            what: "polarized variable count for Hochster",
            value: pol.nvars(),
            cap: caps.hochster_vars,
        });
    }
    let delta = SimplicialComplex::from_stanley_reisner(&pol)?;
    let mut table = betti_hochster(&delta, field, caps)?;
    table.n = ideal.nvars();
    Ok(table)
}

/// Betti table of `S/I` by the chosen method. With [`Method::Both`] any
/// disagreement is an engine bug and reported as
/// [`Error::CrossCheckMismatch`].
pub fn betti_of_ideal(
    ideal: &MonomialIdeal,
    field: FieldSpec,
    method: Method,
    caps: Caps,
) -> Result<BettiTable> {
    ideal.ensure_proper_nonzero()?;
    match method {
        Method::Hochster => betti_hochster_of_ideal(ideal, field, caps),
        Method::Taylor => betti_taylor(ideal, field, caps),
        Method::Both => {
            let taylor = betti_taylor(ideal, field, caps)?;
            let hochster = betti_hochster_of_ideal(ideal, field, caps)?;
            cross_check(&hochster, &taylor)?;
            Ok(taylor)
        }
    }
}

pub fn cross_check(hochster: &BettiTable, taylor: &BettiTable) -> Result<()> {
    match hochster.first_difference(taylor) {
        None => Ok(()),
        Some((i, j)) => Err(Error::CrossCheckMismatch {
            i,
            j,
            hochster: hochster.get(i, j),
            taylor: taylor.get(i, j),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::parse_ideal;

    fn sr(text: &str) -> SimplicialComplex {
        SimplicialComplex::from_stanley_reisner(&parse_ideal(text).unwrap()).unwrap()
    }

    #[test]
    fn hollow_triangle() {
        let t = betti_hochster(&sr("x1*x2*x3"), FieldSpec::GF2, Caps::default()).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![(0, 0, 1), (1, 3, 1)]);
        let s = max_shifts(&t);
        assert_eq!((s.p, s.t), (1, vec![0, 3]));
    }

    #[test]
    fn three_points() {
        let t = betti_hochster(&sr("x1*x2; x1*x3; x2*x3"), FieldSpec::Rationals, Caps::default()).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![(0, 0, 1), (1, 2, 3), (2, 3, 2)]);
        let s = max_shifts(&t);
        assert_eq!((s.p, s.t), (2, vec![0, 2, 3]));
    }

    #[test]
    fn full_simplex_and_void_are_rejected() {
        let caps = Caps::default();
        assert_eq!(
            betti_hochster(&SimplicialComplex::full_simplex(3), FieldSpec::GF2, caps),
            Err(Error::ZeroIdeal)
        );
        assert_eq!(
            betti_hochster(&SimplicialComplex::void(3), FieldSpec::GF2, caps),
            Err(Error::UnitIdeal)
        );
    }

    #[test]
    fn cap_is_a_clean_refusal() {
        let caps = Caps {
            hochster_vars: 4,
            taylor_gens: 18,
        };
        let err = betti_hochster(&SimplicialComplex::simplex_boundary(5), FieldSpec::GF2, caps).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { value: 5, cap: 4, .. }));
    }

    #[test]
    fn principal_ideals() {
        let caps = Caps::default();
        let t = betti_of_ideal(&parse_ideal("x1").unwrap(), FieldSpec::GF2, Method::Both, caps).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![(0, 0, 1), (1, 1, 1)]);
        let t = betti_of_ideal(&parse_ideal("x^2").unwrap(), FieldSpec::GF2, Method::Hochster, caps).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![(0, 0, 1), (1, 2, 1)]);
    }

    #[test]
    fn worked_example_both_methods_agree() {
        let ideal = parse_ideal("a^4*b*c; b^3*c^2; c^5*a^3").unwrap();
        for f in [FieldSpec::GF2, FieldSpec::Rationals] {
            let t = betti_of_ideal(&ideal, f, Method::Both, Caps::default()).unwrap();
            t.validate().unwrap();
            assert_eq!(t.total(1), 3);
        }
    }

    #[test]
    fn max_shifts_of_trivial_table() {
        let mut t = BettiTable::new(2, FieldSpec::GF2);
        t.add(0, 0, 1);
        let s = max_shifts(&t);
        assert_eq!((s.p, s.t), (0, vec![0]));
    }

    #[test]
    fn diagram_layout() {
        let t = betti_hochster(&sr("x1*x2; x1*x3; x2*x3"), FieldSpec::GF2, Caps::default()).unwrap();
        assert_eq!(t.diagram(), "       0 1 2\ntotal: 1 3 2\n    0: 1 . .\n    1: . 3 2\n");
    }

    #[test]
    fn json_shape() {
        let t = betti_hochster(&sr("x1*x2*x3"), FieldSpec::GF2, Caps::default()).unwrap();
        let json = serde_json::to_string(&t.to_json()).unwrap();
        assert_eq!(json, r#"{"field":"GF(2)","betti":[[0,0,1],[1,3,1]],"t":[0,3],"projdim":1}"#);
    }

    #[test]
    fn validate_catches_bad_rows() {
        let mut t = BettiTable::new(2, FieldSpec::GF2);
        t.add(0, 0, 1);
        t.add(1, 0, 1);
        assert!(t.validate().is_err());
    }
}
