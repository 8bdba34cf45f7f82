//! Simplicial complexes on `[n]` stored through their minimal non-faces.
//!
//! Vertices are `0..n` internally and bitmasks are `u32`, so `n <= 32`.
//! Two complexes are distinguished that are easy to confuse: the *empty*
//! complex `{∅}` (reduced homology `K` in degree -1) and the *void*
//! complex with no faces at all (zero homology everywhere).

use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

pub const MAX_VERTICES: usize = 32;

/// A simplicial complex on the ground set `{0, .., n-1}`.
///
/// `non_faces` holds the minimal non-faces sorted by `(cardinality, mask)`,
/// singletons included; `vertex_mask` is the set of actual vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    non_faces: Vec<u32>,
    vertex_mask: u32,
    void: bool,
}

/// Dimension of a complex; the void complex has none.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Void,
    Dim(i32),
}

impl Dimension {
    pub fn value(self) -> Option<i32> {
        match self {
            Dimension::Void => None,
            Dimension::Dim(d) => Some(d),
        }
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn sort_masks(v: &mut Vec<u32>) {
    v.sort_by_key(|&m| (m.count_ones(), m));
    v.dedup();
}

/// Keep only inclusion-minimal masks.
fn minimal_masks(mut v: Vec<u32>) -> Vec<u32> {
    sort_masks(&mut v);
    let mut out: Vec<u32> = Vec::with_capacity(v.len());
    for m in v {
        if !out.iter().any(|&o| o & !m == 0) {
            out.push(m);
        }
    }
    out
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: "vertex count",
            value: n,
            cap: MAX_VERTICES,
        });
    }
    Ok(())
}

impl SimplicialComplex {
    /// Complex whose minimal non-faces are the inclusion-minimal elements
    /// of `non_faces`. An empty mask among them yields the void complex.
    pub fn from_non_faces(n: usize, non_faces: impl IntoIterator<Item = u32>) -> Result<Self> {
        check_n(n)?;
        let full = full_mask(n);
        let masks: Vec<u32> = non_faces.into_iter().collect();
        if masks.iter().any(|&m| m & !full != 0) {
            return Err(Error::OutOfRange("non-face outside the ground set".into()));
        }
        if masks.contains(&0) {
            return Ok(SimplicialComplex::void(n));
        }
        let non_faces = minimal_masks(masks);
        let excluded = non_faces
            .iter()
            .filter(|m| m.count_ones() == 1)
            .fold(0, |acc, &m| acc | m);
        Ok(SimplicialComplex {
            n,
            non_faces,
            vertex_mask: full & !excluded,
            void: false,
        })
    }

    /// Complex generated by the given facets (closed downward). An empty
    /// facet list is the void complex.
    pub fn from_facets(n: usize, facets: &[u32]) -> Result<Self> {
        check_n(n)?;
        if facets.is_empty() {
            return Ok(SimplicialComplex::void(n));
        }
        let full = full_mask(n);
        if facets.iter().any(|&f| f & !full != 0) {
            return Err(Error::OutOfRange("facet outside the ground set".into()));
        }
        Ok(Self::from_face_predicate(n, |s| facets.iter().any(|&f| s & f == s)))
    }

    /// Re-derive minimal non-faces from a downward-closed face predicate
    /// by brute force over all subsets of `[n]`.
    fn from_face_predicate(n: usize, is_face: impl Fn(u32) -> bool) -> Self {
        if !is_face(0) {
            return SimplicialComplex::void(n);
        }
        let mut non_faces = Vec::new();
        for s in 1..=full_mask(n) as u64 {
            let s = s as u32;
            if is_face(s) {
                continue;
            }
            let mut rest = s;
            let mut minimal = true;
            while rest != 0 {
                let v = rest & rest.wrapping_neg();
                if !is_face(s & !v) {
                    minimal = false;
                    break;
                }
                rest &= !v;
            }
            if minimal {
                non_faces.push(s);
            }
        }
        Self::from_non_faces(n, non_faces).expect("masks come from the ground set")
    }

    pub fn void(n: usize) -> Self {
        SimplicialComplex {
            n,
            non_faces: vec![0],
            vertex_mask: 0,
            void: true,
        }
    }

    /// `{∅}` on the ground set `[n]`.
    pub fn empty(n: usize) -> Self {
        Self::from_non_faces(n, (0..n).map(|i| 1u32 << i)).expect("singletons")
    }

    pub fn full_simplex(n: usize) -> Self {
        Self::from_non_faces(n, []).expect("no non-faces")
    }

    /// Boundary of the simplex on `[n]`.
    pub fn simplex_boundary(n: usize) -> Self {
        Self::from_non_faces(n, [full_mask(n)]).expect("full mask")
    }

    /// Stanley–Reisner complex of a squarefree ideal: the non-faces are the
    /// supports of the generators.
    pub fn from_stanley_reisner(ideal: &MonomialIdeal) -> Result<Self> {
        if let Some(g) = ideal.gens().iter().find(|g| !g.is_squarefree()) {
            return Err(Error::NotSquarefree(ideal.render_monomial(g)));
        }
        check_n(ideal.nvars())?;
        Self::from_non_faces(ideal.nvars(), ideal.gens().iter().map(Monomial::support))
    }

    /// Inverse of [`SimplicialComplex::from_stanley_reisner`]; generators
    /// in `(degree, mask)` order.
    pub fn stanley_reisner_ideal(&self, var_names: Vec<String>) -> Result<MonomialIdeal> {
        if var_names.len() != self.n {
            return Err(Error::AmbientMismatch {
                left: var_names.len(),
                right: self.n,
            });
        }
        if self.non_faces.is_empty() {
            return Ok(MonomialIdeal::zero(var_names));
        }
        let gens = self
            .non_faces
            .iter()
            .map(|&m| Monomial::from_support(self.n, m))
            .collect();
        MonomialIdeal::new(var_names, gens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn non_faces(&self) -> &[u32] {
        &self.non_faces
    }

    pub fn vertex_mask(&self) -> u32 {
        self.vertex_mask
    }

    pub fn is_void(&self) -> bool {
        self.void
    }

    pub fn is_face(&self, f: u32) -> bool {
        !self.void && f & !self.vertex_mask == 0 && !self.non_faces.iter().any(|&nf| nf & !f == 0)
    }

    /// All faces grouped by cardinality; `faces_by_size()[k]` lists the
    /// faces with `k` vertices in increasing mask order. Empty for the void
    /// complex.
    pub fn faces_by_size(&self) -> Vec<Vec<u32>> {
        if self.void {
            return Vec::new();
        }
        let mut layers = vec![vec![0u32]];
        loop {
            let last = layers.last().expect("nonempty");
            let mut next = Vec::new();
            for &f in last {
                let top = if f == 0 { 0 } else { 32 - f.leading_zeros() };
                let mut cand = self.vertex_mask & !full_mask(top as usize);
                while cand != 0 {
                    let v = cand & cand.wrapping_neg();
                    cand &= !v;
                    if self.is_face(f | v) {
                        next.push(f | v);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            layers.push(next);
        }
        layers
    }

    /// All faces sorted by `(cardinality, mask)`.
    pub fn faces(&self) -> Vec<u32> {
        self.faces_by_size().concat()
    }

    pub fn facets(&self) -> Vec<u32> {
        let faces = self.faces();
        let mut facets: Vec<u32> = faces
            .iter()
            .copied()
            .filter(|&f| {
                let mut out = self.vertex_mask & !f;
                while out != 0 {
                    let v = out & out.wrapping_neg();
                    out &= !v;
                    if self.is_face(f | v) {
                        return false;
                    }
                }
                true
            })
            .collect();
        facets.sort_unstable();
        facets
    }

    pub fn dimension(&self) -> Dimension {
        if self.void {
            return Dimension::Void;
        }
        Dimension::Dim(self.faces_by_size().len() as i32 - 2)
    }

    /// True when some vertex lies in no minimal non-face, so every face
    /// extends by it and the complex is acyclic.
    pub fn is_cone(&self) -> bool {
        if self.void {
            return false;
        }
        let covered = self.non_faces.iter().fold(0u32, |acc, &nf| acc | nf);
        self.vertex_mask & !covered != 0
    }

    /// Induced subcomplex on `w`: the faces of `self` contained in `w`.
    pub fn induced(&self, w: u32) -> SimplicialComplex {
        if self.void {
            return self.clone();
        }
        let w = w & full_mask(self.n);
        let vertex_mask = self.vertex_mask & w;
        let full = full_mask(self.n);
        let mut non_faces: Vec<u32> = (0..self.n)
            .map(|i| 1u32 << i)
            .filter(|&v| v & !vertex_mask & full != 0)
            .collect();
        non_faces.extend(
            self.non_faces
                .iter()
                .copied()
                .filter(|&nf| nf.count_ones() > 1 && nf & !vertex_mask == 0),
        );
        sort_masks(&mut non_faces);
        SimplicialComplex {
            n: self.n,
            non_faces,
            vertex_mask,
            void: false,
        }
    }

    /// Every face of `self` is a face of `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.n == other.n && self.facets().iter().all(|&f| other.is_face(f))
    }

    /// Apply the vertex relabeling `i -> perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> SimplicialComplex {
        assert_eq!(perm.len(), self.n);
        if self.void {
            return self.clone();
        }
        let map = |m: u32| {
            (0..self.n)
                .filter(|&i| m >> i & 1 == 1)
                .fold(0u32, |acc, i| acc | 1 << perm[i])
        };
        Self::from_non_faces(self.n, self.non_faces.iter().map(|&m| map(m))).expect("permuted")
    }

    /// Parse the fixture form `[n=N;] facets: 1 2 3; 2 4` (1-based vertex
    /// labels). Without `n=`, the ground set is `[max label]`. `{}` denotes
    /// the empty face, and an empty facet list the void complex.
    pub fn parse_fixture(text: &str) -> Result<Self> {
        let syntax = |pos: usize, msg: &str| Error::Syntax {
            pos,
            msg: msg.to_string(),
        };
        let mut rest = text.trim_start();
        let mut offset = text.len() - rest.len();
        let mut declared_n = None;
        if let Some(r) = rest.strip_prefix("n=") {
            let end = r.find(';').ok_or_else(|| syntax(offset, "expected `;` after n="))?;
            let n: usize = r[..end]
                .trim()
                .parse()
                .map_err(|_| syntax(offset + 2, "expected vertex count"))?;
            declared_n = Some(n);
            offset += 2 + end + 1;
            rest = &r[end + 1..];
            let trimmed = rest.trim_start();
            offset += rest.len() - trimmed.len();
            rest = trimmed;
        }
        let body = rest
            .strip_prefix("facets:")
            .ok_or_else(|| syntax(offset, "expected `facets:`"))?;
        offset += "facets:".len();

        let mut facets: Vec<Vec<usize>> = Vec::new();
        let mut pos = offset;
        for chunk in body.split(';') {
            let t = chunk.trim();
            if t.is_empty() {
                pos += chunk.len() + 1;
                continue;
            }
            let mut facet = Vec::new();
            if t != "{}" {
                for tok in t.split_whitespace() {
                    let v: usize = tok
                        .parse()
                        .ok()
                        .filter(|&v| v >= 1)
                        .ok_or_else(|| syntax(pos, "vertex labels are positive integers"))?;
                    facet.push(v);
                }
            }
            facets.push(facet);
            pos += chunk.len() + 1;
        }
        let max_label = facets.iter().flatten().copied().max().unwrap_or(0);
        let n = declared_n.unwrap_or(max_label);
        if max_label > n {
            return Err(Error::OutOfRange(format!("vertex {max_label} exceeds n={n}")));
        }
        check_n(n)?;
        let masks: Vec<u32> = facets
            .iter()
            .map(|f| f.iter().fold(0u32, |acc, &v| acc | 1 << (v - 1)))
            .collect();
        Self::from_facets(n, &masks)
    }

    /// Inverse of [`SimplicialComplex::parse_fixture`].
    pub fn render_fixture(&self) -> String {
        let facets: Vec<String> = self
            .facets()
            .iter()
            .map(|&f| {
                if f == 0 {
                    "{}".to_string()
                } else {
                    (0..self.n)
                        .filter(|&i| f >> i & 1 == 1)
                        .map(|i| (i + 1).to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                }
            })
            .collect();
        format!("n={}; facets: {}", self.n, facets.join("; "))
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex({})", self.render_fixture())
    }
}

/// Subcomplexes of a common complex on the same ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubcomplexFamily {
    members: Vec<SimplicialComplex>,
}

impl SubcomplexFamily {
    /// Family whose ambient complex is the union of its members.
    pub fn new(members: Vec<SimplicialComplex>) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::OutOfRange("a family needs at least one member".into()));
        };
        let n = first.n();
        if let Some(bad) = members.iter().find(|m| m.n() != n) {
            return Err(Error::AmbientMismatch {
                left: bad.n(),
                right: n,
            });
        }
        Ok(SubcomplexFamily { members })
    }

    /// Family checked to lie inside `ambient`.
    pub fn within(ambient: &SimplicialComplex, members: Vec<SimplicialComplex>) -> Result<Self> {
        let fam = Self::new(members)?;
        if fam.members[0].n() != ambient.n() {
            return Err(Error::AmbientMismatch {
                left: fam.members[0].n(),
                right: ambient.n(),
            });
        }
        if let Some(i) = fam.members.iter().position(|m| !m.is_subcomplex_of(ambient)) {
            return Err(Error::OutOfRange(format!("member {i} is not a subcomplex")));
        }
        Ok(fam)
    }

    pub fn members(&self) -> &[SimplicialComplex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn n(&self) -> usize {
        self.members[0].n()
    }
}

/// Union of face sets, with minimal non-faces re-derived by brute force.
pub fn union_family(fam: &SubcomplexFamily) -> SimplicialComplex {
    union_of(fam.n(), fam.members())
}

pub(crate) fn union_of(n: usize, members: &[SimplicialComplex]) -> SimplicialComplex {
    let live: Vec<&SimplicialComplex> = members.iter().filter(|m| !m.is_void()).collect();
    match live.as_slice() {
        [] => SimplicialComplex::void(n),
        [only] => (*only).clone(),
        _ => {
            let facets: Vec<u32> = live.iter().flat_map(|m| m.facets()).collect();
            SimplicialComplex::from_face_predicate(n, |s| facets.iter().any(|&f| s & f == s))
        }
    }
}

/// Intersection of face sets.
pub fn intersect_family(fam: &SubcomplexFamily) -> SimplicialComplex {
    intersect_of(fam.n(), fam.members())
}

pub(crate) fn intersect_of(n: usize, members: &[SimplicialComplex]) -> SimplicialComplex {
    if members.iter().any(SimplicialComplex::is_void) {
        return SimplicialComplex::void(n);
    }
    SimplicialComplex::from_non_faces(n, members.iter().flat_map(|m| m.non_faces.iter().copied()))
        .expect("same ground set")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::parse_ideal;

    fn brute_faces(c: &SimplicialComplex) -> Vec<u32> {
        let mut v: Vec<u32> = (0..=full_mask(c.n()))
            .filter(|&s| c.is_face(s))
            .collect();
        v.sort_by_key(|&m| (m.count_ones(), m));
        v
    }

    fn mask(vs: &[usize]) -> u32 {
        vs.iter().fold(0, |acc, &v| acc | 1 << (v - 1))
    }

    #[test]
    fn stanley_reisner_examples() {
        let hollow = SimplicialComplex::from_stanley_reisner(&parse_ideal("x1*x2*x3").unwrap()).unwrap();
        assert_eq!(hollow.facets(), vec![mask(&[1, 2]), mask(&[1, 3]), mask(&[2, 3])]);
        assert_eq!(hollow.dimension(), Dimension::Dim(1));

        let points = SimplicialComplex::from_stanley_reisner(
            &parse_ideal("x1*x2; x2*x3; x1*x3").unwrap(),
        )
        .unwrap();
        assert_eq!(points.facets(), vec![1, 2, 4]);

        let cone = SimplicialComplex::from_stanley_reisner(&parse_ideal("vars x1,x2; x1").unwrap()).unwrap();
        assert_eq!(cone.vertex_mask(), 0b10);
        assert_eq!(cone.facets(), vec![0b10]);
    }

    #[test]
    fn rejects_non_squarefree() {
        let err = SimplicialComplex::from_stanley_reisner(&parse_ideal("x^2").unwrap()).unwrap_err();
        assert_eq!(err, Error::NotSquarefree("x^2".into()));
    }

    #[test]
    fn stanley_reisner_round_trip() {
        let ideal = parse_ideal("x1*x2; x3; x2*x4*x5").unwrap();
        let c = SimplicialComplex::from_stanley_reisner(&ideal).unwrap();
        let back = c.stanley_reisner_ideal(ideal.var_names().to_vec()).unwrap();
        let mut a = ideal.gens().to_vec();
        let mut b = back.gens().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn induced_examples() {
        let hollow = SimplicialComplex::simplex_boundary(3);
        assert_eq!(hollow.induced(0b111), hollow);
        let edge = hollow.induced(0b011);
        assert_eq!(edge.facets(), vec![0b011]);
        assert_eq!(hollow.induced(0), SimplicialComplex::empty(3));
        assert_eq!(hollow.induced(0).dimension(), Dimension::Dim(-1));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(SimplicialComplex::empty(2).dimension(), Dimension::Dim(-1));
        assert_eq!(SimplicialComplex::full_simplex(4).dimension(), Dimension::Dim(3));
        assert_eq!(SimplicialComplex::void(3).dimension(), Dimension::Void);
    }

    #[test]
    fn union_and_intersection_examples() {
        let e12 = SimplicialComplex::from_facets(3, &[0b011]).unwrap();
        let e23 = SimplicialComplex::from_facets(3, &[0b110]).unwrap();
        let fam = SubcomplexFamily::new(vec![e12.clone(), e23.clone()]).unwrap();
        let path = union_family(&fam);
        assert_eq!(path.facets(), vec![0b011, 0b110]);

        let with_void = SubcomplexFamily::new(vec![path.clone(), SimplicialComplex::void(3)]).unwrap();
        assert_eq!(union_family(&with_void), path);

        let hollow = SimplicialComplex::simplex_boundary(3);
        let fam = SubcomplexFamily::new(vec![hollow.clone(), e12.clone()]).unwrap();
        assert_eq!(intersect_family(&fam), e12);
        let fam = SubcomplexFamily::new(vec![hollow.clone(), hollow.clone()]).unwrap();
        assert_eq!(intersect_family(&fam), hollow);
    }

    #[test]
    fn family_checks_ambient() {
        let a = SimplicialComplex::full_simplex(2);
        let b = SimplicialComplex::full_simplex(3);
        assert!(SubcomplexFamily::new(vec![a.clone(), b]).is_err());
        assert!(SubcomplexFamily::new(vec![]).is_err());
        let hollow = SimplicialComplex::simplex_boundary(3);
        assert!(SubcomplexFamily::within(&hollow, vec![SimplicialComplex::full_simplex(3)]).is_err());
        assert!(SubcomplexFamily::within(&hollow, vec![hollow.induced(0b011)]).is_ok());
    }

    #[test]
    fn fixture_round_trip() {
        let c = SimplicialComplex::parse_fixture("facets: 1 2 3; 2 4").unwrap();
        assert_eq!(c.n(), 4);
        assert_eq!(c.facets(), vec![mask(&[1, 2, 3]), mask(&[2, 4])]);
        assert_eq!(SimplicialComplex::parse_fixture(&c.render_fixture()).unwrap(), c);

        let e = SimplicialComplex::parse_fixture("n=3; facets: {}").unwrap();
        assert_eq!(e, SimplicialComplex::empty(3));
        let v = SimplicialComplex::parse_fixture("n=2; facets:").unwrap();
        assert!(v.is_void());
        assert!(SimplicialComplex::parse_fixture("facets: 0 1").is_err());
        assert!(SimplicialComplex::parse_fixture("n=2; facets: 3").is_err());
        assert!(SimplicialComplex::parse_fixture("faces: 1").is_err());
    }

    #[test]
    fn faces_agree_with_brute_force() {
        let c = SimplicialComplex::parse_fixture("n=6; facets: 1 2 3; 2 4; 4 5 6; 1 6").unwrap();
        assert_eq!(c.faces(), brute_faces(&c));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn complex(n: usize) -> impl Strategy<Value = SimplicialComplex> {
            prop::collection::vec(0u32..(1 << n), 0..5)
                .prop_map(move |fs| SimplicialComplex::from_facets(n, &fs).unwrap())
        }

        proptest! {
            #[test]
            fn faces_match_enumeration(c in complex(6)) {
                prop_assert_eq!(c.faces(), brute_faces(&c));
            }

            #[test]
            fn induced_composes(c in complex(6), w in 0u32..64, v in 0u32..64) {
                prop_assert_eq!(c.induced(w).induced(v), c.induced(w & v));
            }

            #[test]
            fn induced_faces(c in complex(6), w in 0u32..64) {
                let expect: Vec<u32> = brute_faces(&c).into_iter().filter(|&f| f & !w == 0).collect();
                prop_assert_eq!(brute_faces(&c.induced(w)), expect);
            }

            #[test]
            fn union_intersection_match_brute_force(a in complex(6), b in complex(6), d in complex(6)) {
                let fam = SubcomplexFamily::new(vec![a.clone(), b.clone(), d.clone()]).unwrap();
                let fa = brute_faces(&a);
                let fb = brute_faces(&b);
                let fd = brute_faces(&d);
                let mut uni: Vec<u32> = fa.iter().chain(&fb).chain(&fd).copied().collect();
                uni.sort_by_key(|&m| (m.count_ones(), m));
                uni.dedup();
                let inter: Vec<u32> = fa.iter().copied().filter(|f| fb.contains(f) && fd.contains(f)).collect();
                prop_assert_eq!(brute_faces(&union_family(&fam)), uni);
                prop_assert_eq!(brute_faces(&intersect_family(&fam)), inter);
            }

            #[test]
            fn stanley_reisner_inverse(c in complex(5)) {
                prop_assume!(!c.is_void());
                let names = crate::monomial::default_var_names(5);
                let ideal = c.stanley_reisner_ideal(names).unwrap();
                if ideal.is_zero() {
                    prop_assert_eq!(c, SimplicialComplex::full_simplex(5));
                } else {
                    prop_assert_eq!(SimplicialComplex::from_stanley_reisner(&ideal).unwrap(), c);
                }
            }

            #[test]
            fn facet_fixture_round_trip(c in complex(6)) {
                prop_assert_eq!(SimplicialComplex::parse_fixture(&c.render_fixture()).unwrap(), c);
            }
        }

        /// Intersections of induced subcomplexes are induced on the
        /// complement of the union, exhaustively for a fixed complex.
        #[test]
        fn induced_intersection_identity_exhaustive() {
            let c = SimplicialComplex::parse_fixture("n=6; facets: 1 2 3; 2 3 4; 4 5; 5 6 1; 2 6").unwrap();
            for w in 0u32..64 {
                // all pairs of subsets of w
                let mut b1 = w;
                loop {
                    let mut b2 = w;
                    loop {
                        let fam = SubcomplexFamily::new(vec![
                            c.induced(w & !b1),
                            c.induced(w & !b2),
                        ])
                        .unwrap();
                        assert_eq!(intersect_family(&fam), c.induced(w & !(b1 | b2)));
                        if b2 == 0 {
                            break;
                        }
                        b2 = (b2 - 1) & w;
                    }
                    if b1 == 0 {
                        break;
                    }
                    b1 = (b1 - 1) & w;
                }
            }
        }
    }
}
