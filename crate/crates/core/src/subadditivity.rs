//! Inequality checkers over a vector of maximal shifts.

use serde::{Deserialize, Serialize};

use crate::betti::MaxShifts;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::simplicial::{Dimension, SimplicialComplex};

/// One instance `lhs <= rhs` of an inequality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub indices: Vec<usize>,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
    /// Holds for a reason unrelated to the shifts (a zero index).
    pub trivial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    pub indices: Vec<usize>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: String,
    /// Names of the entries of [`Case::indices`], e.g. `["a", "b"]`.
    pub index_names: Vec<String>,
    pub field: FieldSpec,
    pub cases: Vec<Case>,
    pub skipped: Vec<Skipped>,
    pub notes: Vec<String>,
    pub all_hold: bool,
}

impl InequalityReport {
    fn new(name: &str, index_names: &[&str], field: FieldSpec) -> Self {
        InequalityReport {
            name: name.to_string(),
            index_names: index_names.iter().map(|s| s.to_string()).collect(),
            field,
            cases: Vec::new(),
            skipped: Vec::new(),
            notes: Vec::new(),
            all_hold: true,
        }
    }

    fn push(&mut self, indices: Vec<usize>, lhs: i64, rhs: i64, trivial: bool) {
        let holds = lhs <= rhs;
        self.all_hold &= holds;
        self.cases.push(Case {
            indices,
            lhs,
            rhs,
            holds,
            trivial,
        });
    }

    pub fn violations(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.holds)
    }

    /// CSV rows `name,indices,lhs,rhs,holds` (indices joined by spaces).
    pub fn csv_rows(&self) -> Vec<[String; 5]> {
        self.cases
            .iter()
            .map(|c| {
                [
                    self.name.clone(),
                    c.indices.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
                    c.lhs.to_string(),
                    c.rhs.to_string(),
                    c.holds.to_string(),
                ]
            })
            .collect()
    }
}

/// `t_{a+b} <= t_a + t_b` for `0 <= a <= b`, `a + b <= p`.
pub fn check_subadditivity(t: &MaxShifts) -> InequalityReport {
    let mut rep = InequalityReport::new("subadditivity", &["a", "b"], t.field);
    for a in 0..=t.p {
        for b in a..=t.p - a {
            rep.push(vec![a, b], t.t(a + b), t.t(a) + t.t(b), a == 0);
        }
    }
    rep
}

/// The `b = 1` slice: `t_{a+1} <= t_a + t_1` for `0 <= a`, `a + 1 <= p`.
pub fn check_first_step(t: &MaxShifts) -> InequalityReport {
    let mut rep = InequalityReport::new("first-step", &["a"], t.field);
    for a in 0..t.p {
        rep.push(vec![a], t.t(a + 1), t.t(a) + t.t(1), a == 0);
    }
    rep
}

/// `t_{a+b} <= t_a + t_1 + .. + t_b - b(b-1)/2` for `b >= 1`, `a >= b-1`,
/// `a + b <= p`.
pub fn check_thm_ab4(t: &MaxShifts) -> InequalityReport {
    let mut rep = InequalityReport::new("thm-ab4", &["a", "b"], t.field);
    for b in 1..=t.p {
        let prefix: i64 = (1..=b).map(|i| t.t(i)).sum();
        let correction = (b * (b - 1) / 2) as i64;
        for a in (b - 1)..=(t.p - b) {
            rep.push(vec![a, b], t.t(a + b), t.t(a) + prefix - correction, false);
        }
    }
    rep
}

/// `t_{c+1} <= t_c + t_d - d + 1` for `d >= 1`, `d - 1 <= c`, `c + 1 <= p`.
pub fn check_eq1(t: &MaxShifts) -> InequalityReport {
    let mut rep = InequalityReport::new("eq1", &["c", "d"], t.field);
    for c in 0..t.p {
        for d in 1..=c + 1 {
            rep.push(vec![c, d], t.t(c + 1), t.t(c) + t.t(d) - d as i64 + 1, false);
        }
    }
    rep
}

/// Outcome of a conditional statement evaluated on one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    /// Hypothesis false: no claim is made.
    Skipped,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionalOutcome {
    pub hypothesis: bool,
    pub conclusion: Verdict,
}

impl ConditionalOutcome {
    /// Hypothesis true and conclusion false: impossible for a proved
    /// statement.
    pub fn is_violation(&self) -> bool {
        self.hypothesis && self.conclusion == Verdict::Fails
    }
}

/// If `dim Δ < t_a - a` or `dim Δ < t_b - b` then `t_{a+b} <= t_a + t_b`.
///
/// `t_{a+b}` must exist, so `a + b <= p` is required.
pub fn check_thm_ab3(
    delta: &SimplicialComplex,
    t: &MaxShifts,
    a: usize,
    b: usize,
) -> Result<ConditionalOutcome> {
    if a + b > t.p {
        return Err(Error::OutOfRange(format!(
            "a+b={} exceeds the projective dimension {}",
            a + b,
            t.p
        )));
    }
    let dim = match delta.dimension() {
        Dimension::Dim(d) => i64::from(d),
        Dimension::Void => return Err(Error::VoidComplex),
    };
    let hypothesis = dim < t.t(a) - a as i64 || dim < t.t(b) - b as i64;
    let conclusion = if hypothesis {
        Verdict::from_bool(t.t(a + b) <= t.t(a) + t.t(b))
    } else {
        Verdict::Skipped
    };
    Ok(ConditionalOutcome {
        hypothesis,
        conclusion,
    })
}

/// [`check_thm_ab3`] over every `a <= b` with `a + b <= p`. Pairs whose
/// hypothesis fails land in `skipped`.
pub fn check_thm_ab3_all(delta: &SimplicialComplex, t: &MaxShifts) -> Result<InequalityReport> {
    let mut rep = InequalityReport::new("thm-ab3", &["a", "b"], t.field);
    rep.notes.push(
        "range restricted to a+b <= projdim so that t_(a+b) exists"
            .to_string(),
    );
    for a in 0..=t.p {
        for b in a..=t.p - a {
            let out = check_thm_ab3(delta, t, a, b)?;
            if out.hypothesis {
                rep.push(vec![a, b], t.t(a + b), t.t(a) + t.t(b), a == 0);
            } else {
                rep.skipped.push(Skipped {
                    indices: vec![a, b],
                    reason: "dimension hypothesis false".to_string(),
                });
            }
        }
    }
    Ok(rep)
}
