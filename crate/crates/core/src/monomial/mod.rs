//! Monomials, monomial ideals, and their text form.
//!
//! A [`Monomial`] is a bare exponent vector; variable names live on the
//! [`MonomialIdeal`] that owns it. Ideals always hold a minimal generating
//! set in a frozen order, which the Taylor engine uses for its signs.

mod parse;
mod polarize;

pub use parse::{parse_ideal, parse_ideal_verbose, render_ideal, render_monomial};
pub use polarize::{polarize, DegreeMap};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector of a monomial in `n` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// The constant monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// `x_i` in `n` variables.
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    /// Squarefree monomial whose support is the bitmask `mask`.
    pub fn from_support(n: usize, mask: u32) -> Self {
        Monomial((0..n).map(|i| (mask >> i) & 1).collect())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// Support as a bitmask. Only meaningful for `n <= 32`.
    pub fn support(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }

    fn check_ambient(&self, other: &Monomial) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(Error::AmbientMismatch {
                left: self.nvars(),
                right: other.nvars(),
            });
        }
        Ok(())
    }

    /// True iff `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_ambient(other)?;
        Ok(self.lcm_unchecked(other))
    }

    pub(crate) fn lcm_unchecked(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn quotient(&self, other: &Monomial) -> Result<Option<Monomial>> {
        self.check_ambient(other)?;
        if !other.divides_unchecked(self) {
            return Ok(None);
        }
        Ok(Some(Monomial(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        )))
    }
}

/// Least common multiple of a set of monomials in `n` variables.
///
/// The empty set yields the constant monomial.
pub fn lcm_of<'a, I>(n: usize, ms: I) -> Result<Monomial>
where
    I: IntoIterator<Item = &'a Monomial>,
{
    let mut acc = Monomial::one(n);
    for m in ms {
        acc = acc.lcm(m)?;
    }
    Ok(acc)
}

/// Drop duplicates and every monomial divisible by another entry, keeping
/// the relative order of the survivors.
pub fn minimalize(ms: &[Monomial]) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::with_capacity(ms.len());
    for (i, m) in ms.iter().enumerate() {
        let redundant = ms.iter().enumerate().any(|(k, d)| {
            k != i && d.divides_unchecked(m) && (d != m || k < i)
        });
        if !redundant {
            out.push(m.clone());
        }
    }
    out
}

/// A monomial ideal given by its minimal generating set.
///
/// The zero ideal has no generators; the unit ideal has the single
/// generator `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    var_names: Vec<String>,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Build an ideal from arbitrary generators, minimalizing them.
    pub fn new(var_names: Vec<String>, gens: Vec<Monomial>) -> Result<Self> {
        if var_names.is_empty() {
            return Err(Error::Config("at least one variable is required".into()));
        }
        if gens.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        for g in &gens {
            if g.nvars() != var_names.len() {
                return Err(Error::AmbientMismatch {
                    left: g.nvars(),
                    right: var_names.len(),
                });
            }
        }
        Ok(MonomialIdeal {
            gens: minimalize(&gens),
            var_names,
        })
    }

    /// Like [`MonomialIdeal::new`] with variables named `x1..xn`.
    pub fn with_default_names(n: usize, gens: Vec<Monomial>) -> Result<Self> {
        MonomialIdeal::new(default_var_names(n), gens)
    }

    pub fn zero(var_names: Vec<String>) -> Self {
        MonomialIdeal {
            var_names,
            gens: Vec::new(),
        }
    }

    pub fn unit(var_names: Vec<String>) -> Self {
        let n = var_names.len();
        MonomialIdeal {
            var_names,
            gens: vec![Monomial::one(n)],
        }
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// Errors unless the ideal is proper and nonzero.
    pub fn ensure_proper_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroIdeal)
        } else if self.is_unit() {
            Err(Error::UnitIdeal)
        } else {
            Ok(())
        }
    }

    pub fn lcm_all(&self) -> Monomial {
        self.gens
            .iter()
            .fold(Monomial::one(self.nvars()), |acc, g| acc.lcm_unchecked(g))
    }

    /// Same ideal with generators listed in the order `perm` (a permutation
    /// of `0..ngens`).
    pub fn reordered(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.ngens()];
        if perm.len() != self.ngens() {
            return Err(Error::OutOfRange("permutation length".into()));
        }
        for &p in perm {
            if p >= self.ngens() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::OutOfRange("not a permutation".into()));
            }
        }
        Ok(MonomialIdeal {
            var_names: self.var_names.clone(),
            gens: perm.iter().map(|&p| self.gens[p].clone()).collect(),
        })
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        render_monomial(&self.var_names, m)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_ideal(self))
    }
}

pub fn default_var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}
