use serde::{Deserialize, Serialize};

use super::{Monomial, MonomialIdeal};
use crate::error::Result;

/// Records, for each polarized variable, the original variable it came
/// from and its copy number (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeMap {
    pub origin: Vec<(usize, u32)>,
}

impl DegreeMap {
    /// Push a polarized monomial back to the original ring.
    pub fn depolarize(&self, n_original: usize, m: &Monomial) -> Monomial {
        let mut e = vec![0u32; n_original];
        for (k, &x) in m.exponents().iter().enumerate() {
            if x > 0 {
                let (orig, copy) = self.origin[k];
                e[orig] = e[orig].max(copy);
            }
        }
        Monomial::new(e)
    }
}

/// Standard polarization: `x^k` becomes `x_1*...*x_k`, with one new
/// variable `x_j` per power up to the largest exponent of `x` among the
/// generators. Variables that never occur are dropped.
pub fn polarize(ideal: &MonomialIdeal) -> Result<(MonomialIdeal, DegreeMap)> {
    ideal.ensure_proper_nonzero()?;
    let n = ideal.nvars();
    let max_exp: Vec<u32> = (0..n)
        .map(|i| ideal.gens().iter().map(|g| g.exponents()[i]).max().unwrap_or(0))
        .collect();

    let mut origin = Vec::new();
    let mut names = Vec::new();
    let mut offset = vec![0usize; n];
    for i in 0..n {
        offset[i] = origin.len();
        for k in 1..=max_exp[i] {
            origin.push((i, k));
            names.push(format!("{}_{}", ideal.var_names()[i], k));
        }
    }

    let n_new = origin.len();
    let gens = ideal
        .gens()
        .iter()
        .map(|g| {
            let mut e = vec![0u32; n_new];
            for (i, &x) in g.exponents().iter().enumerate() {
                for k in 0..x as usize {
                    e[offset[i] + k] = 1;
                }
            }
            Monomial::new(e)
        })
        .collect();

    // polarization preserves minimality and order, so this never drops
    // a generator
    let polarized = MonomialIdeal::new(names, gens)?;
    debug_assert_eq!(polarized.ngens(), ideal.ngens());
    Ok((polarized, DegreeMap { origin }))
}
