use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::betti::Caps;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::monomial::{default_var_names, minimalize, Monomial, MonomialIdeal};

const RETRY_BUDGET: usize = 64;
const DRAWS_PER_GENERATOR: usize = 8;

/// Parameters of a seeded fuzz campaign. `seed` and the trial index fully
/// determine every instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub seed: u64,
    /// Inclusive range for the number of variables.
    pub n_range: [usize; 2],
    /// Inclusive range for the number of generators drawn (before
    /// minimalization; at least `r_range[0]` survive).
    pub r_range: [usize; 2],
    /// Inclusive range for the total degree of each generator.
    pub deg_range: [u32; 2],
    pub squarefree_only: bool,
    pub fields: Vec<FieldSpec>,
    pub trials: u64,
    /// Largest polarized variable count for which the Hochster cross-check
    /// runs; larger instances are checked by Taylor alone.
    pub cross_check_vars: usize,
    pub caps: Caps,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 0,
            n_range: [2, 6],
            r_range: [1, 6],
            deg_range: [1, 4],
            squarefree_only: false,
            fields: vec![FieldSpec::GF2],
            trials: 200,
            cross_check_vars: 12,
            caps: Caps::default(),
        }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        let [n0, n1] = self.n_range;
        let [r0, r1] = self.r_range;
        let [d0, d1] = self.deg_range;
        if n0 < 1 || n0 > n1 {
            return bad("n_range must satisfy 1 <= lo <= hi");
        }
        if r0 < 1 || r0 > r1 {
            return bad("r_range must satisfy 1 <= lo <= hi");
        }
        if d0 < 1 || d0 > d1 {
            return bad("deg_range must satisfy 1 <= lo <= hi");
        }
        if r1 > self.caps.taylor_gens {
            return bad("r_range exceeds the Taylor cap");
        }
        if self.cross_check_vars > self.caps.hochster_vars {
            return bad("cross_check_vars exceeds the Hochster cap");
        }
        if n1 > 32 {
            return bad("n_range exceeds 32 variables");
        }
        if self.fields.is_empty() {
            return bad("at least one field is required");
        }
        Ok(())
    }

    fn rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

fn draw_generator(rng: &mut impl Rng, n: usize, cfg: &FuzzConfig) -> Monomial {
    let [d0, d1] = cfg.deg_range;
    let mut e = vec![0u32; n];
    if cfg.squarefree_only {
        let hi = d1.min(n as u32);
        let lo = d0.min(hi);
        let d = rng.gen_range(lo..=hi) as usize;
        for v in sample(rng, n, d) {
            e[v] = 1;
        }
    } else {
        let d = rng.gen_range(d0..=d1);
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
    }
    Monomial::new(e)
}

/// The `index`-th instance of the campaign `cfg`. A target count `r` is
/// drawn, then generators with total degree uniform in `deg_range` are drawn
/// and minimalized until `r` survive or the draw budget runs out. Results
/// with fewer than `r_range[0]` generators are retried a bounded number of
/// times.
pub fn random_ideal(cfg: &FuzzConfig, index: u64) -> Result<MonomialIdeal> {
    cfg.validate()?;
    if index >= cfg.trials {
        return Err(Error::OutOfRange(format!(
            "trial index {index} >= trials {}",
            cfg.trials
        )));
    }
    let mut rng = cfg.rng(index);
    for _ in 0..RETRY_BUDGET {
        let n = rng.gen_range(cfg.n_range[0]..=cfg.n_range[1]);
        let r = rng.gen_range(cfg.r_range[0]..=cfg.r_range[1]);
        // keep drawing until `r` generators survive minimalization
        let mut gens: Vec<Monomial> = Vec::new();
        for _ in 0..DRAWS_PER_GENERATOR * r {
            gens.push(draw_generator(&mut rng, n, cfg));
            gens = minimalize(&gens);
            if gens.len() == r {
                break;
            }
        }
        let ideal = MonomialIdeal::new(default_var_names(n), gens)?;
        if ideal.ensure_proper_nonzero().is_ok() && ideal.ngens() >= cfg.r_range[0] {
            return Ok(ideal);
        }
    }
    Err(Error::RetryExhausted {
        index,
        reason: format!(
            "could not draw {} incomparable generators in {:?} variables",
            cfg.r_range[0], cfg.n_range
        ),
    })
}
