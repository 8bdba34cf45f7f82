//! Seeded random instances for the union lemma and the vanishing
//! proposition.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{verify_lemma_ab1, verify_prop_ab2, PropCheck};
use crate::betti::{betti_hochster, max_shifts, Caps};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::simplicial::{full_mask, SimplicialComplex, SubcomplexFamily};
use crate::subadditivity::Verdict;

fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn random_subset(rng: &mut impl Rng, universe: u32, k: usize) -> u32 {
    let elems: Vec<u32> = (0..32).filter(|&i| universe >> i & 1 == 1).collect();
    sample(rng, elems.len(), k.min(elems.len()))
        .into_iter()
        .fold(0, |acc, i| acc | 1 << elems[i])
}

/// A random complex on `[n]` generated by one to four facets.
pub fn random_complex(rng: &mut impl Rng, n: usize) -> SimplicialComplex {
    let k = rng.gen_range(1..=4);
    let facets: Vec<u32> = (0..k)
        .map(|_| {
            let size = rng.gen_range(1..=n.min(4));
            random_subset(rng, full_mask(n), size)
        })
        .collect();
    SimplicialComplex::from_facets(n, &facets).expect("facets inside [n]")
}

/// Random subcomplex of `ambient`: either an induced subcomplex or the
/// closure of a random selection of its faces.
fn random_subcomplex(rng: &mut impl Rng, ambient: &SimplicialComplex) -> SimplicialComplex {
    if rng.gen_bool(0.5) {
        let w = rng.gen_range(0..=full_mask(ambient.n()));
        ambient.induced(w)
    } else {
        let faces = ambient.faces();
        let k = rng.gen_range(1..=faces.len().min(4));
        let picked: Vec<u32> = sample(rng, faces.len(), k).into_iter().map(|i| faces[i]).collect();
        SimplicialComplex::from_facets(ambient.n(), &picked).expect("faces of the ambient complex")
    }
}

/// Aggregate of a lemma or proposition campaign.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceCampaign {
    pub seed: u64,
    pub field: FieldSpec,
    pub instances: u64,
    /// Individual (instance, degree) checks performed.
    pub checks: u64,
    pub hypothesis_true: u64,
    pub conclusion_held: u64,
    pub skipped: u64,
    /// Fixture text and parameters of every violating check.
    pub violations: Vec<String>,
}

impl InstanceCampaign {
    fn merge(seed: u64, field: FieldSpec, parts: Vec<InstanceCampaign>) -> Self {
        let mut out = InstanceCampaign {
            seed,
            field,
            instances: 0,
            checks: 0,
            hypothesis_true: 0,
            conclusion_held: 0,
            skipped: 0,
            violations: Vec::new(),
        };
        for p in parts {
            out.instances += p.instances;
            out.checks += p.checks;
            out.hypothesis_true += p.hypothesis_true;
            out.conclusion_held += p.conclusion_held;
            out.skipped += p.skipped;
            out.violations.extend(p.violations);
        }
        out
    }

    fn single(seed: u64, field: FieldSpec) -> Self {
        Self::merge(seed, field, Vec::new())
    }
}

/// Random families of up to `t_max` subcomplexes of a random complex on at
/// most `n_max` vertices; every degree `j` from -1 to `n - 1` is checked.
pub fn lemma_campaign(seed: u64, trials: u64, n_max: usize, t_max: usize, field: FieldSpec) -> Result<InstanceCampaign> {
    if !(2..=12).contains(&n_max) || !(1..=6).contains(&t_max) {
        return Err(Error::Config("lemma campaign needs 2 <= n_max <= 12, 1 <= t_max <= 6".into()));
    }
    let parts = (0..trials)
        .into_par_iter()
        .map(|index| {
            let mut rng = rng_for(seed, index);
            let n = rng.gen_range(2..=n_max);
            let ambient = random_complex(&mut rng, n);
            let t = rng.gen_range(1..=t_max);
            let members = (0..t).map(|_| random_subcomplex(&mut rng, &ambient)).collect();
            let fam = SubcomplexFamily::within(&ambient, members).expect("members are subcomplexes");

            let mut part = InstanceCampaign::single(seed, field);
            part.instances = 1;
            for j in -1..n as i32 {
                let out = verify_lemma_ab1(&fam, j, field);
                part.checks += 1;
                match out.conclusion {
                    Verdict::Skipped => part.skipped += 1,
                    Verdict::Holds => {
                        part.hypothesis_true += 1;
                        part.conclusion_held += 1;
                    }
                    Verdict::Fails => {
                        part.hypothesis_true += 1;
                        let fixtures: Vec<String> = fam.members().iter().map(|m| m.render_fixture()).collect();
                        part.violations.push(format!(
                            "seed={seed} index={index} j={j} field={field} members=[{}]",
                            fixtures.join(" | ")
                        ));
                    }
                }
            }
            part
        })
        .collect();
    Ok(InstanceCampaign::merge(seed, field, parts))
}

/// A conforming instance of the vanishing proposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropInstance {
    pub delta: String,
    pub w: u32,
    pub a_set: u32,
    pub a: usize,
    pub s: usize,
    pub s_prime: usize,
    pub l: usize,
}

/// Build a conforming instance directly: pick `Δ` and `a`, read `t_a`,
/// then choose `l`, `s`, `s'`, `W` and `A` to satisfy the size equation.
pub fn random_prop_instance(
    rng: &mut impl Rng,
    n_max: usize,
    field: FieldSpec,
    caps: Caps,
) -> Result<(SimplicialComplex, PropInstance)> {
    loop {
        let n = rng.gen_range(2..=n_max);
        let delta = random_complex(rng, n);
        if delta.non_faces().is_empty() {
            continue;
        }
        let shifts = max_shifts(&betti_hochster(&delta, field, caps)?);
        let feasible: Vec<usize> = (0..=shifts.p).filter(|&a| shifts.t[a] + 2 <= n).collect();
        let a = feasible[rng.gen_range(0..feasible.len())];
        let room = n - shifts.t[a] - 1;
        let l = rng.gen_range(1..=room);
        let s = rng.gen_range(0..=room - l);
        let s_prime = rng.gen_range(0..=s);
        let w = random_subset(rng, full_mask(n), shifts.t[a] + s + l + 1);
        let a_set = random_subset(rng, w, s_prime + l);
        let inst = PropInstance {
            delta: delta.render_fixture(),
            w,
            a_set,
            a,
            s,
            s_prime,
            l,
        };
        return Ok((delta, inst));
    }
}

/// `trials` conforming instances on at most `n_max` vertices.
pub fn prop_campaign(seed: u64, trials: u64, n_max: usize, field: FieldSpec, caps: Caps) -> Result<InstanceCampaign> {
    if !(2..=caps.hochster_vars.min(12)).contains(&n_max) {
        return Err(Error::Config("prop campaign needs 2 <= n_max <= 12".into()));
    }
    let parts: Result<Vec<InstanceCampaign>> = (0..trials)
        .into_par_iter()
        .map(|index| {
            let mut rng = rng_for(seed, index);
            let (delta, inst) = random_prop_instance(&mut rng, n_max, field, caps)?;
            let check: PropCheck =
                verify_prop_ab2(&delta, inst.w, inst.a_set, inst.a, inst.s, inst.l, field, caps)?;
            let mut part = InstanceCampaign::single(seed, field);
            part.instances = 1;
            part.checks = 1;
            match check.conclusion {
                Verdict::Skipped => {
                    // conforming by construction
                    return Err(Error::Config(format!(
                        "generated instance not conforming: {:?}",
                        check.reason
                    )));
                }
                Verdict::Holds => {
                    part.hypothesis_true = 1;
                    part.conclusion_held = 1;
                }
                Verdict::Fails => {
                    part.hypothesis_true = 1;
                    part.violations.push(format!(
                        "seed={seed} index={index} field={field} instance={}",
                        serde_json::to_string(&inst).expect("plain data")
                    ));
                }
            }
            Ok(part)
        })
        .collect();
    Ok(InstanceCampaign::merge(seed, field, parts?))
}
