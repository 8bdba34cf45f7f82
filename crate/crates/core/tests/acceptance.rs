//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use subadd::homology::boundary_matrices;
use subadd::verify::{fuzz_campaign, lemma_campaign, prop_campaign, random_complex, CheckStatus, FuzzConfig};
use subadd::{
    betti_of_ideal, check_subadditivity, criterion_ab6, max_shifts, parse_ideal, reduced_homology, Caps,
    FieldSpec, Method, SimplicialComplex,
};

const FIELDS: [FieldSpec; 2] = [FieldSpec::GF2, FieldSpec::Rationals];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn c1_worked_example() -> Outcome {
    let start = Instant::now();
    let ideal = parse_ideal("a^4*b*c; b^3*c^2; c^5*a^3").map_err(|e| e.to_string())?;
    let crit = criterion_ab6(&ideal).map_err(|e| e.to_string())?;
    let ratios: Vec<String> = crit.ratios.iter().map(|m| ideal.render_monomial(m)).collect();
    ensure(crit.holds, "criterion does not hold")?;
    ensure(ratios == ["a", "b^2", "c^3"], format!("ratios {ratios:?}"))?;
    let table = betti_of_ideal(&ideal, FieldSpec::GF2, Method::Taylor, Caps::default()).map_err(|e| e.to_string())?;
    let shifts = max_shifts(&table);
    ensure(check_subadditivity(&shifts).all_hold, "subadditivity fails")?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("ratios {ratios:?}, t = {:?}, {elapsed:.2?}", shifts.t))
}

fn c2_cross_oracle() -> Outcome {
    let start = Instant::now();
    let cfg = FuzzConfig {
        seed: 2,
        n_range: [2, 7],
        r_range: [1, 7],
        deg_range: [1, 7],
        squarefree_only: true,
        fields: FIELDS.to_vec(),
        trials: 200,
        ..FuzzConfig::default()
    };
    let rep = fuzz_campaign(&cfg).map_err(|e| e.to_string())?;
    let s = &rep.summary;
    ensure(rep.abort.is_none(), format!("aborted: {:?}", rep.abort))?;
    ensure(s.cross_skipped == 0, format!("{} rows skipped the cross-check", s.cross_skipped))?;
    ensure(s.cross_checked == 400 && s.cross_mismatches == 0, format!("{s:?}"))?;
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("{} tables compared, 0 mismatches, {:.2?}", s.cross_checked, start.elapsed()))
}

fn theorem_config() -> FuzzConfig {
    FuzzConfig {
        seed: 3,
        n_range: [2, 6],
        r_range: [2, 6],
        deg_range: [1, 4],
        fields: FIELDS.to_vec(),
        trials: 500,
        ..FuzzConfig::default()
    }
}

fn c3_c4_theorems() -> (Outcome, Outcome) {
    let start = Instant::now();
    let rep = match fuzz_campaign(&theorem_config()) {
        Ok(r) => r,
        Err(e) => return (Err(e.to_string()), Err("campaign failed".into())),
    };
    let elapsed = start.elapsed();
    let s = &rep.summary;
    let c3 = (|| {
        ensure(rep.abort.is_none(), format!("aborted: {:?}", rep.abort))?;
        ensure(s.rows == 1000, format!("{} rows", s.rows))?;
        ensure(
            s.thm_ab4_violations == 0 && s.eq1_violations == 0 && s.first_step_violations == 0,
            format!("{s:?}"),
        )?;
        ensure(s.cross_mismatches == 0, "cross-oracle mismatch")?;
        within(elapsed, Duration::from_secs(300))?;
        Ok(format!(
            "{} rows, 0 violations, {} cross-checked, {} subadditivity findings, {elapsed:.2?}",
            s.rows, s.cross_checked, s.subadditivity_violations
        ))
    })();
    let c4 = (|| {
        let held: Vec<_> = rep.rows.iter().filter(|r| r.ab6_holds).collect();
        ensure(!held.is_empty(), "criterion never held")?;
        let bad = held
            .iter()
            .filter(|r| r.subadditivity != CheckStatus::Pass || r.witness != CheckStatus::Pass)
            .count();
        ensure(bad == 0, format!("{bad} exceptions"))?;
        Ok(format!("{} rows with the criterion, all subadditive with witness G(I)", held.len()))
    })();
    (c3, c4)
}

fn c5_instance_verifiers() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for f in FIELDS {
        let lemma = lemma_campaign(5, 100, 6, 4, f).map_err(|e| e.to_string())?;
        ensure(lemma.violations.is_empty(), format!("lemma: {:?}", lemma.violations))?;
        let prop = prop_campaign(5, 100, 6, f, Caps::default()).map_err(|e| e.to_string())?;
        ensure(prop.violations.is_empty(), format!("prop: {:?}", prop.violations))?;
        ensure(prop.hypothesis_true == 100, "non-conforming prop instance")?;
        parts.push(format!(
            "{f}: lemma {}/{} hypotheses true, prop {}/100",
            lemma.hypothesis_true, lemma.checks, prop.conclusion_held
        ));
    }
    within(start.elapsed(), Duration::from_secs(180))?;
    Ok(format!("{}, {:.2?}", parts.join("; "), start.elapsed()))
}

fn check_complex(c: &SimplicialComplex) -> Result<(), String> {
    let d = boundary_matrices(c).map_err(|e| e.to_string())?;
    ensure(d.windows(2).all(|w| w[0].mul(&w[1]).is_zero()), "boundary of boundary nonzero")?;
    let faces = common::reduced_euler_of_faces(c);
    for f in FIELDS {
        let h: i64 = reduced_homology(c, f)
            .dims()
            .iter()
            .enumerate()
            .map(|(k, &x)| if k % 2 == 1 { x as i64 } else { -(x as i64) })
            .sum();
        ensure(h == faces, format!("Euler characteristic mismatch on {}", c.render_fixture()))?;
    }
    Ok(())
}

fn c6_homology_ground_truth() -> Outcome {
    for k in 2..=4usize {
        let sphere = SimplicialComplex::simplex_boundary(k + 1);
        for f in FIELDS {
            let nz: Vec<_> = reduced_homology(&sphere, f).nonzero().collect();
            ensure(nz == [(k as i32 - 1, 1)], format!("boundary of the {k}-simplex over {f}: {nz:?}"))?;
        }
        check_complex(&sphere)?;
    }
    let rp2 = common::rp2();
    let gf2 = reduced_homology(&rp2, FieldSpec::GF2);
    let q = reduced_homology(&rp2, FieldSpec::Rationals);
    ensure(gf2.get(1) == 1 && q.get(1) == 0, "projective plane H_1")?;
    check_complex(&rp2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 1..=7 {
        for _ in 0..40 {
            check_complex(&random_complex(&mut rng, n))?;
        }
    }
    Ok("spheres, projective plane and 280 random complexes".into())
}

fn c7_determinism() -> Outcome {
    let cfg = FuzzConfig {
        seed: 7,
        trials: 150,
        fields: FIELDS.to_vec(),
        ..FuzzConfig::default()
    };
    let a = fuzz_campaign(&cfg).and_then(|r| r.to_csv()).map_err(|e| e.to_string())?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().map_err(|e| e.to_string())?;
    let b = pool
        .install(|| fuzz_campaign(&cfg).and_then(|r| r.to_csv()))
        .map_err(|e| e.to_string())?;
    ensure(a == b, "CSV differs between runs")?;
    Ok(format!("{} bytes identical across thread counts", a.len()))
}

fn main() -> ExitCode {
    let (c3, c4) = c3_c4_theorems();
    let results = [
        ("1 worked example", c1_worked_example()),
        ("2 cross-oracle", c2_cross_oracle()),
        ("3 theorem oracles", c3),
        ("4 lcm-ratio criterion", c4),
        ("5 lemma and proposition", c5_instance_verifiers()),
        ("6 homology ground truth", c6_homology_ground_truth()),
        ("7 determinism", c7_determinism()),
    ];
    let mut failed = false;
    for (name, r) in &results {
        match r {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(detail) => {
                failed = true;
                println!("criterion {name}: FAIL ({detail})");
            }
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
