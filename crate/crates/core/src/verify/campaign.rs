//! The cross-oracle fuzz campaign, its CSV/JSON reports, and replay.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::random::{random_ideal, FuzzConfig};
use crate::betti::{betti_hochster_of_ideal, max_shifts, BettiJson, Caps};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::monomial::{parse_ideal, polarize, render_ideal, MonomialIdeal};
use crate::simplicial::SimplicialComplex;
use crate::subadditivity::{
    check_eq1, check_first_step, check_subadditivity, check_thm_ab3_all, check_thm_ab4,
};
use crate::taylor::{criterion_ab6, TaylorComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

impl CheckStatus {
    fn of(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }
}

/// One CSV row: one trial over one field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRow {
    pub seed: u64,
    pub index: u64,
    pub n: usize,
    pub r: usize,
    pub field: FieldSpec,
    pub ideal: String,
    pub p: usize,
    /// Space-separated `t_0 .. t_p`.
    pub t: String,
    pub cross_check: CheckStatus,
    pub thm_ab4: CheckStatus,
    pub eq1: CheckStatus,
    pub first_step: CheckStatus,
    pub subadditivity: CheckStatus,
    pub ab6_holds: bool,
    /// Witness at `c = r`, run only when the lcm-ratio criterion holds.
    pub witness: CheckStatus,
    /// Dimension criterion over all pairs; squarefree instances only.
    pub thm_ab3: CheckStatus,
}

/// Everything needed to reproduce a flagged trial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproBundle {
    pub seed: u64,
    pub index: u64,
    pub field: FieldSpec,
    pub ideal: String,
    pub check: String,
    pub detail: String,
    /// True when a proved statement failed (engine bug), false for a
    /// subadditivity finding on a general monomial ideal.
    pub engine_bug: bool,
    pub taylor: BettiJson,
    pub hochster: Option<BettiJson>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub trials: u64,
    pub rows: u64,
    pub cross_checked: u64,
    pub cross_skipped: u64,
    pub cross_mismatches: u64,
    pub thm_ab4_violations: u64,
    pub eq1_violations: u64,
    pub first_step_violations: u64,
    pub subadditivity_violations: u64,
    pub ab6_holds: u64,
    pub ab6_subadditive: u64,
    pub witness_found: u64,
    pub thm_ab3_checked: u64,
    pub thm_ab3_violations: u64,
    pub aborted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub config: FuzzConfig,
    pub rows: Vec<TrialRow>,
    pub summary: CampaignSummary,
    /// Subadditivity violations on general ideals: findings, not errors.
    pub findings: Vec<ReproBundle>,
    /// First proved-statement violation; the campaign stops there.
    pub abort: Option<ReproBundle>,
    /// Wall-clock time; the only nondeterministic field.
    pub elapsed_ms: u64,
}

impl CampaignReport {
    /// One header line plus one line per row. Contains no timing data, so
    /// equal configurations give byte-identical output.
    pub fn to_csv(&self) -> Result<String> {
        rows_to_csv(&self.rows)
    }

    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::json!({
            "config": self.config,
            "summary": self.summary,
            "findings": self.findings,
            "abort": self.abort,
            "elapsed_ms": self.elapsed_ms,
        })
    }
}

pub fn rows_to_csv(rows: &[TrialRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        w.write_record(CSV_HEADER).map_err(|e| Error::Io(e.to_string()))?;
    }
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

const CSV_HEADER: [&str; 16] = [
    "seed",
    "index",
    "n",
    "r",
    "field",
    "ideal",
    "p",
    "t",
    "cross_check",
    "thm_ab4",
    "eq1",
    "first_step",
    "subadditivity",
    "ab6_holds",
    "witness",
    "thm_ab3",
];

pub fn rows_from_csv(text: &str) -> Result<Vec<TrialRow>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Io(e.to_string()))
}

/// Result of one trial: the row plus anything worth a repro bundle.
#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub row: TrialRow,
    pub engine_bug: Option<ReproBundle>,
    pub finding: Option<ReproBundle>,
}

/// Run every check on one ideal over one field. `cross_check` selects
/// whether the Hochster engine runs on the polarization as well.
pub fn run_trial(
    seed: u64,
    index: u64,
    ideal: &MonomialIdeal,
    field: FieldSpec,
    cross_check: bool,
    caps: Caps,
) -> Result<TrialOutcome> {
    let tc = TaylorComplex::new(ideal, caps)?;
    let taylor = tc.betti(field);
    let shifts = max_shifts(&taylor);
    let ideal_text = render_ideal(ideal);

    let mut bugs: Vec<(String, String)> = Vec::new();

    let (cross_status, hochster) = if cross_check {
        let h = betti_hochster_of_ideal(ideal, field, caps)?;
        let status = match h.first_difference(&taylor) {
            None => CheckStatus::Pass,
            Some((i, j)) => {
                bugs.push((
                    "cross-oracle".into(),
                    format!("beta_{{{i},{j}}}: hochster={} taylor={}", h.get(i, j), taylor.get(i, j)),
                ));
                CheckStatus::Fail
            }
        };
        (status, Some(h))
    } else {
        (CheckStatus::Skip, None)
    };

    let ab4 = check_thm_ab4(&shifts);
    let eq1 = check_eq1(&shifts);
    let step = check_first_step(&shifts);
    let sub = check_subadditivity(&shifts);
    for rep in [&ab4, &eq1, &step] {
        if let Some(c) = rep.violations().next() {
            bugs.push((
                rep.name.clone(),
                format!("indices {:?}: {} > {}", c.indices, c.lhs, c.rhs),
            ));
        }
    }

    let ab6 = criterion_ab6(ideal)?;
    let witness = if ab6.holds {
        let r = ideal.ngens();
        if !sub.all_hold {
            bugs.push(("ab6-subadditivity".into(), "criterion holds but subadditivity fails".into()));
        }
        if shifts.p != r {
            bugs.push(("ab6-witness".into(), format!("criterion holds but projdim {} != r {r}", shifts.p)));
            CheckStatus::Fail
        } else {
            let w = tc.witness(r, &shifts, field)?;
            let full = if r == 32 { u32::MAX } else { (1u32 << r) - 1 };
            let ok = w.found.as_ref().is_some_and(|f| f.subset == full);
            if !ok {
                bugs.push(("ab6-witness".into(), format!("witness at c={r} is not G(I): {:?}", w.found)));
            }
            CheckStatus::of(ok)
        }
    } else {
        CheckStatus::Skip
    };

    let ab3 = if ideal.is_squarefree() && ideal.nvars() <= 32 {
        let delta = SimplicialComplex::from_stanley_reisner(ideal)?;
        let rep = check_thm_ab3_all(&delta, &shifts)?;
        if let Some(c) = rep.violations().next() {
            bugs.push(("thm-ab3".into(), format!("indices {:?}: {} > {}", c.indices, c.lhs, c.rhs)));
        }
        if rep.cases.is_empty() {
            CheckStatus::Skip
        } else {
            CheckStatus::of(rep.all_hold)
        }
    } else {
        CheckStatus::Skip
    };

    let row = TrialRow {
        seed,
        index,
        n: ideal.nvars(),
        r: ideal.ngens(),
        field,
        ideal: ideal_text.clone(),
        p: shifts.p,
        t: shifts.t.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
        cross_check: cross_status,
        thm_ab4: CheckStatus::of(ab4.all_hold),
        eq1: CheckStatus::of(eq1.all_hold),
        first_step: CheckStatus::of(step.all_hold),
        subadditivity: CheckStatus::of(sub.all_hold),
        ab6_holds: ab6.holds,
        witness,
        thm_ab3: ab3,
    };

    let bundle = |check: String, detail: String, engine_bug: bool| ReproBundle {
        seed,
        index,
        field,
        ideal: ideal_text.clone(),
        check,
        detail,
        engine_bug,
        taylor: taylor.to_json(),
        hochster: hochster.as_ref().map(|h| h.to_json()),
    };
    let engine_bug = bugs.into_iter().next().map(|(c, d)| bundle(c, d, true));
    let finding = match sub.violations().next() {
        Some(c) if engine_bug.is_none() => Some(bundle(
            "subadditivity".into(),
            format!("a={}, b={}: t_(a+b)={} > {}", c.indices[0], c.indices[1], c.lhs, c.rhs),
            false,
        )),
        _ => None,
    };
    Ok(TrialOutcome {
        row,
        engine_bug,
        finding,
    })
}

fn polarized_vars(ideal: &MonomialIdeal) -> usize {
    polarize(ideal).map(|(p, _)| p.nvars()).unwrap_or(usize::MAX)
}

/// Run `cfg.trials` seeded trials over every configured field. Trials run
/// in parallel and merge by index, so the rows do not depend on
/// scheduling.
pub fn fuzz_campaign(cfg: &FuzzConfig) -> Result<CampaignReport> {
    cfg.validate()?;
    let start = Instant::now();
    let per_trial: Vec<Result<Vec<TrialOutcome>>> = (0..cfg.trials)
        .into_par_iter()
        .map(|index| {
            let ideal = random_ideal(cfg, index)?;
            let cross = polarized_vars(&ideal) <= cfg.cross_check_vars;
            cfg.fields
                .iter()
                .map(|&f| run_trial(cfg.seed, index, &ideal, f, cross, cfg.caps))
                .collect()
        })
        .collect();

    let mut report = CampaignReport {
        config: cfg.clone(),
        rows: Vec::new(),
        summary: CampaignSummary::default(),
        findings: Vec::new(),
        abort: None,
        elapsed_ms: 0,
    };
    'trials: for outcomes in per_trial {
        report.summary.trials += 1;
        for o in outcomes? {
            tally(&mut report.summary, &o.row);
            report.rows.push(o.row);
            if let Some(f) = o.finding {
                report.findings.push(f);
            }
            if let Some(bug) = o.engine_bug {
                report.abort = Some(bug);
                report.summary.aborted = true;
                break 'trials;
            }
        }
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn tally(s: &mut CampaignSummary, row: &TrialRow) {
    s.rows += 1;
    match row.cross_check {
        CheckStatus::Pass => s.cross_checked += 1,
        CheckStatus::Fail => {
            s.cross_checked += 1;
            s.cross_mismatches += 1;
        }
        CheckStatus::Skip => s.cross_skipped += 1,
    }
    s.thm_ab4_violations += u64::from(row.thm_ab4 == CheckStatus::Fail);
    s.eq1_violations += u64::from(row.eq1 == CheckStatus::Fail);
    s.first_step_violations += u64::from(row.first_step == CheckStatus::Fail);
    s.subadditivity_violations += u64::from(row.subadditivity == CheckStatus::Fail);
    if row.ab6_holds {
        s.ab6_holds += 1;
        s.ab6_subadditive += u64::from(row.subadditivity == CheckStatus::Pass);
        s.witness_found += u64::from(row.witness == CheckStatus::Pass);
    }
    if row.thm_ab3 != CheckStatus::Skip {
        s.thm_ab3_checked += 1;
        s.thm_ab3_violations += u64::from(row.thm_ab3 == CheckStatus::Fail);
    }
}

/// Outcome of re-running stored trials.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub replayed: u64,
    /// `(stored, recomputed)` for rows that no longer match.
    pub mismatches: Vec<(TrialRow, TrialRow)>,
    /// Engine-bug bundles reproduced during replay.
    pub violations: Vec<ReproBundle>,
    pub findings: Vec<ReproBundle>,
}

/// Re-run every row of a campaign CSV and compare field by field.
pub fn replay_csv(text: &str, caps: Caps) -> Result<ReplayReport> {
    let rows = rows_from_csv(text)?;
    let outcomes: Vec<Result<(TrialRow, TrialOutcome)>> = rows
        .into_par_iter()
        .map(|stored| {
            let ideal = parse_ideal(&stored.ideal)?;
            let cross = stored.cross_check != CheckStatus::Skip;
            let o = run_trial(stored.seed, stored.index, &ideal, stored.field, cross, caps)?;
            Ok((stored, o))
        })
        .collect();
    let mut rep = ReplayReport::default();
    for item in outcomes {
        let (stored, o) = item?;
        rep.replayed += 1;
        if o.row != stored {
            rep.mismatches.push((stored, o.row));
        }
        rep.violations.extend(o.engine_bug);
        rep.findings.extend(o.finding);
    }
    Ok(rep)
}

/// Re-run the trial described by a repro bundle.
pub fn replay_bundle(bundle: &ReproBundle, caps: Caps) -> Result<ReplayReport> {
    let ideal = parse_ideal(&bundle.ideal)?;
    let o = run_trial(bundle.seed, bundle.index, &ideal, bundle.field, bundle.hochster.is_some(), caps)?;
    Ok(ReplayReport {
        replayed: 1,
        mismatches: Vec::new(),
        violations: o.engine_bug.into_iter().collect(),
        findings: o.finding.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg() -> FuzzConfig {
        FuzzConfig {
            seed: 42,
            n_range: [2, 4],
            r_range: [1, 4],
            deg_range: [1, 3],
            trials: 25,
            fields: vec![FieldSpec::GF2, FieldSpec::Rationals],
            ..FuzzConfig::default()
        }
    }

    #[test]
    fn campaign_is_clean_and_deterministic() {
        let cfg = small_cfg();
        let a = fuzz_campaign(&cfg).unwrap();
        assert!(a.abort.is_none(), "{:?}", a.abort);
        assert_eq!(a.summary.rows, 50);
        assert_eq!(a.summary.thm_ab4_violations, 0);
        let b = fuzz_campaign(&cfg).unwrap();
        assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
    }

    #[test]
    fn empty_campaign() {
        let cfg = FuzzConfig { trials: 0, ..small_cfg() };
        let rep = fuzz_campaign(&cfg).unwrap();
        assert!(rep.rows.is_empty());
        let csv = rep.to_csv().unwrap();
        assert_eq!(csv.lines().count(), 1);
        assert!(rows_from_csv(&csv).unwrap().is_empty());
    }

    #[test]
    fn csv_round_trip_and_replay() {
        let rep = fuzz_campaign(&small_cfg()).unwrap();
        let csv = rep.to_csv().unwrap();
        assert_eq!(rows_from_csv(&csv).unwrap(), rep.rows);
        let replay = replay_csv(&csv, Caps::default()).unwrap();
        assert_eq!(replay.replayed, rep.rows.len() as u64);
        assert!(replay.mismatches.is_empty());
        assert!(replay.violations.is_empty());
    }

    #[test]
    fn tampered_row_is_a_mismatch() {
        let rep = fuzz_campaign(&FuzzConfig { trials: 3, ..small_cfg() }).unwrap();
        let mut rows = rep.rows.clone();
        rows[0].p += 1;
        let replay = replay_csv(&rows_to_csv(&rows).unwrap(), Caps::default()).unwrap();
        assert_eq!(replay.mismatches.len(), 1);
    }

    #[test]
    fn worked_example_trial() {
        let ideal = parse_ideal("a^4*b*c; b^3*c^2; c^5*a^3").unwrap();
        let o = run_trial(0, 0, &ideal, FieldSpec::GF2, false, Caps::default()).unwrap();
        assert!(o.engine_bug.is_none());
        assert!(o.row.ab6_holds);
        assert_eq!(o.row.witness, CheckStatus::Pass);
        assert_eq!(o.row.subadditivity, CheckStatus::Pass);
        assert_eq!(o.row.thm_ab3, CheckStatus::Skip);
    }

    #[test]
    fn bundle_replays() {
        let ideal = parse_ideal("x*y; y*z; z*x").unwrap();
        let o = run_trial(1, 2, &ideal, FieldSpec::Rationals, true, Caps::default()).unwrap();
        let bundle = ReproBundle {
            seed: 1,
            index: 2,
            field: FieldSpec::Rationals,
            ideal: o.row.ideal.clone(),
            check: "none".into(),
            detail: String::new(),
            engine_bug: false,
            taylor: BettiJson {
                field: FieldSpec::Rationals,
                betti: vec![],
                t: vec![],
                projdim: 0,
            },
            hochster: None,
        };
        let rep = replay_bundle(&bundle, Caps::default()).unwrap();
        assert_eq!(rep.replayed, 1);
        assert!(rep.violations.is_empty());
    }
}
