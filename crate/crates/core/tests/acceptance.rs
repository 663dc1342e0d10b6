//! Acceptance criteria, one line each.
//!
//! Criteria listed in `KNOWN_RED` are expected to fail and are printed as FAIL; the run
//! only errors on an unexpected result in either direction.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use modal_duality::completion::ideal_completion;
use modal_duality::corpus::corpus;
use modal_duality::duality::{check_adjunction_bijection, check_frame_triangle, check_sober, check_space_triangle};
use modal_duality::formula::{bisim_invariance_check, BisimOptions, FormulaError, Model};
use modal_duality::sweep::{run_sweep, Suite, SweepConfig, SweepReport};
use modal_duality::{ConstructionMode, Exec, MorphismClass};

const OMEGA_POINTS: usize = 3;
/// Labelled spaces on at most 3 points: 1 + 1·2 + 4·16 + 29·512.
const OMEGA_SPACES: usize = 14_915;
const OMEGA_BUDGET: Duration = Duration::from_secs(60);
const FRAME_LATTICE: usize = 5;
const FRAME_BUDGET: Duration = Duration::from_secs(600);
const BISIM_DEPTH: usize = 4;
const BISIM_BUDGET: Duration = Duration::from_secs(60);

/// Pair-mode successor sets are lenses but not always closed; see the closed-images suite.
const KNOWN_RED: &[u32] = &[9];

struct Line {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn frame_sweep() -> (SweepReport, Duration) {
    let t = Instant::now();
    let config = SweepConfig { max_lattice: FRAME_LATTICE, max_points: None, ..SweepConfig::default() };
    let report = run_sweep(&config).expect("bounds within limits");
    (report, t.elapsed())
}

fn suite_line(r: &SweepReport, suite: Suite) -> (bool, String) {
    let s = r.suite(suite);
    let first = s.examples.first().map(|e| format!("; first: {e}")).unwrap_or_default();
    (s.checked > 0 && s.passed(), format!("{} checked, {} violations{first}", s.checked, s.violations))
}

fn omega_soundness() -> Line {
    let t = Instant::now();
    let config = SweepConfig { max_lattice: 0, max_points: Some(OMEGA_POINTS), ..SweepConfig::default() };
    let r = run_sweep(&config).expect("bounds within limits");
    let took = t.elapsed();
    let s = r.suite(Suite::OmegaSoundness);
    Line {
        id: 1,
        name: "omega soundness",
        pass: s.passed() && s.checked == OMEGA_SPACES && took <= OMEGA_BUDGET,
        detail: format!("{} spaces, {} violations, {took:.2?} (limit {OMEGA_BUDGET:?})", s.checked, s.violations),
    }
}

fn criteria() -> Vec<Line> {
    let mut lines = vec![omega_soundness()];
    let (sweep, took) = frame_sweep();
    let c = corpus();

    let (ok, d) = suite_line(&sweep, Suite::Spatial);
    lines.push(Line {
        id: 2,
        name: "spatiality",
        pass: ok && took <= FRAME_BUDGET,
        detail: format!("{} frames over {} lattices; {d}; {took:.2?} (limit {FRAME_BUDGET:?})", sweep.frames, sweep.lattices),
    });

    let (ok, d) = suite_line(&sweep, Suite::Sober);
    let doubled = c.space("doubled-point");
    let flagged = ConstructionMode::ALL.iter().all(|&m| !check_sober(doubled, m).isomorphism);
    lines.push(Line {
        id: 3,
        name: "sobriety",
        pass: ok && flagged,
        detail: format!("{d}; doubled-point reported not sober in every mode: {flagged}"),
    });

    let (ok, d) = suite_line(&sweep, Suite::PruningOracle);
    lines.push(Line { id: 4, name: "pruning oracle", pass: ok, detail: d });

    let (ok, d) = suite_line(&sweep, Suite::Correspondence);
    lines.push(Line { id: 5, name: "correspondence", pass: ok, detail: d });

    let mut checked = 0;
    let mut failures = Vec::new();
    for (fname, a) in &c.frames {
        for (xname, x) in &c.spaces {
            for mode in ConstructionMode::ALL {
                let v = check_adjunction_bijection(a, x, mode, Exec::default());
                if v.applicable {
                    checked += 1;
                    if !v.bijection {
                        failures.push(format!("{fname}/{xname}/{mode}"));
                    }
                }
            }
        }
    }
    lines.push(Line {
        id: 6,
        name: "adjunction bijection",
        pass: checked > 0 && failures.is_empty(),
        detail: format!("{checked} applicable (frame, space, mode) triples, failures {failures:?}"),
    });

    let mut checked = 0;
    let mut failures = Vec::new();
    for mode in ConstructionMode::ALL {
        let (fcat, scat) = (mode.frame_category(), mode.space_category());
        for (name, a) in c.frames.iter().filter(|(_, a)| fcat.admits_object(&a.classify())) {
            checked += 1;
            if !check_frame_triangle(a, mode).holds {
                failures.push(format!("frame {name}/{mode}"));
            }
        }
        for (name, x) in c.spaces.iter().filter(|(_, x)| scat.admits_object(&x.classify())) {
            checked += 1;
            if !check_space_triangle(x, mode).holds {
                failures.push(format!("space {name}/{mode}"));
            }
        }
    }
    lines.push(Line {
        id: 7,
        name: "triangle identities",
        pass: checked > 0 && failures.is_empty(),
        detail: format!("{checked} applicable checks, failures {failures:?}"),
    });

    let mut run = 0;
    let mut excluded = Vec::new();
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for m in &c.morphisms {
        let Some(v) = &m.valuations else {
            excluded.push(m.name.clone());
            continue;
        };
        let (sx, tx) = (c.space(&m.source), c.space(&m.target));
        let src = Model::from_names(sx, &v.source).expect("fixture valuation");
        let tgt = Model::from_names(tx, &v.target).expect("fixture valuation");
        let t = Instant::now();
        match bisim_invariance_check(&src, &tgt, &m.map, BISIM_DEPTH, BisimOptions::default()) {
            Ok(verdict) => {
                run += 1;
                if !verdict.pass {
                    failures.push(format!("{}: {:?}", m.name, verdict.counterexample));
                }
            }
            Err(FormulaError::PreconditionViolated(_)) => excluded.push(m.name.clone()),
            Err(e) => failures.push(format!("{}: {e}", m.name)),
        }
        slowest = slowest.max(t.elapsed());
    }
    lines.push(Line {
        id: 8,
        name: "bisimulation invariance",
        pass: run > 0 && failures.is_empty() && slowest <= BISIM_BUDGET,
        detail: format!(
            "{run} open pq-morphisms to depth {BISIM_DEPTH}, excluded {excluded:?}, failures {failures:?}, slowest {slowest:.2?} (limit {BISIM_BUDGET:?})"
        ),
    });

    let (lens_ok, lens) = suite_line(&sweep, Suite::LensImages);
    let (closed_ok, closed) = suite_line(&sweep, Suite::ClosedImages);
    lines.push(Line {
        id: 9,
        name: "lens and closed images",
        pass: lens_ok && closed_ok,
        detail: format!("relspq lens images: {lens}; relsp closed images: {closed}"),
    });

    let mut failures = Vec::new();
    for (name, f) in &c.frames {
        let idl = ideal_completion(f);
        if !(idl.modally_spectral && idl.unit_class == MorphismClass::Strict && idl.unit_is_bijective) {
            failures.push(name.clone());
        }
    }
    lines.push(Line {
        id: 10,
        name: "ideal completion",
        pass: failures.is_empty(),
        detail: format!("{} frames, failures {failures:?}", c.frames.len()),
    });
    lines
}

fn main() -> ExitCode {
    let mut unexpected = Vec::new();
    for line in criteria() {
        let known = KNOWN_RED.contains(&line.id);
        let tag = if line.pass { "PASS" } else { "FAIL" };
        let note = if known { " [known red]" } else { "" };
        println!("criterion {:>2} {tag}{note} {}: {}", line.id, line.name, line.detail);
        if line.pass == known {
            unexpected.push(line.id);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("unexpected results for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
