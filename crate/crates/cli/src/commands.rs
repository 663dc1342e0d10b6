use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use modal_duality::completion::ideal_completion;
use modal_duality::duality::{
    check_adjunction_bijection, check_frame_triangle, check_sober, check_space_triangle, check_spatial,
    correspondence_report, duality_report, space_correspondence_report,
};
use modal_duality::formula::{bisim_invariance_check, evaluate, parse, BisimOptions, FormulaError, Model};
use modal_duality::frame::classify_morphism;
use modal_duality::json::{parse_document, Document, FrameJson, JsonError, SpaceJson, ValuationJson, ValuationPairJson};
use modal_duality::omega::omega_class_report;
use modal_duality::points::{build_point_space_with, PruneStrategy};
use modal_duality::space::classify_space_morphism;
use modal_duality::sweep::{run_sweep, SweepConfig};
use modal_duality::{omega_space, ConstructionMode, Exec, ModalFrame, RelationalSpace};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Check, Cli, Command, SweepArgs};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn document(path: &Path) -> Result<Document> {
    parse_document(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn frame(path: &Path) -> Result<ModalFrame> {
    match document(path)? {
        Document::Frame(f) => f.to_frame().with_context(|| format!("loading {}", path.display())),
        other => bail!("{} is a {} file, expected a frame", path.display(), other.kind()),
    }
}

fn space(path: &Path) -> Result<RelationalSpace> {
    match document(path)? {
        Document::Space(s) => s.to_space().with_context(|| format!("loading {}", path.display())),
        other => bail!("{} is a {} file, expected a space", path.display(), other.kind()),
    }
}

fn stem(path: &Path) -> String {
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    name.split('.').next().unwrap_or_default().to_string()
}

fn exec(sequential: bool) -> Exec {
    if sequential {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Prints the verdict and returns whether it passed.
struct Out {
    human: bool,
}

impl Out {
    fn emit(&self, value: &impl Serialize, prose: impl FnOnce() -> String, pass: bool) -> Result<bool> {
        if self.human {
            println!("{}", prose());
            println!("{}", if pass { "PASS" } else { "FAIL" });
        } else {
            println!("{}", serde_json::to_string_pretty(value)?);
        }
        Ok(pass)
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn run(cli: Cli) -> Result<bool> {
    let out = Out { human: cli.human };
    match cli.command {
        Command::Validate { file, source, target } => validate(&out, &file, source.as_deref(), target.as_deref()),
        Command::Omega { space: path, emit } => {
            let x = space(&path)?;
            let frame = omega_space(&x);
            let report = omega_class_report(&x);
            let frame_json = FrameJson::from_frame(&frame);
            if let Some(p) = emit {
                write_json(&p, &frame_json)?;
            }
            let pass = report.all_hold();
            out.emit(
                &json!({ "frame": frame_json, "report": report }),
                || {
                    let mut s = format!("Omega of {}: {} opens", path.display(), frame.lattice.len());
                    for i in &report.implications {
                        s += &format!("\n  {} => {}: {}", i.premise, i.conclusion, if i.ok() { "ok" } else { "VIOLATED" });
                    }
                    s
                },
                pass,
            )
        }
        Command::Points { frame: path, mode, emit, trace_pruning } => {
            let f = frame(&path)?;
            let ps = build_point_space_with(&f, mode, PruneStrategy::Worklist);
            let l = &f.lattice;
            let space_json = SpaceJson::from_space(&ps.space);
            if let Some(p) = emit {
                write_json(&p, &space_json)?;
            }
            let phi: BTreeMap<&str, Vec<String>> =
                l.elements().map(|c| (l.name(c), ps.space.set_names(ps.phi_set(c)))).collect();
            let mut value = json!({
                "mode": mode,
                "prepoints": ps.candidates.len(),
                "points": ps.space.names(),
                "space": space_json,
                "phi": phi,
            });
            if trace_pruning {
                let trace: Vec<Value> = ps
                    .trace
                    .iter()
                    .map(|e| {
                        json!({
                            "prepoint": ps.candidates.prepoints[e.candidate].display(l).to_string(),
                            "witness": l.name(e.witness),
                            "condition": e.condition.to_string(),
                            "round": e.round,
                        })
                    })
                    .collect();
                value["trace"] = Value::Array(trace);
            }
            out.emit(
                &value,
                || {
                    let mut s = format!(
                        "{mode}: {} pre-points, {} points",
                        ps.candidates.len(),
                        ps.len()
                    );
                    for name in ps.space.names() {
                        s += &format!("\n  {name}");
                    }
                    if trace_pruning {
                        for e in &ps.trace {
                            s += &format!(
                                "\n  deleted {} at c = {} ({})",
                                ps.candidates.prepoints[e.candidate].display(l),
                                l.name(e.witness),
                                e.condition
                            );
                        }
                    }
                    s
                },
                true,
            )
        }
        Command::Check(check) => run_check(&out, check),
        Command::Modelcheck { space: path, valuation, formula, point, no_imp } => {
            let x = space(&path)?;
            let v: ValuationJson = serde_json::from_str(&read(&valuation)?).context("parsing valuation")?;
            let model = Model::from_names(&x, &v)?;
            let f = parse(&formula)?;
            if no_imp && f.uses_implication() {
                return Err(FormulaError::ImplicationDisabled.into());
            }
            let open = evaluate(&model, &f)?;
            let names = x.set_names(&open);
            let holds = point.as_deref().map(|p| x.point_index(p).map(|i| open.contains(i))).transpose()?;
            out.emit(
                &json!({ "formula": f.to_string(), "extension": names, "point": point, "holds": holds }),
                || match (&point, holds) {
                    (Some(p), Some(h)) => format!("{p} {} {f}", if h { "satisfies" } else { "does not satisfy" }),
                    _ => format!("[[{f}]] = {}", x.show_set(&open)),
                },
                holds.unwrap_or(true),
            )
        }
        Command::Bisim { source, target, map, valuations, depth, no_imp } => {
            let (sx, tx) = (space(&source)?, space(&target)?);
            let m = match document(&map)? {
                Document::Map(m) => m.space_map(&sx, &tx)?,
                other => bail!("{} is a {} file, expected a map", map.display(), other.kind()),
            };
            let v: ValuationPairJson = serde_json::from_str(&read(&valuations)?).context("parsing valuations")?;
            let src = Model::from_names(&sx, &v.source)?;
            let tgt = Model::from_names(&tx, &v.target)?;
            let verdict = bisim_invariance_check(&src, &tgt, &m, depth, BisimOptions { implication: !no_imp })?;
            let pass = verdict.pass;
            out.emit(
                &verdict,
                || match &verdict.counterexample {
                    None => format!("{} distinct formulas up to depth {depth} transfer along the map", verdict.formulas),
                    Some(c) => format!("counterexample: {} at {}", c.formula, c.point),
                },
                pass,
            )
        }
        Command::Idl { frame: path, emit } => {
            let f = frame(&path)?;
            let idl = ideal_completion(&f);
            let frame_json = FrameJson::from_frame(&idl.frame);
            if let Some(p) = emit {
                write_json(&p, &frame_json)?;
            }
            let unit: BTreeMap<&str, &str> =
                f.lattice.elements().map(|a| (f.lattice.name(a), idl.frame.lattice.name(idl.unit[a]))).collect();
            let pass = idl.modally_spectral && idl.unit_class.is_box_strict() && idl.unit_class.is_diamond_strict() && idl.unit_is_bijective;
            out.emit(
                &json!({
                    "frame": frame_json,
                    "unit": unit,
                    "unit_class": idl.unit_class,
                    "unit_is_bijective": idl.unit_is_bijective,
                    "modally_spectral": idl.modally_spectral,
                }),
                || {
                    format!(
                        "{} ideals; unit {}; bijective {}; modally spectral {}",
                        idl.frame.lattice.len(),
                        idl.unit_class.name(),
                        yes(idl.unit_is_bijective),
                        yes(idl.modally_spectral)
                    )
                },
                pass,
            )
        }
        Command::Sweep(args) => sweep(&out, args),
    }
}

fn validate(out: &Out, file: &Path, source: Option<&Path>, target: Option<&Path>) -> Result<bool> {
    let doc = document(file)?;
    let kind = doc.kind();
    let structural = |e: JsonError| -> Result<bool> {
        match e {
            JsonError::Parse(_) | JsonError::Version(_) | JsonError::WrongKind { .. } => Err(e.into()),
            e => {
                let msg = e.to_string();
                out.emit(&json!({ "kind": kind, "valid": false, "error": msg }), || format!("invalid {kind}: {msg}"), false)
            }
        }
    };
    match doc {
        Document::Lattice(j) => match j.to_lattice() {
            Ok(l) => {
                let chars: Vec<&str> = l.characters().iter().map(|p| l.name(p.prime)).collect();
                out.emit(
                    &json!({ "kind": kind, "valid": true, "elements": l.len(), "character_primes": chars }),
                    || format!("distributive lattice with {} elements and {} characters", l.len(), chars.len()),
                    true,
                )
            }
            Err(e) => structural(e),
        },
        Document::Frame(j) => match j.to_frame() {
            Ok(f) => {
                let class = f.classify();
                out.emit(
                    &json!({ "kind": kind, "valid": true, "elements": f.lattice.len(), "class": class }),
                    || {
                        format!(
                            "modal frame on {} elements; lower {}, convex {}, serial {}, equivalence {}",
                            f.lattice.len(),
                            yes(class.lower),
                            yes(class.convex),
                            yes(class.serial),
                            yes(class.equivalence)
                        )
                    },
                    true,
                )
            }
            Err(e) => structural(e),
        },
        Document::Space(j) => match j.to_space() {
            Ok(x) => {
                let class = x.classify();
                out.emit(
                    &json!({ "kind": kind, "valid": true, "points": x.len(), "opens": x.opens().len(), "class": class }),
                    || format!("relational space with {} points and {} opens; {class:?}", x.len(), x.opens().len()),
                    true,
                )
            }
            Err(e) => structural(e),
        },
        Document::Map(m) => {
            let (Some(s), Some(t)) = (source, target) else {
                bail!("validating a map needs --source and --target");
            };
            match (document(s)?, document(t)?) {
                (Document::Space(a), Document::Space(b)) => {
                    let (a, b) = (a.to_space()?, b.to_space()?);
                    let map = match m.space_map(&a, &b) {
                        Ok(map) => map,
                        Err(e) => return structural(e),
                    };
                    let report = classify_space_morphism(&a, &b, &map)?;
                    let pass = report.is_continuous();
                    out.emit(
                        &json!({ "kind": "space-map", "valid": pass, "report": report }),
                        || format!("space map: {:?}, open {}", report.level, yes(report.open_map)),
                        pass,
                    )
                }
                (Document::Frame(a), Document::Frame(b)) => {
                    let (a, b) = (a.to_frame()?, b.to_frame()?);
                    let map = match m.frame_map(&a.lattice, &b.lattice) {
                        Ok(map) => map,
                        Err(e) => return structural(e),
                    };
                    let class = classify_morphism(&a, &b, &map);
                    let pass = class.is_morphism();
                    out.emit(
                        &json!({ "kind": "frame-map", "valid": pass, "class": class }),
                        || format!("frame map: {}", class.name()),
                        pass,
                    )
                }
                _ => bail!("--source and --target must both be frames or both be spaces"),
            }
        }
    }
}

fn run_check(out: &Out, check: Check) -> Result<bool> {
    match check {
        Check::Spatial { frame: path, mode } => {
            let v = check_spatial(&frame(&path)?, mode);
            let pass = v.isomorphism;
            out.emit(
                &v,
                || {
                    format!(
                        "{mode}: {} points; phi injective {}, surjective {}, {} {}",
                        v.points,
                        yes(v.injective),
                        yes(v.surjective),
                        if v.box_strict { "box-strict" } else { "not box-strict" },
                        if v.diamond_strict { "diamond-strict" } else { "not diamond-strict" }
                    )
                },
                pass,
            )
        }
        Check::Sober { space: path, mode } => {
            let v = check_sober(&space(&path)?, mode);
            let pass = v.isomorphism;
            out.emit(
                &v,
                || {
                    format!(
                        "{mode}: {} points, {} constructed; psi injective {}, isomorphism {}",
                        v.points,
                        v.constructed_points,
                        yes(v.injective),
                        yes(v.isomorphism)
                    )
                },
                pass,
            )
        }
        Check::Triangles { file, mode } => {
            let v = match document(&file)? {
                Document::Frame(f) => check_frame_triangle(&f.to_frame()?, mode),
                Document::Space(s) => check_space_triangle(&s.to_space()?, mode),
                other => bail!("triangles need a frame or a space, got a {}", other.kind()),
            };
            let pass = v.holds;
            out.emit(&v, || format!("{mode}: triangle identity {}", if pass { "holds" } else { "fails" }), pass)
        }
        Check::Adjunction { frame: fpath, space: spath, mode, sequential } => {
            let v = check_adjunction_bijection(&frame(&fpath)?, &space(&spath)?, mode, exec(sequential));
            if let Some(e) = &v.error {
                bail!("{e}");
            }
            let pass = v.bijection;
            out.emit(
                &v,
                || {
                    format!(
                        "{mode}: {} frame maps, {} space maps; applicable {}, bijection {}",
                        v.frame_homs,
                        v.space_homs,
                        yes(v.applicable),
                        yes(v.bijection)
                    )
                },
                pass,
            )
        }
        Check::Duality { files, mode, sequential } => {
            let mut frames = Vec::new();
            let mut spaces = Vec::new();
            for f in &files {
                match document(f)? {
                    Document::Frame(j) => frames.push((stem(f), j.to_frame()?)),
                    Document::Space(j) => spaces.push((stem(f), j.to_space()?)),
                    other => bail!("{} is a {} file; duality takes frames and spaces", f.display(), other.kind()),
                }
            }
            let r = duality_report(&frames, &spaces, mode, exec(sequential));
            let pass = r.pass;
            out.emit(
                &r,
                || {
                    let mut s = format!("{mode}:");
                    for f in &r.frames {
                        s += &format!("\n  frame {}: spatial {}", f.name, yes(f.verdict.isomorphism));
                    }
                    for x in &r.spaces {
                        s += &format!("\n  space {}: sober {}", x.name, yes(x.verdict.isomorphism));
                    }
                    s
                },
                pass,
            )
        }
        Check::Correspondence { file, mode } => match document(&file)? {
            Document::Frame(j) => {
                let Some(mode) = mode else { bail!("correspondence for a frame needs --mode") };
                let r = correspondence_report(&j.to_frame()?, mode);
                let pass = r.pass;
                out.emit(
                    &r,
                    || {
                        let mut s = format!("{mode}:");
                        for row in &r.rows {
                            s += &format!(
                                "\n  {}: applicable {}, axioms {}, relation {}",
                                row.property,
                                yes(row.applicable),
                                yes(row.frame_satisfies),
                                yes(row.relation_has)
                            );
                        }
                        s
                    },
                    pass,
                )
            }
            Document::Space(j) => {
                let r = space_correspondence_report(&j.to_space()?);
                let pass = r.all_hold();
                out.emit(&r, || format!("{} implications checked", r.implications.len()), pass)
            }
            other => bail!("correspondence needs a frame or a space, got a {}", other.kind()),
        },
    }
}

fn sweep(out: &Out, args: SweepArgs) -> Result<bool> {
    let config = SweepConfig {
        max_lattice: args.max_lattice,
        max_points: (!args.no_spaces).then_some(args.max_points),
        modes: if args.modes.is_empty() { ConstructionMode::ALL.to_vec() } else { args.modes },
        up_to_iso: args.up_to_iso,
        exec: exec(args.sequential),
    };
    let r = run_sweep(&config)?;
    let pass = r.pass;
    out.emit(
        &r,
        || {
            let mut s = format!("{} lattices, {} frames, {} spaces", r.lattices, r.frames, r.spaces);
            for suite in &r.suites {
                s += &format!(
                    "\n  {:?}: {} checked, {} violations{}",
                    suite.suite,
                    suite.checked,
                    suite.violations,
                    if suite.gating { "" } else { " (not gating)" }
                );
            }
            s
        },
        pass,
    )
}
