//! Command dispatch behind the `virteq` binary. Boolean queries exit 0 for
//! yes and 1 for a well-posed no; input and validation problems exit 2; an
//! exceeded enumeration budget exits 3.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::functor::FunctorMap;
use crate::io::{
    category_to_doc, functor_to_doc, kan_result_to_json, module_to_doc, parse_input,
    to_canonical_json, Workspace,
};
use crate::derivator::beck_chevalley_holds;
use crate::kan::{
    find_right_adjoint, is_exact_square, is_final_or_initial, is_fully_faithful, pointwise_kan,
    square_canonical_cell, Direction, Square, Which,
};
use crate::testkit::{run_all_suites, Catalog};

#[derive(Parser, Debug)]
#[command(name = "virteq", version, about = "profunctor calculus over finite categories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Workspace files to load (repeatable)
    #[arg(short, long, global = true)]
    pub input: Vec<PathBuf>,
    /// Write construction output to a file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Machine-readable report
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and validate the workspace
    Validate,
    /// Build the comma category bundle of a cospan `f g`
    Comma { f: String, g: String },
    /// Tensor two modules sharing a middle category
    Tensor { e: String, f: String },
    /// Right extension of module `f` along module `k`
    Rext { k: String, f: String },
    /// Pointwise right Kan extension of functor `f` along functor `k`
    Ran { k: String, f: String },
    /// Pointwise left Kan extension of functor `f` along functor `k`
    Lan { k: String, f: String },
    /// Is the named square exact?
    Exact { square: String },
    /// Is the named functor final?
    Final { k: String },
    /// Is the named functor initial?
    Initial { k: String },
    /// Is the named functor fully faithful?
    Ff { k: String },
    /// Search for a right adjoint of the named functor
    Adjoint { f: String },
    /// Beck-Chevalley for the comma square of cospan `f g` at target `e`
    #[command(name = "beck-chevalley")]
    BeckChevalley { f: String, g: String, e: String },
    /// Derivator axiom report for target `e` against probe functors
    Derivator { e: String, probes: Vec<String> },
    /// Run the randomized oracle suites
    #[command(name = "check-equipment")]
    CheckEquipment {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        size: usize,
    },
}

/// Run a parsed command line; returns the process exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match dispatch(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(cli: &Cli, stdout: &mut dyn Write, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io {
            path: path.display().to_string(),
            source: e,
        }),
        None => {
            stdout.write_all(text.as_bytes()).expect("stdout");
            Ok(())
        }
    }
}

fn load(cli: &Cli) -> Result<Workspace> {
    parse_input(&cli.input)
}

fn dispatch(cli: &Cli, stdout: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Validate => {
            let ws = load(cli)?;
            let summary = serde_json::json!({
                "categories": ws.categories.len(),
                "functors": ws.functors.len(),
                "modules": ws.modules.len(),
                "nats": ws.nats.len(),
                "squares": ws.squares.len(),
            });
            if cli.json {
                emit(cli, stdout, &to_canonical_json(&summary))?;
            } else {
                emit(
                    cli,
                    stdout,
                    &format!(
                        "ok: {} categories, {} functors, {} modules, {} nats, {} squares\n",
                        ws.categories.len(),
                        ws.functors.len(),
                        ws.modules.len(),
                        ws.nats.len(),
                        ws.squares.len()
                    ),
                )?;
            }
            Ok(0)
        }
        Command::Comma { f, g } => {
            let ws = load(cli)?;
            let ff = ws.functor(f)?;
            let gg = ws.functor(g)?;
            let c = crate::comma::comma(ff, gg)?;
            let name = format!("comma({f},{g})");
            let out = serde_json::json!({
                "category": category_to_doc(&name, &c.cat),
                "p1": functor_to_doc("p1", &name, g, &c.p1),
                "p0": functor_to_doc("p0", &name, f, &c.p0),
                "phi": c.phi.components,
            });
            emit(cli, stdout, &to_canonical_json(&out))?;
            Ok(0)
        }
        Command::Tensor { e, f } => {
            let ws = load(cli)?;
            let em = ws.module(e)?;
            let fm = ws.module(f)?;
            let (t, cell) = crate::tensor::tensor(em, fm)?;
            let out = serde_json::json!({
                "module": module_to_doc(&format!("tensor({e},{f})"), "", "", &t),
                "cell": cell_components_json(&cell),
            });
            emit(cli, stdout, &to_canonical_json(&out))?;
            Ok(0)
        }
        Command::Rext { k, f } => {
            let ws = load(cli)?;
            let km = ws.module(k)?;
            let fm = ws.module(f)?;
            let (r, cell) = crate::tensor::right_extension_module(km, fm)?;
            let out = serde_json::json!({
                "module": module_to_doc(&format!("rext({k},{f})"), "", "", &r),
                "cell": cell_components_json(&cell),
            });
            emit(cli, stdout, &to_canonical_json(&out))?;
            Ok(0)
        }
        Command::Ran { k, f } | Command::Lan { k, f } => {
            let dir = match cli.command {
                Command::Ran { .. } => Direction::Right,
                _ => Direction::Left,
            };
            let ws = load(cli)?;
            let kf = ws.functor(k)?;
            let ff = ws.functor(f)?;
            match pointwise_kan(kf, ff, dir)? {
                Some(kan) => {
                    let out = kan_result_to_json(("", ""), &kan);
                    emit(cli, stdout, &to_canonical_json(&out))?;
                    Ok(0)
                }
                None => {
                    emit(cli, stdout, "absent: a required (co)limit is missing\n")?;
                    Ok(1)
                }
            }
        }
        Command::Exact { square } => {
            let ws = load(cli)?;
            let sq = ws.square(square)?;
            let exact = is_exact_square(sq)?;
            if cli.json {
                emit(cli, stdout, &to_canonical_json(&serde_json::json!({"exact": exact})))?;
            } else if exact {
                emit(cli, stdout, "exact: true\n")?;
            } else {
                let cell = square_canonical_cell(sq)?;
                let witness = exactness_witness(&cell);
                emit(cli, stdout, &format!("exact: false ({witness})\n"))?;
            }
            Ok(if exact { 0 } else { 1 })
        }
        Command::Final { k } | Command::Initial { k } => {
            let which = match cli.command {
                Command::Final { .. } => Which::Final,
                _ => Which::Initial,
            };
            let ws = load(cli)?;
            let kf = ws.functor(k)?;
            let (yes, witness) = is_final_or_initial(kf, which)?;
            let label = match which {
                Which::Final => "final",
                Which::Initial => "initial",
            };
            if cli.json {
                emit(
                    cli,
                    stdout,
                    &to_canonical_json(&serde_json::json!({label: yes, "witness": witness})),
                )?;
            } else if yes {
                emit(cli, stdout, &format!("{label}: true\n"))?;
            } else {
                let w = witness.unwrap_or_default();
                let comma = match which {
                    Which::Final => format!("{w}|{k}"),
                    Which::Initial => format!("{k}|{w}"),
                };
                emit(
                    cli,
                    stdout,
                    &format!("{label}: false (comma {comma} is not connected)\n"),
                )?;
            }
            Ok(if yes { 0 } else { 1 })
        }
        Command::Ff { k } => {
            let ws = load(cli)?;
            let yes = is_fully_faithful(ws.functor(k)?)?;
            if cli.json {
                emit(cli, stdout, &to_canonical_json(&serde_json::json!({"fully_faithful": yes})))?;
            } else {
                emit(cli, stdout, &format!("fully-faithful: {yes}\n"))?;
            }
            Ok(if yes { 0 } else { 1 })
        }
        Command::Adjoint { f } => {
            let ws = load(cli)?;
            match find_right_adjoint(ws.functor(f)?)? {
                Some(adj) => {
                    let out = serde_json::json!({
                        "u": functor_to_doc("u", "", "", &adj.u),
                        "unit": adj.unit.components,
                        "counit": adj.counit.components,
                    });
                    emit(cli, stdout, &to_canonical_json(&out))?;
                    Ok(0)
                }
                None => {
                    emit(cli, stdout, "no right adjoint\n")?;
                    Ok(1)
                }
            }
        }
        Command::BeckChevalley { f, g, e } => {
            let ws = load(cli)?;
            let ff = ws.functor(f)?;
            let gg = ws.functor(g)?;
            let ee = ws.category(e)?;
            let (sq, _) = Square::comma_square(ff, gg)?;
            let holds = beck_chevalley_holds(&sq, ee)?;
            if cli.json {
                emit(cli, stdout, &to_canonical_json(&serde_json::json!({"beck_chevalley": holds})))?;
            } else {
                emit(cli, stdout, &format!("beck-chevalley: {holds}\n"))?;
            }
            Ok(if holds { 0 } else { 1 })
        }
        Command::Derivator { e, probes } => {
            let ws = load(cli)?;
            let ee = ws.category(e)?.clone();
            let probe_functors: Vec<FunctorMap> = probes
                .iter()
                .map(|p| ws.functor(p).cloned())
                .collect::<Result<_>>()?;
            let report = crate::derivator::derivator_checks(&ee, &probe_functors)?;
            if cli.json {
                let out = serde_json::json!({
                    "der1": report.der1,
                    "der2": report.der2,
                    "der3": report
                        .der3
                        .iter()
                        .map(|p| {
                            serde_json::json!({
                                "probe": p.probe,
                                "right_total": p.right_total,
                                "left_total": p.left_total,
                                "missing": p.missing,
                            })
                        })
                        .collect::<Vec<_>>(),
                    "der4": report.der4,
                    "der5": report.der5,
                    "pass": report.all_pass(),
                });
                emit(cli, stdout, &to_canonical_json(&out))?;
            } else {
                let mut text = String::new();
                text.push_str(&format!("Der1 (coproducts to products): {}\n", verdict(report.der1)));
                text.push_str(&format!("Der2 (pointwise isos detect isos): {}\n", verdict(report.der2)));
                for p in &report.der3 {
                    text.push_str(&format!(
                        "Der3 ({}): right {}, left {}\n",
                        p.probe,
                        verdict(p.right_total),
                        verdict(p.left_total)
                    ));
                    for m in &p.missing {
                        text.push_str(&format!("  missing: {m}\n"));
                    }
                }
                text.push_str(&format!("Der4 (Beck-Chevalley): {}\n", verdict(report.der4)));
                text.push_str(&format!("Der5 (arrow-category comparison): {}\n", verdict(report.der5)));
                emit(cli, stdout, &text)?;
            }
            Ok(if report.all_pass() { 0 } else { 1 })
        }
        Command::CheckEquipment { seed, size } => {
            let _ = Catalog::new()?;
            let reports = run_all_suites(*seed, *size)?;
            let all_pass = reports.iter().all(|r| r.pass);
            if cli.json {
                let out: Vec<serde_json::Value> = reports
                    .iter()
                    .map(|r| {
                        serde_json::json!({
                            "suite": r.suite,
                            "cases": r.cases,
                            "pass": r.pass,
                            "counterexample": r.counterexample,
                        })
                    })
                    .collect();
                emit(cli, stdout, &to_canonical_json(&serde_json::json!({"suites": out, "pass": all_pass})))?;
            } else {
                let mut text = String::new();
                for r in &reports {
                    text.push_str(&format!("{}: {} ({} cases)\n", r.suite, verdict(r.pass), r.cases));
                    if let Some(c) = &r.counterexample {
                        text.push_str(&format!("  counterexample: {c}\n"));
                    }
                }
                emit(cli, stdout, &text)?;
            }
            Ok(if all_pass { 0 } else { 1 })
        }
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn cell_components_json(cell: &crate::cell::Cell) -> serde_json::Value {
    let map: std::collections::BTreeMap<String, String> = cell
        .components
        .iter()
        .map(|((objs, elems), v)| {
            (format!("({})|({})", objs.join(","), elems.join(",")), v.clone())
        })
        .collect();
    serde_json::json!(map)
}

/// Name the first entry where the canonical comparison fails.
fn exactness_witness(cell: &crate::cell::Cell) -> String {
    use std::collections::BTreeMap;
    let mut tuple_counts: BTreeMap<(String, String), usize> = BTreeMap::new();
    for (objs, _) in cell.components.keys() {
        *tuple_counts
            .entry((objs.last().unwrap().clone(), objs[0].clone()))
            .or_default() += 1;
    }
    for b in cell.target.cod.objects() {
        for a in cell.target.dom.objects() {
            let classes = cell
                .components
                .iter()
                .filter(|((objs, _), _)| objs[0] == *a && objs.last().unwrap() == b)
                .map(|(_, v)| v.clone())
                .collect::<std::collections::BTreeSet<_>>()
                .len();
            let want = cell.target.entry(b, a).len();
            if classes != want {
                return format!("entry ({b},{a}): {classes} vs {want}");
            }
        }
    }
    "comparison fails off the image".into()
}
