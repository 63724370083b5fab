//! Command-line front door for the Legendrian contact homology toolkit.
//!
//! Exit codes: 0 on success, 1 when a verification finds a mathematical
//! witness (failed identity, non-chain-map, ...), 2 on input errors.

mod input;
mod report;

use std::collections::BTreeMap;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use lch_core::augcat::{self, AInfPolicy};
use lch_core::augment;
use lch_core::cobord;
use lch_core::cone::{self, CthulhuData};
use lch_core::dga::Augmentation;
use lch_core::linhom::{self, poincare_polynomial, FillabilityReport};

use input::{degree_zero_limit, resolve_morphism, resolve_target};

#[derive(Parser)]
#[command(
    name = "lch",
    about = "Chekanov-Eliashberg DGAs, augmentations and linearized contact homology over F2",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the Dga of a plat front and emit its canonical JSON.
    Dga {
        /// A .plat file or library:<id>.
        target: String,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Enumerate the augmentations of a Dga.
    Augs {
        /// A Dga JSON file, .plat file or library:<id>.
        target: String,
        /// Use the exhaustive assignment search instead of backtracking.
        #[arg(long)]
        brute_force: bool,
    },
    /// Linearized or bilinearized homology dimensions for one augmentation
    /// pair.
    Homology {
        target: String,
        /// Index of the (first) augmentation, in enumeration order.
        #[arg(long)]
        aug: usize,
        /// Index of the second augmentation; defaults to --aug.
        #[arg(long)]
        aug2: Option<usize>,
    },
    /// Evaluate one A-infinity composition map.
    Mu {
        target: String,
        /// Arity k of the map.
        #[arg(long)]
        k: usize,
        /// Augmentation indices e_{k+1},...,e_1, comma separated.
        #[arg(long, value_delimiter = ',')]
        augs: Vec<usize>,
        /// Input chords b_k,...,b_1, comma separated.
        #[arg(long, value_delimiter = ',')]
        inputs: Vec<String>,
    },
    /// Verify the A-infinity relations over all augmentation tuples.
    VerifyAinf {
        target: String,
        /// Largest arity to check.
        #[arg(long, default_value_t = 4)]
        max_k: usize,
        /// Seed for the sampled tuples above the exhaustive arities.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Necessary-condition fillability report per augmentation.
    FillReport {
        target: String,
        /// Emit JSON instead of the table.
        #[arg(long)]
        json: bool,
    },
    /// Verify or apply a DGA morphism.
    Morphism {
        #[command(subcommand)]
        action: MorphismAction,
    },
    /// Verify the identities of a three-block cobordism-pair complex.
    Cthulhu {
        #[command(subcommand)]
        action: CthulhuAction,
    },
    /// Full invariant dossier for one target.
    Report { target: String },
}

#[derive(Args)]
struct MorphismTarget {
    /// Morphism JSON file ({"source": ..., "target": ..., "map": {...}}).
    file: String,
}

#[derive(Subcommand)]
enum MorphismAction {
    /// Check the degree and chain-map axioms.
    Verify(MorphismTarget),
    /// Pull a target augmentation back to the source.
    Pullback {
        #[command(flatten)]
        target: MorphismTarget,
        /// Index of the target augmentation.
        #[arg(long)]
        aug: usize,
    },
    /// The induced chain map of bilinearized complexes.
    Bilinearize {
        #[command(flatten)]
        target: MorphismTarget,
        /// Index of the first target augmentation.
        #[arg(long)]
        aug: usize,
        /// Index of the second target augmentation; defaults to --aug.
        #[arg(long)]
        aug2: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CthulhuAction {
    Verify {
        /// Three-block complex JSON file.
        file: String,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    let limit = degree_zero_limit()?;
    match cli.command {
        Command::Dga { target, out } => {
            let resolved = resolve_target(&target)?;
            if resolved.plat.is_none() {
                return Err(anyhow!("{target} is already a Dga; pass a .plat file"));
            }
            let json = resolved.dga.to_json_string();
            match out {
                Some(path) => std::fs::write(&path, json + "\n")
                    .with_context(|| format!("writing {path}"))?,
                None => println!("{json}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Augs {
            target,
            brute_force,
        } => {
            let resolved = resolve_target(&target)?;
            let set = if brute_force {
                augment::brute_force_augmentations(&resolved.dga, limit)?
            } else {
                augment::enumerate_augmentations(&resolved.dga, limit)?
            };
            let rendered: Vec<BTreeMap<String, u8>> =
                set.augs.iter().map(|e| e.to_map(&resolved.dga)).collect();
            let doc = serde_json::json!({
                "dga_hash": set.dga_hash,
                "augmentations": rendered,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Homology { target, aug, aug2 } => {
            let resolved = resolve_target(&target)?;
            let augs = augment::enumerate_augmentations(&resolved.dga, limit)?.augs;
            let e1 = pick(&augs, aug)?;
            let e2 = pick(&augs, aug2.unwrap_or(aug))?;
            let complex = linhom::bilinearized_boundary(&resolved.dga, e1, e2)?;
            let dims = complex.homology_dims();
            let doc = serde_json::json!({
                "dims": dims
                    .iter()
                    .map(|(k, v)| (k.to_string(), *v))
                    .collect::<BTreeMap<String, usize>>(),
                "poincare": poincare_polynomial(&dims).to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Mu {
            target,
            k,
            augs,
            inputs,
        } => {
            let resolved = resolve_target(&target)?;
            if inputs.len() != k {
                return Err(anyhow!("--inputs must list exactly k = {k} chords"));
            }
            if augs.len() != k + 1 {
                return Err(anyhow!("--augs must list exactly k + 1 = {} indices", k + 1));
            }
            let all = augment::enumerate_augmentations(&resolved.dga, limit)?.augs;
            let chosen: Vec<&Augmentation> = augs
                .iter()
                .map(|&i| pick(&all, i))
                .collect::<Result<_>>()?;
            let input_refs: Vec<&str> = inputs.iter().map(String::as_str).collect();
            let result = augcat::mu(&resolved.dga, &chosen, &input_refs)?;
            let chords: Vec<String> = result
                .words()
                .map(|w| w.letters().collect::<Vec<_>>().join(""))
                .collect();
            let doc = serde_json::json!({
                "k": k,
                "augs": augs,
                "inputs": inputs,
                "result": chords,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyAinf {
            target,
            max_k,
            seed,
        } => {
            let resolved = resolve_target(&target)?;
            let augs = augment::enumerate_augmentations(&resolved.dga, limit)?.augs;
            if augs.is_empty() {
                println!("no augmentations: relations hold vacuously");
                return Ok(ExitCode::SUCCESS);
            }
            let policy = AInfPolicy {
                seed,
                ..AInfPolicy::default()
            };
            let report = augcat::verify_a_infinity(&resolved.dga, &augs, max_k, policy)?;
            for (arity, tuples, exhaustive) in &report.checked {
                let mode = if *exhaustive { "exhaustive" } else { "sampled" };
                println!("arity {arity}: {tuples} augmentation tuples ({mode}): PASS");
            }
            if let Some(w) = &report.witness {
                println!(
                    "arity {}: FAIL at tuple {:?}, output {}, inputs ({})",
                    w.arity,
                    w.aug_tuple,
                    w.output,
                    w.inputs.join(", ")
                );
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::FillReport { target, json } => {
            let resolved = resolve_target(&target)?;
            let report = linhom::fillability_report(&resolved.dga, limit)?;
            if json {
                let doc = match &report {
                    FillabilityReport::NoAugmentation => serde_json::json!({
                        "verdict": "no augmentation: not exactly fillable",
                    }),
                    FillabilityReport::PerAugmentation(vs) => serde_json::json!({
                        "augmentations": vs.iter().map(|v| serde_json::json!({
                            "pass": v.pass,
                            "genus": v.genus,
                            "reasons": v.reasons,
                            "dims": v.dims.iter()
                                .map(|(k, c)| (k.to_string(), *c))
                                .collect::<BTreeMap<String, usize>>(),
                        })).collect::<Vec<_>>(),
                    }),
                };
                println!("{}", serde_json::to_string_pretty(&doc)?);
            } else {
                match &report {
                    FillabilityReport::NoAugmentation => {
                        println!("no augmentation: not exactly fillable");
                    }
                    FillabilityReport::PerAugmentation(vs) => {
                        println!("{:<5} {:<28} {:<7} verdict", "aug", "dims", "genus");
                        for (i, v) in vs.iter().enumerate() {
                            let dims: Vec<String> = v
                                .dims
                                .iter()
                                .map(|(k, c)| format!("{k}:{c}"))
                                .collect();
                            let genus = v
                                .genus
                                .map(|g| g.to_string())
                                .unwrap_or_else(|| "-".to_string());
                            let verdict = if v.pass {
                                "necessary conditions hold".to_string()
                            } else {
                                format!("FAIL: {}", v.reasons.join("; "))
                            };
                            println!(
                                "{:<5} {:<28} {:<7} {verdict}",
                                format!("#{i}"),
                                format!("{{{}}}", dims.join(", ")),
                                genus
                            );
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Morphism { action } => morphism(action, limit),
        Command::Cthulhu {
            action: CthulhuAction::Verify { file },
        } => {
            let text =
                std::fs::read_to_string(&file).with_context(|| format!("reading {file}"))?;
            let data = CthulhuData::from_json_str(&text)?;
            let r = cone::assemble_cthulhu(&data)?;
            let line = |name: &str, ok_flag: bool| {
                println!("{name}: {}", if ok_flag { "PASS" } else { "FAIL" });
            };
            line("subcomplex (d++ squared = 0)", r.subcomplex);
            line("quotient (d_-inf squared = 0)", r.quotient);
            line("F1 chain map (*_{+0} = 0)", r.star_plus_zero);
            line("F1 chain map (*_{+-} = 0)", r.star_plus_minus);
            line("uniform degree +1", r.degree_one);
            line("total differential squared = 0", r.total_square_zero);
            match r.acyclic {
                Some(a) => println!("acyclic: {}", if a { "yes" } else { "no" }),
                None => println!("acyclic: not computed (differential invalid)"),
            }
            let ok = r.all_identities() && r.degree_one && r.total_square_zero;
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Report { target } => {
            let resolved = resolve_target(&target)?;
            let (text, ok) = report::render(&resolved, limit)?;
            print!("{text}");
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn pick(augs: &[Augmentation], i: usize) -> Result<&Augmentation> {
    augs.get(i).ok_or_else(|| {
        anyhow!(
            "augmentation index {i} out of range; the Dga has {} augmentations",
            augs.len()
        )
    })
}

fn morphism(action: MorphismAction, limit: usize) -> Result<ExitCode> {
    match action {
        MorphismAction::Verify(t) => {
            let m = resolve_morphism(&t.file)?;
            match m.verify_chain_map() {
                Ok(()) => {
                    println!("chain map: PASS");
                    Ok(ExitCode::SUCCESS)
                }
                Err(w) => {
                    println!("chain map: FAIL ({w})");
                    Ok(ExitCode::from(1))
                }
            }
        }
        MorphismAction::Pullback { target: t, aug } => {
            let m = resolve_morphism(&t.file)?;
            let target_augs = augment::enumerate_augmentations(&m.target, limit)?.augs;
            let e = pick(&target_augs, aug)?;
            let pulled = cobord::pullback_augmentation(&m, e)?;
            let doc = serde_json::json!({
                "aug": aug,
                "pullback": pulled.to_map(&m.source),
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(ExitCode::SUCCESS)
        }
        MorphismAction::Bilinearize {
            target: t,
            aug,
            aug2,
        } => {
            let m = resolve_morphism(&t.file)?;
            let target_augs = augment::enumerate_augmentations(&m.target, limit)?.augs;
            let e1 = pick(&target_augs, aug)?;
            let e2 = pick(&target_augs, aug2.unwrap_or(aug))?;
            let f = cobord::bilinearized_map(&m, e1, e2)?;
            let basis = |c: &lch_core::linhom::GradedComplexF2| -> Vec<serde_json::Value> {
                c.basis()
                    .iter()
                    .map(|(n, d)| serde_json::json!({"name": n, "degree": d}))
                    .collect()
            };
            let doc = serde_json::json!({
                "source_basis": basis(&f.source),
                "target_basis": basis(&f.target),
                "entries": f.matrix.entries(),
                "chain_map": true,
                "homology_iso": cone::homology_map_bijective(&f),
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}
