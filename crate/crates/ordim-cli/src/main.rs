//! Command-line front end: generation of the named poset families, exact
//! dimension, realizer verification, the realizer-extension bounds, the
//! separator toolbox, and the diagonalization simulator.
//!
//! Exit codes: 0 success, 1 input error, 2 property violation, 3 budget
//! exhausted.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ordim::*;
use ordim_cli::docs::{
    read_json, write_json, DiagonalConfigDocument, InstanceDocument, PosetDocument,
    RealizerDocument,
};

#[derive(Parser)]
#[command(name = "ordim", version, about = "Finite poset dimension toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact dimension of a poset, with optional oracle cross-check.
    Dim {
        poset: PathBuf,
        /// Largest realizer size to try.
        #[arg(long, default_value_t = 16)]
        max_t: usize,
        /// Branch-node budget for the search.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        /// Cross-check against the brute-force oracle (posets up to 8 elements).
        #[arg(long)]
        oracle: bool,
        /// Write the witness realizer to this file.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Check that a realizer file realizes a poset file.
    Verify { poset: PathBuf, realizer: PathBuf },
    /// Extend a realizer of a subposet to the whole poset.
    Extend {
        #[arg(long, value_enum)]
        mode: ExtendMode,
        poset: PathBuf,
        /// Realizer of the poset minus the removed point or chains.
        realizer: PathBuf,
        /// Element removed in point mode (defaults to the document's marked point).
        #[arg(long)]
        point: Option<String>,
        /// Named chains to remove in the chain modes (defaults to all named chains).
        #[arg(long, value_delimiter = ',')]
        chains: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        /// Also report the level set whose marked pair is reversed at most
        /// this many times (requires level data in the poset document).
        #[arg(long)]
        separator_threshold: Option<usize>,
    },
    /// Generate the named posets and their companion files.
    Gen {
        #[command(subcommand)]
        target: GenTarget,
    },
    /// Separator sets, separator elements, and interval round trips.
    Separate {
        instances: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "minimal")]
        mode: ModeArg,
        /// Report which instances admit a separator element.
        #[arg(long)]
        elements: bool,
        /// Solve each instance through the interval embedding and back.
        #[arg(long)]
        xc1_roundtrip: bool,
    },
    /// Run the stage construction against a table of candidate programs.
    Diagonalize {
        config: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExtendMode {
    Point,
    IncomparableChains,
    Chains,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Minimal,
    Maximal,
}

impl From<ModeArg> for SeparatorMode {
    fn from(m: ModeArg) -> SeparatorMode {
        match m {
            ModeArg::Minimal => SeparatorMode::Minimal,
            ModeArg::Maximal => SeparatorMode::Maximal,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    SingleChain,
    ComparableChains,
    IncomparableColumns,
}

#[derive(Clone, Copy, ValueEnum)]
enum SharpnessArg {
    OneChain,
    TwoIncomparable,
    Singletons,
    TwoComparableF5,
    TwoComparableF6,
}

#[derive(Args)]
struct InjectionArgs {
    /// Levels hit by the first injection, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    first: Vec<usize>,
    /// Levels hit by the second injection, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    second: Vec<usize>,
    /// Number of levels.
    #[arg(long)]
    levels: usize,
}

impl InjectionArgs {
    fn pair(&self) -> InjectionPair {
        InjectionPair {
            first_values: self.first.clone(),
            second_values: self.second.clone(),
            level_bound: self.levels,
        }
    }
}

#[derive(Subcommand)]
enum GenTarget {
    /// Standard example of dimension n with its explicit realizer.
    Fn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Stacked level poset with copies of size k at the injected levels.
    Pk {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        injections: InjectionArgs,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Reversal scenario: poset, removal chains, and base realizer.
    Variant {
        #[arg(long, value_enum)]
        variant: VariantArg,
        /// Chain count for the comparable-chains / incomparable-columns variants.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        injections: InjectionArgs,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Sharpness fixture with its expected dimensions.
    Sharpness {
        #[arg(long, value_enum)]
        case: SharpnessArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Poset with a distinguished point built from separation instances.
    DbpReversal {
        instances: Vec<PathBuf>,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Random poset from forward pairs at the given density.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.35)]
        density: f64,
        #[arg(long, default_value_t = 20260811)]
        seed: u64,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

enum CliError {
    Input(anyhow::Error),
    Violation(String),
    Budget(String),
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Input(e)
    }
}

type CliResult = Result<(), CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(CliError::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Budget(msg)) => {
            eprintln!("budget: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Dim {
            poset,
            max_t,
            budget,
            oracle,
            witness_out,
        } => cmd_dim(&poset, max_t, budget, oracle, witness_out.as_deref()),
        Command::Verify { poset, realizer } => cmd_verify(&poset, &realizer),
        Command::Extend {
            mode,
            poset,
            realizer,
            point,
            chains,
            out,
            separator_threshold,
        } => cmd_extend(
            mode,
            &poset,
            &realizer,
            point,
            chains,
            &out,
            separator_threshold,
        ),
        Command::Gen { target } => cmd_gen(target),
        Command::Separate {
            instances,
            mode,
            elements,
            xc1_roundtrip,
        } => cmd_separate(&instances, mode.into(), elements, xc1_roundtrip),
        Command::Diagonalize { config, out_dir } => cmd_diagonalize(&config, &out_dir),
    }
}

fn load_poset(path: &Path) -> Result<(PosetDocument, Poset), CliError> {
    let doc: PosetDocument = read_json(path)?;
    let poset = doc.to_poset()?;
    Ok((doc, poset))
}

fn cmd_dim(
    poset_path: &Path,
    max_t: usize,
    budget: u64,
    oracle: bool,
    witness_out: Option<&Path>,
) -> CliResult {
    let (_, poset) = load_poset(poset_path)?;
    match dimension_exact(&poset, max_t, budget) {
        Ok(result) => {
            println!("dim {}", result.dim);
            println!("nodes {}", result.proof_of_lower.nodes);
            if oracle {
                match dimension_oracle(&poset) {
                    Ok(d) if d == result.dim => println!("oracle {d} (agrees)"),
                    Ok(d) => {
                        return Err(CliError::Violation(format!(
                            "oracle disagrees: search {} vs oracle {d}",
                            result.dim
                        )))
                    }
                    Err(e) => println!("oracle skipped ({e})"),
                }
            }
            if let Some(out) = witness_out {
                let doc = RealizerDocument::from_realizer(
                    &poset,
                    &result.witness,
                    Some(poset_path.display().to_string()),
                );
                write_json(out, &doc)?;
                println!("witness {}", out.display());
            }
            Ok(())
        }
        Err(DimensionError::BudgetExceeded {
            lower_bound,
            upper_bound,
            nodes,
        }) => {
            let upper = upper_bound
                .map(|u| u.to_string())
                .unwrap_or_else(|| "?".into());
            Err(CliError::Budget(format!(
                "exhausted after {nodes} nodes; {lower_bound} <= dim <= {upper}"
            )))
        }
        Err(e) => Err(CliError::Input(anyhow!("{e}"))),
    }
}

fn cmd_verify(poset_path: &Path, realizer_path: &Path) -> CliResult {
    let (_, poset) = load_poset(poset_path)?;
    let doc: RealizerDocument = read_json(realizer_path)?;
    let realizer = doc.to_realizer(&poset)?;
    match verify_realizer(&poset, &realizer) {
        Ok(RealizerVerdict::Realizes) => {
            println!("ok: {} extensions realize the poset", realizer.len());
            Ok(())
        }
        Ok(RealizerVerdict::Unreversed { earlier, later }) => Err(CliError::Violation(format!(
            "incomparable pair ({}, {}) is never reversed: every extension places {} before {}",
            poset.label(earlier),
            poset.label(later),
            poset.label(earlier),
            poset.label(later)
        ))),
        Err(DimensionError::NotAnExtension { ext, below, above }) => {
            Err(CliError::Violation(format!(
                "extension {ext} places {} above {}",
                poset.label(below),
                poset.label(above)
            )))
        }
        Err(e) => Err(CliError::Input(anyhow!("{e}"))),
    }
}

fn complement(n: usize, removed: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !removed.contains(i)).collect()
}

type ExtendFn = Box<dyn FnOnce(&Realizer) -> Result<Realizer, BoundsError>>;

fn cmd_extend(
    mode: ExtendMode,
    poset_path: &Path,
    realizer_path: &Path,
    point: Option<String>,
    chain_names: Vec<String>,
    out: &Path,
    separator_threshold: Option<usize>,
) -> CliResult {
    let (doc, poset) = load_poset(poset_path)?;
    let realizer_doc: RealizerDocument = read_json(realizer_path)?;

    let (removed, run): (Vec<usize>, ExtendFn) = match mode {
        ExtendMode::Point => {
            let label = point
                .or_else(|| doc.marked_point.clone())
                .ok_or_else(|| anyhow!("point mode needs --point or a marked point"))?;
            let x0 = poset
                .index_of(&label)
                .ok_or_else(|| anyhow!("point `{label}` is not an element"))?;
            let p = poset.clone();
            (vec![x0], Box::new(move |r| db_point(&p, x0, r)))
        }
        ExtendMode::IncomparableChains | ExtendMode::Chains => {
            let names: Vec<String> = if chain_names.is_empty() {
                doc.chains.keys().cloned().collect()
            } else {
                chain_names
            };
            if names.is_empty() {
                return Err(CliError::Input(anyhow!("no chains named or present")));
            }
            let mut chains = Vec::new();
            for name in &names {
                chains.push(doc.chain_indices(&poset, name)?);
            }
            let chains = ChainSet::new(&poset, chains).map_err(|e| anyhow!("{e}"))?;
            let removed = chains.union_sorted();
            let p = poset.clone();
            let incomparable = matches!(mode, ExtendMode::IncomparableChains);
            (
                removed,
                Box::new(move |r| {
                    if incomparable {
                        dbi(&p, &chains, r)
                    } else {
                        dbc(&p, &chains, r)
                    }
                }),
            )
        }
    };

    let keep = complement(poset.len(), &removed);
    let sub = poset.restrict(&keep);
    let base = realizer_doc.to_realizer(&sub)?;
    let extended = run(&base).map_err(|e| match e {
        BoundsError::InvalidRealizer | BoundsError::NotAnExtension => {
            CliError::Violation(format!("{e}"))
        }
        other => CliError::Input(anyhow!("{other}")),
    })?;
    println!("extensions {} -> {}", base.len(), extended.len());

    let out_doc =
        RealizerDocument::from_realizer(&poset, &extended, Some(poset_path.display().to_string()));
    write_json(out, &out_doc)?;
    println!("realizer {}", out.display());

    if let Some(threshold) = separator_threshold {
        let leveled = leveled_from_doc(&doc, &poset)?;
        let levels = separating_levels(&leveled, &extended, threshold)
            .map_err(|e| CliError::Violation(format!("{e}")))?;
        let rendered: Vec<String> = levels.iter().map(|l| l.to_string()).collect();
        println!("levels {{{}}}", rendered.join(", "));
    }
    Ok(())
}

/// Rebuild level data from a document; the per-level content is not needed
/// for separator extraction.
fn leveled_from_doc(doc: &PosetDocument, poset: &Poset) -> Result<LeveledPoset, CliError> {
    if doc.levels.is_empty() {
        return Err(CliError::Input(anyhow!(
            "poset document carries no level data"
        )));
    }
    let mut level = vec![0usize; poset.len()];
    for (label, &l) in &doc.levels {
        let idx = poset
            .index_of(label)
            .ok_or_else(|| anyhow!("level entry `{label}` is not an element"))?;
        level[idx] = l;
    }
    let count = level.iter().max().map_or(0, |&m| m + 1);
    for m in 0..count {
        for probe in ["x", "y"] {
            if poset.index_of(&format!("{probe}:{m}")).is_none() {
                return Err(CliError::Input(anyhow!(
                    "level {m} lacks its {probe} element"
                )));
            }
        }
    }
    Ok(LeveledPoset {
        poset: poset.clone(),
        level,
        meta: vec![LevelMeta::Plain; count],
    })
}

fn leveled_document(lp: &LeveledPoset) -> PosetDocument {
    let mut doc = PosetDocument::from_poset(&lp.poset);
    for (i, label) in lp.poset.labels().iter().enumerate() {
        doc.levels.insert(label.clone(), lp.level[i]);
    }
    doc
}

fn cmd_gen(target: GenTarget) -> CliResult {
    match target {
        GenTarget::Fn { n, out_dir } => {
            let (poset, realizer) = standard_example(n).map_err(|e| anyhow!("{e}"))?;
            let dir = ensure_dir(&out_dir)?;
            write_json(&dir.join("poset.json"), &PosetDocument::from_poset(&poset))?;
            write_json(
                &dir.join("realizer.json"),
                &RealizerDocument::from_realizer(&poset, &realizer, Some("poset.json".into())),
            )?;
            println!("standard example n={n}: poset.json realizer.json");
            Ok(())
        }
        GenTarget::Pk {
            k,
            injections,
            out_dir,
        } => {
            let lp = leveled_poset(k, &injections.pair()).map_err(|e| anyhow!("{e}"))?;
            let dir = ensure_dir(&out_dir)?;
            write_json(&dir.join("poset.json"), &leveled_document(&lp))?;
            println!(
                "level poset k={k}: poset.json ({} elements)",
                lp.poset.len()
            );
            Ok(())
        }
        GenTarget::Variant {
            variant,
            n,
            injections,
            out_dir,
        } => {
            let variant = match (variant, n) {
                (VariantArg::SingleChain, _) => ReversalVariant::SingleChain,
                (VariantArg::ComparableChains, Some(n)) => ReversalVariant::ComparableChains { n },
                (VariantArg::IncomparableColumns, Some(n)) => {
                    ReversalVariant::IncomparableColumns { n }
                }
                _ => return Err(CliError::Input(anyhow!("this variant needs --n"))),
            };
            let sc = reversal_scenario(variant, &injections.pair()).map_err(|e| anyhow!("{e}"))?;
            let dir = ensure_dir(&out_dir)?;
            let doc = leveled_document(&sc.leveled).with_chains(&sc.leveled.poset, &sc.chains);
            write_json(&dir.join("poset.json"), &doc)?;
            let removed = sc.chains.union_sorted();
            let keep = complement(sc.leveled.poset.len(), &removed);
            let sub = sc.leveled.poset.restrict(&keep);
            write_json(
                &dir.join("base-realizer.json"),
                &RealizerDocument::from_realizer(&sub, &sc.base, None),
            )?;
            println!(
                "reversal scenario: poset.json ({} elements, {} chains) base-realizer.json",
                sc.leveled.poset.len(),
                sc.chains.len()
            );
            Ok(())
        }
        GenTarget::Sharpness { case, n, out_dir } => {
            let case = match (case, n) {
                (SharpnessArg::OneChain, Some(n)) => SharpnessCase::OneChain { n },
                (SharpnessArg::TwoIncomparable, Some(n)) => SharpnessCase::TwoIncomparable { n },
                (SharpnessArg::Singletons, Some(n)) => SharpnessCase::Singletons { n },
                (SharpnessArg::TwoComparableF5, _) => SharpnessCase::TwoComparableF5,
                (SharpnessArg::TwoComparableF6, _) => SharpnessCase::TwoComparableF6,
                _ => return Err(CliError::Input(anyhow!("this case needs --n"))),
            };
            let fixture = sharpness_fixture(case).map_err(|e| anyhow!("{e}"))?;
            let dir = ensure_dir(&out_dir)?;
            let doc = PosetDocument::from_poset(&fixture.poset)
                .with_chains(&fixture.poset, &fixture.chains);
            write_json(&dir.join("poset.json"), &doc)?;
            println!(
                "sharpness fixture: poset.json; expected dim {} before, {} after removal",
                fixture.dim_before, fixture.dim_after
            );
            Ok(())
        }
        GenTarget::DbpReversal { instances, out_dir } => {
            if instances.is_empty() {
                return Err(CliError::Input(anyhow!("need at least one instance file")));
            }
            let mut insts = Vec::new();
            for path in &instances {
                let doc: InstanceDocument = read_json(path)?;
                insts.push(doc.to_instance()?.0);
            }
            let sc = point_removal_scenario(&insts).map_err(|e| anyhow!("{e}"))?;
            let dir = ensure_dir(&out_dir)?;
            let mut poset_doc = PosetDocument::from_poset(&sc.poset);
            poset_doc.marked_point = Some(sc.poset.label(sc.removed_point).to_string());
            write_json(&dir.join("poset.json"), &poset_doc)?;
            let keep = complement(sc.poset.len(), &[sc.removed_point]);
            let sub = sc.poset.restrict(&keep);
            write_json(
                &dir.join("realizer.json"),
                &RealizerDocument::from_realizer(&sub, &sc.realizer, None),
            )?;
            let embeddings: Vec<Vec<String>> = sc
                .instance_embeddings
                .iter()
                .map(|em| em.iter().map(|&i| sc.poset.label(i).to_string()).collect())
                .collect();
            write_json(&dir.join("embeddings.json"), &embeddings)?;
            println!(
                "point-removal scenario: poset.json ({} elements) realizer.json embeddings.json",
                sc.poset.len()
            );
            Ok(())
        }
        GenTarget::Random {
            n,
            density,
            seed,
            out_dir,
        } => {
            if !(0.0..=1.0).contains(&density) {
                return Err(CliError::Input(anyhow!("density must lie in [0, 1]")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
            let mut pairs = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(density) {
                        pairs.push((i, j));
                    }
                }
            }
            let poset = Poset::from_index_pairs(labels, &pairs).map_err(|e| anyhow!("{e}"))?;
            let dir = ensure_dir(&out_dir)?;
            write_json(&dir.join("poset.json"), &PosetDocument::from_poset(&poset))?;
            println!("random poset n={n} seed={seed}: poset.json");
            Ok(())
        }
    }
}

fn ensure_dir(dir: &Path) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Input(anyhow!("creating {}: {e}", dir.display())))?;
    Ok(dir.to_path_buf())
}

fn cmd_separate(
    instance_paths: &[PathBuf],
    mode: SeparatorMode,
    elements: bool,
    xc1_roundtrip: bool,
) -> CliResult {
    if instance_paths.is_empty() {
        return Err(CliError::Input(anyhow!("need at least one instance file")));
    }
    let mut insts = Vec::new();
    let mut names = Vec::new();
    for path in instance_paths {
        let doc: InstanceDocument = read_json(path)?;
        let (inst, elems) = doc.to_instance()?;
        insts.push(inst);
        names.push(elems);
    }
    let separators = ls_star(&insts, mode).map_err(|e| CliError::Input(anyhow!("{e}")))?;
    for (j, separator) in separators.iter().enumerate() {
        let rendered: Vec<&str> = separator.iter().map(|&x| names[j][x].as_str()).collect();
        println!("instance {j}: separator {{{}}}", rendered.join(", "));
    }
    if elements {
        let with = separator_elements(&insts);
        let rendered: Vec<String> = with.iter().map(|j| j.to_string()).collect();
        println!(
            "separator elements at instances {{{}}}",
            rendered.join(", ")
        );
    }
    if xc1_roundtrip {
        for (j, inst) in insts.iter().enumerate() {
            let point = ls_to_point(inst).map_err(|e| CliError::Input(anyhow!("{e}")))?;
            let recovered = point_to_separator(inst, &point)
                .map_err(|e| CliError::Violation(format!("instance {j}: {e}")))?;
            if !is_valid_separator(inst, &recovered) {
                return Err(CliError::Violation(format!(
                    "instance {j}: round trip produced an invalid separator"
                )));
            }
            let rendered: Vec<&str> = recovered.iter().map(|&x| names[j][x].as_str()).collect();
            println!(
                "instance {j}: point {point} separator {{{}}}",
                rendered.join(", ")
            );
        }
    }
    Ok(())
}

fn cmd_diagonalize(config_path: &Path, out_dir: &Path) -> CliResult {
    let config: DiagonalConfigDocument = read_json(config_path)?;
    let (k, stages, assignment, programs) = config.to_run_inputs()?;
    let (instances, transcript) = run_diagonalization(k, &assignment, &programs, stages)
        .map_err(|e| CliError::Input(anyhow!("{e}")))?;
    let dir = ensure_dir(out_dir)?;
    for (j, inst) in instances.iter().enumerate() {
        let names: Vec<String> = (0..inst.len()).map(|i| i.to_string()).collect();
        write_json(
            &dir.join(format!("instance-{j}.json")),
            &InstanceDocument::from_instance(inst, &names),
        )?;
    }
    std::fs::write(dir.join("transcript.log"), transcript.log_lines())
        .map_err(|e| CliError::Input(anyhow!("writing transcript: {e}")))?;
    let verdicts = check_requirements(&instances, &transcript, &programs, stages)
        .map_err(|e| CliError::Input(anyhow!("{e}")))?;
    let mut lines = String::new();
    let mut summary: BTreeMap<&'static str, usize> = BTreeMap::new();
    for (spec, verdict) in config.programs.iter().zip(&verdicts) {
        let line = match verdict.clause() {
            Some(c) => format!("program {}: clause {c} {verdict:?}", spec.id),
            None => format!("program {}: unresolved", spec.id),
        };
        println!("{line}");
        lines.push_str(&line);
        lines.push('\n');
        let key = if verdict.is_defeating() {
            "defeated"
        } else if verdict.clause().is_some() {
            "pending"
        } else {
            "unresolved"
        };
        *summary.entry(key).or_default() += 1;
    }
    std::fs::write(dir.join("verdicts.txt"), lines)
        .map_err(|e| CliError::Input(anyhow!("writing verdicts: {e}")))?;
    let rendered: Vec<String> = summary.iter().map(|(k, v)| format!("{v} {k}")).collect();
    println!("programs: {}", rendered.join(", "));
    println!("transcript {}", dir.join("transcript.log").display());
    Ok(())
}
