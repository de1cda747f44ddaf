//! Subcommands. Each returns an [`Outcome`]; errors become exit code 2.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pdfa_core::birecurrence::{is_birecurrent, is_birecurrent_characterization, is_birecurrent_direct};
use pdfa_core::graph::{is_strongly_connected, scc};
use pdfa_core::oracle::brute_rank;
use pdfa_core::rank::{exact_rank, min_rank_word_sc, synchronizing_word};
use pdfa_core::reductions::{
    binarize, binarize_with_selfloop, build_complete_gadget, build_saturation_gadget,
    build_sync_gadget, has_common_word, strongly_connect_gadget, GadgetLayout, IntersectionInstance,
};
use pdfa_core::saturation::find_saturating_min_rank_word;
use pdfa_core::{Budget, PartialDfa, StateSet, Word};
use serde_json::{json, Value};

use crate::dot::to_dot;
use crate::format::{
    is_instance_text, parse_automaton, parse_instance, serialize_automaton, AutomatonFile,
};

#[derive(Debug, Parser)]
#[command(name = "pdfa", version, about = "Rank, synchronization and saturation of partial DFAs")]
pub struct Cli {
    /// Print results as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Maximum number of explored configurations in exponential searches.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT.0)]
    pub budget: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that an automaton or instance file is well formed.
    Validate { file: PathBuf },
    /// Summarize an automaton or instance file.
    Info { file: PathBuf },
    /// Rank of the automaton.
    Rank {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = RankMethod::Bfs)]
        method: RankMethod,
        /// Also print a word of minimum rank.
        #[arg(long)]
        witness: bool,
    },
    /// Is there a word of rank one?
    Sync {
        file: PathBuf,
        #[arg(long)]
        witness: bool,
    },
    /// Shortest minimum-rank word saturating a set of states.
    Saturate {
        file: PathBuf,
        /// Comma-separated state indices.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
    },
    /// Is the accepted language birecurrent?
    Birecurrent {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = BirecurrenceMethod::Both)]
        method: BirecurrenceMethod,
    },
    /// Build a reduction gadget from an intersection instance.
    Reduce {
        #[arg(value_enum)]
        kind: ReductionKind,
        instance: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Re-encode an automaton over two letters.
    Binarize(BinarizeArgs),
    /// Brute-force reference answers.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Graphviz rendering.
    Dot { file: PathBuf },
}

#[derive(Debug, Args)]
pub struct BinarizeArgs {
    file: PathBuf,
    /// Letter applied last in the choice cycle.
    #[arg(long, conflicts_with = "add_selfloop", required_unless_present = "add_selfloop")]
    last_letter: Option<String>,
    /// Add a fresh self-loop letter first, keeping rank and saturation.
    #[arg(long)]
    add_selfloop: bool,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Shortest word accepted by every machine of an instance.
    CommonWord { instance: PathBuf },
    /// Rank by enumerating words.
    Rank {
        file: PathBuf,
        #[arg(long)]
        max_len: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RankMethod {
    /// Exact search over subsets.
    Bfs,
    /// Pair merging, strongly connected automata only.
    Poly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BirecurrenceMethod {
    Direct,
    Char,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReductionKind {
    Sync,
    Saturation,
    Sc,
    Complete,
}

/// Answer of a command: `Yes` maps to exit code 0, `No` to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Yes,
    No,
}

impl Outcome {
    fn from_bool(b: bool) -> Self {
        if b {
            Outcome::Yes
        } else {
            Outcome::No
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Yes => 0,
            Outcome::No => 1,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_automaton(path: &Path) -> Result<AutomatonFile> {
    parse_automaton(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn load_instance(path: &Path) -> Result<IntersectionInstance> {
    parse_instance(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn word_json(dfa: &PartialDfa, w: &Word) -> Value {
    json!(w.letters().iter().map(|&a| dfa.letter_name(a)).collect::<Vec<_>>())
}

/// Writes the gadget and `<output>.layout.json` next to it.
fn write_gadget(
    output: &Path,
    dfa: &PartialDfa,
    kind: &str,
    layout: &GadgetLayout,
    set: Option<&StateSet>,
) -> Result<PathBuf> {
    fs::write(output, serialize_automaton(&AutomatonFile::plain(dfa.clone())))
        .with_context(|| format!("cannot write {}", output.display()))?;
    let mut sidecar = serde_json::to_value(layout)?;
    let obj = sidecar.as_object_mut().expect("layout serializes to an object");
    obj.insert("kind".into(), json!(kind));
    obj.insert("states".into(), json!(dfa.state_count()));
    obj.insert("alphabet".into(), json!(dfa.alphabet()));
    if let Some(set) = set {
        obj.insert("saturation_set".into(), json!(set.iter().collect::<Vec<_>>()));
    }
    let mut path = output.as_os_str().to_owned();
    path.push(".layout.json");
    let path = PathBuf::from(path);
    fs::write(&path, serde_json::to_string_pretty(&sidecar)? + "\n")
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(path)
}

/// Runs one command, writing its report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome> {
    let budget = Budget(cli.budget);
    let json = cli.json;
    let mut emit = |value: Value, text: String| -> Result<()> {
        if json {
            writeln!(out, "{value}")?;
        } else {
            write!(out, "{text}")?;
        }
        Ok(())
    };

    match &cli.command {
        Command::Validate { file } => {
            let text = read(file)?;
            if is_instance_text(&text) {
                let inst = parse_instance(&text).with_context(|| format!("{}", file.display()))?;
                emit(
                    json!({"valid": true, "kind": "instance", "machines": inst.machines().len()}),
                    format!("ok: instance with {} machines\n", inst.machines().len()),
                )?;
            } else {
                let f = parse_automaton(&text).with_context(|| format!("{}", file.display()))?;
                emit(
                    json!({"valid": true, "kind": "automaton", "states": f.dfa.state_count()}),
                    format!(
                        "ok: automaton with {} states over {} letters\n",
                        f.dfa.state_count(),
                        f.dfa.letter_count()
                    ),
                )?;
            }
            Ok(Outcome::Yes)
        }

        Command::Info { file } => {
            let text = read(file)?;
            if is_instance_text(&text) {
                let inst = parse_instance(&text).with_context(|| format!("{}", file.display()))?;
                let sizes: Vec<usize> =
                    inst.machines().iter().map(|m| m.dfa().state_count()).collect();
                emit(
                    json!({"kind": "instance", "alphabet": inst.alphabet(), "machine_states": sizes}),
                    format!(
                        "kind: instance\nalphabet: {}\nmachines: {}\ntotal states: {}\n",
                        inst.alphabet().join(" "),
                        sizes.len(),
                        inst.total_states()
                    ),
                )?;
            } else {
                let f = parse_automaton(&text).with_context(|| format!("{}", file.display()))?;
                let d = &f.dfa;
                let components = scc(d).component_count();
                let defined = d.transitions().count();
                emit(
                    json!({
                        "kind": "automaton",
                        "states": d.state_count(),
                        "alphabet": d.alphabet(),
                        "defined_transitions": defined,
                        "complete": d.is_complete(),
                        "permutation": d.is_permutation(),
                        "strongly_connected": is_strongly_connected(d),
                        "components": components,
                        "initial": f.initial,
                        "accepting": f.accepting.as_ref().map(|a| a.iter().collect::<Vec<_>>()),
                    }),
                    format!(
                        "kind: automaton\nstates: {}\nalphabet: {}\ndefined transitions: {defined}\n\
                         complete: {}\npermutation: {}\nstrongly connected: {}\ncomponents: {components}\n",
                        d.state_count(),
                        d.alphabet().join(" "),
                        d.is_complete(),
                        d.is_permutation(),
                        is_strongly_connected(d),
                    ),
                )?;
            }
            Ok(Outcome::Yes)
        }

        Command::Rank {
            file,
            method,
            witness,
        } => {
            let f = load_automaton(file)?;
            let result = match method {
                RankMethod::Bfs => exact_rank(&f.dfa, budget)?,
                RankMethod::Poly => min_rank_word_sc(&f.dfa)?,
            };
            let mut text = format!("rank: {}\n", result.rank);
            if *witness {
                text += &format!("witness: {}\n", f.dfa.format_word(&result.witness));
            }
            emit(
                json!({"rank": result.rank, "witness": word_json(&f.dfa, &result.witness)}),
                text,
            )?;
            Ok(Outcome::Yes)
        }

        Command::Sync { file, witness } => {
            let f = load_automaton(file)?;
            let word = synchronizing_word(&f.dfa, budget)?;
            let text = match &word {
                Some(w) if *witness => {
                    format!("synchronizing\nwitness: {}\n", f.dfa.format_word(w))
                }
                Some(_) => "synchronizing\n".to_string(),
                None => "not synchronizing\n".to_string(),
            };
            emit(
                json!({
                    "synchronizing": word.is_some(),
                    "witness": word.as_ref().map(|w| word_json(&f.dfa, w)),
                }),
                text,
            )?;
            Ok(Outcome::from_bool(word.is_some()))
        }

        Command::Saturate { file, set } => {
            let f = load_automaton(file)?;
            let set = StateSet::from_states(f.dfa.state_count(), set.iter().copied())?;
            let word = find_saturating_min_rank_word(&f.dfa, &set, budget)?;
            let text = match &word {
                Some(w) => format!("saturating word: {}\n", f.dfa.format_word(w)),
                None => "none\n".to_string(),
            };
            emit(
                json!({
                    "saturable": word.is_some(),
                    "witness": word.as_ref().map(|w| word_json(&f.dfa, w)),
                }),
                text,
            )?;
            Ok(Outcome::from_bool(word.is_some()))
        }

        Command::Birecurrent { file, method } => {
            let f = load_automaton(file)?;
            let acc = f
                .acceptor()
                .ok_or_else(|| anyhow!("{}: birecurrence needs an `initial:` line", file.display()))?;
            let verdict = match method {
                BirecurrenceMethod::Direct => is_birecurrent_direct(&acc),
                BirecurrenceMethod::Char => is_birecurrent_characterization(&acc, budget)?,
                BirecurrenceMethod::Both => is_birecurrent(&acc, budget)?,
            };
            emit(
                json!({"birecurrent": verdict}),
                format!("birecurrent: {}\n", if verdict { "yes" } else { "no" }),
            )?;
            Ok(Outcome::from_bool(verdict))
        }

        Command::Reduce {
            kind,
            instance,
            output,
        } => {
            let inst = load_instance(instance)?;
            let (dfa, layout, set, name) = match kind {
                ReductionKind::Sync => {
                    let (d, l) = build_sync_gadget(&inst);
                    (d, l, None, "sync")
                }
                ReductionKind::Saturation => {
                    let (d, l) = build_saturation_gadget(&inst)?;
                    let all = d.all_states();
                    (d, l, Some(all), "saturation")
                }
                ReductionKind::Sc => {
                    let (d, l) = build_saturation_gadget(&inst)?;
                    let y = l.special_states["Y"];
                    let (d, extra) = strongly_connect_gadget(&d, y)?;
                    let mut l = l;
                    l.letter_map.extend(extra.letter_map);
                    l.targets = extra.targets;
                    let all = d.all_states();
                    (d, l, Some(all), "sc")
                }
                ReductionKind::Complete => {
                    let (d, l, s) = build_complete_gadget(&inst)?;
                    (d, l, Some(s), "complete")
                }
            };
            let sidecar = write_gadget(output, &dfa, name, &layout, set.as_ref())?;
            emit(
                json!({
                    "kind": name,
                    "states": dfa.state_count(),
                    "letters": dfa.letter_count(),
                    "output": output,
                    "layout": sidecar,
                }),
                format!(
                    "wrote {} ({} states, {} letters) and {}\n",
                    output.display(),
                    dfa.state_count(),
                    dfa.letter_count(),
                    sidecar.display()
                ),
            )?;
            Ok(Outcome::Yes)
        }

        Command::Binarize(args) => {
            let f = load_automaton(&args.file)?;
            let (dfa, layout) = match &args.last_letter {
                Some(name) => binarize(&f.dfa, f.dfa.letter_index(name)?)?,
                None if args.add_selfloop => binarize_with_selfloop(&f.dfa),
                None => bail!("choose --last-letter or --add-selfloop"),
            };
            let sidecar = write_gadget(&args.output, &dfa, "binarized", &layout, None)?;
            emit(
                json!({"states": dfa.state_count(), "output": args.output, "layout": sidecar}),
                format!(
                    "wrote {} ({} states) and {}\n",
                    args.output.display(),
                    dfa.state_count(),
                    sidecar.display()
                ),
            )?;
            Ok(Outcome::Yes)
        }

        Command::Oracle(OracleCommand::CommonWord { instance }) => {
            let inst = load_instance(instance)?;
            let word = has_common_word(&inst, budget)?;
            let names = |w: &Word| {
                w.letters()
                    .iter()
                    .map(|&a| inst.alphabet()[a].clone())
                    .collect::<Vec<_>>()
            };
            let text = match &word {
                Some(w) if w.is_empty() => "common word: ε\n".to_string(),
                Some(w) => format!("common word: {}\n", names(w).join(" ")),
                None => "none\n".to_string(),
            };
            emit(
                json!({"common_word": word.as_ref().map(names)}),
                text,
            )?;
            Ok(Outcome::from_bool(word.is_some()))
        }

        Command::Oracle(OracleCommand::Rank { file, max_len }) => {
            let f = load_automaton(file)?;
            let result = brute_rank(&f.dfa, max_len.unwrap_or(usize::MAX), budget)?;
            emit(
                json!({"rank": result.rank, "witness": word_json(&f.dfa, &result.witness)}),
                format!(
                    "rank: {}\nwitness: {}\n",
                    result.rank,
                    f.dfa.format_word(&result.witness)
                ),
            )?;
            Ok(Outcome::Yes)
        }

        Command::Dot { file } => {
            let f = load_automaton(file)?;
            write!(out, "{}", to_dot(&f))?;
            Ok(Outcome::Yes)
        }
    }
}
