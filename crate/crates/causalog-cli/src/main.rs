//! Command-line front end: model enumeration, interventions, principle
//! checks, and the causal translations, over `.alp` files or standard input.
//!
//! Exit codes follow one contract everywhere: 0 when models exist or the
//! check passes, 1 when none do or it fails, 2 on any error. Output is plain
//! text by default; `--format json` switches every command to a stable
//! schema with the same content.

use std::collections::HashSet;
use std::fmt;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use causalog::{
    abductive_models_with_limit, bochman_transform, causally_founded_worlds_with_limit,
    check_irrelevance_with_limit, check_non_interference_with_limit, cm_semantics,
    dependence_graph, intervene, parse_with_limit, render, rule_text, AbductiveProgram, Alphabet,
    Assignment, AtomSet, CausalSystem, Counterexample, EdgeSign, Error, Semantics,
    StructuralCausalModel, World, DEFAULT_ATOM_LIMIT, DEFAULT_IRRELEVANCE_LIMIT,
};

#[derive(Parser)]
#[command(name = "causalog", version, about = "Causal reasoning over abductive logic programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the models of a program
    Models(ModelsCmd),
    /// Sever atoms from their causes, then enumerate models
    Intervene(InterveneCmd),
    /// Decide a causal principle, with a witness on failure
    Check(CheckCmd),
    /// Read the program as a causal system
    Bochman(TranslateCmd),
    /// Read the program as a structural causal model
    Cm(TranslateCmd),
    /// Dump the dependence graph
    Graph(GraphCmd),
}

#[derive(Args)]
struct Common {
    /// Program file; `-` reads standard input
    file: String,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest alphabet fed to exhaustive enumeration
    #[arg(long, default_value_t = DEFAULT_ATOM_LIMIT)]
    atom_limit: usize,
}

#[derive(Args)]
struct ModelsCmd {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = SemanticsArg::Stable)]
    semantics: SemanticsArg,
    /// Keep only models with exactly this abducible choice, e.g. `h,e` or
    /// `""` for the empty choice
    #[arg(long)]
    explanation: Option<String>,
}

#[derive(Args)]
struct InterveneCmd {
    #[command(flatten)]
    common: Common,
    /// An intervention, repeatable: `--do s=true --do w=false`
    #[arg(long = "do", value_name = "ATOM=BOOL", value_parser = parse_do_flag)]
    assignments: Vec<(String, bool)>,
    /// Print the severed program instead of its models
    #[arg(long)]
    emit_program: bool,
    #[arg(long, value_enum, default_value_t = SemanticsArg::Stable)]
    semantics: SemanticsArg,
    /// Keep only models with exactly this abducible choice
    #[arg(long)]
    explanation: Option<String>,
}

#[derive(Args)]
struct CheckCmd {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum)]
    principle: Principle,
    /// The atom set S for non-interference, e.g. `s` or `w,d`
    #[arg(long)]
    set: Option<String>,
    /// The assignment on S for non-interference, repeatable
    #[arg(long = "do", value_name = "ATOM=BOOL", value_parser = parse_do_flag)]
    assignments: Vec<(String, bool)>,
    /// Largest alphabet fed to the doubly exponential irrelevance search
    #[arg(long, default_value_t = DEFAULT_IRRELEVANCE_LIMIT)]
    irrelevance_limit: usize,
}

#[derive(Args)]
struct TranslateCmd {
    #[command(flatten)]
    common: Common,
    /// Append the worlds the translation accepts
    #[arg(long)]
    worlds: bool,
}

#[derive(Args)]
struct GraphCmd {
    #[command(flatten)]
    common: Common,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, ValueEnum)]
enum SemanticsArg {
    Stable,
    Supported,
}

impl From<SemanticsArg> for Semantics {
    fn from(s: SemanticsArg) -> Semantics {
        match s {
            SemanticsArg::Stable => Semantics::Stable,
            SemanticsArg::Supported => Semantics::Supported,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Principle {
    Stratified,
    Irrelevance,
    Consistency,
    NonInterference,
}

fn parse_do_flag(raw: &str) -> Result<(String, bool), String> {
    let (atom, value) = raw
        .split_once('=')
        .ok_or_else(|| format!("expected ATOM=true or ATOM=false, got `{raw}`"))?;
    match value {
        "true" => Ok((atom.to_string(), true)),
        "false" => Ok((atom.to_string(), false)),
        other => Err(format!("expected true or false after `=`, got `{other}`")),
    }
}

// ── Driver ─────────────────────────────────────────────────────────────────

/// Pass, fail, or error; what main reports to the shell.
const PASS: u8 = 0;
const FAIL: u8 = 1;
const ERROR: u8 = 2;

struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError(format!("error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(ERROR)
        }
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Models(cmd) => run_models(cmd),
        Command::Intervene(cmd) => run_intervene(cmd),
        Command::Check(cmd) => run_check(cmd),
        Command::Bochman(cmd) => run_bochman(cmd),
        Command::Cm(cmd) => run_cm(cmd),
        Command::Graph(cmd) => run_graph(cmd),
    }
}

fn load(common: &Common) -> Result<AbductiveProgram, CliError> {
    let (text, shown) = if common.file == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError(format!("error: cannot read standard input: {e}")))?;
        (text, "<stdin>".to_string())
    } else {
        let text = std::fs::read_to_string(&common.file)
            .map_err(|e| CliError(format!("error: cannot read `{}`: {e}", common.file)))?;
        (text, common.file.clone())
    };
    match parse_with_limit(&text, common.atom_limit) {
        Ok(parsed) => {
            for w in &parsed.warnings {
                eprintln!("{shown}:{}:{}: warning: {}", w.line, w.column, w.message);
            }
            Ok(parsed.program)
        }
        Err(Error::Parse(d)) => {
            Err(CliError(format!("{shown}:{}:{}: error: {}", d.line, d.column, d.message)))
        }
        Err(e) => Err(e.into()),
    }
}

fn explanation_filter(
    ap: &AbductiveProgram,
    names: &Option<String>,
) -> Result<Option<AtomSet>, CliError> {
    let Some(names) = names else { return Ok(None) };
    let mut set = AtomSet::empty();
    for name in names.split(',').filter(|n| !n.is_empty()) {
        let atom = ap.alphabet().require(name.trim())?;
        if !ap.is_abducible(atom) {
            return Err(CliError(format!("error: `{}` is not an abducible", name.trim())));
        }
        set.insert(atom);
    }
    Ok(Some(set))
}

fn atom_set(ap: &AbductiveProgram, names: &str) -> Result<AtomSet, CliError> {
    let mut set = AtomSet::empty();
    for name in names.split(',').filter(|n| !n.is_empty()) {
        set.insert(ap.alphabet().require(name.trim())?);
    }
    Ok(set)
}

fn assignment(ap: &AbductiveProgram, pairs: &[(String, bool)]) -> Result<Assignment, CliError> {
    let resolved = pairs
        .iter()
        .map(|(name, value)| Ok((ap.alphabet().require(name)?, *value)))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Assignment::from_pairs(ap.alphabet(), resolved)?)
}

// ── Model listings ─────────────────────────────────────────────────────────

#[derive(Serialize, Deserialize)]
struct ModelEntry {
    explanation: Vec<String>,
    world: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct ModelListing {
    atoms: Vec<String>,
    abducibles: Vec<String>,
    semantics: String,
    models: Vec<ModelEntry>,
}

fn entries(alphabet: &Alphabet, models: &[(AtomSet, World)]) -> Vec<ModelEntry> {
    models
        .iter()
        .map(|&(explanation, world)| ModelEntry {
            explanation: alphabet.set_names(explanation),
            world: alphabet.set_names(world.true_atoms()),
        })
        .collect()
}

fn model_lines(alphabet: &Alphabet, models: &[(AtomSet, World)]) -> String {
    models
        .iter()
        .map(|&(explanation, world)| {
            format!(
                "explanation {} world {}\n",
                alphabet.set_text(explanation),
                alphabet.set_text(world.true_atoms())
            )
        })
        .collect()
}

fn enumerate(
    ap: &AbductiveProgram,
    semantics: Semantics,
    filter: Option<AtomSet>,
    limit: usize,
) -> Result<Vec<(AtomSet, World)>, CliError> {
    Ok(abductive_models_with_limit(ap, semantics, limit)?
        .into_iter()
        .filter(|m| filter.is_none_or(|f| m.explanation == f))
        .map(|m| (m.explanation, m.world))
        .collect())
}

fn print_models(
    ap: &AbductiveProgram,
    semantics: Semantics,
    models: &[(AtomSet, World)],
    format: Format,
) -> u8 {
    match format {
        Format::Text => print!("{}", model_lines(ap.alphabet(), models)),
        Format::Json => {
            let listing = ModelListing {
                atoms: ap.alphabet().set_names(ap.alphabet().universe()),
                abducibles: ap.alphabet().set_names(ap.abducible_set()),
                semantics: semantics.to_string(),
                models: entries(ap.alphabet(), models),
            };
            println!("{}", serde_json::to_string_pretty(&listing).unwrap());
        }
    }
    if models.is_empty() {
        FAIL
    } else {
        PASS
    }
}

fn run_models(cmd: ModelsCmd) -> Result<u8, CliError> {
    let ap = load(&cmd.common)?;
    let filter = explanation_filter(&ap, &cmd.explanation)?;
    let semantics = cmd.semantics.into();
    let models = enumerate(&ap, semantics, filter, cmd.common.atom_limit)?;
    Ok(print_models(&ap, semantics, &models, cmd.common.format))
}

#[derive(Serialize, Deserialize)]
struct ProgramListing {
    program: String,
}

fn run_intervene(cmd: InterveneCmd) -> Result<u8, CliError> {
    let ap = load(&cmd.common)?;
    let cut = intervene(&ap, &assignment(&ap, &cmd.assignments)?)?;
    if cmd.emit_program {
        match cmd.common.format {
            Format::Text => print!("{}", render(&cut)),
            Format::Json => {
                let listing = ProgramListing { program: render(&cut) };
                println!("{}", serde_json::to_string_pretty(&listing).unwrap());
            }
        }
        return Ok(PASS);
    }
    let filter = explanation_filter(&cut, &cmd.explanation)?;
    let semantics = cmd.semantics.into();
    let models = enumerate(&cut, semantics, filter, cmd.common.atom_limit)?;
    Ok(print_models(&cut, semantics, &models, cmd.common.format))
}

// ── Principle checks ───────────────────────────────────────────────────────

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum WitnessJson {
    UnexplainedChoice {
        explanation: Vec<String>,
    },
    UnstableSlice {
        s: Vec<String>,
        fixed: Vec<String>,
        partial_world: Vec<String>,
    },
}

#[derive(Serialize, Deserialize)]
struct CheckListing {
    principle: String,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    non_interference: Option<NonInterferenceJson>,
}

#[derive(Serialize, Deserialize)]
struct NonInterferenceJson {
    s: Vec<String>,
    below: Vec<String>,
    models_of_program: Vec<Vec<String>>,
    models_of_below: Vec<Vec<String>>,
    models_after_intervention: Vec<Vec<String>>,
}

fn witness_json(alphabet: &Alphabet, counterexample: &Counterexample) -> WitnessJson {
    match *counterexample {
        Counterexample::UnexplainedChoice { explanation } => WitnessJson::UnexplainedChoice {
            explanation: alphabet.set_names(explanation),
        },
        Counterexample::UnstableSlice { s, fixed, partial_world } => WitnessJson::UnstableSlice {
            s: alphabet.set_names(s),
            fixed: alphabet.set_names(fixed),
            partial_world: alphabet.set_names(partial_world),
        },
    }
}

fn witness_text(alphabet: &Alphabet, counterexample: &Counterexample) -> String {
    match *counterexample {
        Counterexample::UnexplainedChoice { explanation } => format!(
            "witness: choice {} admits no stable model\n",
            alphabet.set_text(explanation)
        ),
        Counterexample::UnstableSlice { s, fixed, partial_world } => format!(
            "witness: outside {} configured as {} cannot extend to a stable model of the \
             clauses downstream of {}\n",
            alphabet.set_text(fixed),
            alphabet.set_text(partial_world),
            alphabet.set_text(s)
        ),
    }
}

/// The first abducible choice without a stable model, ignoring constraints.
fn unexplained_choice(
    ap: &AbductiveProgram,
    limit: usize,
) -> Result<Option<AtomSet>, Error> {
    let explained: HashSet<AtomSet> =
        abductive_models_with_limit(&ap.without_constraints(), Semantics::Stable, limit)?
            .into_iter()
            .map(|m| m.explanation)
            .collect();
    Ok(ap.abducible_set().subsets().find(|c| !explained.contains(c)))
}

fn run_check(cmd: CheckCmd) -> Result<u8, CliError> {
    let ap = load(&cmd.common)?;
    if cmd.principle != Principle::NonInterference
        && (cmd.set.is_some() || !cmd.assignments.is_empty())
    {
        return Err(CliError(
            "error: --set and --do apply only to --principle non-interference".to_string(),
        ));
    }
    let alphabet = ap.alphabet();
    let mut listing = CheckListing {
        principle: String::new(),
        pass: false,
        witness: None,
        non_interference: None,
    };
    let mut text = String::new();
    match cmd.principle {
        Principle::Stratified => {
            listing.principle = "stratified".to_string();
            listing.pass = causalog::check_stratified_irrelevance(&ap);
        }
        Principle::Consistency => {
            listing.principle = "consistency".to_string();
            let witness = unexplained_choice(&ap, cmd.common.atom_limit)?;
            listing.pass = witness.is_none();
            if let Some(explanation) = witness {
                let cx = Counterexample::UnexplainedChoice { explanation };
                listing.witness = Some(witness_json(alphabet, &cx));
                text.push_str(&witness_text(alphabet, &cx));
            }
        }
        Principle::Irrelevance => {
            listing.principle = "irrelevance".to_string();
            let verdict = check_irrelevance_with_limit(&ap, cmd.irrelevance_limit)?;
            listing.pass = verdict.holds;
            if let Some(cx) = verdict.counterexample {
                listing.witness = Some(witness_json(alphabet, &cx));
                text.push_str(&witness_text(alphabet, &cx));
            }
        }
        Principle::NonInterference => {
            listing.principle = "non-interference".to_string();
            let set = cmd.set.as_deref().ok_or_else(|| {
                CliError("error: --principle non-interference requires --set".to_string())
            })?;
            let s = atom_set(&ap, set)?;
            let a = assignment(&ap, &cmd.assignments)?;
            let report = check_non_interference_with_limit(&ap, s, &a, cmd.common.atom_limit)?;
            listing.pass = report.equivalent;
            let names = |sets: &std::collections::BTreeSet<AtomSet>| -> Vec<Vec<String>> {
                sets.iter().map(|&r| alphabet.set_names(r)).collect()
            };
            let texts = |sets: &std::collections::BTreeSet<AtomSet>| -> String {
                sets.iter().map(|&r| alphabet.set_text(r)).collect::<Vec<_>>().join(" ")
            };
            listing.non_interference = Some(NonInterferenceJson {
                s: alphabet.set_names(report.s),
                below: alphabet.set_names(report.below),
                models_of_program: names(&report.models_of_program),
                models_of_below: names(&report.models_of_below),
                models_after_intervention: names(&report.models_after_intervention),
            });
            text.push_str(&format!(
                "s {} untouched {}\nreducts of program: {}\nreducts of below slice: {}\n\
                 reducts after intervention: {}\n",
                alphabet.set_text(report.s),
                alphabet.set_text(report.below),
                texts(&report.models_of_program),
                texts(&report.models_of_below),
                texts(&report.models_after_intervention),
            ));
        }
    }
    match cmd.common.format {
        Format::Text => {
            let verdict = if listing.pass { "pass" } else { "fail" };
            print!("principle {}: {verdict}\n{text}", listing.principle);
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&listing).unwrap()),
    }
    Ok(if listing.pass { PASS } else { FAIL })
}

// ── Translations ───────────────────────────────────────────────────────────

#[derive(Serialize, Deserialize)]
struct RuleJson {
    cause: Vec<String>,
    effect: String,
}

#[derive(Serialize, Deserialize)]
struct SystemListing {
    knowledge: Vec<RuleJson>,
    external: Vec<String>,
    observations: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    worlds: Option<Vec<ModelEntry>>,
}

fn system_listing(cs: &CausalSystem) -> SystemListing {
    let alphabet = cs.alphabet();
    SystemListing {
        knowledge: cs
            .knowledge()
            .rules()
            .iter()
            .map(|r| RuleJson {
                cause: r.cause().iter().map(|&l| alphabet.literal_text(l)).collect(),
                effect: alphabet.literal_text(r.effect()),
            })
            .collect(),
        external: cs.external().iter().map(|&l| alphabet.literal_text(l)).collect(),
        observations: cs
            .observations()
            .iter()
            .map(|ic| ic.body().iter().map(|&l| alphabet.literal_text(l)).collect())
            .collect(),
        worlds: None,
    }
}

fn run_bochman(cmd: TranslateCmd) -> Result<u8, CliError> {
    let ap = load(&cmd.common)?;
    let cs = bochman_transform(&ap);
    let models: Option<Vec<(AtomSet, World)>> = if cmd.worlds {
        Some(
            causally_founded_worlds_with_limit(&cs, cmd.common.atom_limit)?
                .into_iter()
                .map(|w| (w.reduct(ap.abducible_set()), w))
                .collect(),
        )
    } else {
        None
    };
    match cmd.common.format {
        Format::Text => {
            print!("{}", cs.to_text());
            if let Some(models) = &models {
                print!("\n{}", model_lines(cs.alphabet(), models));
            }
        }
        Format::Json => {
            let mut listing = system_listing(&cs);
            listing.worlds = models.as_ref().map(|m| entries(cs.alphabet(), m));
            println!("{}", serde_json::to_string_pretty(&listing).unwrap());
        }
    }
    Ok(match models {
        Some(models) if models.is_empty() => FAIL,
        _ => PASS,
    })
}

#[derive(Serialize, Deserialize)]
struct EquationJson {
    atom: String,
    dnf: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct ScmListing {
    external: Vec<String>,
    equations: Vec<EquationJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    solutions: Option<Vec<ModelEntry>>,
}

fn scm_listing(scm: &StructuralCausalModel) -> ScmListing {
    let alphabet = scm.alphabet();
    ScmListing {
        external: scm.external().iter().map(|&a| alphabet.name(a).to_string()).collect(),
        equations: scm
            .equations()
            .iter()
            .map(|eq| EquationJson {
                atom: alphabet.name(eq.atom).to_string(),
                dnf: eq
                    .dnf
                    .iter()
                    .map(|conj| conj.iter().map(|&l| alphabet.literal_text(l)).collect())
                    .collect(),
            })
            .collect(),
        solutions: None,
    }
}

fn run_cm(cmd: TranslateCmd) -> Result<u8, CliError> {
    let ap = load(&cmd.common)?;
    let scm = cm_semantics(&ap)?;
    let models: Option<Vec<(AtomSet, World)>> = if cmd.worlds {
        Some(
            scm.solutions_with_limit(cmd.common.atom_limit)?
                .into_iter()
                .map(|w| (w.reduct(scm.external_set()), w))
                .collect(),
        )
    } else {
        None
    };
    match cmd.common.format {
        Format::Text => {
            print!("{}", scm.to_text());
            if let Some(models) = &models {
                print!("\n{}", model_lines(scm.alphabet(), models));
            }
        }
        Format::Json => {
            let mut listing = scm_listing(&scm);
            listing.solutions = models.as_ref().map(|m| entries(scm.alphabet(), m));
            println!("{}", serde_json::to_string_pretty(&listing).unwrap());
        }
    }
    Ok(match models {
        Some(models) if models.is_empty() => FAIL,
        _ => PASS,
    })
}

// ── Dependence graph ───────────────────────────────────────────────────────

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    from: String,
    to: String,
    sign: String,
}

#[derive(Serialize, Deserialize)]
struct GraphListing {
    atoms: Vec<String>,
    edges: Vec<EdgeJson>,
    stratified: bool,
    acyclic: bool,
}

fn run_graph(cmd: GraphCmd) -> Result<u8, CliError> {
    let ap = load(&cmd.common)?;
    let alphabet = ap.alphabet();
    let g = dependence_graph(ap.program());
    let sign_text = |s: EdgeSign| match s {
        EdgeSign::Positive => "+",
        EdgeSign::Negative => "-",
        EdgeSign::Both => "+-",
    };
    match cmd.common.format {
        Format::Text => {
            println!("digraph dependence {{");
            for atom in alphabet.atoms() {
                println!("  \"{}\";", alphabet.name(atom));
            }
            for (from, to, sign) in g.edges() {
                println!(
                    "  \"{}\" -> \"{}\" [label=\"{}\"];",
                    alphabet.name(from),
                    alphabet.name(to),
                    sign_text(sign)
                );
            }
            println!("}}");
        }
        Format::Json => {
            let listing = GraphListing {
                atoms: alphabet.set_names(alphabet.universe()),
                edges: g
                    .edges()
                    .into_iter()
                    .map(|(from, to, sign)| EdgeJson {
                        from: alphabet.name(from).to_string(),
                        to: alphabet.name(to).to_string(),
                        sign: match sign {
                            EdgeSign::Positive => "positive".to_string(),
                            EdgeSign::Negative => "negative".to_string(),
                            EdgeSign::Both => "both".to_string(),
                        },
                    })
                    .collect(),
                stratified: g.is_stratified(),
                acyclic: g.is_acyclic(),
            };
            println!("{}", serde_json::to_string_pretty(&listing).unwrap());
        }
    }
    Ok(PASS)
}
