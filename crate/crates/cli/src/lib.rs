//! The `owlkit` command line. [`run`] parses arguments and writes payload to
//! `out` and diagnostics to `err`; it returns 0 on success, 1 on a domain
//! error and 2 on a usage error.

use std::ffi::OsString;
use std::fmt::Display;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use owlkit::ebr::{self, EmbeddingModel64, TrainingConfig64};
use owlkit::model::{Class, ClassExpression, Iri};
use owlkit::ontology::{self, Format, Ontology};
use owlkit::reasoner::{ReasonerConfig, Snapshot};
use owlkit::sparql::to_sparql;
use owlkit::syntax::{
    parse_dl, parse_manchester, parse_swrl, render_dl, render_manchester, render_swrl,
    PrefixContext,
};
use owlkit_textgen::{
    generate_ontology, GenerationConfig, HttpChatClient, MockClient, Prompts, RecordingClient,
    Transcript,
};

/// Namespace for bare names in `render` and `swrl-parse` when none is given.
pub const DEFAULT_NS: &str = "http://example.org/owlkit#";

#[derive(Debug, Parser)]
#[command(name = "owlkit", version, about = "OWL 2 ontology toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert an ontology document to another format.
    Convert(ConvertArgs),
    /// Translate a class expression between syntaxes.
    Render(RenderArgs),
    /// Print the instances of a class expression, one IRI per line.
    Reason(ReasonArgs),
    /// Print the told sub-, super- or equivalent classes of a class.
    Hierarchy(HierarchyArgs),
    /// Print signature and axiom counts.
    Stats(StatsArgs),
    /// Train an embedding model on the ontology's assertions.
    EbrTrain(EbrTrainArgs),
    /// Retrieve the instances of a class expression with an embedding model.
    EbrQuery(EbrQueryArgs),
    /// Build an ontology from natural-language text.
    Generate(GenerateArgs),
    /// Parse a SWRL rule and print it back.
    SwrlParse(SwrlParseArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InputFormat {
    Functional,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Functional,
    Turtle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Syntax {
    Manchester,
    Dl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Manchester,
    Dl,
    Sparql,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Direction {
    Sub,
    Super,
    Equiv,
}

#[derive(Debug, Args)]
struct Names {
    /// Extra prefix as name=namespace; repeatable.
    #[arg(long = "prefix", value_name = "NAME=NS", value_parser = parse_prefix)]
    prefixes: Vec<(String, String)>,
    /// Namespace for unprefixed names.
    #[arg(long, value_name = "NS")]
    default_ns: Option<String>,
}

impl Names {
    fn context(&self, onto: Option<&Ontology>) -> PrefixContext {
        let mut ctx = match onto {
            Some(o) => PrefixContext::for_ontology(o, self.default_ns.as_deref()),
            None => PrefixContext::new(self.default_ns.as_deref().unwrap_or(DEFAULT_NS)),
        };
        for (name, ns) in &self.prefixes {
            ctx.add_prefix(name, ns);
        }
        ctx
    }
}

fn parse_prefix(s: &str) -> Result<(String, String), String> {
    match s.split_once('=') {
        Some((name, ns)) if !ns.is_empty() => Ok((name.to_string(), ns.to_string())),
        _ => Err(format!("expected NAME=NAMESPACE, got `{s}`")),
    }
}

#[derive(Debug, Args)]
struct ConvertArgs {
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "functional")]
    from: InputFormat,
    /// Output file, or `-` for standard output.
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    #[arg(long, value_enum)]
    to: OutputFormat,
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[arg(long)]
    expr: String,
    #[arg(long, value_enum)]
    from: Syntax,
    #[arg(long, value_enum)]
    to: Target,
    /// Variable name for SPARQL output.
    #[arg(long, default_value = "x")]
    var: String,
    #[command(flatten)]
    names: Names,
}

#[derive(Debug, Args)]
struct QueryArgs {
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[arg(long)]
    query: String,
    #[arg(long, value_enum, default_value = "manchester")]
    syntax: Syntax,
    #[command(flatten)]
    names: Names,
}

#[derive(Debug, Args)]
struct ReasonArgs {
    #[command(flatten)]
    query: QueryArgs,
    /// Use asserted class memberships only.
    #[arg(long)]
    no_hierarchy: bool,
    /// Treat universal restrictions as false for individuals without successors.
    #[arg(long)]
    no_vacuous_forall: bool,
}

#[derive(Debug, Args)]
struct HierarchyArgs {
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Class name, prefixed name or <full IRI>.
    #[arg(long)]
    class: String,
    #[arg(long, value_enum)]
    direction: Direction,
    #[arg(long)]
    direct: bool,
    #[command(flatten)]
    names: Names,
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
}

#[derive(Debug, Args)]
struct EbrTrainArgs {
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[arg(long, value_name = "MODEL")]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 32)]
    dim: usize,
    #[arg(long, default_value_t = 200)]
    epochs: usize,
    #[arg(long, default_value_t = 0.05)]
    learning_rate: f64,
    #[arg(long, default_value_t = 5)]
    negatives: usize,
}

#[derive(Debug, Args)]
struct EbrQueryArgs {
    #[arg(long, value_name = "MODEL")]
    model: PathBuf,
    #[command(flatten)]
    query: QueryArgs,
    /// Membership threshold.
    #[arg(long, default_value_t = 0.5)]
    gamma: f64,
    /// Print each individual's membership degree after its IRI.
    #[arg(long)]
    scores: bool,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, value_name = "FILE")]
    text: PathBuf,
    /// Output file, or `-` for standard output.
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    /// Replay a recorded transcript instead of calling the model.
    #[arg(long, value_name = "TRANSCRIPT")]
    mock: Option<PathBuf>,
    /// Record the live exchange to a transcript file.
    #[arg(long, value_name = "TRANSCRIPT", conflicts_with = "mock")]
    record: Option<PathBuf>,
    #[arg(long, default_value = "http://example.org/generated#")]
    namespace: String,
    /// Allowed class name; repeatable. Without any, the model names classes.
    #[arg(long = "class", value_name = "NAME")]
    classes: Vec<String>,
    /// Accept new class names in addition to the --class list.
    #[arg(long)]
    allow_llm_classes: bool,
    #[arg(long, default_value = owlkit_textgen::DEFAULT_MODEL)]
    model: String,
    #[arg(long, default_value_t = 2)]
    max_retries: usize,
    /// Directory with prompt templates replacing the built-in ones.
    #[arg(long, value_name = "DIR")]
    prompts: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SwrlParseArgs {
    #[arg(long)]
    rule: String,
    #[command(flatten)]
    names: Names,
}

/// A domain failure, reported with exit code 1.
struct Failure(String);

impl<E: Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let result = match cli.command {
        Command::Convert(a) => convert(a, out),
        Command::Render(a) => render(a, out),
        Command::Reason(a) => reason(a, out),
        Command::Hierarchy(a) => hierarchy(a, out),
        Command::Stats(a) => stats(a, out),
        Command::EbrTrain(a) => ebr_train(a, out),
        Command::EbrQuery(a) => ebr_query(a, out),
        Command::Generate(a) => generate(a, out),
        Command::SwrlParse(a) => swrl_parse(a, out),
    };
    match result {
        Ok(()) => 0,
        Err(Failure(message)) => {
            let _ = writeln!(err, "error: {message}");
            1
        }
    }
}

fn load(path: &Path) -> Result<Ontology, Failure> {
    Ok(Ontology::load(path, Format::Functional)?)
}

fn emit(path: &Path, text: &str, out: &mut dyn Write) -> Outcome {
    if path.as_os_str() == "-" {
        out.write_all(text.as_bytes())?;
    } else {
        std::fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn parse_expr(text: &str, syntax: Syntax, ctx: &PrefixContext) -> Result<ClassExpression, Failure> {
    Ok(match syntax {
        Syntax::Manchester => parse_manchester(text, ctx)?,
        Syntax::Dl => parse_dl(text, ctx)?,
    })
}

fn print_iris<'a>(iris: impl IntoIterator<Item = &'a Iri>, out: &mut dyn Write) -> Outcome {
    for iri in iris {
        writeln!(out, "{iri}")?;
    }
    Ok(())
}

fn convert(a: ConvertArgs, out: &mut dyn Write) -> Outcome {
    let InputFormat::Functional = a.from;
    let onto = load(&a.input)?;
    let format = match a.to {
        OutputFormat::Functional => Format::Functional,
        OutputFormat::Turtle => Format::Turtle,
    };
    emit(&a.out, &ontology::to_string(&onto, format)?, out)
}

fn render(a: RenderArgs, out: &mut dyn Write) -> Outcome {
    let ctx = a.names.context(None);
    let ce = parse_expr(&a.expr, a.from, &ctx)?;
    let text = match a.to {
        Target::Manchester => render_manchester(&ce, &ctx),
        Target::Dl => render_dl(&ce, &ctx),
        Target::Sparql => to_sparql(&ce, &a.var)?.text(),
    };
    writeln!(out, "{}", text.trim_end())?;
    Ok(())
}

fn reason(a: ReasonArgs, out: &mut dyn Write) -> Outcome {
    let onto = load(&a.query.input)?;
    let ctx = a.query.names.context(Some(&onto));
    let ce = parse_expr(&a.query.query, a.query.syntax, &ctx)?;
    let config = ReasonerConfig {
        infer_hierarchy: !a.no_hierarchy,
        universal_vacuous: !a.no_vacuous_forall,
    };
    let snapshot = Snapshot::build(&onto, config);
    print_iris(snapshot.instances(&ce).iter().map(|i| &i.0), out)
}

fn resolve_class(name: &str, ctx: &PrefixContext) -> Result<Class, Failure> {
    let iri = match name.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
        Some(full) => Iri::new(full)?,
        None => ctx
            .resolve(name)
            .ok_or_else(|| Failure(format!("cannot resolve class name `{name}`")))?,
    };
    Ok(Class(iri))
}

fn hierarchy(a: HierarchyArgs, out: &mut dyn Write) -> Outcome {
    let onto = load(&a.input)?;
    let ctx = a.names.context(Some(&onto));
    let class = resolve_class(&a.class, &ctx)?;
    let snapshot = Snapshot::build(&onto, ReasonerConfig::default());
    let classes = match a.direction {
        Direction::Sub => snapshot.sub_classes(&class, a.direct),
        Direction::Super => snapshot.super_classes(&class, a.direct),
        Direction::Equiv => snapshot.equivalent_classes(&class),
    };
    print_iris(classes.iter().map(|c| &c.0), out)
}

fn stats(a: StatsArgs, out: &mut dyn Write) -> Outcome {
    let onto = load(&a.input)?;
    writeln!(out, "classes: {}", onto.classes_in_signature().len())?;
    writeln!(
        out,
        "object properties: {}",
        onto.object_properties_in_signature().len()
    )?;
    writeln!(
        out,
        "data properties: {}",
        onto.data_properties_in_signature().len()
    )?;
    writeln!(
        out,
        "individuals: {}",
        onto.individuals_in_signature().len()
    )?;
    writeln!(out, "axioms: {}", onto.axiom_count())?;
    for kind in owlkit::model::AxiomKind::ALL {
        let n = onto.axioms_of_kind(kind).len();
        if n > 0 {
            writeln!(out, "  {kind:?}: {n}")?;
        }
    }
    Ok(())
}

fn ebr_train(a: EbrTrainArgs, out: &mut dyn Write) -> Outcome {
    let onto = load(&a.input)?;
    let extraction = ebr::extract_triples(&onto);
    let config = TrainingConfig64 {
        dim: a.dim,
        learning_rate: a.learning_rate,
        epochs: a.epochs,
        negatives: a.negatives,
        seed: a.seed,
    };
    let trained = ebr::train(&extraction.triples, &config)?;
    let file = File::create(&a.out).map_err(|e| Failure(format!("{}: {e}", a.out.display())))?;
    let mut writer = BufWriter::new(file);
    trained.model.save(&mut writer)?;
    writer.flush()?;
    writeln!(
        out,
        "triples: {} (skipped {})",
        extraction.triples.len(),
        extraction.skipped
    )?;
    if let (Some(first), Some(last)) = (trained.losses.first(), trained.losses.last()) {
        writeln!(out, "loss: {first:.6} -> {last:.6}")?;
    }
    Ok(())
}

fn ebr_query(a: EbrQueryArgs, out: &mut dyn Write) -> Outcome {
    let file = File::open(&a.model).map_err(|e| Failure(format!("{}: {e}", a.model.display())))?;
    let model = EmbeddingModel64::load(BufReader::new(file))?;
    let onto = load(&a.query.input)?;
    let ctx = a.query.names.context(Some(&onto));
    let ce = parse_expr(&a.query.query, a.query.syntax, &ctx)?;
    let snapshot = Snapshot::build(&onto, ReasonerConfig::default());
    let degrees = ebr::membership(&model, &ce, &snapshot)?;
    for individual in degrees.at_least(a.gamma) {
        if a.scores {
            let degree = degrees.get(&individual).unwrap_or(0.0);
            writeln!(out, "{}\t{degree:.6}", individual.0)?;
        } else {
            writeln!(out, "{}", individual.0)?;
        }
    }
    Ok(())
}

fn generate(a: GenerateArgs, out: &mut dyn Write) -> Outcome {
    let text = std::fs::read_to_string(&a.text)
        .map_err(|e| Failure(format!("{}: {e}", a.text.display())))?;
    let classes = a
        .classes
        .iter()
        .map(|c| Iri::with_namespace(&a.namespace, c).map(Class))
        .collect::<Result<Vec<_>, _>>()?;
    let config = GenerationConfig {
        namespace: a.namespace.clone(),
        prefix: "ex".to_string(),
        allow_llm_classes: classes.is_empty() || a.allow_llm_classes,
        predefined_classes: classes,
        model: a.model.clone(),
        max_retries: a.max_retries,
        prompts: match &a.prompts {
            Some(dir) => Prompts::load(dir)?,
            None => Prompts::default(),
        },
    };
    let onto = match &a.mock {
        Some(path) => generate_ontology(
            &text,
            &MockClient::from_transcript(&Transcript::load(path)?),
            &config,
        )?,
        None => {
            let live = HttpChatClient::from_env(owlkit_textgen::DEFAULT_BASE_URL, &config.model)?;
            match &a.record {
                Some(path) => {
                    let recorder = RecordingClient::new(live);
                    let onto = generate_ontology(&text, &recorder, &config);
                    std::fs::write(path, recorder.into_transcript().to_json())
                        .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
                    onto?
                }
                None => generate_ontology(&text, &live, &config)?,
            }
        }
    };
    emit(
        &a.out,
        &ontology::to_string(&onto, Format::Functional)?,
        out,
    )
}

fn swrl_parse(a: SwrlParseArgs, out: &mut dyn Write) -> Outcome {
    let ctx = a.names.context(None);
    let rule = parse_swrl(&a.rule, &ctx)?;
    writeln!(out, "{}", render_swrl(&rule, &ctx))?;
    Ok(())
}
