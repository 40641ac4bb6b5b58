use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use gridknot::convert::{
    braid_to_grid, default_scramble_moves, grid_to_braid, random_diagram, random_unknot_with,
    torus_grid, BraidWord,
};
use gridknot::invariants::{
    corner_counts, crossing_bound_holds, crossing_number, is_rigid, writhe_report, writhe_test,
};
use gridknot::simplify::{
    census, decompose, monotonic_simplify, verify_certificate, Classification, OutcomeTag,
    SearchConfig, DEFAULT_CENSUS_CEILING, DEFAULT_MAX_ORBIT_STATES, DEFAULT_MAX_WALL_MILLIS,
};
use gridknot::{
    format_diagram, parse_diagram, render_ascii, Format, GridDiagram, MoveSequence, Orientation,
};

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 2;
const EXIT_KNOTTED: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "gridknot",
    version,
    about = "Rectangular diagrams of knots and links"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Input file; `-` or absent reads standard input.
    #[arg(long = "in", global = true, value_name = "PATH")]
    input: Option<PathBuf>,

    /// Diagram file format for input and diagram output.
    #[arg(long, global = true, default_value = "json")]
    format: Format,

    /// Write the result here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Write the move certificate here.
    #[arg(long, global = true, value_name = "PATH")]
    cert_out: Option<PathBuf>,

    /// Certificate to check.
    #[arg(long, global = true, value_name = "PATH")]
    cert: Option<PathBuf>,

    /// Write the partial orbit here when a limit is hit.
    #[arg(long, global = true, value_name = "PATH")]
    snapshot_out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = OrientationChoice::Default)]
    orientation: OrientationChoice,

    /// Largest number of states in one exchange orbit.
    #[arg(long, global = true, env = "GRIDKNOT_MAX_ORBIT", default_value_t = DEFAULT_MAX_ORBIT_STATES)]
    max_orbit: usize,

    /// Wall-clock budget in milliseconds.
    #[arg(long, global = true, env = "GRIDKNOT_MAX_MILLIS", default_value_t = DEFAULT_MAX_WALL_MILLIS)]
    max_millis: u64,

    /// Search worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Ordered merges and no timing fields, for byte-identical output.
    #[arg(long, global = true)]
    deterministic: bool,

    /// Human-readable text instead of JSON.
    #[arg(long, global = true)]
    human: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrientationChoice {
    Default,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the input is a valid diagram.
    Validate,
    /// Draw the diagram.
    Render,
    /// Crossings, turns and the writhe pair.
    Invariants,
    /// Certify knottedness from the writhe pair.
    WritheTest,
    /// Whether no exchange or destabilization applies.
    Rigid,
    /// Decide whether the input is the unknot (exit 0), irreducible (3) or
    /// undecided within limits (4).
    Recognize,
    /// Split and factor into classified pieces.
    Decompose,
    /// Monotonic simplification with full terminal orbit and trace.
    Simplify,
    /// Read a braid word from the diagram.
    ToBraid,
    /// Build a diagram from a braid word such as "3: s1 s-2 s1 s-2".
    FromBraid {
        /// The word; read from the input when absent.
        word: Option<String>,
    },
    /// Torus link T(p, q).
    Torus { p: usize, q: usize },
    /// Uniformly random diagram of size `n`.
    Random { n: usize },
    /// Unknot diagram of size `n` scrambled from the trivial diagram.
    Scramble {
        n: usize,
        /// Number of moves (default 3n + 20).
        #[arg(long)]
        moves: Option<usize>,
    },
    /// Classes and exchange orbits of all diagrams of size `n`.
    Census {
        n: usize,
        #[arg(long, default_value_t = DEFAULT_CENSUS_CEILING)]
        ceiling: usize,
    },
    /// Replay a certificate against the input diagram.
    CheckCert,
}

/// Result of one command: the payload, the human rendering and, for
/// produced diagrams, the file body in the chosen format.
struct Report {
    json: Value,
    text: String,
    raw: Option<String>,
    code: u8,
}

impl Report {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Report {
            json,
            text: text.into(),
            raw: None,
            code: EXIT_OK,
        }
    }

    fn code(mut self, code: u8) -> Self {
        self.code = code;
        self
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let started = Instant::now();
    let mut report = dispatch(cli)?;
    if !cli.deterministic && report.raw.is_none() && report.json.is_object() {
        report.json["elapsed_millis"] = json!(started.elapsed().as_millis() as u64);
    }
    let body = if let (Some(raw), false) = (&report.raw, cli.human) {
        raw.clone()
    } else if cli.human {
        let mut t = report.text.clone();
        if !t.ends_with('\n') {
            t.push('\n');
        }
        t
    } else {
        let mut s = serde_json::to_string_pretty(&report.json)?;
        s.push('\n');
        s
    };
    emit(cli.out.as_deref(), &body)?;
    Ok(report.code)
}

fn emit(path: Option<&Path>, body: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().lock().write_all(body.as_bytes())?;
            Ok(())
        }
    }
}

fn read_input(cli: &Cli) -> Result<String> {
    match cli.input.as_deref() {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .context("reading standard input")?;
            Ok(s)
        }
    }
}

fn input_diagram(cli: &Cli) -> Result<GridDiagram> {
    let src = read_input(cli)?;
    let name = cli
        .input
        .as_deref()
        .map_or("<stdin>".to_string(), |p| p.display().to_string());
    parse_diagram(&src, cli.format).with_context(|| format!("invalid diagram in {name}"))
}

fn search_config(cli: &Cli) -> Result<SearchConfig> {
    if cli.max_orbit == 0 || cli.max_millis == 0 || cli.jobs == 0 {
        bail!("--max-orbit, --max-millis and --jobs must be positive");
    }
    Ok(SearchConfig {
        max_orbit_states: cli.max_orbit,
        max_wall_millis: cli.max_millis,
        parallelism: cli.jobs,
        deterministic: cli.deterministic,
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    fs::write(path, s).with_context(|| format!("writing {}", path.display()))
}

fn diagram_json(d: &GridDiagram) -> Value {
    serde_json::to_value(d).expect("diagrams serialize")
}

/// A produced diagram, written in the chosen file format; `--human`
/// draws it instead.
fn diagram_report(cli: &Cli, d: &GridDiagram) -> Report {
    let mut report = Report::new(diagram_json(d), render_ascii(d));
    report.raw = Some(format_diagram(d, cli.format));
    report
}

fn orientations(cli: &Cli, d: &GridDiagram) -> Vec<Orientation> {
    match cli.orientation {
        OrientationChoice::Default => vec![Orientation::default_for(d)],
        OrientationChoice::All => Orientation::all_relative(d.component_count()).collect(),
    }
}

fn outcome_name(tag: OutcomeTag) -> &'static str {
    match tag {
        OutcomeTag::Trivial => "trivial",
        OutcomeTag::Irreducible => "irreducible",
        OutcomeTag::Inconclusive => "inconclusive",
    }
}

fn outcome_code(tag: OutcomeTag) -> u8 {
    match tag {
        OutcomeTag::Trivial => EXIT_OK,
        OutcomeTag::Irreducible => EXIT_KNOTTED,
        OutcomeTag::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn dispatch(cli: &Cli) -> Result<Report> {
    Ok(match &cli.command {
        Command::Validate => {
            let d = input_diagram(cli)?;
            Report::new(
                json!({"valid": true, "n": d.size(), "components": d.component_count()}),
                format!(
                    "valid diagram, n = {}, {} component(s)",
                    d.size(),
                    d.component_count()
                ),
            )
        }
        Command::Render => {
            let d = input_diagram(cli)?;
            let art = render_ascii(&d);
            Report::new(json!({"n": d.size(), "ascii": art}), art)
        }
        Command::Invariants => {
            let d = input_diagram(cli)?;
            let (n_plus, n_minus) = corner_counts(&d);
            let reports: Vec<_> = orientations(cli, &d)
                .iter()
                .map(|o| writhe_report(&d, o))
                .collect();
            let first = &reports[0];
            let mut json = json!({
                "n": d.size(),
                "components": d.component_count(),
                "crossings": crossing_number(&d),
                "crossing_bound_holds": crossing_bound_holds(&d),
                "n_plus": n_plus,
                "n_minus": n_minus,
                "w": first.w,
                "w_minus": first.w_minus,
                "w_plus": first.w_plus,
            });
            if cli.orientation == OrientationChoice::All {
                json["orientations"] = serde_json::to_value(&reports)?;
            }
            let mut text = format!(
                "n = {}, components = {}, crossings = {}, turns +{} -{}\n",
                d.size(),
                d.component_count(),
                crossing_number(&d),
                n_plus,
                n_minus
            );
            for r in &reports {
                text += &format!(
                    "orientation {:?}: w = {}, (w-, w+) = ({}, {})\n",
                    r.orientation.reversed, r.w, r.w_minus, r.w_plus
                );
            }
            Report::new(json, text)
        }
        Command::WritheTest => {
            let d = input_diagram(cli)?;
            let verdict = writhe_test(&d, cli.orientation == OrientationChoice::All);
            let text = match &verdict.witness {
                Some(w) => format!(
                    "not an unlink: {:?} with (w-, w+) = ({}, {}) and k = {}",
                    w.violated, w.report.w_minus, w.report.w_plus, w.components
                ),
                None => "no conclusion".to_string(),
            };
            Report::new(serde_json::to_value(&verdict)?, text)
        }
        Command::Rigid => {
            let d = input_diagram(cli)?;
            let rigid = is_rigid(&d);
            Report::new(
                json!({"rigid": rigid}),
                if rigid { "rigid" } else { "not rigid" },
            )
        }
        Command::Recognize => {
            let d = input_diagram(cli)?;
            let out = monotonic_simplify(&d, &search_config(cli)?);
            side_outputs(cli, &out.trace, out.snapshot.as_ref().map(|s| s.to_text()))?;
            let json = json!({
                "outcome": outcome_name(out.tag),
                "final_n": out.final_n,
                "orbit_stats": out.orbit_stats,
                "limit": out.limit,
            });
            let text = format!("{} at n = {}", outcome_name(out.tag), out.final_n);
            Report::new(json, text).code(outcome_code(out.tag))
        }
        Command::Simplify => {
            let d = input_diagram(cli)?;
            let out = monotonic_simplify(&d, &search_config(cli)?);
            side_outputs(cli, &out.trace, out.snapshot.as_ref().map(|s| s.to_text()))?;
            let finals: Vec<Value> = out.final_diagrams().map(|f| diagram_json(&f)).collect();
            let json = json!({
                "outcome": outcome_name(out.tag),
                "final_n": out.final_n,
                "final_diagrams": finals,
                "trace": out.trace,
                "orbit_stats": out.orbit_stats,
                "limit": out.limit,
            });
            let mut text = format!(
                "{} at n = {}, {} terminal representative(s)\n",
                outcome_name(out.tag),
                out.final_n,
                out.final_keys.len()
            );
            if let Some(first) = out.final_diagrams().next() {
                text += &render_ascii(&first);
            }
            let code = if out.tag == OutcomeTag::Inconclusive {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            };
            Report::new(json, text).code(code)
        }
        Command::Decompose => {
            let d = input_diagram(cli)?;
            let tree = decompose(&d, &search_config(cli)?);
            let leaves = tree.leaves();
            let unresolved = leaves.iter().any(|(c, _)| *c == Classification::Unresolved);
            let text = leaves
                .iter()
                .map(|(c, d)| format!("{c:?} (n = {})", d.size()))
                .collect::<Vec<_>>()
                .join("\n");
            let code = if unresolved {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            };
            Report::new(serde_json::to_value(&tree)?, text).code(code)
        }
        Command::ToBraid => {
            let d = input_diagram(cli)?;
            let braid = grid_to_braid(&d, &Orientation::default_for(&d));
            Report::new(
                json!({
                    "braid": braid.to_string(),
                    "strands": braid.strands,
                    "length": braid.letters.len(),
                    "exponent_sum": braid.exponent_sum(),
                }),
                braid.to_string(),
            )
        }
        Command::FromBraid { word } => {
            let src = match word {
                Some(w) => w.clone(),
                None => read_input(cli)?,
            };
            let braid: BraidWord = src.trim().parse().context("invalid braid word")?;
            let d = braid_to_grid(&braid)?;
            diagram_report(cli, &d)
        }
        Command::Torus { p, q } => diagram_report(cli, &torus_grid(*p, *q)?),
        Command::Random { n } => diagram_report(cli, &random_diagram(*n, cli.seed)?),
        Command::Scramble { n, moves } => {
            let total = moves.unwrap_or_else(|| default_scramble_moves(*n));
            let (d, seq) = random_unknot_with(*n, total, cli.seed)?;
            if let Some(p) = &cli.cert_out {
                write_json(p, &seq)?;
            }
            diagram_report(cli, &d)
        }
        Command::Census { n, ceiling } => {
            let cfg = search_config(cli)?;
            match census(*n, *ceiling, &cfg) {
                Ok(r) => {
                    let text = format!(
                        "n = {}: {} diagrams, N = {} classes in {} exchange orbits, {} rigid; bounds {} < N <= {}",
                        r.n,
                        r.diagram_count,
                        r.class_count,
                        r.orbit_count,
                        r.rigid_class_count,
                        r.lower_bound,
                        r.upper_bound
                    );
                    let mut json = serde_json::to_value(&r)?;
                    json["within_bounds"] = json!(r.within_bounds());
                    Report::new(json, text)
                }
                Err(e) => {
                    eprintln!("census: {e}");
                    Report::new(json!({"error": e.to_string()}), e.to_string())
                        .code(EXIT_INCONCLUSIVE)
                }
            }
        }
        Command::CheckCert => {
            let d = input_diagram(cli)?;
            let path = cli
                .cert
                .as_deref()
                .context("check-cert needs --cert <path>")?;
            let src =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let seq: MoveSequence = serde_json::from_str(&src)
                .with_context(|| format!("invalid certificate in {}", path.display()))?;
            let end = verify_certificate(&d, &seq).context("certificate rejected")?;
            Report::new(
                json!({
                    "valid": true,
                    "steps": seq.moves.len(),
                    "final_n": end.size(),
                    "final": seq.final_key,
                }),
                format!(
                    "certificate valid: {} moves to n = {}",
                    seq.moves.len(),
                    end.size()
                ),
            )
        }
    })
}

fn side_outputs(cli: &Cli, trace: &MoveSequence, snapshot: Option<String>) -> Result<()> {
    if let Some(p) = &cli.cert_out {
        write_json(p, trace)?;
    }
    if let (Some(p), Some(text)) = (&cli.snapshot_out, snapshot) {
        fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}
