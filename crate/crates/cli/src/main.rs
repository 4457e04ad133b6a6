//! `bdc`: white graphs, presentations, determinants and left-orderability
//! verdicts for link diagrams given as PD codes.
//!
//! Exit codes: 0 success (for `decide-lo`: left-orderable), 1 not
//! left-orderable, 2 out of scope, 3 usage or I/O error, 4 invalid input or
//! pipeline error.

use std::fmt::Write as _;
use std::io::Read;
use std::process::ExitCode;

use bdc_core::coset::DEFAULT_MAX_COSETS;
use bdc_core::homology::bigint_json;
use bdc_core::orderability::{certify_with, decide_with};
use bdc_core::{
    analyze, build_diagram, check_alternating, enumerate, export_presentation, h1_order, parse_pd,
    split_components, verdict_report, ColorChoice, ExportFormat, LinkDiagram, Options, H1,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

const EXIT_USAGE: u8 = 3;
const EXIT_INPUT: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "bdc",
    version,
    about = "Branched double covers of link diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a PD code and report faces, components and alternation.
    Parse(Common),
    /// Print the rooted white graph.
    Whitegraph(Common),
    /// Print the group presentation read off the white graph.
    Presentation(Common),
    /// Print the determinant (product over split components).
    Det(Common),
    /// Print the first homology of the branched double cover, per split component.
    Homology(Common),
    /// Decide left-orderability; the exit code carries the verdict.
    DecideLo(Common),
    /// Run Todd-Coxeter coset enumeration on the presentation.
    Enumerate(Common),
}

#[derive(Args, Debug)]
struct Common {
    #[command(flatten)]
    input: InputArgs,
    /// Coloring choice: `a` makes the face of dart (0,0) white, `b` black.
    #[arg(long, value_enum, default_value_t = ColorArg::A)]
    color: ColorArg,
    /// White face id to use as the root (default: smallest white face).
    #[arg(long)]
    root: Option<usize>,
    #[arg(long, conflicts_with = "dot")]
    json: bool,
    /// Graphviz output (whitegraph only).
    #[arg(long)]
    dot: bool,
    /// GAP syntax (presentation only).
    #[arg(long, conflicts_with_all = ["json", "dot"])]
    gap: bool,
    /// Coset budget for `enumerate`.
    #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
    max_cosets: usize,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// PD code file, or `-` for standard input.
    #[arg(long, value_name = "FILE")]
    pd: Option<String>,
    /// PD code given inline, e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)".
    #[arg(long, value_name = "PD")]
    code: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ColorArg {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Human,
    Json,
    Dot,
    Gap,
}

enum Failure {
    Usage(String),
    Input(bdc_core::Error),
}

impl From<bdc_core::Error> for Failure {
    fn from(e: bdc_core::Error) -> Self {
        Failure::Input(e)
    }
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Output {
        Output { text, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn common(command: &Command) -> &Common {
    match command {
        Command::Parse(c)
        | Command::Whitegraph(c)
        | Command::Presentation(c)
        | Command::Det(c)
        | Command::Homology(c)
        | Command::DecideLo(c)
        | Command::Enumerate(c) => c,
    }
}

fn read_input(input: &InputArgs) -> Result<String, Failure> {
    match (input.pd.as_deref(), input.code.as_deref()) {
        (_, Some(code)) => Ok(code.to_string()),
        (Some("-"), None) => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("reading standard input: {e}")))?;
            Ok(s)
        }
        (Some(path), None) => {
            std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
        }
        (None, None) => Err(Failure::Usage("one of --pd or --code is required".into())),
    }
}

fn run(command: Command) -> Result<Output, Failure> {
    let c = common(&command);
    let format = match (c.json, c.dot, c.gap) {
        (true, _, _) => Format::Json,
        (_, true, _) => Format::Dot,
        (_, _, true) => Format::Gap,
        _ => Format::Human,
    };
    match (format, &command) {
        (Format::Dot, Command::Whitegraph(_)) | (Format::Gap, Command::Presentation(_)) => {}
        (Format::Dot, _) => {
            return Err(Failure::Usage(
                "--dot is only supported by whitegraph".into(),
            ))
        }
        (Format::Gap, _) => {
            return Err(Failure::Usage(
                "--gap is only supported by presentation".into(),
            ))
        }
        _ => {}
    }
    let d = build_diagram(parse_pd(&read_input(&c.input)?)?)?;
    let options = Options {
        color: match c.color {
            ColorArg::A => ColorChoice::FirstFaceWhite,
            ColorArg::B => ColorChoice::FirstFaceBlack,
        },
        root: c.root,
    };
    match command {
        Command::Parse(_) => Ok(Output::ok(parse(&d, format))),
        Command::Whitegraph(_) => whitegraph(&d, &options, format),
        Command::Presentation(_) => presentation(&d, &options, format),
        Command::Det(_) => det(&d, &options, format),
        Command::Homology(_) => homology(&d, &options, format),
        Command::DecideLo(_) => decide_lo(&d, &options, format),
        Command::Enumerate(c) => enumerate_cmd(&d, &options, c.max_cosets, format),
    }
}

fn json_line(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn parse(d: &LinkDiagram, format: Format) -> String {
    let alt = check_alternating(d);
    if format == Format::Json {
        let mut v = d.to_json();
        v["component_count"] = d.component_count().into();
        v["alternating"] = alt.alternating.into();
        v["witness"] = alt.witness.into();
        return json_line(&v);
    }
    let mut out = String::new();
    writeln!(out, "pd {}", d.pd()).unwrap();
    writeln!(out, "crossings {}", d.crossing_count()).unwrap();
    writeln!(out, "components {}", d.component_count()).unwrap();
    match alt.witness {
        None => writeln!(out, "alternating yes").unwrap(),
        Some(arc) => writeln!(out, "alternating no (arc {arc})").unwrap(),
    }
    for f in 0..d.face_count() {
        let darts: Vec<String> = d
            .face(f)
            .map(|x| format!("({},{})", x.crossing, x.position))
            .collect();
        writeln!(out, "face {f}: {}", darts.join(" ")).unwrap();
    }
    out
}

fn whitegraph(d: &LinkDiagram, options: &Options, format: Format) -> Result<Output, Failure> {
    let w = analyze(d, options)?.white_graph;
    let text = match format {
        Format::Dot => w.to_dot(),
        Format::Json => json_line(&serde_json::to_value(&w).expect("white graph serializes")),
        _ => {
            let mut out = String::new();
            let vs: Vec<String> = w.vertices().iter().map(|v| v.to_string()).collect();
            writeln!(out, "vertices {}", vs.join(" ")).unwrap();
            writeln!(out, "root {}", w.root()).unwrap();
            for e in w.edges() {
                writeln!(
                    out,
                    "c{} {} -- {} {}",
                    e.crossing, e.ends.0, e.ends.1, e.sign
                )
                .unwrap();
            }
            out
        }
    };
    Ok(Output::ok(text))
}

fn presentation(d: &LinkDiagram, options: &Options, format: Format) -> Result<Output, Failure> {
    let p = analyze(d, options)?.presentation;
    let text = match format {
        Format::Json => json_line(&p.to_json()),
        Format::Gap => export_presentation(&p, ExportFormat::Gap),
        _ => export_presentation(&p, ExportFormat::Plain) + "\n",
    };
    Ok(Output::ok(text))
}

/// H1 of each split component. A root override only makes sense for a
/// single connected piece.
fn component_h1(d: &LinkDiagram, options: &Options) -> Result<Vec<H1>, Failure> {
    let parts = split_components(d);
    if parts.len() > 1 && options.root.is_some() {
        return Err(bdc_core::Error::NotConnected.into());
    }
    parts
        .iter()
        .map(|part| Ok(h1_order(&analyze(part, options)?.presentation)))
        .collect()
}

fn det(d: &LinkDiagram, options: &Options, format: Format) -> Result<Output, Failure> {
    let hs = component_h1(d, options)?;
    let product = hs
        .iter()
        .map(H1::determinant)
        .reduce(|a, b| a * b)
        .expect("at least one component");
    let text = if format == Format::Json {
        let comps: Vec<_> = hs.iter().map(|h| bigint_json(&h.determinant())).collect();
        json_line(&serde_json::json!({ "determinant": bigint_json(&product), "components": comps }))
    } else {
        format!("{product}\n")
    };
    Ok(Output::ok(text))
}

fn describe(h: &H1) -> String {
    let mut parts: Vec<String> = h.torsion.iter().map(|t| format!("Z/{t}")).collect();
    match h.free_rank {
        0 => {}
        1 => parts.push("Z".into()),
        r => parts.push(format!("Z^{r}")),
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn homology(d: &LinkDiagram, options: &Options, format: Format) -> Result<Output, Failure> {
    let hs = component_h1(d, options)?;
    let text = if format == Format::Json {
        json_line(
            &serde_json::json!({ "components": hs.iter().map(H1::to_json).collect::<Vec<_>>() }),
        )
    } else if hs.len() == 1 {
        describe(&hs[0]) + "\n"
    } else {
        hs.iter()
            .enumerate()
            .map(|(i, h)| format!("component {}: {}\n", i + 1, describe(h)))
            .collect()
    };
    Ok(Output::ok(text))
}

fn decide_lo(d: &LinkDiagram, options: &Options, format: Format) -> Result<Output, Failure> {
    let verdict = decide_with(d, options)?;
    let text = if format == Format::Json {
        let trace = certify_with(d, options)?;
        verdict_report(&verdict, &trace) + "\n"
    } else {
        format!(
            "{:?} ({:?}), determinant {}\n",
            verdict.status,
            verdict.reason,
            verdict.determinant()
        )
    };
    Ok(Output {
        text,
        code: verdict.exit_code() as u8,
    })
}

fn enumerate_cmd(
    d: &LinkDiagram,
    options: &Options,
    max: usize,
    format: Format,
) -> Result<Output, Failure> {
    let p = analyze(d, options)?.presentation;
    let table = enumerate(&p, max)?;
    let text = if format == Format::Json {
        json_line(&table.to_json())
    } else {
        match table.order() {
            Some(k) => format!("order {k}\n"),
            None => format!("inconclusive: more than {max} cosets\n"),
        }
    };
    Ok(Output::ok(text))
}
