mod report;

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use defgroups::coset_enum::CosetEnumError;
use defgroups::deficiency::{certify_with, CertifyError, CertifyOptions};
use defgroups::homology::h2_from_table_with_ceiling;
use defgroups::presentations::{parse_presentation, render_presentation, RenderFormat};
use defgroups::{
    construct, enumerate, figure_one_table, golod_shafarevich_check, h1_from_presentation, multiplication_table,
    solve, CertifyMode, DeficiencyCertificate, GsVerdict, HomologyError, Presentation, Strategy,
    DEFAULT_H2_ORDER_CEILING,
};
use serde_json::{json, Value};

use report::{Outcome, Timings};

const EXIT_PARSE: u8 = 2;
const EXIT_COSET_LIMIT: u8 = 3;
const EXIT_CEILING: u8 = 4;
const EXIT_GAP: u8 = 5;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_NO_INPUT: u8 = 66;
const EXIT_SOFTWARE: u8 = 70;

#[derive(Parser)]
#[command(name = "defgroups", version, about = "Finite p-groups of prescribed deficiency")]
struct Cli {
    /// Print a versioned JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Block counts (r, s, t) with binom(2r+2s+t, 2) + s - r = n.
    Solve {
        #[arg(short = 'n')]
        n: u64,
    },
    /// Presentation of A_p^r x B_p^s x C_p^t with deficiency -n.
    Construct {
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'n')]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Certify the result through the given pipeline.
        #[arg(long, value_enum)]
        verify: Option<Via>,
        #[command(flatten)]
        enumeration: EnumArgs,
    },
    /// Group order by coset enumeration over the trivial subgroup.
    Order {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        enumeration: EnumArgs,
    },
    /// H1 from the presentation, H2 from the bar complex of the group table.
    Homology {
        #[command(flatten)]
        input: Input,
        /// Only compute this degree.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        degree: Option<u8>,
        #[command(flatten)]
        enumeration: EnumArgs,
    },
    /// Compare the deficiency with rk H1 - d(H2).
    Certify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Via::Table)]
        via: Via,
        #[command(flatten)]
        enumeration: EnumArgs,
    },
    /// Solver output for n = 0..=max-n.
    Table {
        #[arg(short = 'p', default_value_t = 2)]
        p: u64,
        #[arg(long)]
        max_n: u64,
    },
    /// Screen (d, deficiency) against deficiency < d - d^2/4.
    GsCheck {
        #[arg(short = 'd')]
        d: u64,
        #[arg(long, allow_hyphen_values = true)]
        deficiency: i64,
    },
    /// Parse a presentation and print it in another dialect.
    Parse {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct Input {
    /// Presentation file (native grammar or JSON); `-` or nothing reads stdin.
    file: Option<PathBuf>,
}

#[derive(Args)]
struct EnumArgs {
    #[arg(long, env = "DEFGROUPS_MAX_COSETS", default_value_t = defgroups::DEFAULT_MAX_COSETS)]
    max_cosets: usize,
    #[arg(long, value_enum, default_value_t = StrategyArg::Hlt)]
    strategy: StrategyArg,
    /// Largest group order for which H2 is computed from a table.
    #[arg(long, default_value_t = DEFAULT_H2_ORDER_CEILING)]
    ceiling: usize,
}

impl EnumArgs {
    fn options(&self) -> CertifyOptions {
        CertifyOptions { max_cosets: self.max_cosets, strategy: self.strategy.into(), h2_ceiling: self.ceiling }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Gap,
}

impl From<Format> for RenderFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => RenderFormat::Native,
            Format::Json => RenderFormat::Json,
            Format::Gap => RenderFormat::Gap,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Via {
    Table,
    Kunneth,
}

impl From<Via> for CertifyMode {
    fn from(v: Via) -> Self {
        match v {
            Via::Table => CertifyMode::Table,
            Via::Kunneth => CertifyMode::Kunneth,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Hlt,
    Felsch,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Hlt => Strategy::Hlt,
            StrategyArg::Felsch => Strategy::Felsch,
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure { code, message: message.into() }
    }
}

impl From<CosetEnumError> for Failure {
    fn from(e: CosetEnumError) -> Self {
        let code = match e {
            CosetEnumError::CosetLimitExceeded(_) => EXIT_COSET_LIMIT,
            CosetEnumError::NoGenerators => EXIT_DATA,
            _ => EXIT_SOFTWARE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<HomologyError> for Failure {
    fn from(e: HomologyError) -> Self {
        let code = match e {
            HomologyError::OrderCeilingExceeded { .. } => EXIT_CEILING,
            _ => EXIT_SOFTWARE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<CertifyError> for Failure {
    fn from(e: CertifyError) -> Self {
        match e {
            CertifyError::Homology(h) => h.into(),
            CertifyError::MissingPedigree | CertifyError::PedigreeMismatch { .. } => {
                Failure::new(EXIT_DATA, e.to_string())
            }
            other => Failure::new(EXIT_SOFTWARE, other.to_string()),
        }
    }
}

fn read_presentation(input: &Input) -> Result<(String, Presentation), Failure> {
    let (label, text) = match input.file.as_deref() {
        None => ("-".to_string(), read_stdin()?),
        Some(path) if path.as_os_str() == "-" => ("-".to_string(), read_stdin()?),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::new(EXIT_NO_INPUT, format!("cannot read {}: {e}", path.display())))?;
            (path.display().to_string(), text)
        }
    };
    let parsed = if text.trim_start().starts_with('{') {
        serde_json::from_str::<Presentation>(&text).map_err(|e| e.to_string())
    } else {
        parse_presentation(&text).map_err(|e| e.to_string())
    };
    parsed.map(|p| (label.clone(), p)).map_err(|e| Failure::new(EXIT_PARSE, format!("{label}: {e}")))
}

fn read_stdin() -> Result<String, Failure> {
    let mut s = String::new();
    io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| Failure::new(EXIT_NO_INPUT, format!("cannot read standard input: {e}")))?;
    Ok(s)
}

fn summary_json(p: &Presentation) -> Value {
    let (g, r) = p.counts();
    json!({
        "text": render_presentation(p, RenderFormat::Native),
        "generators": g,
        "relators": r,
        "deficiency": p.deficiency(),
    })
}

fn certificate_json(c: &DeficiencyCertificate) -> Value {
    json!({
        "mode": c.mode,
        "lower_bound": c.lower_bound,
        "upper_bound": c.upper_bound,
        "certified_value": c.certified_value.map_or(json!("unknown"), |v| json!(v)),
        "order": c.order,
        "h1": c.h1.as_ref().map(|h| h.to_string()),
        "h2": c.h2.as_ref().map(|h| h.to_string()),
        "h2_provenance": c.h2_provenance,
        "failure": c.failure,
        "verdict": c.to_string(),
    })
}

fn certificate_text(c: &DeficiencyCertificate) -> String {
    let mut s = format!("certificate ({}): {c}\n", c.mode);
    if let Some(order) = c.order {
        let _ = writeln!(s, "  order: {order}");
    }
    if let Some(h1) = &c.h1 {
        let _ = writeln!(s, "  H1: {h1}");
    }
    if let Some(h2) = &c.h2 {
        let _ = writeln!(s, "  H2: {h2}");
    }
    let upper = c.upper_bound.map_or("unknown".to_string(), |u| u.to_string());
    let _ = writeln!(s, "  bounds: {} <= deficiency <= {upper}", c.lower_bound);
    s
}

/// Exit code for a finished certificate: success only when certified.
fn certificate_exit(c: &DeficiencyCertificate) -> u8 {
    match (&c.certified_value, &c.failure) {
        (Some(_), _) => 0,
        (None, Some(_)) => EXIT_COSET_LIMIT,
        (None, None) => EXIT_GAP,
    }
}

fn run(command: &Command) -> Result<Outcome, Failure> {
    let mut timings = Timings::default();
    match command {
        Command::Solve { n } => {
            let c = timings.time("solve", || solve(*n));
            let text = format!(
                "n = {n}\n(r, s, t) = ({}, {}, {})\nm = {}, d = {}\ngroup: {}\ndeficiency: {}\n",
                c.r,
                c.s,
                c.t,
                c.trace_m,
                c.trace_d,
                c.group_name(),
                defgroups::deficiency_of_counts(&c)
            );
            Ok(Outcome {
                params: json!({ "n": n }),
                result: json!({
                    "r": c.r, "s": c.s, "t": c.t,
                    "trace_m": c.trace_m, "trace_d": c.trace_d,
                    "group": c.group_name(),
                    "deficiency": defgroups::deficiency_of_counts(&c),
                }),
                text,
                notes: String::new(),
                exit: 0,
                timings,
            })
        }
        Command::Construct { p, n, format, verify, enumeration } => {
            let g = timings
                .time("construct", || construct(*p, *n))
                .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
            let counts = *g.pedigree().expect("constructed presentations carry counts");
            let (gens, rels) = g.counts();
            let header = format!(
                "group: {} (p = {p})\ngenerators: {gens}, relators: {rels}, deficiency: {}\n",
                counts.group_name(),
                g.deficiency()
            );
            let rendered = format!("{}\n", render_presentation(&g, (*format).into()));
            let mut result = json!({
                "group": counts.group_name(),
                "counts": counts,
                "presentation": g,
                "summary": summary_json(&g),
            });
            let mut exit = 0;
            let mut cert_text = String::new();
            if let Some(via) = verify {
                let opts = enumeration.options();
                let cert = timings.time("certify", || certify_with(&g, (*via).into(), &opts))?;
                cert_text = certificate_text(&cert);
                result["certificate"] = certificate_json(&cert);
                exit = certificate_exit(&cert);
            }
            // non-text dialects keep stdout machine-readable
            let (text, notes) = match format {
                Format::Text => (header + &rendered + &cert_text, String::new()),
                _ => (rendered, header + &cert_text),
            };
            Ok(Outcome {
                params: json!({ "p": p, "n": n, "verify": verify.map(|v| CertifyMode::from(v).to_string()) }),
                result,
                text,
                notes,
                exit,
                timings,
            })
        }
        Command::Order { input, enumeration } => {
            let (label, g) = read_presentation(input)?;
            let table =
                timings.time("enumerate", || enumerate(&g, enumeration.max_cosets, enumeration.strategy.into()))?;
            Ok(Outcome {
                params: json!({
                    "input": label,
                    "max_cosets": enumeration.max_cosets,
                    "strategy": Strategy::from(enumeration.strategy),
                }),
                result: json!({ "order": table.num_cosets(), "presentation": summary_json(&g) }),
                text: format!("{}\n", table.num_cosets()),
                notes: String::new(),
                exit: 0,
                timings,
            })
        }
        Command::Homology { input, degree, enumeration } => {
            let (label, g) = read_presentation(input)?;
            let mut text = String::new();
            let mut result = json!({ "presentation": summary_json(&g) });
            if *degree != Some(2) {
                let h1 = timings.time("h1", || h1_from_presentation(&g));
                let _ = writeln!(text, "H1 = {h1}");
                result["h1"] = json!({ "display": h1.to_string(), "group": h1 });
            }
            if *degree != Some(1) {
                let table =
                    timings.time("enumerate", || enumerate(&g, enumeration.max_cosets, enumeration.strategy.into()))?;
                let order = table.num_cosets();
                if order > enumeration.ceiling {
                    return Err(HomologyError::OrderCeilingExceeded { order, ceiling: enumeration.ceiling }.into());
                }
                let gt = multiplication_table(&table)?;
                let h2 = timings.time("h2", || h2_from_table_with_ceiling(&gt, enumeration.ceiling))?;
                let _ = writeln!(text, "H2 = {h2}");
                let _ = writeln!(text, "order = {order}");
                result["h2"] = json!({ "display": h2.to_string(), "group": h2 });
                result["order"] = json!(order);
            }
            Ok(Outcome {
                params: json!({ "input": label, "degree": degree, "ceiling": enumeration.ceiling }),
                result,
                text,
                notes: String::new(),
                exit: 0,
                timings,
            })
        }
        Command::Certify { input, via, enumeration } => {
            let (label, g) = read_presentation(input)?;
            let opts = enumeration.options();
            let cert = timings.time("certify", || certify_with(&g, (*via).into(), &opts))?;
            Ok(Outcome {
                params: json!({
                    "input": label,
                    "via": CertifyMode::from(*via),
                    "max_cosets": opts.max_cosets,
                    "ceiling": opts.h2_ceiling,
                }),
                result: json!({ "presentation": summary_json(&g), "certificate": certificate_json(&cert) }),
                text: format!("{}\n{}", render_presentation(&g, RenderFormat::Native), certificate_text(&cert)),
                notes: String::new(),
                exit: certificate_exit(&cert),
                timings,
            })
        }
        Command::Table { p, max_n } => {
            if !defgroups::presentations::is_prime(*p) {
                return Err(Failure::new(EXIT_USAGE, format!("{p} is not prime")));
            }
            let rows = timings.time("table", || figure_one_table(*p, *max_n));
            let mut text = format!("{:>4} {:>3} {:>3} {:>3}  group\n", "n", "r", "s", "t");
            for row in &rows {
                let c = &row.counts;
                let _ = writeln!(text, "{:>4} {:>3} {:>3} {:>3}  {}", row.n, c.r, c.s, c.t, row.name);
            }
            let result: Vec<Value> = rows
                .iter()
                .map(|row| json!({ "n": row.n, "r": row.counts.r, "s": row.counts.s, "t": row.counts.t, "group": row.name }))
                .collect();
            Ok(Outcome {
                params: json!({ "p": p, "max_n": max_n }),
                result: json!(result),
                text,
                notes: String::new(),
                exit: 0,
                timings,
            })
        }
        Command::GsCheck { d, deficiency } => {
            let verdict = golod_shafarevich_check(*d, *deficiency);
            // d - d^2/4 as a reduced fraction
            let num = 4 * (*d as i128) - (*d as i128).pow(2);
            let den = if num % 4 == 0 { 1 } else if num % 2 == 0 { 2 } else { 4 };
            let num = num * den / 4;
            let bound = if den == 1 { num.to_string() } else { format!("{num}/{den}") };
            let word = match verdict {
                GsVerdict::Consistent => "consistent",
                GsVerdict::Violation => "violation",
            };
            let text = format!(
                "d = {d}, deficiency = {deficiency}\nrequired: deficiency < d - d^2/4 = {bound}\nverdict: {word}\n"
            );
            Ok(Outcome {
                params: json!({ "d": d, "deficiency": deficiency }),
                result: json!({ "bound": bound, "verdict": verdict }),
                text,
                notes: String::new(),
                exit: 0,
                timings,
            })
        }
        Command::Parse { input, format } => {
            let (label, g) = read_presentation(input)?;
            Ok(Outcome {
                params: json!({ "input": label }),
                result: json!({ "presentation": g, "summary": summary_json(&g) }),
                text: format!("{}\n", render_presentation(&g, (*format).into())),
                notes: String::new(),
                exit: 0,
                timings,
            })
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Solve { .. } => "solve",
        Command::Construct { .. } => "construct",
        Command::Order { .. } => "order",
        Command::Homology { .. } => "homology",
        Command::Certify { .. } => "certify",
        Command::Table { .. } => "table",
        Command::GsCheck { .. } => "gs-check",
        Command::Parse { .. } => "parse",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.command) {
        Ok(outcome) => {
            let (report, text, notes, exit) = outcome.into_report(command_name(&cli.command));
            let mut out = io::stdout().lock();
            let written = if cli.json {
                serde_json::to_writer_pretty(&mut out, &report)
                    .map_err(io::Error::from)
                    .and_then(|()| writeln!(out))
            } else {
                eprint!("{notes}");
                out.write_all(text.as_bytes())
            };
            if written.is_err() {
                return ExitCode::from(EXIT_SOFTWARE);
            }
            ExitCode::from(exit)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
