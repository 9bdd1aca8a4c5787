//! `gjfill`: construct, verify and extend Gomory-Johnson functions with exact
//! rational arithmetic.
//!
//! Exit codes: 0 when the checked property holds, 1 when it fails (a witness
//! or certificate is printed), 2 on usage or input errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gj_core::catalog::{gj_2_slope, gmic};
use gj_core::fillins::{injective_2_slope_fill_in, two_slope_fill_in};
use gj_core::groups::{
    finite_extremality_test, finite_minimality_test, interpolate_to_infinite_group,
    interpolation_extremality_certificate, pullback_to_refinement, restrict_to_finite_group,
};
use gj_core::io::{any_from_json, function_from_json, group_from_json, AnyFunction};
use gj_core::minimality::minimality_test;
use gj_core::pipeline::{fill_in_sequence, master_pipeline};
use gj_core::plot::PlotDocument;
use gj_core::rational::{format_rational, parse_rational};
use gj_core::{Error, PwlPeriodic, Rational};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "gjfill", version, about = "Exact tools for Gomory-Johnson cut-generating functions")]
struct Cli {
    /// read the input function from this file instead of standard input
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// write the result to this file instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// emit reports as JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named function from the catalog
    Construct {
        #[arg(value_enum)]
        name: Family,
        #[arg(long, value_parser = rational_arg)]
        f: Rational,
        #[arg(long, value_parser = rational_arg)]
        lambda: Option<Rational>,
    },
    /// Check minimality or extremality of a function or group function
    Verify {
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Minimal)]
        mode: Mode,
    },
    /// Approximate a minimal function by a two-slope function
    FillIn {
        file: Option<PathBuf>,
        #[arg(long, value_parser = rational_arg)]
        epsilon: Option<Rational>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_enum, default_value_t = Algorithm::Injective)]
        algorithm: Algorithm,
    },
    /// Restrict a function to the cyclic group (1/n)Z/Z
    Restrict {
        file: Option<PathBuf>,
        #[arg(long)]
        n: usize,
    },
    /// Interpolate a group function to a function on R/Z
    Interpolate { file: Option<PathBuf> },
    /// Pull a group function back along (1/n)Z/Z -> (1/N)Z/Z
    Pullback {
        file: Option<PathBuf>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        f_index: Option<usize>,
    },
    /// Extend an extreme group function to a two-slope extreme function on R/Z
    MasterPipeline {
        file: Option<PathBuf>,
        #[arg(long, value_parser = rational_arg)]
        epsilon: Option<Rational>,
    },
    /// Fill-ins with epsilon = 2^-i for i = 1..count, with probe points
    Sequence {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        count: usize,
        #[arg(long, value_delimiter = ',', value_parser = rational_arg)]
        probes: Vec<Rational>,
    },
    /// Plot function graphs as SVG or CSV
    Plot {
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
        /// output path (same as --output)
        #[arg(long)]
        out: Option<PathBuf>,
        /// draw ticks at (1/n)Z
        #[arg(long)]
        ticks: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "gj_2_slope", alias = "gj-2-slope")]
    Gj2Slope,
    Gmic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Minimal,
    ExtremeFinite,
    ExtremeTwoSlope,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Injective,
    TwoSlope,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Svg,
    Csv,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// What a command produced: text for the output and the exit status.
struct Outcome {
    body: String,
    holds: bool,
}

impl Outcome {
    fn holds(body: String) -> Self {
        Outcome { body, holds: true }
    }
    fn verdict(body: String, holds: bool) -> Self {
        Outcome { body, holds }
    }
}

enum Failure {
    /// the property under test fails
    Property(String),
    /// usage, input or IO error
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotMinimal(_) | Error::VerificationFailed(_) => Failure::Property(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CmdResult = Result<Outcome, Failure>;

fn read_source(file: Option<&Path>, input: Option<&Path>) -> Result<String, Failure> {
    match file.or(input) {
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report types serialize")
}

fn show(x: &Rational) -> String {
    format_rational(x)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match &cli.command {
        Command::Plot { out: Some(p), .. } => Some(p.clone()),
        _ => cli.output.clone(),
    };
    let result = run(&cli);
    let (body, code) = match result {
        Ok(o) => (o.body, if o.holds { 0 } else { 1 }),
        Err(Failure::Property(msg)) => {
            eprintln!("gjfill: {msg}");
            (String::new(), 1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("gjfill: {msg}");
            return ExitCode::from(2);
        }
    };
    if !body.is_empty() {
        let written = match &output {
            Some(p) => fs::write(p, &body),
            None => io::stdout().write_all(body.as_bytes()),
        };
        if let Err(e) = written {
            eprintln!("gjfill: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}

fn run(cli: &Cli) -> CmdResult {
    let input = cli.input.as_deref();
    match &cli.command {
        Command::Construct { name, f, lambda } => {
            let pi = match name {
                Family::Gj2Slope => {
                    let lambda = lambda
                        .as_ref()
                        .ok_or_else(|| Failure::Input("gj_2_slope needs --lambda".into()))?;
                    gj_2_slope(f, lambda)?
                }
                Family::Gmic => gmic(f)?,
            };
            Ok(Outcome::holds(json_line(&pi)))
        }
        Command::Verify { file, mode } => {
            let any = any_from_json(&read_source(file.as_deref(), input)?)?;
            verify(any, *mode, cli.json)
        }
        Command::FillIn {
            file,
            epsilon,
            m,
            algorithm,
        } => {
            let any = any_from_json(&read_source(file.as_deref(), input)?)?;
            fill_in(any, epsilon.clone(), *m, *algorithm)
        }
        Command::Restrict { file, n } => {
            let pi = function_from_json(&read_source(file.as_deref(), input)?)?;
            Ok(Outcome::holds(json_line(&restrict_to_finite_group(&pi, *n)?)))
        }
        Command::Interpolate { file } => {
            let h = group_from_json(&read_source(file.as_deref(), input)?)?;
            Ok(Outcome::holds(json_line(&interpolate_to_infinite_group(&h))))
        }
        Command::Pullback { file, n, f_index } => {
            let h = group_from_json(&read_source(file.as_deref(), input)?)?;
            Ok(Outcome::holds(json_line(&pullback_to_refinement(&h, *n, *f_index)?)))
        }
        Command::MasterPipeline { file, epsilon } => {
            let h = group_from_json(&read_source(file.as_deref(), input)?)?;
            let rep = master_pipeline(&h, epsilon.clone())?;
            let ok = rep.success();
            let body = if cli.json {
                to_json(&rep)
            } else {
                let mut s = format!(
                    "input on C_{}: {}\n",
                    h.order(),
                    if rep.input.extreme { "extreme" } else { "not extreme" }
                );
                if let Some(fill) = &rep.fill_in {
                    let p = &fill.params;
                    s += &format!(
                        "fill-in: q={} r={} delta={} m={} D={} epsilon={}\n",
                        p.q,
                        p.r,
                        show(&p.delta),
                        p.m,
                        p.d,
                        show(&p.epsilon)
                    );
                    s += &format!("phi: {} breakpoints on (1/{})Z\n", fill.phi.breakpoints().len(), p.fine());
                    s += &format!("phi extreme (two slopes, minimal): {}\n", rep.phi_extreme);
                    s += &format!("restriction to C_{} equals input: {}\n", h.order(), rep.restriction_matches);
                } else {
                    s += &format!("certificate:\n{}\n", to_json(&rep.input));
                }
                s
            };
            Ok(Outcome::verdict(terminated(body), ok))
        }
        Command::Sequence { file, count, probes } => {
            let pi = function_from_json(&read_source(file.as_deref(), input)?)?;
            let rep = fill_in_sequence(&pi, *count, probes)?;
            let ok = rep.steps.iter().all(|s| s.within_epsilon);
            let body = if cli.json {
                to_json(&rep)
            } else {
                let mut s = format!("q={} r={}\n", rep.q, rep.r);
                for st in &rep.steps {
                    s += &format!(
                        "i={} epsilon={} m={} sup|phi-pi|={} within={}\n",
                        st.i,
                        show(&st.epsilon),
                        st.m,
                        show(&st.sup_norm),
                        st.within_epsilon
                    );
                }
                for p in &rep.probes {
                    let from = p.stable_from.map_or("never".to_string(), |i| format!("i={i}"));
                    s += &format!("probe {}: pi={} stable from {from}\n", show(&p.x), show(&p.target));
                }
                s
            };
            Ok(Outcome::verdict(terminated(body), ok))
        }
        Command::Plot {
            files,
            format,
            ticks,
            ..
        } => plot(files, *format, *ticks),
    }
}

fn json_line<T: Serialize>(v: &T) -> String {
    terminated(to_json(v))
}

fn terminated(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn verify(any: AnyFunction, mode: Mode, as_json: bool) -> CmdResult {
    let (report, holds, summary) = match (mode, any) {
        (Mode::Minimal, AnyFunction::Infinite(pi)) => {
            let v = minimality_test(&pi);
            let summary = v.witness.as_ref().map(|w| w.to_string());
            (serde_json::to_value(&v), v.minimal, summary)
        }
        (Mode::Minimal, AnyFunction::Finite(h)) => {
            let v = finite_minimality_test(&h);
            let summary = v.witness.as_ref().map(|w| w.to_string());
            (serde_json::to_value(&v), v.minimal, summary)
        }
        (Mode::ExtremeFinite, AnyFunction::Finite(h)) => {
            let c = finite_extremality_test(&h)?;
            (serde_json::to_value(&c), c.extreme, None)
        }
        (Mode::ExtremeFinite, AnyFunction::Infinite(pi)) => {
            let c = interpolation_extremality_certificate(&pi)?;
            (serde_json::to_value(&c), c.extreme, None)
        }
        (Mode::ExtremeTwoSlope, AnyFunction::Infinite(pi)) => two_slope_verdict(&pi),
        (Mode::ExtremeTwoSlope, AnyFunction::Finite(_)) => {
            return Err(Failure::Input("extreme-two-slope needs a function on R/Z".into()))
        }
    };
    let report = report.map_err(|e| Failure::Input(e.to_string()))?;
    let body = if as_json || !holds && summary.is_none() {
        to_json(&report)
    } else {
        let word = if holds { "holds" } else { "fails" };
        match summary {
            Some(s) if !holds => format!("{word}: {s}"),
            _ => word.to_string(),
        }
    };
    Ok(Outcome::verdict(terminated(body), holds))
}

fn two_slope_verdict(
    pi: &PwlPeriodic,
) -> (serde_json::Result<serde_json::Value>, bool, Option<String>) {
    let v = minimality_test(pi);
    let slopes: Vec<String> = pi.slope_values().iter().map(show).collect();
    let holds = v.minimal && slopes.len() == 2;
    let summary = match &v.witness {
        Some(w) => Some(w.to_string()),
        None if !holds => Some(format!("slope values {{{}}} are not exactly two", slopes.join(", "))),
        None => None,
    };
    let report = json!({ "extreme": holds, "minimal": v, "slopes": slopes });
    (Ok(report), holds, summary)
}

fn fill_in(any: AnyFunction, epsilon: Option<Rational>, m: Option<usize>, algorithm: Algorithm) -> CmdResult {
    match algorithm {
        Algorithm::Injective => {
            let pi = match any {
                AnyFunction::Infinite(pi) => pi,
                AnyFunction::Finite(h) => interpolate_to_infinite_group(&h),
            };
            let eps = epsilon.ok_or_else(|| Failure::Input("--epsilon is required".into()))?;
            let fill = injective_2_slope_fill_in(&pi, &eps, m)?;
            Ok(Outcome::holds(json_line(&fill)))
        }
        Algorithm::TwoSlope => {
            let h = match any {
                AnyFunction::Finite(h) => h,
                AnyFunction::Infinite(pi) => restrict_to_finite_group(&pi, pi.grid_modulus()?)?,
            };
            if let Some(w) = finite_minimality_test(&h).witness {
                return Err(Error::NotMinimal(Box::new(w)).into());
            }
            let phi = two_slope_fill_in(&h)?;
            let verdict = minimality_test(&phi);
            let slopes = phi.slope_values().len();
            let report = json!({
                "phi": phi,
                "checks": [
                    { "name": "two_slopes", "passed": slopes <= 2 },
                    { "name": "minimal", "passed": verdict.minimal },
                ],
                "witness": verdict.witness,
            });
            Ok(Outcome::holds(json_line(&report)))
        }
    }
}

fn plot(files: &[PathBuf], format: Format, ticks: Option<usize>) -> CmdResult {
    if files.is_empty() {
        return Err(Failure::Input("plot needs at least one function file".into()));
    }
    let mut doc = PlotDocument::new();
    doc.grid_ticks = ticks;
    for p in files {
        let text = read_source(Some(p), None)?;
        let pi = match any_from_json(&text)? {
            AnyFunction::Infinite(pi) => pi,
            AnyFunction::Finite(h) => interpolate_to_infinite_group(&h),
        };
        let label = p
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| p.display().to_string());
        doc.push(&pi, label);
    }
    Ok(Outcome::holds(match format {
        Format::Svg => doc.to_svg(),
        Format::Csv => doc.to_csv(),
    }))
}
