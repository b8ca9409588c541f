//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 on usage or parse errors, 3 when the input is
//! well formed but the mathematics fails (the error name goes to stderr).

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::embedded::minimal_embedded_resolution;
use crate::error::Error;
use crate::maclane::{compute_vf, InductiveValuation, PseudoRoot};
use crate::models::{classify_contraction, is_divisor_regular, minimal_regular_resolution, specialize, ModelGraph};
use crate::npath::shortest_npath;
use crate::output;
use crate::parse::parse_poly;
use crate::rat::parse_q;
use crate::valued_field::{BaseField, ValuedField};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MATH: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "maclane", version, about = "Mac Lane valuations and regular models of the projective line")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Args, Debug)]
pub struct Base {
    /// Base field: `padic:<p>` or `laurent:<p>^<m>`.
    #[arg(long)]
    pub base: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The valuation v_f of a monic irreducible polynomial.
    Vf {
        #[command(flatten)]
        base: Base,
        #[arg(long)]
        poly: String,
    },
    /// Value of a polynomial under a valuation.
    Eval {
        #[command(flatten)]
        base: Base,
        #[arg(long)]
        valuation: String,
        #[arg(long)]
        poly: String,
    },
    /// Valuation of g(alpha) for a root alpha of f.
    EvalAtRoot {
        #[command(flatten)]
        base: Base,
        /// The polynomial f defining the root.
        #[arg(long)]
        poly: String,
        /// The polynomial g to evaluate.
        #[arg(long)]
        g: String,
    },
    /// Shortest N-path between two rationals.
    Npath {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long = "N", default_value_t = 1)]
        n: u64,
    },
    /// Minimal regular resolution of the model of one valuation.
    Resolve {
        #[command(flatten)]
        base: Base,
        #[arg(long)]
        valuation: String,
        /// Also include v0 (resolution of the model with v and v0).
        #[arg(long)]
        with_origin: bool,
    },
    /// Minimal embedded resolution of the divisor of zeros of f.
    Embedded {
        #[command(flatten)]
        base: Base,
        #[arg(long)]
        poly: String,
    },
    /// Where the root of f specializes on a model given by its valuations.
    Specialize {
        #[command(flatten)]
        base: Base,
        #[arg(long)]
        poly: String,
        /// A valuation of the model; repeat for each component.
        #[arg(long = "valuation", required = true)]
        valuations: Vec<String>,
    },
    /// Contraction type of a model and regularity of the divisor on it.
    Classify {
        #[command(flatten)]
        base: Base,
        #[arg(long)]
        poly: String,
        #[arg(long = "valuation", required = true)]
        valuations: Vec<String>,
    },
}

enum Failure {
    Usage(String),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() || matches!(e, Error::BaseMismatch(_)) {
            Failure::Usage(format!("{}: {}", e.name(), e))
        } else {
            Failure::Math(e)
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

/// Runs the command line `args` (including the program name), writing the
/// result to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(s) => {
            let _ = out.write_all(s.as_bytes());
            EXIT_OK
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Math(e)) => {
            let _ = writeln!(err, "{}: {}", e.name(), e);
            EXIT_MATH
        }
    }
}

fn execute(cli: &Cli) -> Outcome {
    if let Command::Npath { from, to, n } = &cli.command {
        return npath(from, to, *n, cli.format);
    }
    let base = match &cli.command {
        Command::Vf { base, .. }
        | Command::Eval { base, .. }
        | Command::EvalAtRoot { base, .. }
        | Command::Resolve { base, .. }
        | Command::Embedded { base, .. }
        | Command::Specialize { base, .. }
        | Command::Classify { base, .. } => base,
        Command::Npath { .. } => unreachable!(),
    };
    match base.base.parse::<BaseField>()? {
        BaseField::Padic(k) => exec(&k, &cli.command, cli.format),
        BaseField::Laurent(k) => exec(&k, &cli.command, cli.format),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn no_dot(cmd: &str) -> Failure {
    Failure::Usage(format!("--format dot is not available for {cmd}"))
}

fn npath(from: &str, to: &str, n: u64, format: Format) -> Outcome {
    let a = parse_q(from)?;
    let b = parse_q(to)?;
    let p = shortest_npath(&a, &b, n)?;
    match format {
        Format::Json => Ok(pretty(&json!(p.to_strings()))),
        Format::Text => Ok(format!("{}\n", p.to_strings().join(" "))),
        Format::Dot => Err(no_dot("npath")),
    }
}

fn model_output<F: ValuedField>(g: &ModelGraph<F>, extra: Value, format: Format) -> String {
    match format {
        Format::Dot => output::model_dot(g),
        Format::Text => output::model_text(g),
        Format::Json => {
            let mut obj = extra;
            obj["model"] = output::model_json(g);
            obj["dual_graph"] = output::dual_graph_json(g);
            pretty(&obj)
        }
    }
}

fn exec<F: ValuedField>(k: &F, cmd: &Command, format: Format) -> Outcome {
    let base = k.spec();
    let model_from = |vals: &[String]| -> Result<ModelGraph<F>, Failure> {
        let vs = vals.iter().map(|s| InductiveValuation::parse(k, s)).collect::<Result<Vec<_>, _>>()?;
        Ok(ModelGraph::new(vs)?)
    };
    match cmd {
        Command::Vf { poly, .. } => {
            let f = parse_poly(k, poly)?;
            let v = compute_vf(k, &f)?;
            match format {
                Format::Json => Ok(pretty(&json!({"base": base, "poly": f.fmt(k), "vf": v.to_json()}))),
                Format::Text => Ok(format!("{}\n", v.literal())),
                Format::Dot => Err(no_dot("vf")),
            }
        }
        Command::Eval { valuation, poly, .. } => {
            let v = InductiveValuation::parse(k, valuation)?;
            let g = parse_poly(k, poly)?;
            let val = v.evaluate(&g).to_string();
            match format {
                Format::Json => Ok(pretty(&json!({"valuation": v.literal(), "poly": g.fmt(k), "value": val}))),
                Format::Text => Ok(format!("{val}\n")),
                Format::Dot => Err(no_dot("eval")),
            }
        }
        Command::EvalAtRoot { poly, g, .. } => {
            let f = parse_poly(k, poly)?;
            let g = parse_poly(k, g)?;
            let root = PseudoRoot::new(k, &f)?;
            let val = root.evaluate(&g).to_string();
            match format {
                Format::Json => Ok(pretty(&json!({"poly": f.fmt(k), "g": g.fmt(k), "value": val}))),
                Format::Text => Ok(format!("{val}\n")),
                Format::Dot => Err(no_dot("eval-at-root")),
            }
        }
        Command::Npath { .. } => unreachable!("handled before base dispatch"),
        Command::Resolve { valuation, with_origin, .. } => {
            let v = InductiveValuation::parse(k, valuation)?;
            let mut g = minimal_regular_resolution(&v)?;
            if *with_origin {
                g = g.adjoin_origin()?;
            }
            Ok(model_output(&g, json!({"base": base, "valuation": v.to_json()}), format))
        }
        Command::Embedded { poly, .. } => {
            let f = parse_poly(k, poly)?;
            let r = minimal_embedded_resolution(k, &f)?;
            Ok(match format {
                Format::Json => pretty(&output::embedded_json(&r)),
                Format::Text => output::embedded_text(&r),
                Format::Dot => output::model_dot(&r.model),
            })
        }
        Command::Specialize { poly, valuations, .. } => {
            let f = parse_poly(k, poly)?;
            let g = model_from(valuations)?;
            let root = PseudoRoot::new(k, &f)?;
            let s = specialize(&g, &root)?;
            match format {
                Format::Json => Ok(pretty(&output::specialization_json(&s))),
                Format::Text => Ok(output::specialization_text(&s)),
                Format::Dot => Err(no_dot("specialize")),
            }
        }
        Command::Classify { poly, valuations, .. } => {
            let f = parse_poly(k, poly)?;
            let g = model_from(valuations)?;
            let root = PseudoRoot::new(k, &f)?;
            let t = classify_contraction(&g, &root)?;
            let regular = match is_divisor_regular(&g, &root) {
                Ok(b) => Some(b),
                Err(Error::UnsupportedContraction) => None,
                Err(e) => return Err(e.into()),
            };
            match format {
                Format::Json => Ok(pretty(&json!({"type": t.to_string(), "divisor_regular": regular}))),
                Format::Text => {
                    let r = regular.map_or_else(|| "undefined".to_string(), |b| b.to_string());
                    Ok(format!("{t}\ndivisor_regular: {r}\n"))
                }
                Format::Dot => Ok(output::model_dot(&g)),
            }
        }
    }
}
