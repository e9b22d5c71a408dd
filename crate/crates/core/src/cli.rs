//! Command-line surface.
//!
//! Exit codes: 0 success, 2 validation or parse failure, 3 nothing to emit,
//! 4 inconclusive certificate. Documents go to stdout (or `--output`),
//! diagnostics to stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{PinchError, Result};
use crate::hypgeom::{
    collar_width, lemma41_envelope, pentagon_side_from_sinh, thurston_lower_bound,
    wolpert_envelope, HypConstants, LengthValue,
};
use crate::pinchseq::{build_sequence_partial, Regime, RegimeConfig, SequenceEnvelope};
use crate::plumbing::DEFAULT_LAMBDA_GUARD;
use crate::report::{sequence_csv, to_json};
use crate::series::{certify, parse_germ, CauchyEnvelope, CertifyOptions};
use crate::strata::{coarse_density_verdict, StratumSignature};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_EMPTY: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

/// Environment variable overriding the `|λ|` overflow guard.
pub const GUARD_ENV: &str = "PINCHCERT_PRECISION_GUARD";

#[derive(Debug, Parser)]
#[command(
    name = "pinchcert",
    version,
    about = "Pinching sequences, plumbing envelopes and domination certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coarse-density verdict for a stratum of abelian differentials.
    Stratum {
        /// Zero orders, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Length and log|t| envelopes along a pinching sequence.
    Sequence {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Domination certificate for a germ along a pinching sequence.
    Certify {
        /// Germ, e.g. "t1 - 2*t2^3 + 1/3*t1*t3".
        #[arg(long = "f", allow_hyphen_values = true)]
        f: String,
        /// Cauchy envelope for unstored coefficients, `M=<decimal>,r=<decimal>`.
        #[arg(long)]
        envelope: Option<String>,
        /// Assert that every leading term of the full series is stored.
        #[arg(long)]
        lead_complete: bool,
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Hyperbolic-geometry estimates.
    Hyp {
        #[command(subcommand)]
        op: HypOp,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct SeqArgs {
    #[arg(long, default_value = "teichmuller")]
    regime: Regime,
    #[arg(long, default_value_t = 2)]
    genus: u32,
    #[arg(long, default_value_t = 2)]
    m_min: u32,
    /// Defaults to 50 (Teichmüller) or 6 (Thurston regimes).
    #[arg(long)]
    m_max: Option<u32>,
    /// Coarse-density radius.
    #[arg(long = "K", default_value_t = 0.0)]
    k: f64,
    /// Length-comparison constant of the regime (overrides the K-derived default).
    #[arg(long = "c")]
    c: Option<f64>,
    /// Extra factor between length and log 1/|t| beyond leading order.
    #[arg(long, default_value_t = 1.0)]
    cprime: f64,
    /// Relative slack on log|t| envelopes.
    #[arg(long, default_value_t = 0.05)]
    slack: f64,
    /// Short-curve threshold for the Thurston regimes.
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
}

#[derive(Debug, Subcommand)]
enum HypOp {
    /// Collar half-width around a geodesic of the given length.
    Collar {
        #[arg(long)]
        length: f64,
    },
    /// Side of a right-angled pentagon opposite two sides with given sinh.
    Pentagon {
        #[arg(long)]
        sinh_a: f64,
        #[arg(long)]
        sinh_b: f64,
    },
    /// Length range under a Teichmüller distance bound.
    Wolpert {
        #[arg(long = "K", default_value_t = 0.0)]
        k: f64,
        #[arg(long)]
        length: f64,
    },
    /// Length range of a short curve under a Thurston distance bound.
    Lemma41 {
        #[arg(long = "c")]
        c: f64,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long)]
        length: f64,
    },
    /// Lower bound for the Thurston distance from finitely many curves.
    ThurstonLb {
        #[arg(long, value_delimiter = ',')]
        x_lengths: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        y_lengths: Vec<f64>,
    },
}

impl SeqArgs {
    fn config(&self, guard: f64) -> Result<RegimeConfig> {
        let mut consts = HypConstants::for_genus(self.genus, self.k)?;
        if let Some(c) = self.c {
            match self.regime {
                Regime::Teichmuller => consts.wolpert_c = c,
                Regime::ThurstonFrom | Regime::ThurstonTo => consts.lemma41_c = c,
            }
        }
        consts.cprime = self.cprime;
        consts.lemma41_eps = self.eps;
        let m_max = self.m_max.unwrap_or_else(|| self.regime.default_m_max());
        let mut config = RegimeConfig::new(self.regime, consts, self.m_min, m_max, self.slack);
        config.guard = guard;
        config.validate()?;
        Ok(config)
    }
}

/// Sequence columns that could be built, with notes on anything skipped.
fn build_reported(config: &RegimeConfig, err: &mut dyn Write) -> Result<(SequenceEnvelope, bool)> {
    let (env, failure) = build_sequence_partial(config)?;
    if let Some(first) = env.trimmed_below {
        note(
            err,
            &format!(
                "m below {first} skipped: targets must not exceed eps = {}",
                config.consts.lemma41_eps
            ),
        );
    }
    let truncated = failure.is_some();
    if let Some(e) = failure {
        note(err, &format!("sequence stopped early: {e}"));
    }
    Ok((env, truncated))
}

fn note(err: &mut dyn Write, msg: &str) {
    let _ = writeln!(err, "pinchcert: {msg}");
}

fn precision_guard() -> Result<f64> {
    match std::env::var(GUARD_ENV) {
        Err(_) => Ok(DEFAULT_LAMBDA_GUARD),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(g) if g.is_finite() && g > 1.0 => Ok(g),
            _ => Err(PinchError::Validation(format!(
                "{GUARD_ENV} must be a finite number > 1, got '{s}'"
            ))),
        },
    }
}

fn length(x: f64) -> Result<LengthValue> {
    LengthValue::new(x)
}

fn emit(doc: &str, output: Option<&PathBuf>, out: &mut dyn Write) -> Result<()> {
    let res = match output {
        Some(path) => {
            std::fs::write(path, doc).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => out
            .write_all(doc.as_bytes())
            .map_err(|e| format!("cannot write output: {e}")),
    };
    res.map_err(PinchError::Validation)
}

fn run_hyp(op: &HypOp, out: &mut dyn Write) -> Result<i32> {
    let doc = match op {
        HypOp::Collar { length: l } => to_json(&collar_width(length(*l)?).value()),
        HypOp::Pentagon { sinh_a, sinh_b } => to_json(&pentagon_side_from_sinh(*sinh_a, *sinh_b)?),
        HypOp::Wolpert { k, length: l } => {
            let consts = HypConstants::for_genus(2, *k)?;
            let (lo, hi) = wolpert_envelope(length(*l)?, &consts);
            to_json(&[lo.value(), hi.value()])
        }
        HypOp::Lemma41 { c, eps, length: l } => {
            let mut consts = HypConstants::for_genus(2, 0.0)?;
            consts.lemma41_c = *c;
            consts.lemma41_eps = *eps;
            consts.validate()?;
            let (lo, hi) = lemma41_envelope(length(*l)?, &consts)?;
            to_json(&[lo.value(), hi.value()])
        }
        HypOp::ThurstonLb {
            x_lengths,
            y_lengths,
        } => {
            let xs = x_lengths
                .iter()
                .map(|&x| length(x))
                .collect::<Result<Vec<_>>>()?;
            let ys = y_lengths
                .iter()
                .map(|&y| length(y))
                .collect::<Result<Vec<_>>>()?;
            to_json(&thurston_lower_bound(&xs, &ys)?)
        }
    };
    emit(&doc, None, out)?;
    Ok(EXIT_OK)
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Stratum { kappa, output } => {
            let sig: StratumSignature = kappa.parse()?;
            let verdict = coarse_density_verdict(&sig)?;
            if let Some(c) = &verdict.caveat {
                note(err, &format!("caveat: {c}"));
            }
            emit(&to_json(&verdict), output.as_ref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Sequence {
            seq,
            format,
            output,
        } => {
            let config = seq.config(precision_guard()?)?;
            let (env, _) = build_reported(&config, err)?;
            if env.columns.is_empty() {
                note(err, "no sequence rows to emit");
                return Ok(EXIT_EMPTY);
            }
            let doc = match format {
                Format::Json => to_json(&env),
                Format::Csv => sequence_csv(&env),
            };
            emit(&doc, output.as_ref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Certify {
            f,
            envelope,
            lead_complete,
            seq,
            output,
        } => {
            let config = seq.config(precision_guard()?)?;
            let mut germ = parse_germ(&f, None)?;
            if germ.arity() > config.n() {
                return Err(PinchError::Validation(format!(
                    "germ uses t{} but genus {} has only {} pants curves",
                    germ.arity(),
                    config.consts.genus,
                    config.n()
                )));
            }
            germ = germ.with_arity(config.n())?;
            if let Some(e) = envelope {
                germ = germ.with_envelope(e.parse::<CauchyEnvelope>()?);
            }
            let (env, truncated) = build_reported(&config, err)?;
            if env.columns.is_empty() {
                note(err, "no sequence columns to certify");
                return Ok(EXIT_EMPTY);
            }
            let mut cert = certify(&germ, &env, CertifyOptions { lead_complete })?;
            if truncated {
                cert.mark_truncated();
            }
            emit(&to_json(&cert), output.as_ref(), out)?;
            if cert.is_inconclusive() {
                note(
                    err,
                    "inconclusive: no m from which the margin stays positive",
                );
                Ok(EXIT_INCONCLUSIVE)
            } else {
                Ok(EXIT_OK)
            }
        }
        Command::Hyp { op } => run_hyp(&op, out),
    }
}

/// Run one invocation and return its exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            note(err, &e.to_string());
            EXIT_INVALID
        }
    }
}
