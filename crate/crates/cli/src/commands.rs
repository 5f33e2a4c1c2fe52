//! One-shot `jackson` and `widths` subcommands. Each prints a single JSON
//! object and reports whether its assertion held.

use std::path::Path;

use clap::{Args, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use spwidth_core::jackson::{equiv_condition_holds, jackson_bound_given, sharpness_certificate_given};
use spwidth_core::widths::{default_u_grid, default_xi_grid};
use spwidth_core::{
    certify, default_k_max, inf_quantity, majorant_condition_check, width_closed_form, ClassMode, Error, Exponent,
    InfReport, ModulusGrid, PsiSequence, ShapeFunction, SmoothnessClass, SpectralFunction, Verdict, WeightMeasure,
};

use crate::error::{CliError, Result};
use crate::selectors;

/// Tolerance on `rel_gap` for `jackson sharp` to report `holds`.
const SHARP_TOL: f64 = 1e-6;

#[derive(Debug, Args)]
pub struct Problem {
    /// Shape function: phi_alpha:<a> or table:<path>.
    #[arg(long, default_value = "phi_alpha:1")]
    pub shape: String,
    /// Weight measure: mu1, mu2, atoms:[[t,m],...] or density:<path>.
    #[arg(long, default_value = "mu1")]
    pub measure: String,
    /// Right end of the measure's support [0, tau].
    #[arg(long, default_value_t = std::f64::consts::PI)]
    pub tau: f64,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// Multiplier: power:<r>, const:<c>, const:<re>,<im> or table:<path>.
    #[arg(long, default_value = "power:0")]
    pub psi: String,
    /// Last harmonic of the integer infimum window (default 64n + 1024).
    #[arg(long)]
    pub k_max: Option<u64>,
}

struct Parts {
    phi: ShapeFunction,
    mu: WeightMeasure,
    p: Exponent,
    psi: PsiSequence,
}

impl Problem {
    fn parts(&self) -> Result<Parts> {
        let here = Path::new(".");
        if self.n == 0 {
            return Err(CliError::usage("--n must be positive"));
        }
        Ok(Parts {
            phi: selectors::shape(&self.shape, here)?,
            mu: selectors::measure(&self.measure, self.tau, here)?,
            p: Exponent::new(self.p)?,
            psi: selectors::psi(&self.psi, here)?,
        })
    }

    fn k_max(&self) -> u64 {
        self.k_max.unwrap_or_else(|| default_k_max(self.n))
    }
}

#[derive(Debug, Subcommand)]
pub enum JacksonCommand {
    /// Both sides of the Jackson-type inequality for a spectrum.
    Bound {
        #[command(flatten)]
        problem: Problem,
        /// JSON spectrum: [{"k": int, "re": float, "im": float}, ...].
        #[arg(long)]
        spectrum: std::path::PathBuf,
    },
    /// Sharp constant and the end-to-end extremal ratio.
    Sharp {
        #[command(flatten)]
        problem: Problem,
    },
    /// Windowed integer infimum.
    Inf {
        #[command(flatten)]
        problem: Problem,
    },
}

#[derive(Debug, Subcommand)]
pub enum WidthsCommand {
    /// Closed-form width or its bracketing interval.
    Value {
        #[command(flatten)]
        problem: Problem,
        /// Majorant (linear or power:<c>:<beta>) for the majorant class.
        #[arg(long)]
        majorant: Option<String>,
    },
    /// Sampled lower and upper certificates against the closed form.
    Certify {
        #[command(flatten)]
        problem: Problem,
        #[arg(long)]
        majorant: Option<String>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Scaling condition a majorant must satisfy, on the default grids.
    MajorantCheck {
        #[command(flatten)]
        problem: Problem,
        #[arg(long, default_value = "linear")]
        majorant: String,
    },
}

/// A JSON result and whether its assertion held.
pub struct Outcome {
    pub value: Value,
    pub pass: bool,
}

fn inf_fields(inf: &InfReport) -> Result<Value> {
    Ok(json!({
        "value": inf.value,
        "argmin_k": inf.argmin_k,
        "attained_at_n": inf.attained_at_n,
        "k_max": inf.k_max,
        "base_integral": inf.base_integral,
    }))
}

fn merge(mut base: Value, extra: impl Serialize) -> Result<Value> {
    if let (Value::Object(map), Value::Object(more)) = (&mut base, serde_json::to_value(extra)?) {
        map.extend(more);
    }
    Ok(base)
}

pub fn jackson(cmd: &JacksonCommand, grid: &ModulusGrid) -> Result<Outcome> {
    match cmd {
        JacksonCommand::Inf { problem } => {
            let Parts { phi, mu, p, .. } = problem.parts()?;
            let inf = inf_quantity(problem.n, &phi, p, &mu, problem.k_max())?;
            let value = merge(inf_fields(&inf)?, json!({ "equiv_condition": equiv_condition_holds(&inf) }))?;
            Ok(Outcome { value, pass: true })
        }
        JacksonCommand::Sharp { problem } => {
            let Parts { phi, mu, p, psi } = problem.parts()?;
            let inf = inf_quantity(problem.n, &phi, p, &mu, problem.k_max())?;
            match sharpness_certificate_given(&phi, p, &mu, &psi, problem.n, &inf, grid) {
                Ok(cert) => {
                    let holds = cert.rel_gap <= SHARP_TOL;
                    let value = merge(merge(inf_fields(&inf)?, cert)?, json!({ "holds": holds }))?;
                    Ok(Outcome { value, pass: holds })
                }
                Err(e @ Error::SharpnessNotCertified(_)) => {
                    let value = merge(inf_fields(&inf)?, json!({ "holds": false, "reason": e.to_string() }))?;
                    Ok(Outcome { value, pass: false })
                }
                Err(e) => Err(e.into()),
            }
        }
        JacksonCommand::Bound { problem, spectrum } => {
            let Parts { phi, mu, p, psi } = problem.parts()?;
            let text = std::fs::read_to_string(spectrum).map_err(|e| CliError::io(spectrum, e))?;
            let f = SpectralFunction::from_json_str(&text)?;
            // the window has to reach the support of f
            let k_max = problem.k_max().max(f.max_abs_harmonic().unwrap_or(0));
            let inf = inf_quantity(problem.n, &phi, p, &mu, k_max)?;
            let bound = jackson_bound_given(&f, &psi, &phi, p, &mu, problem.n, &inf, grid)?;
            let pass = bound.holds && bound.modulus_holds;
            Ok(Outcome { value: merge(inf_fields(&inf)?, bound)?, pass })
        }
    }
}

fn class(problem: &Problem, majorant: Option<&str>) -> Result<SmoothnessClass> {
    let Parts { phi, mu, p, psi } = problem.parts()?;
    let mode = match majorant {
        Some(m) => ClassMode::Majorant(selectors::majorant(m)?),
        None => ClassMode::FixedN(problem.n),
    };
    Ok(SmoothnessClass { psi, phi, p, mu, mode })
}

pub fn widths(cmd: &WidthsCommand, grid: &ModulusGrid, seed: u64) -> Result<Outcome> {
    match cmd {
        WidthsCommand::Value { problem, majorant } => {
            let cls = class(problem, majorant.as_deref())?;
            let n = problem.n;
            let width = width_closed_form(&cls, n)?;
            let value = json!({ "n": n, "dimensions": [2 * n - 1, 2 * n], "width": width });
            Ok(Outcome { value, pass: true })
        }
        WidthsCommand::Certify { problem, majorant, samples } => {
            let cls = class(problem, majorant.as_deref())?;
            let cert = certify(&cls, problem.n, *samples, seed, grid)?;
            Ok(Outcome { value: serde_json::to_value(cert)?, pass: cert.verdict == Verdict::Consistent })
        }
        WidthsCommand::MajorantCheck { problem, majorant } => {
            let Parts { phi, mu, p, .. } = problem.parts()?;
            let omega = selectors::majorant(majorant)?;
            let check = majorant_condition_check(&omega, &phi, p, &mu, &default_xi_grid(), &default_u_grid(mu.tau()))?;
            let value = merge(json!({ "majorant": omega.label() }), check)?;
            Ok(Outcome { value, pass: check.passes })
        }
    }
}
