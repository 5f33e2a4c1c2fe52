//! Named verification suites. Each expands its parameter grid in config
//! order, evaluates the tuples in parallel and returns the rows in that same
//! order.

use std::collections::btree_map::{BTreeMap, Entry};
use std::f64::consts::PI;

use rand::Rng;
use rayon::prelude::*;
use spwidth_core::jackson::{jackson_bound_given, sharpness_certificate_given};
use spwidth_core::sampling::{sample_rng, sparse_spectrum};
use spwidth_core::{
    certify, closed_form_inf, default_k_max, difference_modulus_oracle, generalized_modulus, inf_quantity,
    stieltjes_integral, ClassMode, Exponent, ModulusGrid, PsiSequence, ShapeFunction, SmoothnessClass, Verdict,
    WeightMeasure,
};

use crate::config::{Suite, SuiteConfig};
use crate::error::Result;
use crate::report::{Check, Provenance, Row};
use crate::selectors;

/// Largest harmonic of the fuzzed spectra.
const FUZZ_MAX_K: u64 = 24;
const FUZZ_MAX_TERMS: usize = 8;
const ORACLE_MAX_K: u64 = 16;
const ORACLE_MAX_TERMS: usize = 6;

pub fn run(cfg: &SuiteConfig, grid: &ModulusGrid) -> Result<Vec<Row>> {
    let mut rows = match cfg.suite {
        Suite::A6101 => a6101(cfg),
        Suite::Sharpness => sharpness(cfg, grid)?,
        Suite::JacksonFuzz => jackson_fuzz(cfg, grid)?,
        Suite::WidthsCertify => widths_certify(cfg, grid)?,
        Suite::ModulusOracle => modulus_oracle(cfg, grid)?,
    };
    if let Some(c) = cfg.constant_override {
        rows.iter_mut().for_each(|row| row.override_expected(c));
    }
    Ok(rows)
}

fn core_failure(case: String, expected: f64, tol: f64, provenance: Provenance, e: impl ToString) -> Row {
    Row::failed(case, expected, tol, provenance, e.to_string())
}

/// Windowed infimum for `φ_λ`, `p = 2`, `μ₁` on `[0, π]`, divided by `2^λ`
/// so that it reads `∫_0^π (1 - cos θt)^λ sin t dt`.
fn a6101(cfg: &SuiteConfig) -> Vec<Row> {
    let tuples: Vec<(u32, u32)> = cfg.lambda.iter().flat_map(|&l| cfg.n.iter().map(move |&n| (l, n))).collect();
    tuples
        .par_iter()
        .map(|&(lambda, n)| {
            let case = format!("lambda={lambda} n={n}");
            let lambda = f64::from(lambda);
            let expected = closed_form_inf(lambda).unwrap_or(f64::NAN);
            let inf = (|| {
                let phi = ShapeFunction::phi_alpha(lambda)?;
                let mu = WeightMeasure::mu1(PI)?;
                inf_quantity(n, &phi, Exponent::new(2.0)?, &mu, 64 * u64::from(n))
            })();
            match inf {
                Ok(inf) => {
                    let row = Row::new(case, expected, inf.value / 2f64.powf(lambda), cfg.tolerance, Provenance::ClosedForm);
                    row.with_note(format!("argmin_k={}", serde_json::to_string(&inf.argmin_k).unwrap_or_default()))
                }
                Err(e) => core_failure(case, expected, cfg.tolerance, Provenance::ClosedForm, e),
            }
        })
        .collect()
}

/// Whether the constant has the known closed form `(αp/2+1)^{1/p} / 2^α`.
fn has_paper_constant(cfg: &SuiteConfig, tau: f64, alpha: f64, p: f64) -> bool {
    let half = alpha * p / 2.0;
    cfg.measure == "mu1" && (tau - PI).abs() <= 1e-12 * PI && half >= 1.0 && half.fract() == 0.0
}

fn sharpness(cfg: &SuiteConfig, grid: &ModulusGrid) -> Result<Vec<Row>> {
    let mut tuples = Vec::new();
    for &tau in &cfg.tau {
        for &alpha in &cfg.alpha {
            for &p in &cfg.p {
                for &n in &cfg.n {
                    tuples.push((tau, alpha, p, n));
                }
            }
        }
    }
    let blocks: Vec<Result<Vec<Row>>> = tuples
        .par_iter()
        .map(|&(tau, alpha, p, n)| {
            let mu = selectors::measure(&cfg.measure, tau, &cfg.base_dir)?;
            let phi = ShapeFunction::phi_alpha(alpha)?;
            let pe = Exponent::new(p)?;
            let closed = has_paper_constant(cfg, tau, alpha, p);
            let inf = inf_quantity(n, &phi, pe, &mu, default_k_max(n));
            let oracle_integral = stieltjes_integral(|t| phi.eval_pow(t, p), &mu, tau);
            let mut rows = Vec::new();
            for &r in &cfg.r {
                let case = format!("{} tau={tau} alpha={alpha} p={p} n={n} r={r}", cfg.measure);
                let psi = PsiSequence::power(r)?;
                let nu_n = psi.eval(i64::from(n)).norm();
                let (expected, provenance) = if closed {
                    ((alpha * p / 2.0 + 1.0).powf(1.0 / p) / 2f64.powf(alpha) * nu_n, Provenance::PaperConstant)
                } else {
                    let integral = oracle_integral.as_ref().map_or(f64::NAN, |i| *i);
                    ((mu.total_mass() / integral).powf(1.0 / p) * nu_n, Provenance::Oracle)
                };
                let cert = match &inf {
                    Ok(inf) => sharpness_certificate_given(&phi, pe, &mu, &psi, n, inf, grid),
                    Err(e) => Err(e.clone()),
                };
                rows.push(match cert {
                    Ok(c) => Row::new(case, expected, c.ratio, cfg.tolerance, provenance)
                        .with_note(format!("constant={} rel_gap={}", c.constant, c.rel_gap)),
                    Err(e) => core_failure(case, expected, cfg.tolerance, provenance, e),
                });
            }
            Ok(rows)
        })
        .collect();
    flatten(blocks)
}

fn flatten(blocks: Vec<Result<Vec<Row>>>) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for block in blocks {
        rows.extend(block?);
    }
    Ok(rows)
}

/// One row per `(τ, α, p, r)`: the largest excess `E_n(f) - bound` over the
/// seeded spectra, for both the averaged-modulus and the plain-modulus bound.
/// Sample `i` draws its `n` from the `n` list and up to eight harmonics with
/// `|k| <= 24`; the infimum window `max(24, n)` covers every support.
fn jackson_fuzz(cfg: &SuiteConfig, grid: &ModulusGrid) -> Result<Vec<Row>> {
    if cfg.n.is_empty() {
        return Ok(Vec::new());
    }
    let samples: Vec<(u32, spwidth_core::SpectralFunction)> = (0..cfg.samples as u64)
        .map(|i| {
            let mut rng = sample_rng(cfg.seed, i);
            let n = cfg.n[rng.random_range(0..cfg.n.len())];
            let terms = rng.random_range(1..=FUZZ_MAX_TERMS);
            (n, sparse_spectrum(&mut rng, FUZZ_MAX_K, terms))
        })
        .collect();
    let mut tuples = Vec::new();
    for &tau in &cfg.tau {
        for &alpha in &cfg.alpha {
            for &p in &cfg.p {
                for &r in &cfg.r {
                    tuples.push((tau, alpha, p, r));
                }
            }
        }
    }
    tuples
        .par_iter()
        .map(|&(tau, alpha, p, r)| -> Result<Row> {
            let case = format!("{} tau={tau} alpha={alpha} p={p} r={r}", cfg.measure);
            let mu = selectors::measure(&cfg.measure, tau, &cfg.base_dir)?;
            let phi = ShapeFunction::phi_alpha(alpha)?;
            let pe = Exponent::new(p)?;
            let psi = PsiSequence::power(r)?;
            let mut infs = BTreeMap::new();
            for &n in &cfg.n {
                if let Entry::Vacant(slot) = infs.entry(n) {
                    match inf_quantity(n, &phi, pe, &mu, FUZZ_MAX_K.max(u64::from(n))) {
                        Ok(inf) => slot.insert(inf),
                        Err(e) => return Ok(core_failure(case, 0.0, cfg.tolerance, Provenance::ClosedForm, e)),
                    };
                }
            }
            let (mut worst, mut worst_at, mut violations) = (f64::NEG_INFINITY, 0usize, 0usize);
            for (i, (n, f)) in samples.iter().enumerate() {
                let b = match jackson_bound_given(f, &psi, &phi, pe, &mu, *n, &infs[n], grid) {
                    Ok(b) => b,
                    Err(e) => {
                        let note = format!("sample {i}: {e}");
                        return Ok(core_failure(case, 0.0, cfg.tolerance, Provenance::ClosedForm, note));
                    }
                };
                let excess = (b.lhs - b.bound).max(b.lhs - b.modulus_bound);
                if excess > worst {
                    (worst, worst_at) = (excess, i);
                }
                violations += usize::from(!b.holds || !b.modulus_holds);
            }
            let observed = if samples.is_empty() { 0.0 } else { worst };
            let row = Row::new(case, 0.0, observed, cfg.tolerance, Provenance::ClosedForm).with_check(Check::AtMost);
            Ok(row.with_note(format!("samples={} violations={violations} worst_sample={worst_at}", samples.len())))
        })
        .collect()
}

/// Two rows per `(τ, α, p, r, n)`: the largest sampled `E_n` on the class
/// boundary must not exceed the closed-form width, and every sampled
/// polynomial of the Bernstein ball must lie in the class (worst constraint
/// at most 1).
fn widths_certify(cfg: &SuiteConfig, grid: &ModulusGrid) -> Result<Vec<Row>> {
    let majorant = cfg.majorant.as_deref().map(selectors::majorant).transpose()?;
    let mut tuples = Vec::new();
    for &tau in &cfg.tau {
        for &alpha in &cfg.alpha {
            for &p in &cfg.p {
                for &r in &cfg.r {
                    for &n in &cfg.n {
                        tuples.push((tau, alpha, p, r, n));
                    }
                }
            }
        }
    }
    let blocks: Vec<Result<Vec<Row>>> = tuples
        .par_iter()
        .map(|&(tau, alpha, p, r, n)| {
            let case = format!("{} tau={tau} alpha={alpha} p={p} r={r} n={n}", cfg.measure);
            let cls = SmoothnessClass {
                psi: PsiSequence::power(r)?,
                phi: ShapeFunction::phi_alpha(alpha)?,
                p: Exponent::new(p)?,
                mu: selectors::measure(&cfg.measure, tau, &cfg.base_dir)?,
                mode: majorant.clone().map_or(ClassMode::FixedN(n), ClassMode::Majorant),
            };
            let (upper, lower) = (format!("{case} upper"), format!("{case} lower"));
            let cert = match certify(&cls, n, cfg.samples, cfg.seed, grid) {
                Ok(cert) => cert,
                Err(e) => {
                    return Ok(vec![
                        core_failure(upper, f64::NAN, cfg.tolerance, Provenance::ClosedForm, &e),
                        core_failure(lower, 1.0, cfg.tolerance, Provenance::ClosedForm, &e),
                    ])
                }
            };
            let mut up = Row::new(upper, cert.closed_form, cert.upper.max_best_approximation, cfg.tolerance, Provenance::ClosedForm)
                .with_check(Check::AtMost);
            let note = format!("samples={} bracket_failures={}", cert.upper.samples, cert.upper.bracket_failures);
            up = if cert.upper.bracket_failures > 0 { up.with_failure(note) } else { up.with_note(note) };
            let mut low = Row::new(lower, 1.0, cert.lower.worst_constraint, cfg.tolerance, Provenance::ClosedForm)
                .with_check(Check::AtMost);
            let note = format!("samples={} failures={} radius={}", cert.lower.samples, cert.lower.failures, cert.lower.radius);
            low = if cert.lower.failures > 0 { low.with_failure(note) } else { low.with_note(note) };
            if cert.verdict == Verdict::Violated && up.pass && low.pass {
                up = up.with_failure("verdict violated".into());
            }
            Ok(vec![up, low])
        })
        .collect();
    flatten(blocks)
}

/// One row per sample: the shape-function modulus with `φ_α` against the
/// fractional-difference oracle at a random `t ∈ (0, π]`. Sample `i` uses
/// `α = alpha[i mod len]` and a random `p` from the list.
fn modulus_oracle(cfg: &SuiteConfig, grid: &ModulusGrid) -> Result<Vec<Row>> {
    if cfg.alpha.is_empty() || cfg.p.is_empty() {
        return Ok(Vec::new());
    }
    (0..cfg.samples as u64)
        .into_par_iter()
        .map(|i| -> Result<Row> {
            let mut rng = sample_rng(cfg.seed, i);
            let alpha = cfg.alpha[i as usize % cfg.alpha.len()];
            let p = cfg.p[rng.random_range(0..cfg.p.len())];
            let t = PI * (1.0 - rng.random::<f64>());
            let terms = rng.random_range(1..=ORACLE_MAX_TERMS);
            let f = sparse_spectrum(&mut rng, ORACLE_MAX_K, terms);
            let pe = Exponent::new(p)?;
            let phi = ShapeFunction::phi_alpha(alpha)?;
            let direct = generalized_modulus(&f, pe, &phi, t, grid);
            let oracle = difference_modulus_oracle(&f, pe, alpha, t, grid);
            let case = format!("sample={i} alpha={alpha} p={p} t={t}");
            Ok(Row::new(case, oracle, direct, cfg.tolerance, Provenance::Oracle))
        })
        .collect()
}
