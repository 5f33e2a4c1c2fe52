//! Function classes defined by an averaged-modulus constraint, their width
//! values, and two-sided sampling certificates for those values.
//!
//! Two kinds of class share one type:
//!
//! * fixed `n`: `Ω_φ(f^ψ, τ, μ, τ/n) <= 1`;
//! * majorant: `Ω_φ(f^ψ, τ, μ, u) <= Ω(u)` for all `u` on a grid of `(0, τ]`.
//!
//! For `ψ` in Ψ and φ nondecreasing on `[0, τ]`, every width of index
//! `N ∈ {2n-1, 2n}` lies between
//! `((μ(τ) - μ(0)) / ∫_0^τ φ^p dμ)^{1/p} |ψ(n)|` and the same with the integer
//! infimum `I_{n,φ,p}` in the denominator (times `Ω(τ/n)` in majorant mode).

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::averaging::{averaged_modulus_on, averaged_modulus_windows};
use crate::error::{Error, Result};
use crate::jackson::{default_k_max, equiv_condition_holds, extremal_function, inf_quantity, shape_integral, InfReport};
use crate::measure::{stieltjes_integral, WeightMeasure};
use crate::modulus::{ModulusGrid, ModulusProfile};
use crate::psi::{psi_derivative, PsiSequence};
use crate::sampling::{gaussian_polynomial, sample_rng};
use crate::shape::ShapeFunction;
use crate::spectrum::{best_approximation, sp_norm, Exponent, SpectralFunction};

/// Absolute slack in membership tests.
pub const MEMBERSHIP_TOL: f64 = 1e-9;
/// Absolute slack when comparing sampled `E_n` with a width value.
pub const UPPER_TOL: f64 = 1e-6;
/// Relative step used to confirm that a rescaled sample sits on the boundary.
pub const BRACKET_STEP: f64 = 1e-6;
/// Number of `u`-points in the majorant constraint.
pub const MAJORANT_GRID: usize = 64;
/// Support of upper-certificate samples, as a multiple of `n`.
pub const UPPER_SUPPORT_FACTOR: u64 = 8;

type MajorantFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A continuous increasing majorant `Ω` with `Ω(0) = 0`.
#[derive(Clone)]
pub struct Majorant {
    eval: MajorantFn,
    label: String,
}

impl Majorant {
    /// `Ω(u) = u`.
    pub fn linear() -> Self {
        Majorant { eval: Arc::new(|u| u), label: "linear".into() }
    }

    /// `Ω(u) = c u^β`.
    pub fn power(c: f64, beta: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0 && beta.is_finite() && beta > 0.0) {
            return Err(Error::InvalidMajorant {
                label: format!("power:{c}:{beta}"),
                reason: "coefficient and exponent must be positive".into(),
            });
        }
        Ok(Majorant { eval: Arc::new(move |u| c * u.powf(beta)), label: format!("power:{c}:{beta}") })
    }

    /// A user-supplied majorant, probed at `probe_points` uniform points of
    /// `[0, probe_span]` for `Ω(0) = 0` and strict increase.
    pub fn custom<F>(eval: F, label: impl Into<String>, probe_span: f64, probe_points: usize) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let label = label.into();
        let bad = |reason: String| Error::InvalidMajorant { label: label.clone(), reason };
        if !(probe_span.is_finite() && probe_span > 0.0) || probe_points < 2 {
            return Err(bad("probe grid needs a positive span and at least two points".into()));
        }
        let at_zero = eval(0.0);
        if at_zero != 0.0 {
            return Err(bad(format!("Omega(0) = {at_zero}, expected 0")));
        }
        let mut previous = at_zero;
        for i in 1..probe_points {
            let u = probe_span * i as f64 / (probe_points - 1) as f64;
            let v = eval(u);
            if !(v.is_finite() && v > previous) {
                return Err(bad(format!("not strictly increasing at u = {u}")));
            }
            previous = v;
        }
        Ok(Majorant { eval: Arc::new(eval), label })
    }

    pub fn eval(&self, u: f64) -> f64 {
        (self.eval)(u)
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for Majorant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Majorant").field("label", &self.label).finish()
    }
}

#[derive(Debug, Clone)]
pub enum ClassMode {
    FixedN(u32),
    Majorant(Majorant),
}

#[derive(Debug, Clone)]
pub struct SmoothnessClass {
    pub psi: PsiSequence,
    pub phi: ShapeFunction,
    pub p: Exponent,
    pub mu: WeightMeasure,
    pub mode: ClassMode,
}

/// How much of the monotonicity of φ is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    /// Closed-form shape: monotone on `[0, cap]` by construction.
    Analytic,
    /// Tabulated or user shape checked on a probe grid only.
    ProbeGridOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WidthValue {
    Exact { value: f64, certification: Certification },
    /// The integer infimum differs from `∫ φ^p dμ`. `upper` is `None` when the
    /// windowed minimum sat at the window edge.
    Interval { lower: f64, upper: Option<f64>, certification: Certification },
}

impl WidthValue {
    pub fn exact(&self) -> Option<f64> {
        match self {
            WidthValue::Exact { value, .. } => Some(*value),
            WidthValue::Interval { .. } => None,
        }
    }
}

impl SmoothnessClass {
    fn check_n(&self, n: u32) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        match &self.mode {
            ClassMode::FixedN(m) if *m != n => Err(Error::InvalidArgument(format!(
                "class is defined with n = {m}, asked for n = {n}"
            ))),
            _ => Ok(()),
        }
    }

    fn check_width_preconditions(&self, n: u32) -> Result<()> {
        self.check_n(n)?;
        let tau = self.mu.tau();
        match self.phi.cap_point() {
            Some(a) if a >= tau * (1.0 - 1e-12) => {}
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "{} is not declared nondecreasing on [0, {tau}]",
                    self.phi.label()
                )))
            }
        }
        if !self.psi.is_psi_class() {
            return Err(Error::InvalidArgument(format!(
                "{} is not declared to have even, nonincreasing magnitudes",
                self.psi.label()
            )));
        }
        Ok(())
    }

    fn certification(&self) -> Certification {
        if self.phi.alpha().is_some() {
            Certification::Analytic
        } else {
            Certification::ProbeGridOnly
        }
    }

    /// `Ω(τ/n)` in majorant mode, 1 otherwise.
    fn majorant_factor(&self, n: u32) -> f64 {
        match &self.mode {
            ClassMode::FixedN(_) => 1.0,
            ClassMode::Majorant(m) => m.eval(self.mu.tau() / f64::from(n)),
        }
    }

    /// `((μ(τ) - μ(0)) / I)^{1/p} |ψ(n)|`, times `Ω(τ/n)` in majorant mode.
    fn width_formula(&self, n: u32, integral: f64) -> f64 {
        let psi_n = self.psi.eval(i64::from(n)).norm();
        (self.mu.total_mass() / integral).powf(self.p.recip()) * psi_n * self.majorant_factor(n)
    }

    /// The `u`-points of the majorant constraint: `j τ / 64`.
    pub fn majorant_grid(&self) -> Vec<f64> {
        default_u_grid(self.mu.tau())
    }
}

/// One window of the class constraint: `Ω_φ(f^ψ, τ, μ, u) <= limit`.
#[derive(Debug, Clone, Copy)]
struct Window {
    u: f64,
    value: f64,
    limit: f64,
}

/// The class constraint evaluated on every window: `τ/n` in fixed mode, the
/// majorant grid plus `extra` in majorant mode. Empty when `f^ψ = 0`.
fn constraint_windows(f: &SpectralFunction, cls: &SmoothnessClass, grid: &ModulusGrid, extra: Option<f64>) -> Result<Vec<Window>> {
    let derivative = psi_derivative(f, &cls.psi)?;
    if derivative.is_empty() {
        return Ok(Vec::new());
    }
    let tau = cls.mu.tau();
    match &cls.mode {
        ClassMode::FixedN(n) => {
            let u = tau / f64::from(*n);
            let profile = ModulusProfile::new(&derivative, cls.p, &cls.phi, u, grid);
            Ok(vec![Window { u, value: averaged_modulus_on(&profile, cls.p, &cls.mu, u)?, limit: 1.0 }])
        }
        ClassMode::Majorant(omega) => {
            let profile = ModulusProfile::new(&derivative, cls.p, &cls.phi, tau, grid);
            let mut us = cls.majorant_grid();
            us.extend(extra);
            let values = averaged_modulus_windows(&profile, cls.p, &cls.mu, &us)?;
            Ok(us.into_iter().zip(values).map(|(u, value)| Window { u, value, limit: omega.eval(u) }).collect())
        }
    }
}

fn satisfied(w: &Window) -> bool {
    w.value <= w.limit + MEMBERSHIP_TOL
}

/// `(max value/limit, every window satisfied)`.
fn constraint(f: &SpectralFunction, cls: &SmoothnessClass, grid: &ModulusGrid) -> Result<(f64, bool)> {
    let windows = constraint_windows(f, cls, grid, None)?;
    let worst = windows.iter().map(|w| w.value / w.limit).fold(0.0, f64::max);
    Ok((worst, windows.iter().all(satisfied)))
}

/// Whether `f` belongs to the class, each constraint checked with absolute
/// slack [`MEMBERSHIP_TOL`].
pub fn membership(f: &SpectralFunction, cls: &SmoothnessClass, grid: &ModulusGrid) -> Result<bool> {
    constraint(f, cls, grid).map(|(_, member)| member)
}

/// The lower width bound `R_n` (or `R_n^*` in majorant mode): the radius of
/// the largest `S^p` ball of polynomials of order `n` inside the class.
pub fn bernstein_radius(cls: &SmoothnessClass, n: u32) -> Result<f64> {
    cls.check_width_preconditions(n)?;
    Ok(cls.width_formula(n, shape_integral(&cls.phi, cls.p, &cls.mu)?))
}

/// The common value of the Bernstein, Kolmogorov, linear and projection
/// widths of index `2n-1` and `2n` when the integer infimum equals
/// `∫ φ^p dμ`; otherwise the enclosing interval.
pub fn width_closed_form(cls: &SmoothnessClass, n: u32) -> Result<WidthValue> {
    cls.check_width_preconditions(n)?;
    let inf = inf_quantity(n, &cls.phi, cls.p, &cls.mu, default_k_max(n))?;
    width_closed_form_given(cls, n, &inf)
}

pub fn width_closed_form_given(cls: &SmoothnessClass, n: u32, inf: &InfReport) -> Result<WidthValue> {
    cls.check_width_preconditions(n)?;
    let certification = cls.certification();
    let lower = cls.width_formula(n, inf.base_integral);
    if equiv_condition_holds(inf) {
        return Ok(WidthValue::Exact { value: lower, certification });
    }
    let upper = match inf.argmin_k {
        crate::jackson::ArgMin::Horizon => None,
        crate::jackson::ArgMin::Harmonic(_) => Some(cls.width_formula(n, inf.value)),
    };
    Ok(WidthValue::Interval { lower, upper, certification })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerEvidence {
    pub samples: usize,
    pub failures: usize,
    pub radius: f64,
    /// Largest constraint value seen (1 is the boundary).
    pub worst_constraint: f64,
}

/// Draws `samples` Gaussian polynomials of order `n`, scales each to `S^p`
/// norm `inflate · R_n` and counts the ones that fall outside the class.
pub fn lower_certificate(
    cls: &SmoothnessClass,
    n: u32,
    samples: usize,
    seed: u64,
    grid: &ModulusGrid,
    inflate: f64,
) -> Result<LowerEvidence> {
    let radius = bernstein_radius(cls, n)? * inflate;
    let outcomes: Vec<(f64, bool)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let t = gaussian_polynomial(&mut sample_rng(seed, i as u64), u64::from(n));
            let t = t.scale_real(radius / sp_norm(&t, cls.p));
            constraint(&t, cls, grid)
        })
        .collect::<Result<_>>()?;
    Ok(LowerEvidence {
        samples,
        failures: outcomes.iter().filter(|o| !o.1).count(),
        radius,
        worst_constraint: outcomes.iter().map(|o| o.0).fold(0.0, f64::max),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UpperEvidence {
    pub samples: usize,
    pub max_best_approximation: f64,
    /// Samples whose rescaling did not land on the class boundary.
    pub bracket_failures: usize,
}

/// Rescales `g` so that its largest constraint is exactly active and
/// returns `(E_n(s g), bracketed)`. The bracket recomputes the active window
/// from scratch at `s` (must hold) and `s (1 + BRACKET_STEP)` (must fail);
/// the other windows follow from homogeneity.
fn boundary_best_approximation(g: &SpectralFunction, cls: &SmoothnessClass, n: u32, grid: &ModulusGrid) -> Result<(f64, bool)> {
    let window = cls.mu.tau() / f64::from(n);
    let extra = matches!(cls.mode, ClassMode::Majorant(_)).then_some(window);
    let windows = constraint_windows(g, cls, grid, extra)?;
    let Some(active) = windows.iter().copied().max_by(|a, b| (a.value / a.limit).total_cmp(&(b.value / b.limit))) else {
        let e = best_approximation(g, cls.p, n);
        return Ok((if e > 0.0 { f64::INFINITY } else { 0.0 }, true));
    };
    let scale = active.limit / active.value;
    let recheck = |s: f64| -> Result<bool> {
        let derivative = psi_derivative(&g.scale_real(s), &cls.psi)?;
        let profile = ModulusProfile::new(&derivative, cls.p, &cls.phi, active.u, grid);
        let value = averaged_modulus_on(&profile, cls.p, &cls.mu, active.u)?;
        Ok(satisfied(&Window { value, ..active }))
    };
    let bracketed = recheck(scale)? && !recheck(scale * (1.0 + BRACKET_STEP))?;
    Ok((best_approximation(g, cls.p, n) * scale, bracketed))
}

/// Draws `samples` Gaussian spectra on `|k| <= 8n`, rescales each onto the
/// class boundary and reports the largest `E_n`.
pub fn upper_certificate(cls: &SmoothnessClass, n: u32, samples: usize, seed: u64, grid: &ModulusGrid) -> Result<UpperEvidence> {
    cls.check_n(n)?;
    let order = UPPER_SUPPORT_FACTOR * u64::from(n);
    let outcomes: Vec<(f64, bool)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let g = gaussian_polynomial(&mut sample_rng(seed, i as u64), order);
            boundary_best_approximation(&g, cls, n, grid)
        })
        .collect::<Result<_>>()?;
    Ok(UpperEvidence {
        samples,
        max_best_approximation: outcomes.iter().map(|o| o.0).fold(0.0, f64::max),
        bracket_failures: outcomes.iter().filter(|o| !o.1).count(),
    })
}

/// `E_n` of the extremal function `e^{-inx} + e^{inx}` (or its one-sided
/// version) rescaled onto the class boundary; equals the width when the
/// width is attained.
pub fn extremal_member_best_approximation(cls: &SmoothnessClass, n: u32, grid: &ModulusGrid) -> Result<f64> {
    cls.check_n(n)?;
    let f = extremal_function(n, &cls.psi, Complex64::new(1.0, 0.0), Complex64::default())?;
    boundary_best_approximation(&f, cls, n, grid).map(|(e, _)| e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Consistent,
    Violated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WidthCertificate {
    pub closed_form: f64,
    pub n: u32,
    /// The width indices `N ∈ {2n-1, 2n}` the value applies to.
    pub dimensions: [u32; 2],
    pub lower: LowerEvidence,
    pub upper: UpperEvidence,
    pub certification: Certification,
    pub verdict: Verdict,
}

/// Runs both certificates against the closed-form width. Fails with an error
/// when the width is only known as an interval.
pub fn certify(cls: &SmoothnessClass, n: u32, samples: usize, seed: u64, grid: &ModulusGrid) -> Result<WidthCertificate> {
    let (closed_form, certification) = match width_closed_form(cls, n)? {
        WidthValue::Exact { value, certification } => (value, certification),
        WidthValue::Interval { lower, upper, .. } => {
            return Err(Error::InvalidArgument(format!(
                "width for n = {n} is only bracketed: [{lower}, {}]",
                upper.map_or("unknown".to_string(), |u| u.to_string())
            )))
        }
    };
    let lower = lower_certificate(cls, n, samples, seed, grid, 1.0)?;
    let upper = upper_certificate(cls, n, samples, seed.wrapping_add(1), grid)?;
    let violated = lower.failures > 0 || upper.max_best_approximation > closed_form + UPPER_TOL;
    Ok(WidthCertificate {
        closed_form,
        n,
        dimensions: [2 * n - 1, 2 * n],
        lower,
        upper,
        certification,
        verdict: if violated { Verdict::Violated } else { Verdict::Consistent },
    })
}

/// Default ξ grid: 81 log-spaced points on `[10^-2, 10^2]`, including 1.
pub fn default_xi_grid() -> Vec<f64> {
    (0..=80).map(|i| 10f64.powf(-2.0 + f64::from(i) / 20.0)).collect()
}

/// Default `u` grid: `j τ / 64` for `j = 1..=64`.
pub fn default_u_grid(tau: f64) -> Vec<f64> {
    (1..=MAJORANT_GRID).map(|j| tau * j as f64 / MAJORANT_GRID as f64).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MajorantPoint {
    pub xi: f64,
    pub u: f64,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MajorantCheck {
    pub passes: bool,
    /// The pair with the largest `lhs / rhs`.
    pub worst: Option<MajorantPoint>,
}

/// Checks `Ω(u/ξ) (∫_0^{ξτ} φ_*^p(t) dμ(t/ξ))^{1/p} <= Ω(u) (∫_0^τ φ^p dμ)^{1/p}`
/// on every grid pair, with relative slack 1e-9. φ_* freezes φ at its cap
/// point.
pub fn majorant_condition_check(
    omega: &Majorant,
    phi: &ShapeFunction,
    p: Exponent,
    mu: &WeightMeasure,
    xi_grid: &[f64],
    u_grid: &[f64],
) -> Result<MajorantCheck> {
    let Some(a) = phi.cap_point() else {
        return Err(Error::InvalidArgument(format!("{} has no declared cap point", phi.label())));
    };
    if let Some(&u) = u_grid.iter().find(|&&u| !(u > 0.0 && u <= a * (1.0 + 1e-12))) {
        return Err(Error::InvalidArgument(format!("u = {u} outside (0, {a}]")));
    }
    if let Some(&xi) = xi_grid.iter().find(|&&xi| !(xi.is_finite() && xi > 0.0)) {
        return Err(Error::InvalidArgument(format!("xi = {xi} must be positive")));
    }
    let tau = mu.tau();
    let pv = p.get();
    let base = shape_integral(phi, p, mu)?.powf(p.recip());
    let scaled: Vec<f64> = xi_grid
        .par_iter()
        .map(|&xi| stieltjes_integral(|t| phi.truncated_pow(t, pv), mu, xi * tau).map(|v| v.max(0.0).powf(p.recip())))
        .collect::<Result<_>>()?;
    let mut worst: Option<(f64, MajorantPoint)> = None;
    let mut passes = true;
    for (&xi, &s) in xi_grid.iter().zip(&scaled) {
        for &u in u_grid {
            let point = MajorantPoint { xi, u, lhs: omega.eval(u / xi) * s, rhs: omega.eval(u) * base };
            passes &= point.lhs <= point.rhs * (1.0 + 1e-9);
            let excess = point.lhs / point.rhs;
            if worst.is_none_or(|(w, _)| excess > w) {
                worst = Some((excess, point));
            }
        }
    }
    Ok(MajorantCheck { passes, worst: worst.map(|w| w.1) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn p(v: f64) -> Exponent {
        Exponent::new(v).unwrap()
    }

    fn class(r: f64, alpha: f64, q: f64, mu: WeightMeasure, mode: ClassMode) -> SmoothnessClass {
        SmoothnessClass {
            psi: PsiSequence::power(r).unwrap(),
            phi: ShapeFunction::phi_alpha(alpha).unwrap(),
            p: p(q),
            mu,
            mode,
        }
    }

    #[test]
    fn closed_form_example() {
        let cls = class(2.0, 1.0, 2.0, WeightMeasure::mu1(PI).unwrap(), ClassMode::FixedN(3));
        let w = width_closed_form(&cls, 3).unwrap();
        assert!((w.exact().unwrap() - 0.078_567_420_131_838_6).abs() < 1e-10);
        assert!((bernstein_radius(&cls, 3).unwrap() - w.exact().unwrap()).abs() < 1e-12);
        assert!(width_closed_form(&cls, 2).is_err());

        let maj = class(2.0, 1.0, 2.0, WeightMeasure::mu1(PI).unwrap(), ClassMode::Majorant(Majorant::linear()));
        let wm = width_closed_form(&maj, 3).unwrap().exact().unwrap();
        assert!((wm - w.exact().unwrap() * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn radius_for_order_zero_multiplier() {
        let cls = class(0.0, 1.0, 2.0, WeightMeasure::mu1(PI).unwrap(), ClassMode::FixedN(1));
        assert!((bernstein_radius(&cls, 1).unwrap() - FRAC_1_SQRT_2).abs() < 1e-10);
    }

    #[test]
    fn uncertified_width_is_an_interval() {
        // an atom at 0.9π makes I_k minimal at k = 20, where φ(kτ) vanishes
        let tau = 0.9 * PI;
        let mu = WeightMeasure::mu2(tau).unwrap().with_atoms(vec![(tau, 1.0)]).unwrap();
        let cls = class(1.0, 1.0, 2.0, mu, ClassMode::FixedN(1));
        match width_closed_form(&cls, 1).unwrap() {
            WidthValue::Interval { lower, upper: Some(upper), .. } => {
                assert!(lower < upper);
                let expected = ((tau + 1.0) / (2.0 * tau)).sqrt();
                assert!((upper - expected).abs() < 1e-9);
            }
            other => panic!("expected interval, got {other:?}"),
        }
    }

    #[test]
    fn membership_basics() {
        let grid = ModulusGrid::default();
        let cls = class(1.0, 1.0, 2.0, WeightMeasure::mu1(PI).unwrap(), ClassMode::FixedN(2));
        assert!(membership(&SpectralFunction::new(), &cls, &grid).unwrap());
        let big = SpectralFunction::from_real([(1, 1e6), (-3, 2e6)]);
        assert!(!membership(&big, &cls, &grid).unwrap());
    }

    #[test]
    fn small_certificates_are_consistent() {
        let grid = ModulusGrid::default();
        let cls = class(1.0, 1.0, 2.0, WeightMeasure::mu1(PI).unwrap(), ClassMode::FixedN(2));
        let cert = certify(&cls, 2, 12, 5, &grid).unwrap();
        assert_eq!(cert.verdict, Verdict::Consistent, "{cert:?}");
        assert_eq!(cert.dimensions, [3, 4]);
        assert_eq!(cert.upper.bracket_failures, 0);
        let e = extremal_member_best_approximation(&cls, 2, &grid).unwrap();
        assert!((e - cert.closed_form).abs() < 1e-6);
    }

    #[test]
    fn empty_lower_certificate() {
        let cls = class(1.0, 1.0, 2.0, WeightMeasure::mu1(PI).unwrap(), ClassMode::FixedN(1));
        let ev = lower_certificate(&cls, 1, 0, 0, &ModulusGrid::default(), 1.0).unwrap();
        assert_eq!((ev.samples, ev.failures), (0, 0));
    }

    #[test]
    fn majorant_checks() {
        assert!(Majorant::custom(|u| u * u, "square", 4.0, 100).is_ok());
        assert!(Majorant::custom(|u| 1.0 + u, "shifted", 4.0, 100).is_err());
        assert!(Majorant::custom(|u: f64| u.sin(), "sine", 4.0, 100).is_err());

        let phi = ShapeFunction::phi_alpha(1.0).unwrap();
        let mu = WeightMeasure::mu2(0.75 * PI).unwrap();
        let r = majorant_condition_check(&Majorant::linear(), &phi, p(2.0), &mu, &[1.0], &[0.5, 1.0]).unwrap();
        assert!(r.passes);
        let w = r.worst.unwrap();
        assert!((w.lhs - w.rhs).abs() < 1e-9 * w.rhs);
    }

    #[test]
    fn default_grids() {
        let xi = default_xi_grid();
        assert_eq!(xi.len(), 81);
        assert!(xi.contains(&1.0));
        assert!((xi[0] - 0.01).abs() < 1e-15 && (xi[80] - 100.0).abs() < 1e-12);
        let u = default_u_grid(PI);
        assert_eq!(u.len(), 64);
        assert_eq!(u[63], PI);
    }
}
