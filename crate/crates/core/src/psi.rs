//! Multiplier sequences ψ, ψ-integrals and ψ-derivatives.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::SpectralFunction;

/// What a ψ-derivative does with a harmonic where `ψ(k) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroPolicy {
    /// Drop the term (derivatives are taken modulo the kernel).
    #[default]
    Annihilate,
    /// Fail with [`Error::ZeroMultiplier`].
    Reject,
}

type PsiFn = Arc<dyn Fn(i64) -> Complex64 + Send + Sync>;

#[derive(Clone)]
enum PsiKind {
    /// `(ik)^{-r}`, `ψ(0) = 0`
    Power { r: f64 },
    Constant(Complex64),
    /// Zero off the table.
    Table(BTreeMap<i64, Complex64>),
    Custom(PsiFn),
}

pub const DEFAULT_HORIZON: u64 = 1_000_000;

#[derive(Clone)]
pub struct PsiSequence {
    kind: PsiKind,
    bound: f64,
    zero_policy: ZeroPolicy,
    horizon: u64,
    psi_class: bool,
    label: String,
}

impl PsiSequence {
    /// `ψ(k) = (ik)^{-r}` for `k != 0`, `ψ(0) = 0`; the multiplier of the
    /// `r`-th antiderivative.
    pub fn power(r: f64) -> Result<Self> {
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::InvalidArgument(format!("power multiplier needs r >= 0, got {r}")));
        }
        Ok(PsiSequence {
            kind: PsiKind::Power { r },
            bound: 1.0,
            zero_policy: ZeroPolicy::default(),
            horizon: DEFAULT_HORIZON,
            psi_class: true,
            label: format!("power:{r}"),
        })
    }

    pub fn constant(c: Complex64) -> Result<Self> {
        if !(c.norm().is_finite() && c.norm() > 0.0) {
            return Err(Error::InvalidArgument(format!("constant multiplier must be nonzero, got {c}")));
        }
        Ok(PsiSequence {
            kind: PsiKind::Constant(c),
            bound: c.norm(),
            zero_policy: ZeroPolicy::default(),
            horizon: DEFAULT_HORIZON,
            psi_class: true,
            label: format!("const:{c}"),
        })
    }

    /// A finitely tabulated multiplier, zero off the table. A declared
    /// Ψ-class flag is verified against the table.
    pub fn tabulated(values: BTreeMap<i64, Complex64>, psi_class: bool, label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if values.values().any(|v| !v.norm().is_finite()) {
            return Err(Error::InvalidArgument(format!("{label}: multiplier values must be finite")));
        }
        let bound = values.values().map(|v| v.norm()).fold(0.0, f64::max);
        if bound == 0.0 {
            return Err(Error::InvalidArgument(format!("{label}: multiplier vanishes identically")));
        }
        let reach = values.keys().map(|k| k.unsigned_abs()).max().unwrap_or(0) + 1;
        let psi = PsiSequence {
            kind: PsiKind::Table(values),
            bound,
            zero_policy: ZeroPolicy::default(),
            horizon: reach.max(2),
            psi_class,
            label,
        };
        if psi_class {
            let check = is_in_psi(&psi, reach.max(2));
            if let Some(v) = check.first_violation {
                return Err(Error::InvalidArgument(format!(
                    "{}: declared Ψ-class but {v}",
                    psi.label
                )));
            }
        }
        Ok(psi)
    }

    /// An arbitrary multiplier with declared bound `|ψ(k)| <= bound`.
    /// `psi_class` lets [`nu`] skip the tail scan; it is trusted as given.
    pub fn custom<F>(eval: F, bound: f64, psi_class: bool, label: impl Into<String>) -> Result<Self>
    where
        F: Fn(i64) -> Complex64 + Send + Sync + 'static,
    {
        if !(bound.is_finite() && bound > 0.0) {
            return Err(Error::InvalidArgument(format!("multiplier bound must be positive, got {bound}")));
        }
        Ok(PsiSequence {
            kind: PsiKind::Custom(Arc::new(eval)),
            bound,
            zero_policy: ZeroPolicy::default(),
            horizon: DEFAULT_HORIZON,
            psi_class,
            label: label.into(),
        })
    }

    pub fn with_zero_policy(mut self, policy: ZeroPolicy) -> Self {
        self.zero_policy = policy;
        self
    }

    pub fn with_horizon(mut self, horizon: u64) -> Self {
        self.horizon = horizon.max(1);
        self
    }

    pub fn eval(&self, k: i64) -> Complex64 {
        match &self.kind {
            PsiKind::Power { r } => power_multiplier(*r, k),
            PsiKind::Constant(c) => *c,
            PsiKind::Table(values) => values.get(&k).copied().unwrap_or_default(),
            PsiKind::Custom(f) => f(k),
        }
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn zero_policy(&self) -> ZeroPolicy {
        self.zero_policy
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn is_psi_class(&self) -> bool {
        self.psi_class
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for PsiSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PsiSequence")
            .field("label", &self.label)
            .field("bound", &self.bound)
            .field("zero_policy", &self.zero_policy)
            .field("psi_class", &self.psi_class)
            .finish()
    }
}

fn power_multiplier(r: f64, k: i64) -> Complex64 {
    if k == 0 {
        return Complex64::default();
    }
    if r.fract() == 0.0 && r <= f64::from(i32::MAX) {
        Complex64::new(0.0, k as f64).powi(-(r as i32))
    } else {
        let sign = k.signum() as f64;
        Complex64::from_polar((k.unsigned_abs() as f64).powf(-r), -sign * r * FRAC_PI_2)
    }
}

/// Coefficients `ψ(k) f(k)`: the ψ-integral `J^ψ(f, ·)`.
pub fn psi_integral(f: &SpectralFunction, psi: &PsiSequence) -> SpectralFunction {
    f.map_coeffs(|k, c| psi.eval(k) * c)
}

/// Coefficients `f(k) / ψ(k)`: the ψ-derivative `f^ψ`.
pub fn psi_derivative(f: &SpectralFunction, psi: &PsiSequence) -> Result<SpectralFunction> {
    let mut out = SpectralFunction::new();
    for (k, c) in f.iter() {
        let m = psi.eval(k);
        if m.norm() == 0.0 {
            match psi.zero_policy {
                ZeroPolicy::Annihilate => continue,
                ZeroPolicy::Reject => return Err(Error::ZeroMultiplier { k }),
            }
        }
        let q = c / m;
        if !(q.re.is_finite() && q.im.is_finite()) {
            return Err(Error::DerivativeOverflow { k });
        }
        out.set(k, q);
    }
    Ok(out)
}

/// `ν(n) = sup_{|k| >= n} |ψ(k)|` together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NuValue {
    pub value: f64,
    /// `true` when the Ψ-class structure makes `max(|ψ(n)|, |ψ(-n)|)` exact;
    /// `false` when the value is a finite scan up to the horizon.
    pub certified: bool,
}

pub fn nu(psi: &PsiSequence, n: u32) -> NuValue {
    let n = i64::from(n.max(1));
    let at_n = psi.eval(n).norm().max(psi.eval(-n).norm());
    if psi.psi_class {
        return NuValue { value: at_n, certified: true };
    }
    let horizon = i64::try_from(psi.horizon).unwrap_or(i64::MAX).max(n);
    let value = (n..=horizon)
        .map(|k| psi.eval(k).norm().max(psi.eval(-k).norm()))
        .fold(at_n, f64::max);
    NuValue { value, certified: false }
}

/// First failure found by [`is_in_psi`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PsiViolation {
    /// `|ψ(±k)|` exceeds the declared bound (or is not finite).
    Unbounded { k: i64 },
    /// `|ψ(k)| != |ψ(-k)|`.
    UnevenMagnitude { k: i64 },
    /// `|ψ(k)| < |ψ(k + 1)|`.
    Increasing { k: i64 },
}

impl fmt::Display for PsiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PsiViolation::Unbounded { k } => write!(f, "|psi({k})| exceeds the bound"),
            PsiViolation::UnevenMagnitude { k } => write!(f, "|psi({k})| != |psi(-{k})|"),
            PsiViolation::Increasing { k } => write!(f, "|psi({k})| < |psi({})|", k + 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PsiCheck {
    pub in_class: bool,
    pub first_violation: Option<PsiViolation>,
}

/// Checks `|ψ(k)| = |ψ(-k)| >= |ψ(k+1)|` and the bound for `1 <= k <= horizon`.
pub fn is_in_psi(psi: &PsiSequence, horizon: u64) -> PsiCheck {
    const REL: f64 = 1e-12;
    let horizon = i64::try_from(horizon.max(2)).unwrap_or(i64::MAX - 1);
    let within = |m: f64| m.is_finite() && m <= psi.bound * (1.0 + REL);
    let fail = |v| PsiCheck { in_class: false, first_violation: Some(v) };
    let mut here = psi.eval(1).norm();
    for k in 1..=horizon {
        let mirror = psi.eval(-k).norm();
        let next = psi.eval(k + 1).norm();
        if !within(here) || !within(mirror) {
            return fail(PsiViolation::Unbounded { k });
        }
        if !within(next) {
            return fail(PsiViolation::Unbounded { k: k + 1 });
        }
        if (here - mirror).abs() > REL * here.max(mirror) {
            return fail(PsiViolation::UnevenMagnitude { k });
        }
        if next > here * (1.0 + REL) {
            return fail(PsiViolation::Increasing { k });
        }
        here = next;
    }
    PsiCheck { in_class: true, first_violation: None }
}
