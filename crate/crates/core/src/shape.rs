//! Shape functions φ that generate generalized moduli of smoothness.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

type ShapeFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum ShapeKind {
    /// `2^{α/2}(1 - cos t)^{α/2} = (2|sin(t/2)|)^α`
    PhiAlpha { alpha: f64 },
    /// Piecewise-linear in `|t|` through the nodes, constant past the last one.
    Tabulated { ts: Vec<f64>, vs: Vec<f64> },
    Custom(ShapeFn),
}

/// An even, bounded, nonnegative function φ together with the point `a` up
/// to which it is declared nondecreasing and its supremum.
#[derive(Clone)]
pub struct ShapeFunction {
    kind: ShapeKind,
    cap_point: Option<f64>,
    sup_value: f64,
    label: String,
}

const PROBE_POINTS: usize = 2049;

impl ShapeFunction {
    /// The shape of the classical modulus of order `alpha`:
    /// nondecreasing on `[0, π]` with supremum `2^alpha`.
    pub fn phi_alpha(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidShape {
                label: format!("phi_alpha:{alpha}"),
                reason: "alpha must be positive".into(),
            });
        }
        Ok(ShapeFunction {
            kind: ShapeKind::PhiAlpha { alpha },
            cap_point: Some(PI),
            sup_value: 2f64.powf(alpha),
            label: format!("phi_alpha:{alpha}"),
        })
    }

    /// A tabulated shape through `(t_i, v_i)` with `t_i >= 0` strictly
    /// increasing. Values are interpolated linearly in `|t|` and held
    /// constant beyond the last node.
    ///
    /// Nonnegativity, the bound `sup_value` and monotonicity on
    /// `[0, cap_point]` are enforced here. `φ(0) = 0` is not: degenerate
    /// tables such as the constant shape are useful as normalization
    /// probes. Use [`ShapeFunction::check_phi_class`] to test full membership.
    pub fn tabulated(
        points: Vec<(f64, f64)>,
        cap_point: Option<f64>,
        sup_value: f64,
        label: impl Into<String>,
    ) -> Result<Self> {
        let label = label.into();
        let bad = |reason: String| Error::InvalidShape { label: label.clone(), reason };
        if points.is_empty() {
            return Err(bad("table is empty".into()));
        }
        if !(sup_value.is_finite() && sup_value > 0.0) {
            return Err(bad("sup_value must be positive".into()));
        }
        if points[0].0 != 0.0 {
            return Err(bad("first node must be at t = 0".into()));
        }
        for w in points.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(bad(format!("nodes must increase strictly (at t = {})", w[1].0)));
            }
        }
        for &(t, v) in &points {
            if !(t.is_finite() && v.is_finite() && v >= 0.0) {
                return Err(bad(format!("invalid node ({t}, {v})")));
            }
            if v > sup_value {
                return Err(bad(format!("value {v} at t = {t} exceeds sup_value {sup_value}")));
            }
        }
        let (ts, vs): (Vec<f64>, Vec<f64>) = points.into_iter().unzip();
        let shape = ShapeFunction {
            kind: ShapeKind::Tabulated { ts, vs },
            cap_point,
            sup_value,
            label,
        };
        shape.check_cap(cap_point)?;
        Ok(shape)
    }

    /// The constant shape `φ ≡ value`, tabulated on a single node.
    /// Not a member of Φ; used to isolate measure normalization.
    pub fn constant(value: f64) -> Result<Self> {
        Self::tabulated(vec![(0.0, value)], None, value, format!("const:{value}"))
    }

    /// A user-supplied shape. Every Φ invariant is probed on a grid.
    pub fn custom<F>(eval: F, cap_point: Option<f64>, sup_value: f64, label: impl Into<String>) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let shape = ShapeFunction {
            kind: ShapeKind::Custom(Arc::new(eval)),
            cap_point,
            sup_value,
            label: label.into(),
        };
        shape.check_phi_class()?;
        Ok(shape)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn cap_point(&self) -> Option<f64> {
        self.cap_point
    }

    pub fn sup_value(&self) -> f64 {
        self.sup_value
    }

    /// A period of φ when one is known in closed form.
    pub fn period(&self) -> Option<f64> {
        match self.kind {
            ShapeKind::PhiAlpha { .. } => Some(2.0 * PI),
            _ => None,
        }
    }

    /// `Some(alpha)` for the classical shapes.
    pub fn alpha(&self) -> Option<f64> {
        match self.kind {
            ShapeKind::PhiAlpha { alpha } => Some(alpha),
            _ => None,
        }
    }

    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        match &self.kind {
            ShapeKind::PhiAlpha { alpha } => (2.0 * (0.5 * t).sin().abs()).powf(*alpha),
            ShapeKind::Tabulated { ts, vs } => interpolate(ts, vs, t.abs()),
            ShapeKind::Custom(f) => f(t),
        }
    }

    /// `φ(t)^p`, without the intermediate power for the classical shapes.
    #[inline]
    pub fn eval_pow(&self, t: f64, p: f64) -> f64 {
        match &self.kind {
            ShapeKind::PhiAlpha { alpha } => {
                let base = 2.0 * (0.5 * t).sin().abs();
                let e = alpha * p;
                if e.fract() == 0.0 && e <= 64.0 {
                    base.powi(e as i32)
                } else {
                    base.powf(e)
                }
            }
            _ => self.eval(t).powf(p),
        }
    }

    /// `φ_*(t)^p`: φ frozen at its value at the cap point `a` for `t >= a`.
    /// Without a declared cap this is plain `φ(t)^p`.
    #[inline]
    pub fn truncated_pow(&self, t: f64, p: f64) -> f64 {
        match self.cap_point {
            Some(a) if t.abs() >= a => self.eval_pow(a, p),
            _ => self.eval_pow(t, p),
        }
    }

    /// Probes the Φ-class conditions: `φ(0) = 0`, evenness, nonnegativity,
    /// the declared bound, and monotonicity on `[0, a]`. The measure-zero
    /// condition on the zero set cannot be decided from point values and is
    /// not checked.
    pub fn check_phi_class(&self) -> Result<()> {
        let bad = |reason: String| Error::InvalidShape { label: self.label.clone(), reason };
        let at_zero = self.eval(0.0);
        if at_zero.abs() > 1e-12 {
            return Err(bad(format!("phi(0) = {at_zero}, expected 0")));
        }
        let span = self.cap_point.map_or(4.0 * PI, |a| (2.0 * a).max(4.0 * PI));
        for i in 0..PROBE_POINTS {
            let t = span * i as f64 / (PROBE_POINTS - 1) as f64;
            let (plus, minus) = (self.eval(t), self.eval(-t));
            if !(plus.is_finite() && plus >= 0.0) {
                return Err(bad(format!("phi({t}) = {plus} is not a nonnegative number")));
            }
            if (plus - minus).abs() > 1e-12 * plus.abs().max(1.0) {
                return Err(bad(format!("not even at t = {t}: {plus} vs {minus}")));
            }
            if plus > self.sup_value * (1.0 + 1e-12) {
                return Err(bad(format!("phi({t}) = {plus} exceeds sup_value {}", self.sup_value)));
            }
        }
        self.check_cap(self.cap_point)
    }

    fn check_cap(&self, cap: Option<f64>) -> Result<()> {
        let Some(a) = cap else { return Ok(()) };
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidShape {
                label: self.label.clone(),
                reason: format!("cap point {a} must be positive"),
            });
        }
        let mut prev = self.eval(0.0);
        for i in 1..PROBE_POINTS {
            let t = a * i as f64 / (PROBE_POINTS - 1) as f64;
            let v = self.eval(t);
            if v < prev - 1e-12 * prev.abs().max(1.0) {
                return Err(Error::InvalidShape {
                    label: self.label.clone(),
                    reason: format!("decreases on [0, {a}] near t = {t}"),
                });
            }
            prev = v;
        }
        Ok(())
    }
}

impl fmt::Debug for ShapeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ShapeFunction")
            .field("label", &self.label)
            .field("cap_point", &self.cap_point)
            .field("sup_value", &self.sup_value)
            .finish()
    }
}

fn interpolate(ts: &[f64], vs: &[f64], t: f64) -> f64 {
    let last = ts.len() - 1;
    if t >= ts[last] {
        return vs[last];
    }
    let i = ts.partition_point(|&x| x <= t);
    // ts[0] = 0 <= t, so i >= 1
    let (t0, t1) = (ts[i - 1], ts[i]);
    let w = (t - t0) / (t1 - t0);
    vs[i - 1] + w * (vs[i] - vs[i - 1])
}
