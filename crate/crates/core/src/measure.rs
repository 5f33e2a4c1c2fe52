//! Weight measures on `[0, τ]` and scaled Riemann–Stieltjes integration.
//!
//! A measure is an absolutely continuous part (a density) plus finitely many
//! atoms. The rescaled integral `∫_0^u g(t) dμ(τt/u)` then becomes an
//! ordinary integral with Jacobian `τ/u` plus a sum over the moved atoms.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadConfig};

type DensityFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Density {
    Zero,
    /// `dμ = sin t dt`, i.e. `μ(t) = 1 - cos t`
    Sine,
    /// `dμ = dt`, i.e. `μ(t) = t`
    Unit,
    Tabulated { ts: Vec<f64>, vs: Vec<f64> },
    Custom(DensityFn),
}

impl Density {
    #[inline]
    fn eval(&self, t: f64) -> f64 {
        match self {
            Density::Zero => 0.0,
            Density::Sine => t.sin(),
            Density::Unit => 1.0,
            Density::Tabulated { ts, vs } => {
                if t <= ts[0] {
                    return vs[0];
                }
                let last = ts.len() - 1;
                if t >= ts[last] {
                    return vs[last];
                }
                let i = ts.partition_point(|&x| x <= t);
                let w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
                vs[i - 1] + w * (vs[i] - vs[i - 1])
            }
            Density::Custom(f) => f(t),
        }
    }
}

/// A bounded nondecreasing non-constant weight `μ` on `[0, τ]`.
#[derive(Clone)]
pub struct WeightMeasure {
    tau: f64,
    density: Density,
    atoms: Vec<(f64, f64)>,
    label: String,
    mass: f64,
}

const PROBE_POINTS: usize = 1025;

impl WeightMeasure {
    /// `μ₁(t) = 1 - cos t` on `[0, τ]`, `0 < τ <= π`.
    pub fn mu1(tau: f64) -> Result<Self> {
        if !(tau > 0.0 && tau <= PI * (1.0 + 1e-15)) {
            return Err(Error::InvalidMeasure {
                label: "mu1".into(),
                reason: format!("tau = {tau} must lie in (0, π] for a nonnegative density"),
            });
        }
        Ok(WeightMeasure {
            tau,
            density: Density::Sine,
            atoms: Vec::new(),
            label: "mu1".into(),
            mass: 1.0 - tau.cos(),
        })
    }

    /// `μ₂(t) = t` on `[0, τ]`.
    pub fn mu2(tau: f64) -> Result<Self> {
        check_tau("mu2", tau)?;
        Ok(WeightMeasure { tau, density: Density::Unit, atoms: Vec::new(), label: "mu2".into(), mass: tau })
    }

    /// A pure step measure with masses `m_i > 0` at distinct `t_i ∈ [0, τ]`.
    pub fn atoms(tau: f64, atoms: Vec<(f64, f64)>) -> Result<Self> {
        check_tau("atoms", tau)?;
        WeightMeasure { tau, density: Density::Zero, atoms: Vec::new(), label: "atoms".into(), mass: 0.0 }
            .with_atoms(atoms)
    }

    /// Piecewise-linear density through `(t_i, d_i)`, held constant outside
    /// the nodes. Nodes must increase strictly and values be nonnegative.
    pub fn tabulated_density(tau: f64, points: Vec<(f64, f64)>) -> Result<Self> {
        let label = "density".to_string();
        check_tau(&label, tau)?;
        let bad = |reason: String| Error::InvalidMeasure { label: label.clone(), reason };
        if points.is_empty() {
            return Err(bad("density table is empty".into()));
        }
        for w in points.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(bad(format!("nodes must increase strictly (at t = {})", w[1].0)));
            }
        }
        if points.iter().any(|&(t, d)| !(t.is_finite() && d.is_finite() && d >= 0.0)) {
            return Err(bad("density values must be finite and nonnegative".into()));
        }
        let (ts, vs): (Vec<f64>, Vec<f64>) = points.into_iter().unzip();
        Self::finish(tau, Density::Tabulated { ts, vs }, Vec::new(), label)
    }

    /// Arbitrary nonnegative density, probed on a grid of `[0, τ]`.
    pub fn custom<F>(tau: f64, density: F, label: impl Into<String>) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let label = label.into();
        check_tau(&label, tau)?;
        Self::finish(tau, Density::Custom(Arc::new(density)), Vec::new(), label)
    }

    /// Adds point masses to the measure.
    pub fn with_atoms(mut self, atoms: Vec<(f64, f64)>) -> Result<Self> {
        let bad = |reason: String| Error::InvalidMeasure { label: self.label.clone(), reason };
        let mut all = self.atoms.clone();
        for (t, m) in atoms {
            if !(t.is_finite() && (0.0..=self.tau).contains(&t)) {
                return Err(bad(format!("atom location {t} outside [0, {}]", self.tau)));
            }
            if !(m.is_finite() && m > 0.0) {
                return Err(bad(format!("atom mass {m} must be positive")));
            }
            if all.iter().any(|&(s, _)| s == t) {
                return Err(bad(format!("duplicate atom location {t}")));
            }
            all.push((t, m));
        }
        all.sort_by(|a, b| a.0.total_cmp(&b.0));
        let added: f64 = all.iter().map(|a| a.1).sum::<f64>() - self.atoms.iter().map(|a| a.1).sum::<f64>();
        self.mass += added;
        self.atoms = all;
        if !(self.mass > 0.0) {
            return Err(Error::InvalidMeasure { label: self.label, reason: "total mass is zero".into() });
        }
        Ok(self)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    fn finish(tau: f64, density: Density, atoms: Vec<(f64, f64)>, label: String) -> Result<Self> {
        for i in 0..PROBE_POINTS {
            let t = tau * i as f64 / (PROBE_POINTS - 1) as f64;
            let d = density.eval(t);
            if !(d.is_finite() && d >= 0.0) {
                return Err(Error::InvalidMeasure {
                    label,
                    reason: format!("density({t}) = {d} is not a nonnegative number"),
                });
            }
        }
        let mass = match &density {
            Density::Zero => 0.0,
            Density::Sine => 1.0 - tau.cos(),
            Density::Unit => tau,
            Density::Tabulated { ts, .. } => {
                let panels = 16 + 4 * ts.len();
                integrate(|t| density.eval(t), 0.0, tau, &QuadConfig::default().with_panels(panels))?
            }
            Density::Custom(_) => integrate(|t| density.eval(t), 0.0, tau, &QuadConfig::default())?,
        };
        let measure = WeightMeasure { tau, density, atoms: Vec::new(), label, mass };
        if atoms.is_empty() {
            if !(measure.mass > 0.0) {
                return Err(Error::InvalidMeasure {
                    label: measure.label,
                    reason: "total mass is zero".into(),
                });
            }
            Ok(measure)
        } else {
            measure.with_atoms(atoms)
        }
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// `μ(τ) - μ(0)`.
    pub fn total_mass(&self) -> f64 {
        self.mass
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn atom_list(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn density(&self, t: f64) -> f64 {
        self.density.eval(t)
    }

    /// The density value when it is constant on `[0, τ]`.
    pub(crate) fn constant_density(&self) -> Option<f64> {
        match self.density {
            Density::Zero => Some(0.0),
            Density::Unit => Some(1.0),
            _ => None,
        }
    }

    pub fn has_density(&self) -> bool {
        !matches!(self.density, Density::Zero)
    }
}

impl fmt::Debug for WeightMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightMeasure")
            .field("label", &self.label)
            .field("tau", &self.tau)
            .field("mass", &self.mass)
            .field("atoms", &self.atoms)
            .finish()
    }
}

fn check_tau(label: &str, tau: f64) -> Result<()> {
    if tau.is_finite() && tau > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidMeasure { label: label.into(), reason: format!("tau = {tau} must be positive") })
    }
}

/// `∫_0^u g(t) dμ(τt/u)` with the default quadrature settings.
pub fn stieltjes_integral<G>(g: G, mu: &WeightMeasure, u: f64) -> Result<f64>
where
    G: FnMut(f64) -> f64,
{
    stieltjes_integral_with(g, mu, u, &QuadConfig::default())
}

/// `∫_0^u g(t) dμ(τt/u)`: the density part as `∫_0^u g(t) ρ(τt/u) (τ/u) dt`,
/// plus `sum_i m_i g(u t_i / τ)` over the atoms.
pub fn stieltjes_integral_with<G>(mut g: G, mu: &WeightMeasure, u: f64, cfg: &QuadConfig) -> Result<f64>
where
    G: FnMut(f64) -> f64,
{
    if !(u.is_finite() && u > 0.0) {
        return Err(Error::InvalidArgument(format!("integration window u = {u} must be positive")));
    }
    let scale = mu.tau / u;
    let mut total = 0.0;
    if mu.has_density() {
        total += integrate(|t| g(t) * mu.density.eval(scale * t) * scale, 0.0, u, cfg)?;
    }
    for &(t, m) in &mu.atoms {
        let at = u * t / mu.tau;
        let v = g(at);
        if !v.is_finite() {
            return Err(Error::NonFiniteIntegrand { t: at, value: v });
        }
        total += m * v;
    }
    Ok(total)
}
