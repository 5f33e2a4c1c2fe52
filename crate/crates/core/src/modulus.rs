//! Generalized moduli of smoothness and the difference-operator oracle.
//!
//! For a spectrum `f` the objective
//!
//! ```text
//! S(h) = sum_k φ(kh)^p |f(k)|^p
//! ```
//!
//! is a finite trigonometric-type sum in `h`, and `ω_φ(f, t)^p` is its
//! running maximum over `[0, t]` (φ is even, so negative shifts add
//! nothing). The maximum is located by a uniform grid followed by
//! golden-section refinement around every grid-local peak.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shape::ShapeFunction;
use crate::spectrum::{Exponent, SpectralFunction};

/// Discretization of the supremum over shifts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModulusGrid {
    /// Uniform grid points on the search interval, endpoints included.
    pub base_points: usize,
    /// Golden-section iterations spent on each grid-local peak.
    pub refine_iters: usize,
    /// Skip the search when the shape is known to be monotone on the range.
    pub fast_path: bool,
}

impl Default for ModulusGrid {
    fn default() -> Self {
        ModulusGrid { base_points: 4096, refine_iters: 40, fast_path: true }
    }
}

impl ModulusGrid {
    pub fn new(base_points: usize, refine_iters: usize) -> Result<Self> {
        let grid = ModulusGrid { base_points, refine_iters, fast_path: true };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if self.base_points < 64 {
            return Err(Error::InvalidArgument(format!(
                "modulus grid needs at least 64 base points, got {}",
                self.base_points
            )));
        }
        Ok(())
    }

    pub fn without_fast_path(mut self) -> Self {
        self.fast_path = false;
        self
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section maximization of `g` on `[lo, hi]`; returns the best point
/// seen, endpoints included.
pub(crate) fn golden_max<G: Fn(f64) -> f64>(g: &G, lo: f64, hi: f64, iters: usize) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut best = (lo, g(lo));
    let g_hi = g(hi);
    if g_hi > best.1 {
        best = (hi, g_hi);
    }
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = g(x1);
    let mut f2 = g(x2);
    for _ in 0..iters {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = g(x2);
        }
    }
    for (x, v) in [(x1, f1), (x2, f2)] {
        if v > best.1 {
            best = (x, v);
        }
    }
    best
}

/// Samples `g` on a uniform grid over `[0, span]` and refines each
/// grid-local maximum. Returns every sampled point and every refined peak,
/// sorted by location.
fn sweep<G: Fn(f64) -> f64>(g: &G, span: f64, grid: &ModulusGrid) -> Vec<(f64, f64)> {
    let n = grid.base_points;
    let step = span / (n - 1) as f64;
    let values: Vec<f64> = (0..n).map(|i| g(step * i as f64)).collect();
    let mut points: Vec<(f64, f64)> =
        values.iter().enumerate().map(|(i, &v)| (step * i as f64, v)).collect();
    for i in 0..n {
        let left = if i > 0 { values[i - 1] } else { f64::NEG_INFINITY };
        let right = if i + 1 < n { values[i + 1] } else { f64::NEG_INFINITY };
        if values[i] >= left && values[i] >= right && (values[i] > left || values[i] > right) {
            let lo = step * i.saturating_sub(1) as f64;
            let hi = step * (i + 1).min(n - 1) as f64;
            points.push(golden_max(g, lo, hi, grid.refine_iters));
        }
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    points
}

/// `|f(k)|^p` merged over `±k`, keyed by `|k|`.
fn merged_weights(f: &SpectralFunction, p: Exponent) -> Vec<(f64, f64)> {
    let mut merged: Vec<(u64, f64)> = Vec::with_capacity(f.len());
    let mut by_abs: Vec<(u64, f64)> =
        f.iter().map(|(k, c)| (k.unsigned_abs(), c.norm().powf(p.get()))).collect();
    by_abs.sort_by_key(|e| e.0);
    for (k, w) in by_abs {
        match merged.last_mut() {
            Some(last) if last.0 == k => last.1 += w,
            _ => merged.push((k, w)),
        }
    }
    merged.into_iter().map(|(k, w)| (k as f64, w)).collect()
}

/// The running supremum `t -> ω_φ(f, t)^p` on `[0, span]`, built from a
/// single sweep so that every query is a prefix lookup plus one evaluation
/// of the objective at `t`.
pub struct ModulusProfile<'a> {
    weights: Vec<(f64, f64)>,
    phi: &'a ShapeFunction,
    p: f64,
    span: f64,
    /// Below this shift every term `φ(kh)` is nondecreasing in `h`.
    monotone_until: f64,
    locations: Vec<f64>,
    prefix_max: Vec<f64>,
}

impl<'a> ModulusProfile<'a> {
    pub fn new(
        f: &SpectralFunction,
        p: Exponent,
        phi: &'a ShapeFunction,
        span: f64,
        grid: &ModulusGrid,
    ) -> Self {
        assert!(span >= 0.0 && span.is_finite(), "modulus span must be a nonnegative number");
        let weights = merged_weights(f, p);
        let max_k = weights.last().map_or(0.0, |w| w.0);
        let monotone_until = match (grid.fast_path, phi.cap_point()) {
            (true, Some(_)) if max_k == 0.0 => f64::INFINITY,
            (true, Some(a)) => a / max_k,
            _ => 0.0,
        };
        let mut profile = ModulusProfile {
            weights,
            phi,
            p: p.get(),
            span,
            monotone_until,
            locations: Vec::new(),
            prefix_max: Vec::new(),
        };
        if span > monotone_until && span > 0.0 && !profile.weights.is_empty() {
            let points = sweep(&|h| profile.objective(h), span, grid);
            let mut running = f64::NEG_INFINITY;
            for (h, v) in points {
                running = running.max(v);
                profile.locations.push(h);
                profile.prefix_max.push(running);
            }
        }
        profile
    }

    /// `S(h) = sum_k φ(kh)^p |f(k)|^p`.
    #[inline]
    pub fn objective(&self, h: f64) -> f64 {
        self.weights.iter().map(|&(k, w)| w * self.phi.eval_pow(k * h, self.p)).sum()
    }

    pub fn span(&self) -> f64 {
        self.span
    }

    /// `ω_φ(f, t)^p` for `0 <= t <= span`.
    pub fn sup_pow(&self, t: f64) -> f64 {
        let at_t = self.objective(t);
        if t <= self.monotone_until || self.locations.is_empty() {
            return at_t;
        }
        let idx = self.locations.partition_point(|&h| h <= t);
        if idx == 0 {
            at_t
        } else {
            at_t.max(self.prefix_max[idx - 1])
        }
    }

    /// `ω_φ(f, t)`.
    pub fn modulus(&self, t: f64) -> f64 {
        self.sup_pow(t).powf(1.0 / self.p)
    }
}

/// The generalized modulus `ω_φ(f, t) = sup_{|h| <= t} (sum_k φ(kh)^p |f(k)|^p)^{1/p}`.
///
/// When φ is declared nondecreasing on `[0, a]` and `max|k| * t <= a`, the
/// supremum sits at `h = t` and is returned directly (unless the grid
/// disables the fast path).
pub fn generalized_modulus(
    f: &SpectralFunction,
    p: Exponent,
    phi: &ShapeFunction,
    t: f64,
    grid: &ModulusGrid,
) -> f64 {
    assert!(t >= 0.0, "modulus argument must be nonnegative, got {t}");
    ModulusProfile::new(f, p, phi, t, grid).modulus(t)
}

/// Order-`alpha` modulus computed from the Fourier multiplier of the
/// fractional difference operator, `|1 - e^{-ikh}|^alpha`, by a plain grid
/// search with golden refinement. Shares no code with the shape-function
/// path beyond the one-dimensional maximizer.
pub fn difference_modulus_oracle(
    f: &SpectralFunction,
    p: Exponent,
    alpha: f64,
    t: f64,
    grid: &ModulusGrid,
) -> f64 {
    assert!(t >= 0.0, "modulus argument must be nonnegative, got {t}");
    assert!(alpha > 0.0, "difference order must be positive");
    let terms: Vec<(f64, f64)> = f.iter().map(|(k, c)| (k as f64, c.norm().powf(p.get()))).collect();
    let objective = |h: f64| -> f64 {
        terms
            .iter()
            .map(|&(k, w)| {
                let multiplier = Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, -k * h);
                w * multiplier.norm().powf(alpha * p.get())
            })
            .sum()
    };
    let best = if t == 0.0 || terms.is_empty() {
        objective(t)
    } else {
        sweep(&objective, t, grid).into_iter().map(|(_, v)| v).fold(f64::NEG_INFINITY, f64::max)
    };
    best.powf(p.recip())
}
