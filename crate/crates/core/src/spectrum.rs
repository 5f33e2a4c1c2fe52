//! Fourier-coefficient representation of 2π-periodic functions.
//!
//! A function is stored as a finitely supported map from integer harmonics
//! to complex amplitudes. The S^p norm, partial sums and best approximations
//! are all coefficient-side operations, so nothing here ever resamples the
//! function; uniform samples are only an ingestion format
//! ([`fourier_from_samples`]).

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Amplitudes at or below this modulus are treated as zero and two spectra
/// compare equal when every stored amplitude agrees to this tolerance.
pub const COMPLEX_TOL: f64 = 1e-12;

/// The exponent `p` of the space S^p, `1 <= p < inf`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Exponent(f64);

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_finite() && p >= 1.0 {
            Ok(Exponent(p))
        } else {
            Err(Error::InvalidExponent(p))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn recip(self) -> f64 {
        1.0 / self.0
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let p = f64::deserialize(d)?;
        Exponent::new(p).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A trigonometric polynomial given by its Fourier coefficients.
#[derive(Debug, Clone, Default)]
pub struct SpectralFunction {
    coeffs: BTreeMap<i64, Complex64>,
}

impl SpectralFunction {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a spectrum from `(k, amplitude)` pairs. Later entries for the
    /// same harmonic overwrite earlier ones; negligible amplitudes are dropped.
    pub fn from_coeffs<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, Complex64)>,
    {
        let mut f = Self::new();
        for (k, c) in pairs {
            f.set(k, c);
        }
        f
    }

    /// Convenience constructor for real amplitudes.
    pub fn from_real<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, f64)>,
    {
        Self::from_coeffs(pairs.into_iter().map(|(k, c)| (k, Complex64::new(c, 0.0))))
    }

    /// Sets the amplitude of harmonic `k`, removing it when negligible.
    pub fn set(&mut self, k: i64, c: Complex64) {
        if c.norm() <= COMPLEX_TOL {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, c);
        }
    }

    pub fn get(&self, k: i64) -> Complex64 {
        self.coeffs.get(&k).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Harmonics in increasing order with their amplitudes.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    /// Largest `|k|` in the support, `None` for the empty spectrum.
    pub fn max_abs_harmonic(&self) -> Option<u64> {
        self.coeffs.keys().map(|k| k.unsigned_abs()).max()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_coeffs(self.iter().map(|(k, a)| (k, a * c)))
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    /// Applies `g` to every stored coefficient, pruning results that vanish.
    pub fn map_coeffs<F>(&self, mut g: F) -> Self
    where
        F: FnMut(i64, Complex64) -> Complex64,
    {
        Self::from_coeffs(self.iter().map(|(k, c)| (k, g(k, c))))
    }

    /// Point evaluation `sum_k c_k e^{ikx}` by direct summation.
    pub fn evaluate(&self, x: f64) -> Complex64 {
        self.iter()
            .map(|(k, c)| c * Complex64::from_polar(1.0, k as f64 * x))
            .sum()
    }

    /// Entrywise comparison within [`COMPLEX_TOL`].
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let keys: std::collections::BTreeSet<i64> =
            self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        keys.into_iter()
            .all(|k| (self.get(k) - other.get(k)).norm() <= tol)
    }

    /// Parses the JSON spectrum format: an array of `{"k", "re", "im"}`
    /// records. A repeated `k` is an error.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let entries: Vec<SpectrumEntry> = serde_json::from_str(s)?;
        Self::from_entries(entries)
    }

    pub fn from_entries(entries: Vec<SpectrumEntry>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        let mut f = Self::new();
        for e in entries {
            if !seen.insert(e.k) {
                return Err(Error::DuplicateHarmonic(e.k));
            }
            if !(e.re.is_finite() && e.im.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "non-finite amplitude at k = {}",
                    e.k
                )));
            }
            f.set(e.k, Complex64::new(e.re, e.im));
        }
        Ok(f)
    }

    pub fn to_entries(&self) -> Vec<SpectrumEntry> {
        self.iter()
            .map(|(k, c)| SpectrumEntry { k, re: c.re, im: c.im })
            .collect()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_entries()).expect("spectrum entries always serialize")
    }
}

impl PartialEq for SpectralFunction {
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other, COMPLEX_TOL)
    }
}

impl Add for &SpectralFunction {
    type Output = SpectralFunction;

    fn add(self, rhs: &SpectralFunction) -> SpectralFunction {
        let mut out = self.clone();
        for (k, c) in rhs.iter() {
            out.set(k, out.get(k) + c);
        }
        out
    }
}

impl Sub for &SpectralFunction {
    type Output = SpectralFunction;

    fn sub(self, rhs: &SpectralFunction) -> SpectralFunction {
        self + &(-rhs)
    }
}

impl Neg for &SpectralFunction {
    type Output = SpectralFunction;

    fn neg(self) -> SpectralFunction {
        self.map_coeffs(|_, c| -c)
    }
}

/// One record of the JSON spectrum format.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumEntry {
    pub k: i64,
    pub re: f64,
    pub im: f64,
}

/// `(sum |c|^p)^(1/p)` over the given amplitudes, scaled by the largest
/// modulus so huge or tiny coefficients do not overflow.
pub(crate) fn lp_norm<I>(moduli: I, p: Exponent) -> f64
where
    I: IntoIterator<Item = f64> + Clone,
{
    let peak = moduli.clone().into_iter().fold(0.0_f64, f64::max);
    if peak == 0.0 || !peak.is_finite() {
        return peak;
    }
    let sum: f64 = moduli.into_iter().map(|m| (m / peak).powf(p.get())).sum();
    peak * sum.powf(p.recip())
}

/// The S^p norm `(sum_k |f(k)|^p)^(1/p)`; zero for the empty spectrum.
pub fn sp_norm(f: &SpectralFunction, p: Exponent) -> f64 {
    lp_norm(f.coeffs.values().map(|c| c.norm()), p)
}

/// Trapezoid-rule Fourier coefficients `|k| <= band` from samples on the
/// uniform grid `x_j = 2πj/N`. Exact up to roundoff for trigonometric
/// polynomials of order at most `band` once `N >= 2*band + 1`.
pub fn fourier_from_samples(values: &[Complex64], band: usize) -> Result<SpectralFunction> {
    let size = values.len();
    let needed = 2 * band + 1;
    if size < needed {
        return Err(Error::GridTooSmall { size, band, needed });
    }
    let n = size as f64;
    let band = band as i64;
    let coeffs = (-band..=band).map(|k| {
        let sum: Complex64 = values
            .iter()
            .enumerate()
            .map(|(j, v)| v * Complex64::from_polar(1.0, -(k as f64) * TAU * j as f64 / n))
            .sum();
        (k, sum / n)
    });
    Ok(SpectralFunction::from_coeffs(coeffs))
}

/// Keeps exactly the harmonics with `|k| <= n - 1`.
pub fn partial_sum(f: &SpectralFunction, n: u32) -> SpectralFunction {
    let n = i64::from(n);
    SpectralFunction::from_coeffs(f.iter().filter(|(k, _)| k.abs() < n))
}

/// Best approximation `E_n(f)` in S^p by trigonometric polynomials of order
/// `n - 1`: the ℓ^p norm of the tail `|k| >= n`.
pub fn best_approximation(f: &SpectralFunction, p: Exponent, n: u32) -> f64 {
    let n = i64::from(n);
    let tail: Vec<f64> = f
        .iter()
        .filter(|(k, _)| k.abs() >= n)
        .map(|(_, c)| c.norm())
        .collect();
    lp_norm(tail.iter().copied(), p)
}
