//! Averaged values `Ω_φ(f, τ, μ, u)` of the generalized modulus.

use crate::error::{Error, Result};
use crate::measure::{stieltjes_integral, WeightMeasure};
use crate::quadrature::{integrate, QuadConfig};
use crate::modulus::{ModulusGrid, ModulusProfile};
use crate::shape::ShapeFunction;
use crate::spectrum::{Exponent, SpectralFunction};

/// `Ω_φ(f, τ, μ, u) = ((μ(τ) - μ(0))^{-1} ∫_0^u ω_φ(f, t)^p dμ(τt/u))^{1/p}`.
///
/// `ω_φ(f, ·)^p` is read off a single [`ModulusProfile`] over `[0, u]`, so the
/// supremum for each quadrature node extends the sweep already done for the
/// nodes to its left instead of searching `[0, t]` afresh.
pub fn averaged_modulus(
    f: &SpectralFunction,
    p: Exponent,
    phi: &ShapeFunction,
    mu: &WeightMeasure,
    u: f64,
    grid: &ModulusGrid,
) -> Result<f64> {
    if !(u.is_finite() && u > 0.0) {
        return Err(Error::InvalidArgument(format!("averaging window u = {u} must be positive")));
    }
    if f.is_empty() {
        return Ok(0.0);
    }
    let profile = ModulusProfile::new(f, p, phi, u, grid);
    averaged_modulus_on(&profile, p, mu, u)
}

/// Averaged modulus over a window `u` no longer than the profile's span.
/// One profile over `[0, u_max]` serves every window `u <= u_max`.
pub fn averaged_modulus_on(profile: &ModulusProfile<'_>, p: Exponent, mu: &WeightMeasure, u: f64) -> Result<f64> {
    if !(u > 0.0 && u <= profile.span() * (1.0 + 1e-12)) {
        return Err(Error::InvalidArgument(format!(
            "window u = {u} outside the profile span (0, {}]",
            profile.span()
        )));
    }
    let integral = stieltjes_integral(|t| profile.sup_pow(t.min(profile.span())), mu, u)?;
    Ok((integral.max(0.0) / mu.total_mass()).powf(p.recip()))
}

/// [`averaged_modulus_on`] for several windows at once. With a constant
/// density, `Ω^p(u) = (c τ / u) ∫_0^u ω^p dt + atoms / mass`, so one
/// cumulative pass over the sorted windows serves all of them; the per-segment
/// tolerance is split so that every window keeps the overall target.
pub fn averaged_modulus_windows(profile: &ModulusProfile<'_>, p: Exponent, mu: &WeightMeasure, us: &[f64]) -> Result<Vec<f64>> {
    let Some(density) = mu.constant_density() else {
        return us.iter().map(|&u| averaged_modulus_on(profile, p, mu, u)).collect();
    };
    let span = profile.span();
    if let Some(&u) = us.iter().find(|&&u| !(u > 0.0 && u <= span * (1.0 + 1e-12))) {
        return Err(Error::InvalidArgument(format!("window u = {u} outside the profile span (0, {span}]")));
    }
    let mut order: Vec<usize> = (0..us.len()).collect();
    order.sort_by(|&a, &b| us[a].total_cmp(&us[b]));
    let base = QuadConfig::default();
    let cfg = QuadConfig { abs_tol: base.abs_tol / us.len().max(1) as f64, ..base };
    let tau = mu.tau();
    let mut out = vec![0.0; us.len()];
    let (mut left, mut cumulative) = (0.0, 0.0);
    for i in order {
        let u = us[i];
        if density != 0.0 && u > left {
            cumulative += integrate(|t| profile.sup_pow(t.min(span)), left, u, &cfg)?;
            left = u;
        }
        let atoms: f64 = mu.atom_list().iter().map(|&(t, m)| m * profile.sup_pow((u * t / tau).min(span))).sum();
        let integral = density * cumulative * tau / u + atoms;
        out[i] = (integral.max(0.0) / mu.total_mass()).powf(p.recip());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modulus::generalized_modulus;
    use std::f64::consts::{PI, SQRT_2};

    #[test]
    fn constant_function_averages_to_zero() {
        let f = SpectralFunction::from_real([(0, 2.0)]);
        let phi = ShapeFunction::phi_alpha(1.0).unwrap();
        let mu = WeightMeasure::mu1(PI).unwrap();
        let p = Exponent::new(2.0).unwrap();
        assert_eq!(averaged_modulus(&f, p, &phi, &mu, 1.0, &ModulusGrid::default()).unwrap(), 0.0);
    }

    #[test]
    fn single_harmonic_against_antiderivative() {
        // ((1/π) ∫_0^π 2(1 - cos t) dt)^{1/2} = √2
        let f = SpectralFunction::from_real([(1, 1.0)]);
        let phi = ShapeFunction::phi_alpha(1.0).unwrap();
        let mu = WeightMeasure::mu2(PI).unwrap();
        let p = Exponent::new(2.0).unwrap();
        let v = averaged_modulus(&f, p, &phi, &mu, PI, &ModulusGrid::default()).unwrap();
        assert!((v - SQRT_2).abs() < 1e-10);
    }

    #[test]
    fn never_exceeds_modulus_at_window() {
        let f = SpectralFunction::from_real([(3, 1.0), (-8, 0.5), (1, 0.2)]);
        let phi = ShapeFunction::phi_alpha(2.0).unwrap();
        let mu = WeightMeasure::mu1(PI).unwrap();
        let grid = ModulusGrid::default();
        for p in [1.0, 2.0, 3.0] {
            let p = Exponent::new(p).unwrap();
            for u in [0.1, 0.5, 1.5] {
                let avg = averaged_modulus(&f, p, &phi, &mu, u, &grid).unwrap();
                let top = generalized_modulus(&f, p, &phi, u, &grid);
                assert!(avg <= top + 1e-9, "p = {p}, u = {u}: {avg} > {top}");
            }
        }
    }

    #[test]
    fn constant_shape_normalization() {
        let f = SpectralFunction::from_real([(1, 1.0)]);
        let phi = ShapeFunction::constant(1.0).unwrap();
        let grid = ModulusGrid::default();
        for mu in [WeightMeasure::mu1(PI).unwrap(), WeightMeasure::mu2(2.0).unwrap()] {
            for p in [1.0, 2.5] {
                let p = Exponent::new(p).unwrap();
                let v = averaged_modulus(&f, p, &phi, &mu, 0.8, &grid).unwrap();
                assert!((v - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn window_validation() {
        let f = SpectralFunction::from_real([(1, 1.0)]);
        let phi = ShapeFunction::phi_alpha(1.0).unwrap();
        let mu = WeightMeasure::mu2(1.0).unwrap();
        let p = Exponent::new(2.0).unwrap();
        assert!(averaged_modulus(&f, p, &phi, &mu, 0.0, &ModulusGrid::default()).is_err());
        let profile = ModulusProfile::new(&f, p, &phi, 1.0, &ModulusGrid::default());
        assert!(averaged_modulus_on(&profile, p, &mu, 1.5).is_err());
    }

    #[test]
    fn windows_match_single_evaluations() {
        let f = SpectralFunction::from_real([(1, 1.0), (3, -0.5), (-7, 0.25)]);
        let phi = ShapeFunction::phi_alpha(1.5).unwrap();
        let p = Exponent::new(1.5).unwrap();
        let grid = ModulusGrid::default();
        let us = [2.0, 0.3, 1.1, 2.3];
        for mu in [
            WeightMeasure::mu2(2.3).unwrap().with_atoms(vec![(1.0, 0.5)]).unwrap(),
            WeightMeasure::mu1(2.3).unwrap(),
        ] {
            let profile = ModulusProfile::new(&f, p, &phi, 2.3, &grid);
            let all = averaged_modulus_windows(&profile, p, &mu, &us).unwrap();
            for (&u, &v) in us.iter().zip(&all) {
                let single = averaged_modulus_on(&profile, p, &mu, u).unwrap();
                assert!((v - single).abs() < 1e-9, "u = {u}: {v} vs {single}");
            }
        }
    }
}
