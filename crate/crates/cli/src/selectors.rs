//! Text selectors for shapes, measures, multipliers and majorants.
//!
//! | kind     | forms                                                      |
//! |----------|------------------------------------------------------------|
//! | shape    | `phi_alpha:<a>`, `table:<path>`                            |
//! | measure  | `mu1`, `mu2`, `atoms:[[t,m],...]`, `density:<path>`        |
//! | psi      | `power:<r>`, `const:<c>`, `const:<re>,<im>`, `table:<path>` |
//! | majorant | `linear`, `power:<c>:<beta>`                               |
//!
//! Table files are JSON; relative paths resolve against `base`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use spwidth_core::spectrum::SpectrumEntry;
use spwidth_core::{Complex64, Majorant, PsiSequence, ShapeFunction, WeightMeasure};

use crate::error::{CliError, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ShapeTable {
    points: Vec<(f64, f64)>,
    cap_point: Option<f64>,
    sup_value: f64,
    label: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DensityTable {
    points: Vec<(f64, f64)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PsiTable {
    values: Vec<SpectrumEntry>,
    psi_class: bool,
    label: Option<String>,
}

fn number(text: &str, what: &str) -> Result<f64> {
    text.trim().parse().map_err(|_| CliError::usage(format!("{what}: expected a number, got {text:?}")))
}

fn read_json<T: for<'de> Deserialize<'de>>(base: &Path, path: &str) -> Result<T> {
    let full: PathBuf = base.join(path);
    let text = std::fs::read_to_string(&full).map_err(|e| CliError::io(&full, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", full.display())))
}

pub fn shape(selector: &str, base: &Path) -> Result<ShapeFunction> {
    match selector.split_once(':') {
        Some(("phi_alpha", a)) => Ok(ShapeFunction::phi_alpha(number(a, "phi_alpha")?)?),
        Some(("table", path)) => {
            let t: ShapeTable = read_json(base, path)?;
            let label = t.label.unwrap_or_else(|| format!("table:{path}"));
            Ok(ShapeFunction::tabulated(t.points, t.cap_point, t.sup_value, label)?)
        }
        _ => Err(CliError::usage(format!("unknown shape {selector:?} (phi_alpha:<a> or table:<path>)"))),
    }
}

pub fn measure(selector: &str, tau: f64, base: &Path) -> Result<WeightMeasure> {
    match selector.split_once(':') {
        None if selector == "mu1" => Ok(WeightMeasure::mu1(tau)?),
        None if selector == "mu2" => Ok(WeightMeasure::mu2(tau)?),
        Some(("atoms", list)) => {
            let atoms: Vec<(f64, f64)> =
                serde_json::from_str(list).map_err(|e| CliError::usage(format!("atoms: {e}")))?;
            Ok(WeightMeasure::atoms(tau, atoms)?)
        }
        Some(("density", path)) => {
            let t: DensityTable = read_json(base, path)?;
            Ok(WeightMeasure::tabulated_density(tau, t.points)?)
        }
        _ => Err(CliError::usage(format!(
            "unknown measure {selector:?} (mu1, mu2, atoms:[[t,m],...] or density:<path>)"
        ))),
    }
}

pub fn psi(selector: &str, base: &Path) -> Result<PsiSequence> {
    match selector.split_once(':') {
        Some(("power", r)) => Ok(PsiSequence::power(number(r, "power")?)?),
        Some(("const", c)) => {
            let value = match c.split_once(',') {
                Some((re, im)) => Complex64::new(number(re, "const")?, number(im, "const")?),
                None => Complex64::new(number(c, "const")?, 0.0),
            };
            Ok(PsiSequence::constant(value)?)
        }
        Some(("table", path)) => {
            let t: PsiTable = read_json(base, path)?;
            let mut values = BTreeMap::new();
            for e in t.values {
                if values.insert(e.k, Complex64::new(e.re, e.im)).is_some() {
                    return Err(CliError::usage(format!("{path}: harmonic {} listed twice", e.k)));
                }
            }
            let label = t.label.unwrap_or_else(|| format!("table:{path}"));
            Ok(PsiSequence::tabulated(values, t.psi_class, label)?)
        }
        _ => Err(CliError::usage(format!(
            "unknown psi {selector:?} (power:<r>, const:<c>, const:<re>,<im> or table:<path>)"
        ))),
    }
}

pub fn majorant(selector: &str) -> Result<Majorant> {
    if selector == "linear" {
        return Ok(Majorant::linear());
    }
    match selector.split(':').collect::<Vec<_>>().as_slice() {
        ["power", c, beta] => Ok(Majorant::power(number(c, "power")?, number(beta, "power")?)?),
        _ => Err(CliError::usage(format!("unknown majorant {selector:?} (linear or power:<c>:<beta>)"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn builtin_selectors() {
        let here = Path::new(".");
        assert_eq!(shape("phi_alpha:2", here).unwrap().alpha(), Some(2.0));
        assert!(shape("phi_beta:2", here).is_err());
        assert!(shape("phi_alpha:x", here).is_err());
        assert_eq!(measure("mu1", PI, here).unwrap().total_mass(), 2.0);
        assert_eq!(measure("mu2", 2.0, here).unwrap().total_mass(), 2.0);
        assert_eq!(measure("atoms:[[0.5, 2.0], [1.0, 1.0]]", 2.0, here).unwrap().total_mass(), 3.0);
        assert!(measure("mu3", 1.0, here).is_err());
        assert!(psi("power:1", here).unwrap().is_psi_class());
        assert_eq!(psi("const:0,2", here).unwrap().eval(5), Complex64::new(0.0, 2.0));
        assert!(majorant("power:1:0.5").is_ok());
        assert!(majorant("power:1").is_err());
    }
}
