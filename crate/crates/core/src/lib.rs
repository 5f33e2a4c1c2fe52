//! Approximation in the spaces `S^p` of functions with `ℓ^p`-summable Fourier
//! coefficients: best approximations, generalized and averaged moduli of
//! smoothness, ψ-derivatives, sharp Jackson-type constants and width values.

// `!(x > y)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod averaging;
pub mod error;
pub mod jackson;
pub mod measure;
pub mod modulus;
pub mod psi;
pub mod quadrature;
pub mod sampling;
pub mod shape;
pub mod spectrum;
pub mod widths;

pub use num_complex::Complex64;

pub use averaging::{averaged_modulus, averaged_modulus_on};
pub use error::{Error, Result};
pub use jackson::{
    closed_form_inf, default_k_max, equiv_condition_check, extremal_function, inf_quantity, jackson_bound,
    sharp_constant, sharpness_certificate, ArgMin, InfReport, JacksonBound, SharpnessCertificate,
};
pub use measure::{stieltjes_integral, WeightMeasure};
pub use modulus::{difference_modulus_oracle, generalized_modulus, ModulusGrid, ModulusProfile};
pub use psi::{is_in_psi, nu, psi_derivative, psi_integral, NuValue, PsiCheck, PsiSequence, ZeroPolicy};
pub use quadrature::{integrate, QuadConfig};
pub use shape::ShapeFunction;
pub use spectrum::{best_approximation, fourier_from_samples, partial_sum, sp_norm, Exponent, SpectralFunction};
pub use widths::{
    bernstein_radius, certify, lower_certificate, majorant_condition_check, membership, upper_certificate,
    width_closed_form, ClassMode, Majorant, SmoothnessClass, Verdict, WidthCertificate, WidthValue,
};
