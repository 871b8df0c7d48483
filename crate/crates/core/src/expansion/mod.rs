//! Coefficient recovery for power and spherical expansions: from
//! derivatives, from the spherical system, and from contour integrals, plus
//! remainders and their bounds.

pub mod coeffs;
pub mod contour;
pub mod matrix;
pub mod remainder;

use serde::Serialize;

pub use coeffs::{
    conjugate_derivative_from_spherical, derivative_from_spherical, derivatives_at_center_pair, spherical_number_by_cramer,
    spherical_numbers_by_system, system_rhs, taylor_coeffs_by_derivative,
};
pub use contour::{
    contour_coeff_power, contour_coeff_spherical, contour_coeffs_power, contour_coeffs_spherical, ContourOptions, ContourValue,
};
pub use matrix::{
    bareiss_det, binomial, center_derivative, conjugate_derivative, last_column_cofactors, spherical_entry, spherical_matrix,
    GaussInt, SphericalMatrix,
};
pub use remainder::{
    power_kernel, power_kernel_pointwise, power_remainder, spherical_bound_factor, spherical_coefficient_constant,
    spherical_remainder, spherical_remainder_constant, Remainder,
};

use crate::algebra::{AlgebraConstants, ConePoint, Element};
use crate::error::{Error, Result};
use crate::slice::SliceRegular;

/// Which expansion the coefficients belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Power,
    Spherical,
}

/// How the coefficients were obtained.
///
/// For power coefficients: Cullen derivatives at y; spherical numbers from
/// the system mapped back through the derivative relation; the circle
/// integral. For spherical numbers: the Cramer determinant in the
/// derivatives at y and y^c; forward substitution; the Cassini integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Derivative,
    System,
    Contour,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Derivative, Method::System, Method::Contour];

    pub fn parse(s: &str) -> Result<Method> {
        match s {
            "deriv" | "derivative" => Ok(Method::Derivative),
            "system" => Ok(Method::System),
            "contour" => Ok(Method::Contour),
            other => Err(Error::Parse(format!("unknown method '{other}' (deriv, system, contour)"))),
        }
    }
}

/// Difference between two methods, max over coefficients of
/// max-abs(a − b) / max(1, max-abs a).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residual {
    pub against: Method,
    pub value: f64,
}

/// Remainder diagnostics at one evaluation point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointRemainder {
    pub point: ConePoint,
    pub remainder: Remainder,
}

/// Coefficients from one method with cross-checks against the others.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionReport {
    pub kind: Kind,
    pub method: Method,
    pub center: ConePoint,
    pub coefficients: Vec<Element>,
    pub residuals: Vec<Residual>,
    pub remainders: Vec<PointRemainder>,
}

/// Settings for [`expand`].
#[derive(Debug, Clone, Copy)]
pub struct ExpandOptions {
    /// Radius of the contour in ℂ_J.
    pub radius: f64,
    pub contour: ContourOptions,
}

impl Default for ExpandOptions {
    fn default() -> Self {
        ExpandOptions { radius: 0.5, contour: ContourOptions::default() }
    }
}

/// Coefficients 0..=order of the given kind by the given method.
pub fn coefficients<F: SliceRegular + ?Sized>(
    f: &F,
    y: &ConePoint,
    order: usize,
    kind: Kind,
    method: Method,
    opts: &ExpandOptions,
) -> Result<Vec<Element>> {
    let on_plane = |z| f.eval_on_plane(y.j(), z);
    match (kind, method) {
        (Kind::Power, Method::Derivative) => Ok(taylor_coeffs_by_derivative(f, y, order)),
        (Kind::Power, Method::System) => {
            let (a, b) = derivatives_at_center_pair(f, y, 2 * order)?;
            let s = spherical_numbers_by_system(&a, &b, y, 2 * order)?;
            (0..=order).map(|n| derivative_from_spherical(&s, y, n)).collect()
        }
        (Kind::Power, Method::Contour) => {
            Ok(contour_coeffs_power(&on_plane, y, opts.radius, order, opts.contour)?.into_iter().map(|c| c.value).collect())
        }
        (Kind::Spherical, Method::Derivative) => {
            let (a, b) = derivatives_at_center_pair(f, y, order)?;
            (0..=order).map(|n| spherical_number_by_cramer(&a, &b, y, n)).collect()
        }
        (Kind::Spherical, Method::System) => {
            let (a, b) = derivatives_at_center_pair(f, y, order)?;
            spherical_numbers_by_system(&a, &b, y, order)
        }
        (Kind::Spherical, Method::Contour) => Ok(contour_coeffs_spherical(&on_plane, y, opts.radius, order, opts.contour)?
            .into_iter()
            .map(|c| c.value)
            .collect()),
    }
}

/// Relative max-abs distance between two coefficient lists.
pub fn coefficient_residual(a: &[Element], b: &[Element]) -> f64 {
    let scale = a.iter().map(Element::max_abs).fold(1.0, f64::max);
    a.iter().zip(b).map(|(x, y)| (x - y).max_abs()).fold(0.0, f64::max) / scale
}

/// Runs `method`, cross-checks against the other two methods, and evaluates
/// remainders at `points` with truncation order `order`.
#[allow(clippy::too_many_arguments)]
pub fn expand<F: SliceRegular + ?Sized>(
    f: &F,
    y: &ConePoint,
    order: usize,
    kind: Kind,
    method: Method,
    points: &[ConePoint],
    consts: &AlgebraConstants,
    opts: &ExpandOptions,
) -> Result<ExpansionReport> {
    let coefficients = coefficients(f, y, order, kind, method, opts)?;
    let mut residuals = Vec::new();
    for other in Method::ALL.into_iter().filter(|&m| m != method) {
        let theirs = coefficients_or_skip(f, y, order, kind, other, opts)?;
        if let Some(theirs) = theirs {
            residuals.push(Residual { against: other, value: coefficient_residual(&coefficients, &theirs) });
        }
    }
    let remainders = points
        .iter()
        .map(|x| {
            let remainder = match kind {
                Kind::Power => power_remainder(f, y, opts.radius, order, x, consts, opts.contour)?,
                Kind::Spherical => spherical_remainder(f, y, opts.radius, order, x, consts, opts.contour)?,
            };
            Ok(PointRemainder { point: x.clone(), remainder })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExpansionReport { kind, method, center: y.clone(), coefficients, residuals, remainders })
}

// Cross-checks that need a non-real center are skipped at real centers.
fn coefficients_or_skip<F: SliceRegular + ?Sized>(
    f: &F,
    y: &ConePoint,
    order: usize,
    kind: Kind,
    method: Method,
    opts: &ExpandOptions,
) -> Result<Option<Vec<Element>>> {
    match coefficients(f, y, order, kind, method, opts) {
        Ok(c) => Ok(Some(c)),
        Err(Error::RealPoint(_)) => Ok(None),
        Err(e) => Err(e),
    }
}
