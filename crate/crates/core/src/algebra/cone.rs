use num_complex::Complex64;

use super::{AlgebraSpec, Element};
use crate::error::{Error, Result};

/// Absolute membership tolerance, scaled by the operand magnitude.
pub const CONE_TOL: f64 = 1e-9;

/// Whether `j` is a square root of −1 in the cone: t(J) = 0 and n(J) = 1.
pub fn is_unit_imaginary(j: &Element, tol: f64) -> bool {
    let t = j.trace();
    let n = j.norm_q() - Element::one(j.spec());
    t.max_abs() <= tol && n.max_abs() <= tol
}

/// A point of the quadratic cone written as α + βJ with β ≥ 0.
#[derive(Clone, Debug, PartialEq)]
pub struct ConePoint {
    alpha: f64,
    beta: f64,
    j: Element,
    canonical: bool,
    element: Element,
}

fn placeholder_unit(spec: &'static AlgebraSpec) -> Element {
    Element::basis(spec, 1)
}

impl ConePoint {
    /// α + βJ. A negative β is absorbed by flipping J.
    pub fn new(alpha: f64, beta: f64, j: Element) -> Result<ConePoint> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidArgument("non-finite cone coordinates".into()));
        }
        if !is_unit_imaginary(&j, CONE_TOL) {
            return Err(Error::InvalidArgument(format!("{j} is not a square root of -1")));
        }
        let (beta, j) = if beta < 0.0 { (-beta, -j) } else { (beta, j) };
        let canonical = beta > 0.0;
        let element = Element::real(j.spec(), alpha) + j.scale(beta);
        Ok(ConePoint { alpha, beta, j, canonical, element })
    }

    /// A real point; its J is a flagged placeholder.
    pub fn real(spec: &'static AlgebraSpec, alpha: f64) -> ConePoint {
        ConePoint {
            alpha,
            beta: 0.0,
            j: placeholder_unit(spec),
            canonical: false,
            element: Element::real(spec, alpha),
        }
    }

    /// Φ_J(z) = Re z + J Im z.
    pub fn on_plane(j: &Element, z: Complex64) -> Result<ConePoint> {
        ConePoint::new(z.re, z.im, j.clone())
    }

    /// Split `x` as re(x) + im(x) with the default tolerance.
    pub fn from_element(x: &Element) -> Result<ConePoint> {
        ConePoint::decompose(x, CONE_TOL)
    }

    /// Split `x` as α + βJ, or report that `x` is outside the cone.
    pub fn decompose(x: &Element, tol: f64) -> Result<ConePoint> {
        let scale = x.euclidean_norm().max(1.0);
        let t = x.trace();
        if t.without_scalar().max_abs() > tol * scale {
            return Err(Error::NotInCone(format!("trace of {x} is not real")));
        }
        let n = x.norm_q();
        if n.without_scalar().max_abs() > tol * scale * scale {
            return Err(Error::NotInCone(format!("norm of {x} is not real")));
        }
        let alpha = 0.5 * t.scalar();
        let im = x.without_scalar();
        let beta = im.norm_q().scalar().max(0.0).sqrt();
        if beta <= tol * scale {
            if 4.0 * n.scalar() < t.scalar().powi(2) - tol * scale * scale {
                return Err(Error::NotInCone(format!("{x} has 4n(x) < t(x)^2")));
            }
            return Ok(ConePoint::real(x.spec(), alpha));
        }
        let j = im.scale(1.0 / beta);
        if !is_unit_imaginary(&j, tol.max(1e-12) * 10.0) {
            return Err(Error::NotInCone(format!("imaginary part of {x} does not square to a negative real")));
        }
        Ok(ConePoint { alpha, beta, j, canonical: true, element: x.clone() })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn j(&self) -> &Element {
        &self.j
    }

    /// False for real points, whose J is a placeholder.
    pub fn has_canonical_j(&self) -> bool {
        self.canonical
    }

    pub fn is_real(&self) -> bool {
        !self.canonical
    }

    pub fn element(&self) -> &Element {
        &self.element
    }

    pub fn spec(&self) -> &'static AlgebraSpec {
        self.element.spec()
    }

    /// The complex shadow α + iβ (β ≥ 0).
    pub fn shadow(&self) -> Complex64 {
        Complex64::new(self.alpha, self.beta)
    }

    /// x^c = α + β(−J).
    pub fn conj_point(&self) -> ConePoint {
        if self.is_real() {
            return self.clone();
        }
        ConePoint {
            alpha: self.alpha,
            beta: self.beta,
            j: -&self.j,
            canonical: true,
            element: self.element.conj(),
        }
    }

    /// Same point with the placeholder J replaced, for real points. Non-real
    /// points are returned unchanged.
    pub fn with_placeholder(&self, j: &Element) -> ConePoint {
        if self.is_real() {
            ConePoint { j: j.clone(), ..self.clone() }
        } else {
            self.clone()
        }
    }

    /// Coordinate of this point in ℂ_J if it lies there (real points lie in
    /// every plane; α + β(−J) maps to α − iβ).
    pub fn coordinate_in(&self, j: &Element, tol: f64) -> Option<Complex64> {
        if self.is_real() {
            return Some(Complex64::new(self.alpha, 0.0));
        }
        if (&self.j - j).max_abs() <= tol {
            Some(Complex64::new(self.alpha, self.beta))
        } else if (&self.j + j).max_abs() <= tol {
            Some(Complex64::new(self.alpha, -self.beta))
        } else {
            None
        }
    }
}

/// x⁻¹ = n(x)⁻¹ x^c for a nonzero cone point.
pub fn inverse_in_cone(x: &ConePoint) -> Result<Element> {
    let n = x.alpha * x.alpha + x.beta * x.beta;
    if n == 0.0 {
        return Err(Error::DivisionByZero("zero has no inverse".into()));
    }
    Ok(x.element.conj().scale(1.0 / n))
}
