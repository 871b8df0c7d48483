use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use nalgebra::DMatrix;

use super::{AlgebraSpec, NormKind};
use crate::error::{Error, Result};

/// A coordinate vector over the canonical basis of an algebra.
#[derive(Clone)]
pub struct Element {
    spec: &'static AlgebraSpec,
    coords: Vec<f64>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.spec, other.spec) && self.coords == other.coords
    }
}

impl Element {
    pub fn zero(spec: &'static AlgebraSpec) -> Self {
        Element { spec, coords: vec![0.0; spec.dim()] }
    }

    pub fn one(spec: &'static AlgebraSpec) -> Self {
        Self::real(spec, 1.0)
    }

    /// The real number `a` as an element.
    pub fn real(spec: &'static AlgebraSpec, a: f64) -> Self {
        let mut e = Self::zero(spec);
        e.coords[0] = a;
        e
    }

    /// The basis vector v_i.
    pub fn basis(spec: &'static AlgebraSpec, i: usize) -> Self {
        assert!(i < spec.dim(), "basis index {i} out of range for {spec:?}");
        let mut e = Self::zero(spec);
        e.coords[i] = 1.0;
        e
    }

    /// Build from coordinates, checking the length.
    pub fn from_coords(spec: &'static AlgebraSpec, coords: &[f64]) -> Result<Self> {
        if coords.len() != spec.dim() {
            return Err(Error::InvalidArgument(format!(
                "{:?} needs {} coordinates, got {}",
                spec,
                spec.dim(),
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coordinate".into()));
        }
        Ok(Element { spec, coords: coords.to_vec() })
    }

    pub(crate) fn from_vec_unchecked(spec: &'static AlgebraSpec, coords: Vec<f64>) -> Self {
        debug_assert_eq!(coords.len(), spec.dim());
        Element { spec, coords }
    }

    pub fn spec(&self) -> &'static AlgebraSpec {
        self.spec
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn same_spec(&self, other: &Element) -> bool {
        std::ptr::eq(self.spec, other.spec)
    }

    fn check(&self, other: &Element) -> Result<()> {
        if self.same_spec(other) {
            Ok(())
        } else {
            Err(Error::SpecMismatch { left: format!("{:?}", self.spec), right: format!("{:?}", other.spec) })
        }
    }

    /// Product via the structure table, or a spec-mismatch error.
    pub fn checked_mul(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        let d = self.spec.dim();
        let mut out = vec![0.0; d];
        for (i, &a) in self.coords.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.coords.iter().enumerate() {
                if b == 0.0 {
                    continue;
                }
                let (k, s) = self.spec.basis_product(i, j);
                out[k] += s * a * b;
            }
        }
        Ok(Element { spec: self.spec, coords: out })
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(&self, other: &Element, f: impl Fn(f64, f64) -> f64) -> Element {
        let coords = self.coords.iter().zip(&other.coords).map(|(&a, &b)| f(a, b)).collect();
        Element { spec: self.spec, coords }
    }

    /// Real multiple `s x`.
    pub fn scale(&self, s: f64) -> Element {
        Element { spec: self.spec, coords: self.coords.iter().map(|c| c * s).collect() }
    }

    /// x^c.
    pub fn conj(&self) -> Element {
        let coords = self.coords.iter().zip(self.spec.conjugation_signs()).map(|(c, s)| c * s).collect();
        Element { spec: self.spec, coords }
    }

    /// t(x) = x + x^c.
    pub fn trace(&self) -> Element {
        self + &self.conj()
    }

    /// n(x) = x x^c.
    pub fn norm_q(&self) -> Element {
        self * &self.conj()
    }

    /// Coefficient of the unity.
    pub fn scalar(&self) -> f64 {
        self.coords[0]
    }

    /// x − scalar(x).
    pub fn without_scalar(&self) -> Element {
        let mut e = self.clone();
        e.coords[0] = 0.0;
        e
    }

    /// Euclidean norm of the coordinate vector.
    pub fn euclidean_norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Largest coordinate magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coords.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Matrix of y ↦ x y in the canonical basis.
    pub fn left_matrix(&self) -> DMatrix<f64> {
        let d = self.spec.dim();
        let mut m = DMatrix::zeros(d, d);
        for (i, &a) in self.coords.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for j in 0..d {
                let (k, s) = self.spec.basis_product(i, j);
                m[(k, j)] += s * a;
            }
        }
        m
    }

    /// Matrix of y ↦ y x in the canonical basis.
    pub fn right_matrix(&self) -> DMatrix<f64> {
        let d = self.spec.dim();
        let mut m = DMatrix::zeros(d, d);
        for (i, &a) in self.coords.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for j in 0..d {
                let (k, s) = self.spec.basis_product(j, i);
                m[(k, j)] += s * a;
            }
        }
        m
    }

    /// The distinguished norm ‖x‖_A.
    pub fn norm(&self) -> f64 {
        match self.spec.norm_kind() {
            NormKind::Euclidean => self.euclidean_norm(),
            NormKind::CliffordOperator => {
                if self.coords.iter().all(|&c| c == 0.0) {
                    return 0.0;
                }
                self.left_matrix().singular_values().max()
            }
        }
    }

    /// ‖x − y‖_A.
    pub fn dist(&self, other: &Element) -> f64 {
        (self - other).norm()
    }

    /// Whether every non-scalar coordinate is below `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.coords[1..].iter().all(|c| c.abs() <= tol)
    }

    /// Parse either a JSON coordinate array (`[1, 0, 2, 0]`) or a sum of
    /// labelled terms (`1 + 2i - 0.5*k`, `e12 - 3e1`).
    pub fn parse(spec: &'static AlgebraSpec, text: &str) -> Result<Element> {
        let t = text.trim();
        if t.starts_with('[') {
            let coords: Vec<f64> =
                serde_json::from_str(t).map_err(|e| Error::Parse(format!("coordinate array `{t}`: {e}")))?;
            return Element::from_coords(spec, &coords);
        }
        parse_expression(spec, t)
    }
}

fn parse_expression(spec: &'static AlgebraSpec, text: &str) -> Result<Element> {
    let bad = || Error::Parse(format!("cannot read `{text}` as an element of {spec:?}"));
    let mut out = Element::zero(spec);
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(bad());
    }
    let mut pos = 0;
    while pos < chars.len() {
        let mut sign = 1.0;
        if chars[pos] == '+' || chars[pos] == '-' {
            if chars[pos] == '-' {
                sign = -1.0;
            }
            pos += 1;
        } else if pos > 0 {
            return Err(bad());
        }
        let start = pos;
        while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '.') {
            pos += 1;
        }
        let number: String = chars[start..pos].iter().collect();
        let coef = if number.is_empty() { 1.0 } else { number.parse::<f64>().map_err(|_| bad())? };
        if pos < chars.len() && chars[pos] == '*' {
            pos += 1;
        }
        let name_start = pos;
        while pos < chars.len() && chars[pos] != '+' && chars[pos] != '-' {
            pos += 1;
        }
        let name: String = chars[name_start..pos].iter().collect();
        let idx = if name.is_empty() {
            if number.is_empty() {
                return Err(bad());
            }
            0
        } else {
            spec.basis_index(&name).ok_or_else(bad)?
        };
        out.coords[idx] += sign * coef;
    }
    Ok(out)
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in self.coords.iter().zip(self.spec.basis_names()) {
            if *c == 0.0 {
                continue;
            }
            let label = if name == "1" { String::new() } else { name.clone() };
            if first {
                write!(f, "{c}{label}")?;
                first = false;
            } else if *c < 0.0 {
                write!(f, " - {}{label}", -c)?;
            } else {
                write!(f, " + {c}{label}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Element> for &Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Element> for Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Element> for Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                (&self).$method(rhs)
            }
        }
        impl $trait<Element> for &Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        assert!(self.same_spec(rhs), "spec mismatch in +=");
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a += b;
        }
    }
}

impl SubAssign<&Element> for Element {
    fn sub_assign(&mut self, rhs: &Element) {
        assert!(self.same_spec(rhs), "spec mismatch in -=");
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a -= b;
        }
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(-1.0)
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Element {
    type Output = Element;
    fn mul(self, rhs: f64) -> Element {
        self.scale(rhs)
    }
}

impl Mul<f64> for Element {
    type Output = Element;
    fn mul(self, rhs: f64) -> Element {
        self.scale(rhs)
    }
}
