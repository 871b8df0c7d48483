//! Arithmetic inside one slice ℂ_J and in ℂ_J ⊗ ℂ.
//!
//! A `Complex64` stands for an element of ℂ_J (its imaginary unit is J) unless
//! a routine says it lives in the central factor ℂ of A ⊗ ℂ.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::algebra::Element;

/// Φ_J(a + ib) = a + bJ.
pub fn phi(j: &Element, z: Complex64) -> Element {
    let mut e = j.scale(z.im);
    e += &Element::real(j.spec(), z.re);
    e
}

/// An element p + i q of ℂ_J ⊗ ℂ with p, q ∈ ℂ_J; i is the central unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bicomplex {
    pub p: Complex64,
    pub q: Complex64,
}

impl Bicomplex {
    pub const ZERO: Bicomplex = Bicomplex { p: Complex64::new(0.0, 0.0), q: Complex64::new(0.0, 0.0) };
    pub const ONE: Bicomplex = Bicomplex { p: Complex64::new(1.0, 0.0), q: Complex64::new(0.0, 0.0) };

    pub fn new(p: Complex64, q: Complex64) -> Self {
        Bicomplex { p, q }
    }

    /// An element of ℂ_J viewed in ℂ_J ⊗ ℂ.
    pub fn from_plane(p: Complex64) -> Self {
        Bicomplex { p, q: Complex64::new(0.0, 0.0) }
    }

    /// A number of the central ℂ: a + ib with a, b real.
    pub fn from_central(c: Complex64) -> Self {
        Bicomplex { p: Complex64::new(c.re, 0.0), q: Complex64::new(c.im, 0.0) }
    }

    /// The central variable z minus a point w of ℂ_J: (Re z − w) + i Im z.
    pub fn central_minus_plane(z: Complex64, w: Complex64) -> Self {
        Bicomplex { p: Complex64::new(z.re, 0.0) - w, q: Complex64::new(z.im, 0.0) }
    }

    pub fn powu(self, n: u32) -> Self {
        let mut acc = Bicomplex::ONE;
        let mut base = self;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(self, s: f64) -> Self {
        Bicomplex { p: self.p * s, q: self.q * s }
    }
}

impl Add for Bicomplex {
    type Output = Bicomplex;
    fn add(self, o: Bicomplex) -> Bicomplex {
        Bicomplex { p: self.p + o.p, q: self.q + o.q }
    }
}

impl Sub for Bicomplex {
    type Output = Bicomplex;
    fn sub(self, o: Bicomplex) -> Bicomplex {
        Bicomplex { p: self.p - o.p, q: self.q - o.q }
    }
}

impl Neg for Bicomplex {
    type Output = Bicomplex;
    fn neg(self) -> Bicomplex {
        Bicomplex { p: -self.p, q: -self.q }
    }
}

impl Mul for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, o: Bicomplex) -> Bicomplex {
        Bicomplex { p: self.p * o.p - self.q * o.q, q: self.p * o.q + self.q * o.p }
    }
}
