//! Stem functions, the slice functions they induce, slice products and
//! slice derivatives.

use num_complex::Complex64;

use crate::algebra::{is_unit_imaginary, AlgebraSpec, ConePoint, Element, CONE_TOL};
use crate::error::{Error, Result};
use crate::plane::{phi, Bicomplex};

/// Tolerance above which a nonzero F₂ at a real point is reported.
const REAL_POINT_TOL: f64 = 1e-9;

/// An element F₁ + iF₂ of A ⊗ ℂ.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexElement {
    pub re: Element,
    pub im: Element,
}

impl ComplexElement {
    pub fn new(re: Element, im: Element) -> Result<Self> {
        if !re.same_spec(&im) {
            return Err(Error::SpecMismatch { left: format!("{:?}", re.spec()), right: format!("{:?}", im.spec()) });
        }
        Ok(ComplexElement { re, im })
    }

    pub fn zero(spec: &'static AlgebraSpec) -> Self {
        ComplexElement { re: Element::zero(spec), im: Element::zero(spec) }
    }

    /// a + i0.
    pub fn from_element(a: Element) -> Self {
        let im = Element::zero(a.spec());
        ComplexElement { re: a, im }
    }

    pub fn spec(&self) -> &'static AlgebraSpec {
        self.re.spec()
    }

    /// (a + ib)(c + id) = (ac − bd) + i(ad + bc).
    pub fn checked_mul(&self, other: &ComplexElement) -> Result<ComplexElement> {
        let ac = self.re.checked_mul(&other.re)?;
        let bd = self.im.checked_mul(&other.im)?;
        let ad = self.re.checked_mul(&other.im)?;
        let bc = self.im.checked_mul(&other.re)?;
        Ok(ComplexElement { re: ac - bd, im: ad + bc })
    }

    pub fn add(&self, other: &ComplexElement) -> ComplexElement {
        ComplexElement { re: &self.re + &other.re, im: &self.im + &other.im }
    }

    pub fn sub(&self, other: &ComplexElement) -> ComplexElement {
        ComplexElement { re: &self.re - &other.re, im: &self.im - &other.im }
    }

    pub fn add_assign(&mut self, other: &ComplexElement) {
        self.re += &other.re;
        self.im += &other.im;
    }

    /// Multiply by a number c of the central ℂ.
    pub fn scale_central(&self, c: Complex64) -> ComplexElement {
        ComplexElement {
            re: self.re.scale(c.re) - self.im.scale(c.im),
            im: self.im.scale(c.re) + self.re.scale(c.im),
        }
    }

    /// Left multiplication by P = Φ_J(p) + iΦ_J(q) ∈ ℂ_J ⊗ ℂ.
    pub fn left_bicomplex(&self, j: &Element, b: Bicomplex) -> ComplexElement {
        let p = phi(j, b.p);
        let q = phi(j, b.q);
        ComplexElement { re: &p * &self.re - &q * &self.im, im: &p * &self.im + &q * &self.re }
    }

    /// F₁ + J F₂.
    pub fn induce_with(&self, j: &Element) -> Element {
        &self.re + &(j * &self.im)
    }

    /// F₁ − iF₂.
    pub fn conj_central(&self) -> ComplexElement {
        ComplexElement { re: self.re.clone(), im: -&self.im }
    }

    pub fn max_abs(&self) -> f64 {
        self.re.max_abs().max(self.im.max_abs())
    }
}

/// A function on the quadratic cone induced by a stem F = F₁ + iF₂:
/// f(α + βJ) = F₁(α + iβ) + J F₂(α + iβ).
pub trait SliceFunction: Sync {
    fn spec(&self) -> &'static AlgebraSpec;

    /// The stem at a point of the central complex plane.
    fn stem(&self, z: Complex64) -> ComplexElement;

    /// f at a cone point. At real points F₂ is dropped, with a warning if
    /// it is not negligible.
    fn eval(&self, x: &ConePoint) -> Element {
        if x.is_real() {
            let f = self.stem(Complex64::new(x.alpha(), 0.0));
            let leak = f.im.max_abs();
            if leak > REAL_POINT_TOL * f.re.max_abs().max(1.0) {
                log::warn!("stem has F2 = {leak:e} on the real axis; discarded");
            }
            return f.re;
        }
        self.stem(x.shadow()).induce_with(x.j())
    }

    /// The restriction f_J(z) = f(Φ_J(z)) for any z ∈ ℂ.
    fn eval_on_plane(&self, j: &Element, z: Complex64) -> Element {
        let f = self.stem(z);
        if z.im == 0.0 {
            f.re
        } else {
            f.induce_with(j)
        }
    }
}

/// A slice function whose stem can be differentiated in z.
pub trait SliceRegular: SliceFunction {
    /// (1/n!) dⁿF/dzⁿ at z.
    fn scaled_derivative(&self, n: usize, z: Complex64) -> ComplexElement;

    /// (1/n!) ∂ⁿf/∂xⁿ at a point of ℂ_J.
    fn scaled_derivative_on_plane(&self, n: usize, j: &Element, z: Complex64) -> Element {
        let f = self.scaled_derivative(n, z);
        if z.im == 0.0 {
            f.re
        } else {
            f.induce_with(j)
        }
    }

    /// (1/n!) ∂ⁿf/∂xⁿ at a cone point.
    fn scaled_cullen_derivative(&self, n: usize, x: &ConePoint) -> Element {
        if x.is_real() {
            return self.scaled_derivative(n, Complex64::new(x.alpha(), 0.0)).re;
        }
        self.scaled_derivative(n, x.shadow()).induce_with(x.j())
    }
}

/// F(z) = Σ_k z^k (c1_k + i c2_k).
#[derive(Clone, Debug, PartialEq)]
pub struct StemPolynomial {
    coeffs: Vec<ComplexElement>,
}

impl StemPolynomial {
    pub fn new(coeffs: Vec<ComplexElement>) -> Result<Self> {
        let first = coeffs.first().ok_or_else(|| Error::InvalidArgument("stem needs a coefficient".into()))?;
        let spec = first.spec();
        if coeffs.iter().any(|c| !std::ptr::eq(c.spec(), spec)) {
            return Err(Error::SpecMismatch { left: format!("{spec:?}"), right: "mixed coefficients".into() });
        }
        Ok(StemPolynomial { coeffs })
    }

    /// Σ z^k a_k with a_k ∈ A.
    pub fn from_elements(coeffs: Vec<Element>) -> Result<Self> {
        Self::new(coeffs.into_iter().map(ComplexElement::from_element).collect())
    }

    pub fn constant(a: Element) -> Self {
        StemPolynomial { coeffs: vec![ComplexElement::from_element(a)] }
    }

    /// z^k a.
    pub fn monomial(k: usize, a: Element) -> Self {
        let spec = a.spec();
        let mut coeffs = vec![ComplexElement::zero(spec); k + 1];
        coeffs[k] = ComplexElement::from_element(a);
        StemPolynomial { coeffs }
    }

    /// z − y for y ∈ A.
    pub fn linear(y: &Element) -> Self {
        StemPolynomial::from_elements(vec![-y, Element::one(y.spec())]).expect("same spec")
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ComplexElement] {
        &self.coeffs
    }

    /// Largest F₂ coefficient; zero exactly when F satisfies the stem condition.
    pub fn parity_defect(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.im.max_abs()))
    }

    /// The formal z-derivative.
    pub fn derivative(&self) -> StemPolynomial {
        if self.coeffs.len() == 1 {
            return StemPolynomial { coeffs: vec![ComplexElement::zero(self.spec_ref())] };
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(k, c)| ComplexElement { re: c.re.scale((k + 1) as f64), im: c.im.scale((k + 1) as f64) })
            .collect();
        StemPolynomial { coeffs }
    }

    fn spec_ref(&self) -> &'static AlgebraSpec {
        self.coeffs[0].spec()
    }

    /// Coefficient convolution; each coefficient product is one binary
    /// product in A ⊗ ℂ.
    pub fn slice_product(&self, other: &StemPolynomial) -> Result<StemPolynomial> {
        let spec = self.spec_ref();
        if !std::ptr::eq(spec, other.spec_ref()) {
            return Err(Error::SpecMismatch { left: format!("{spec:?}"), right: format!("{:?}", other.spec_ref()) });
        }
        let mut coeffs = vec![ComplexElement::zero(spec); self.coeffs.len() + other.coeffs.len() - 1];
        for (a, ca) in self.coeffs.iter().enumerate() {
            for (b, cb) in other.coeffs.iter().enumerate() {
                let p = ca.checked_mul(cb)?;
                coeffs[a + b].add_assign(&p);
            }
        }
        Ok(StemPolynomial { coeffs })
    }

    /// ∂F/∂z̄ = ½(∂F/∂a + i ∂F/∂b) at z = a + ib, from the expansion of
    /// each z^k as a real polynomial in (a, b). Zero up to rounding.
    pub fn antiholomorphic_derivative(&self, z: Complex64) -> ComplexElement {
        let (a, b) = (z.re, z.im);
        let i_pow = |j: usize| match j % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        let mut out = ComplexElement::zero(self.spec_ref());
        for (k, c) in self.coeffs.iter().enumerate() {
            let mut da = Complex64::new(0.0, 0.0);
            let mut db = Complex64::new(0.0, 0.0);
            let mut binom = 1.0;
            for j in 0..=k {
                if j > 0 {
                    binom = binom * (k + 1 - j) as f64 / j as f64;
                }
                let p = k - j;
                if p > 0 {
                    da += i_pow(j) * (binom * p as f64 * a.powi(p as i32 - 1) * b.powi(j as i32));
                }
                if j > 0 {
                    db += i_pow(j) * (binom * j as f64 * a.powi(p as i32) * b.powi(j as i32 - 1));
                }
            }
            let w = (da + Complex64::new(0.0, 1.0) * db) * 0.5;
            out.add_assign(&c.scale_central(w));
        }
        out
    }
}

impl SliceFunction for StemPolynomial {
    fn spec(&self) -> &'static AlgebraSpec {
        self.spec_ref()
    }

    fn stem(&self, z: Complex64) -> ComplexElement {
        let mut acc = self.coeffs.last().expect("nonempty").clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.scale_central(z);
            acc.add_assign(c);
        }
        acc
    }
}

impl SliceRegular for StemPolynomial {
    fn scaled_derivative(&self, n: usize, z: Complex64) -> ComplexElement {
        let spec = self.spec_ref();
        if n > self.degree() {
            return ComplexElement::zero(spec);
        }
        // Horner on Σ_k C(k, n) z^{k−n} c_k
        let mut acc = ComplexElement::zero(spec);
        for k in (n..self.coeffs.len()).rev() {
            acc = acc.scale_central(z);
            let b = binomial_f64(k, n);
            let c = &self.coeffs[k];
            acc.add_assign(&ComplexElement { re: c.re.scale(b), im: c.im.scale(b) });
        }
        acc
    }
}

pub(crate) fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r.round()
}

/// A stem that is constant on each open half plane: F on Im z > 0, its
/// conjugate F̄ = F₁ − iF₂ on Im z < 0, and F₁ on the real axis.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseConstantStem {
    upper: ComplexElement,
}

impl PiecewiseConstantStem {
    pub fn new(upper: ComplexElement) -> Self {
        PiecewiseConstantStem { upper }
    }

    pub fn upper(&self) -> &ComplexElement {
        &self.upper
    }
}

impl SliceFunction for PiecewiseConstantStem {
    fn spec(&self) -> &'static AlgebraSpec {
        self.upper.spec()
    }

    fn stem(&self, z: Complex64) -> ComplexElement {
        if z.im > 0.0 {
            self.upper.clone()
        } else if z.im < 0.0 {
            self.upper.conj_central()
        } else {
            ComplexElement::from_element(self.upper.re.clone())
        }
    }
}

impl SliceRegular for PiecewiseConstantStem {
    fn scaled_derivative(&self, n: usize, z: Complex64) -> ComplexElement {
        if n == 0 {
            self.stem(z)
        } else {
            ComplexElement::zero(self.spec())
        }
    }
}

/// Value of the slice function induced by `stem` at `x`.
pub fn induce(stem: &StemPolynomial, x: &ConePoint) -> Element {
    stem.eval(x)
}

/// Cullen derivative ∂f/∂x at `x`, i.e. the induced value of ∂F/∂z.
pub fn cullen_derivative_at(stem: &StemPolynomial, x: &ConePoint) -> Element {
    stem.derivative().eval(x)
}

/// f(α + βI) = ½(f(z_J) + f(z_J^c)) − ½ I(J(f(z_J) − f(z_J^c))) from the two
/// values of f on ℂ_J at z_J = α + βJ and z_J^c = α − βJ.
pub fn representation_formula(f_at_zj: &Element, f_at_zjc: &Element, i_new: &Element, j: &Element) -> Result<Element> {
    for u in [i_new, j] {
        if !is_unit_imaginary(u, CONE_TOL) {
            return Err(Error::InvalidArgument(format!("{u} is not a square root of -1")));
        }
    }
    let sum = f_at_zj.checked_add(f_at_zjc)?;
    let diff = f_at_zj.checked_sub(f_at_zjc)?;
    let jd = j.checked_mul(&diff)?;
    let ijd = i_new.checked_mul(&jd)?;
    Ok((sum - ijd).scale(0.5))
}

/// ∂_s f(y) = (im y)⁻¹ (f(y) − f(y^c))/2.
pub fn spherical_derivative(f_at_y: &Element, f_at_yc: &Element, y: &ConePoint) -> Result<Element> {
    if y.is_real() {
        return Err(Error::RealPoint("the spherical derivative needs a non-real point".into()));
    }
    let diff = f_at_y.checked_sub(f_at_yc)?;
    Ok((y.j() * &diff).scale(-0.5 / y.beta()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use proptest::prelude::*;

    fn h(s: &str) -> Element {
        Element::parse(AlgebraSpec::quaternions(), s).unwrap()
    }

    fn point(s: &str) -> ConePoint {
        ConePoint::from_element(&h(s)).unwrap()
    }

    #[test]
    fn induce_examples() {
        let z2 = StemPolynomial::monomial(2, h("1"));
        assert_eq!(induce(&z2, &point("j")), h("-1"));
        // z·k at i: α a + J(β a) = i k = -j
        let zk = StemPolynomial::monomial(1, h("k"));
        assert_eq!(induce(&zk, &point("i")), h("i") * h("k"));
        assert_eq!(induce(&zk, &point("i")), h("-j"));
        let c = StemPolynomial::constant(h("1+2j"));
        assert_eq!(induce(&c, &point("3+4k")), h("1+2j"));
    }

    #[test]
    fn slice_product_examples() {
        let y = h("i");
        let left = StemPolynomial::linear(&y);
        let right = StemPolynomial::linear(&y.conj());
        let delta = left.slice_product(&right).unwrap();
        assert_eq!(delta, StemPolynomial::from_elements(vec![h("1"), h("0"), h("1")]).unwrap());

        let one = StemPolynomial::constant(h("1"));
        assert_eq!(left.slice_product(&one).unwrap(), left);

        let a = StemPolynomial::linear(&h("i"));
        let b = StemPolynomial::linear(&h("j"));
        let ab = a.slice_product(&b).unwrap();
        let ba = b.slice_product(&a).unwrap();
        assert_eq!(ab.coeffs()[1], ba.coeffs()[1]);
        assert_eq!(ab.coeffs()[2], ba.coeffs()[2]);
        assert_eq!(ab.coeffs()[0].re, h("k"));
        assert_eq!(ba.coeffs()[0].re, h("-k"));
    }

    #[test]
    fn derivatives() {
        let f = StemPolynomial::monomial(4, h("j"));
        assert_eq!(f.derivative(), StemPolynomial::monomial(3, h("4j")));
        let c = StemPolynomial::constant(h("2"));
        assert_eq!(cullen_derivative_at(&c, &point("1+i")), h("0"));
        let g = StemPolynomial::from_elements(vec![h("1"), h("i"), h("j"), h("k")]).unwrap();
        let z = Complex64::new(0.3, 0.7);
        let d2 = g.derivative().derivative().stem(z);
        let scaled = g.scaled_derivative(2, z);
        assert!((d2.re.scale(0.5) - scaled.re).max_abs() < 1e-14);
        assert!((d2.im.scale(0.5) - scaled.im).max_abs() < 1e-14);
    }

    #[test]
    fn representation_special_cases() {
        let a = h("1+2i-k");
        let b = h("3-j");
        let j = h("i");
        assert_eq!(representation_formula(&a, &b, &j, &j).unwrap(), a);
        assert_eq!(representation_formula(&a, &b, &(-&j), &j).unwrap(), b);
        assert!(representation_formula(&a, &b, &h("2i"), &j).is_err());
    }

    #[test]
    fn representation_matches_induce() {
        let f = StemPolynomial::monomial(2, h("1"));
        let (alpha, beta) = (0.4, 1.3);
        let j = h("i");
        let k = h("k");
        let zj = f.eval_on_plane(&j, Complex64::new(alpha, beta));
        let zjc = f.eval_on_plane(&j, Complex64::new(alpha, -beta));
        let rebuilt = representation_formula(&zj, &zjc, &k, &j).unwrap();
        let direct = induce(&f, &ConePoint::new(alpha, beta, k).unwrap());
        assert!((rebuilt - direct).max_abs() < 1e-12);
    }

    #[test]
    fn spherical_derivative_examples() {
        let y = point("0.5+2j");
        let id = StemPolynomial::monomial(1, h("1"));
        let s = spherical_derivative(&id.eval(&y), &id.eval(&y.conj_point()), &y).unwrap();
        assert!((s - h("1")).max_abs() < 1e-15);

        let j = h("j");
        let f = PiecewiseConstantStem::new(ComplexElement::new(h("1"), -&j).unwrap());
        let y = ConePoint::new(0.0, 1.0, j.clone()).unwrap();
        let s1 = spherical_derivative(&f.eval(&y), &f.eval(&y.conj_point()), &y).unwrap();
        assert_eq!(s1, -&j);

        let c = StemPolynomial::constant(h("3-k"));
        assert_eq!(spherical_derivative(&c.eval(&y), &c.eval(&y.conj_point()), &y).unwrap(), h("0"));
        assert!(spherical_derivative(&h("1"), &h("1"), &point("2")).is_err());
    }

    #[test]
    fn piecewise_constant_values() {
        let j = h("j");
        let f = PiecewiseConstantStem::new(ComplexElement::new(h("1"), -&j).unwrap());
        assert_eq!(f.eval(&ConePoint::new(0.2, 0.7, j.clone()).unwrap()), h("2"));
        assert_eq!(f.eval(&ConePoint::new(0.2, 0.7, -&j).unwrap()), h("0"));
        // 1 - I J at I = i
        assert_eq!(f.eval(&point("i")), h("1") - h("i") * h("j"));
        assert_eq!(f.eval_on_plane(&j, Complex64::new(0.0, -1.0)), h("0"));
    }

    proptest! {
        #[test]
        fn real_stems_multiply_pointwise(seed in any::<u64>()) {
            let spec = AlgebraSpec::quaternions();
            let mut rng = sampling::rng_for(seed, 0);
            let reals: Vec<Element> = (0..4).map(|_| Element::real(spec, sampling::complex(&mut rng, 1.0).re)).collect();
            let f = StemPolynomial::from_elements(reals).unwrap();
            let g = sampling::stem_polynomial(spec, &mut rng, 3, 1.0);
            let x = sampling::cone_point(spec, &mut rng, 1.5);
            let lhs = f.slice_product(&g).unwrap().eval(&x);
            let rhs = f.eval(&x) * g.eval(&x);
            prop_assert!((lhs - rhs).max_abs() < 1e-11);
        }

        #[test]
        fn representation_round_trip(seed in any::<u64>(), octonions in any::<bool>()) {
            let spec = if octonions { AlgebraSpec::octonions() } else { AlgebraSpec::clifford(3).unwrap() };
            let mut rng = sampling::rng_for(seed, 0);
            let f = sampling::stem_polynomial(spec, &mut rng, 5, 1.0);
            let x = sampling::cone_point(spec, &mut rng, 1.2);
            let j = sampling::unit_imaginary(spec, &mut rng);
            let zj = f.eval_on_plane(&j, x.shadow());
            let zjc = f.eval_on_plane(&j, x.shadow().conj());
            let rebuilt = representation_formula(&zj, &zjc, x.j(), &j).unwrap();
            let direct = f.eval(&x);
            prop_assert!((&rebuilt - &direct).max_abs() < 1e-11 * direct.max_abs().max(1.0));
        }

        #[test]
        fn polynomial_stems_are_holomorphic(seed in any::<u64>()) {
            let spec = AlgebraSpec::octonions();
            let mut rng = sampling::rng_for(seed, 0);
            let f = sampling::stem_polynomial(spec, &mut rng, 8, 1.0);
            let z = sampling::complex(&mut rng, 1.0);
            let scale = f.stem(z).max_abs().max(1.0);
            prop_assert!(f.antiholomorphic_derivative(z).max_abs() < 1e-12 * scale * 10.0);
        }
    }
}
