//! Slice powers, spherical polynomials, truncated power and spherical series,
//! and Abel radii.
//!
//! A series centered at y ∈ ℂ_J restricts to ℂ_J as Σ Φ_J(b_n(z)) a_n with
//! complex basis functions b_n. Its value at α + βI comes from the two
//! plane values at z = α + iβ and z̄ through the representation formula, so
//! each term costs one product in A per plane.

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{ConePoint, Element, CONE_TOL};
use crate::geometry::{complex_spherical, coordinate_in_plane_of, delta_complex, sigma, tau};
use crate::par::Exec;
use crate::plane::phi;
use crate::slice::{ComplexElement, SliceFunction};

/// Which J to use for the plane of `y`; real centers get the placeholder of
/// `x` so that x lies in the plane whenever possible.
fn center_unit(y: &ConePoint, x: &ConePoint) -> Element {
    if y.is_real() {
        x.j().clone()
    } else {
        y.j().clone()
    }
}

/// ((1 − IJ)/2) a + ((1 + IJ)/2) b for a, b ∈ A, grouped as the
/// representation formula ½(a + b) − ½ I(J(a − b)).
fn combine(i: &Element, j: &Element, a: &Element, b: &Element) -> Element {
    let d = a - b;
    let jd = j * &d;
    let ijd = i * &jd;
    (a + b - ijd).scale(0.5)
}

/// Value at x of a slice function whose restriction to ℂ_J is `g`.
fn lift<G: Fn(Complex64) -> Element>(y: &ConePoint, x: &ConePoint, g: G) -> Element {
    let j = center_unit(y, x);
    let probe = x.with_placeholder(&j);
    if let Some(z) = coordinate_in_plane_of(&probe, &y.with_placeholder(&j)) {
        return g(z);
    }
    let z = x.shadow();
    combine(x.j(), &j, &g(z), &g(z.conj()))
}

/// Σ_{n<len} b_n(x)·c_n as a slice function, where the basis function b_n
/// has the complex restriction `basis(n, ·)` to the plane of y. Products with
/// the coefficients are taken at stem level, which matters when A is not
/// associative.
pub fn partial_sum<B: Fn(usize, Complex64) -> Complex64>(y: &ConePoint, coeffs: &[Element], x: &ConePoint, basis: B) -> Element {
    let j = center_unit(y, x);
    lift(y, x, |z| {
        let mut acc = Element::zero(x.spec());
        for (n, c) in coeffs.iter().enumerate() {
            acc += &(&phi(&j, basis(n, z)) * c);
        }
        acc
    })
}

/// (x − y)^{·n}, the value at x of the slice function induced by (z − y)ⁿ,
/// from ((1 − IJ)/2)(z_J − y)ⁿ + ((1 + IJ)/2)(z_J^c − y)ⁿ.
pub fn slice_power(y: &ConePoint, n: usize, x: &ConePoint) -> Element {
    let w = y.shadow();
    let j = center_unit(y, x);
    lift(y, x, |z| phi(&j, (z - w).powu(n as u32)))
}

/// (x − y)^{·n} by multiplying the stem z − y by itself n times in A ⊗ ℂ and
/// inducing the result at x.
pub fn slice_power_via_stem(y: &ConePoint, n: usize, x: &ConePoint) -> Element {
    let spec = x.spec();
    let z = x.shadow();
    let base = ComplexElement { re: Element::real(spec, z.re) - y.element(), im: Element::real(spec, z.im) };
    let mut acc = ComplexElement::from_element(Element::one(spec));
    for _ in 0..n {
        acc = acc.checked_mul(&base).expect("same spec");
    }
    if x.is_real() {
        acc.re
    } else {
        acc.induce_with(x.j())
    }
}

/// S_{y,n}(x): Δ_y(x)^m for n = 2m and Δ_y(x)^m (x − y) for n = 2m + 1.
/// Δ_y(x) lies in ℂ_I, so its powers are taken there.
pub fn spherical_poly(y: &ConePoint, n: usize, x: &ConePoint) -> Element {
    let spec = x.spec();
    let d = delta_complex(y.shadow(), x.shadow()).powu((n / 2) as u32);
    let dm = if x.is_real() { Element::real(spec, d.re) } else { phi(x.j(), d) };
    if n.is_multiple_of(2) {
        dm
    } else {
        &dm * &(x.element() - y.element())
    }
}

/// S_{y,n}(x) through the restriction Φ_J(S_{w,n}(z)) and the representation
/// formula.
pub fn spherical_poly_via_plane(y: &ConePoint, n: usize, x: &ConePoint) -> Element {
    let w = y.shadow();
    let j = center_unit(y, x);
    lift(y, x, |z| phi(&j, complex_spherical(w, n, z)))
}

/// Result of [`abel_radius`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusEstimate {
    /// Estimated radius; +∞ when the window holds no nonzero coefficient
    /// after the first.
    pub radius: f64,
    pub window: (usize, usize),
    /// (n, ‖a_n‖^{1/n}) for n ≥ 1 in the window.
    pub roots: Vec<(usize, f64)>,
}

/// Radius estimate 1/R = max_k (‖a_k‖/‖a_b‖)^{1/(k−b)} over k in the window,
/// where b is the first index of the window with a_b ≠ 0. Exact for
/// sequences that are geometric on the window.
pub fn abel_radius(norms: &[f64], window: (usize, usize)) -> crate::Result<RadiusEstimate> {
    let (lo, hi) = window;
    if lo > hi || hi >= norms.len() {
        return Err(crate::Error::InvalidArgument(format!(
            "window ({lo}, {hi}) does not fit {} coefficients",
            norms.len()
        )));
    }
    let roots = (lo.max(1)..=hi).map(|n| (n, norms[n].powf(1.0 / n as f64))).collect();
    let Some(base) = (lo..=hi).find(|&n| norms[n] > 0.0) else {
        return Ok(RadiusEstimate { radius: f64::INFINITY, window, roots });
    };
    let mut inv = 0.0f64;
    for k in base + 1..=hi {
        inv = inv.max((norms[k] / norms[base]).powf(1.0 / (k - base) as f64));
    }
    let radius = if inv > 0.0 {
        1.0 / inv
    } else if base > 0 {
        // single nonzero coefficient: fall back to the plain root
        1.0 / norms[base].powf(1.0 / base as f64)
    } else {
        f64::INFINITY
    };
    Ok(RadiusEstimate { radius, window, roots })
}

fn default_window(len: usize) -> (usize, usize) {
    if len >= 16 {
        (len / 2, len - 1)
    } else {
        (0, len - 1)
    }
}

/// Growth diagnosis for an evaluation outside the convergence region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Divergence {
    /// The point is farther from the center than the estimated radius.
    pub outside_radius: bool,
    /// Three successive partial-sum norms increased past 10³ times the first
    /// nonzero one.
    pub growth: bool,
    /// Divergence is certain when the coefficients lie in the quadratic cone
    /// or the point lies in the plane of the center.
    pub assured: bool,
}

/// A truncated series value with its error budget.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesValue {
    pub value: Element,
    pub terms: usize,
    /// σ_A(x, y) or τ_A(x, y).
    pub distance: f64,
    pub radius: f64,
    /// Bound on the stored terms beyond the truncation order.
    pub tail_bound: f64,
    /// Geometric extrapolation of the unstored remainder from the radius
    /// estimate; +∞ when the point is not inside it.
    pub tail_extrapolated: f64,
    pub divergence: Option<Divergence>,
}

fn detect_growth(partial_norms: &[f64]) -> bool {
    let Some(&first) = partial_norms.iter().find(|&&v| v > 0.0) else {
        return false;
    };
    let limit = 1e3 * first;
    partial_norms.windows(4).any(|w| w[1] > w[0] && w[2] > w[1] && w[3] > w[2] && w[1] > limit)
}

// Shared driver: basis(n, z) gives the complex basis function on ℂ_J.
fn eval_series<B, T>(
    center: &ConePoint,
    coeffs: &[Element],
    order: usize,
    x: &ConePoint,
    distance: f64,
    basis: B,
    term_bound: T,
) -> SeriesValue
where
    B: Fn(usize, Complex64) -> Complex64,
    T: Fn(usize) -> f64,
{
    let spec = x.spec();
    let j = center_unit(center, x);
    let in_plane = {
        let probe = x.with_placeholder(&j);
        coordinate_in_plane_of(&probe, &center.with_placeholder(&j))
    };
    let (za, zb) = match in_plane {
        Some(z) => (z, None),
        None => (x.shadow(), Some(x.shadow().conj())),
    };
    let mut a = Element::zero(spec);
    let mut b = Element::zero(spec);
    let mut partial_norms = Vec::with_capacity(order + 1);
    let terms = order.min(coeffs.len() - 1);
    for (n, c) in coeffs.iter().enumerate().take(terms + 1) {
        a += &(&phi(&j, basis(n, za)) * c);
        if let Some(zb) = zb {
            b += &(&phi(&j, basis(n, zb)) * c);
        }
        let partial = if zb.is_some() { combine(x.j(), &j, &a, &b) } else { a.clone() };
        partial_norms.push(partial.norm());
    }
    let value = if zb.is_some() { combine(x.j(), &j, &a, &b) } else { a };

    let norms: Vec<f64> = coeffs.iter().map(Element::norm).collect();
    let tail_bound: f64 = (terms + 1..coeffs.len()).map(|n| term_bound(n) * norms[n]).sum();
    let est = abel_radius(&norms, default_window(norms.len())).expect("window fits");
    let radius = est.radius;
    let last = coeffs.len() - 1;
    let tail_extrapolated = if radius.is_infinite() {
        0.0
    } else if distance < radius {
        // ‖a_n‖ ≤ M R^{−n} on the window, continued geometrically
        let m = (est.window.0..=est.window.1).map(|n| norms[n] * radius.powi(n as i32)).fold(0.0, f64::max);
        let q = distance / radius;
        let scale = term_bound(last + 1) / distance.powi(last as i32 + 1).max(f64::MIN_POSITIVE);
        scale * m * q.powi(last as i32 + 1) / (1.0 - q)
    } else {
        f64::INFINITY
    };

    let growth = detect_growth(&partial_norms);
    let outside = distance > radius;
    let divergence = (growth || outside).then(|| {
        let cone = coeffs.iter().all(|c| ConePoint::decompose(c, CONE_TOL).is_ok());
        Divergence { outside_radius: outside, growth, assured: cone || in_plane.is_some() }
    });
    SeriesValue { value, terms: terms + 1, distance, radius, tail_bound, tail_extrapolated, divergence }
}

/// Σ (x − y)^{·n} a_n truncated at `order`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    pub center: ConePoint,
    pub coeffs: Vec<Element>,
    pub order: usize,
}

impl PowerSeries {
    pub fn new(center: ConePoint, coeffs: Vec<Element>) -> crate::Result<Self> {
        check_coeffs(&center, &coeffs)?;
        let order = coeffs.len() - 1;
        Ok(PowerSeries { center, coeffs, order })
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.order = order;
        self
    }

    /// Value at x, with ‖(x − y)^{·n} a_n‖ ≤ C_A(1 + C_A) σⁿ ‖a_n‖ used for
    /// the tail; `c_upper` is C_A.
    pub fn eval(&self, x: &ConePoint, c_upper: f64) -> SeriesValue {
        let w = self.center.shadow();
        let s = sigma(x, &self.center);
        let k = c_upper * (1.0 + c_upper);
        eval_series(&self.center, &self.coeffs, self.order, x, s, |n, z| (z - w).powu(n as u32), |n| {
            c_upper * k * s.powi(n as i32)
        })
    }

    pub fn eval_batch(&self, xs: &[ConePoint], c_upper: f64, exec: Exec) -> Vec<SeriesValue> {
        exec.map_slice(xs, |x| self.eval(x, c_upper))
    }

    pub fn radius(&self) -> RadiusEstimate {
        let norms: Vec<f64> = self.coeffs.iter().map(Element::norm).collect();
        abel_radius(&norms, default_window(norms.len())).expect("window fits")
    }
}

/// Σ S_{y,n}(x) s_n truncated at `order`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalSeries {
    pub center: ConePoint,
    pub coeffs: Vec<Element>,
    pub order: usize,
}

impl SphericalSeries {
    pub fn new(center: ConePoint, coeffs: Vec<Element>) -> crate::Result<Self> {
        check_coeffs(&center, &coeffs)?;
        let order = coeffs.len() - 1;
        Ok(SphericalSeries { center, coeffs, order })
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.order = order;
        self
    }

    /// Value at x. Terms are bounded by ‖S_{y,2m}(x) s‖ ≤ C_A τ^{2m}‖s‖ and
    /// ‖S_{y,2m+1}(x) s‖ ≤ C_A² τ^{2m} ‖x − y‖ ‖s‖.
    pub fn eval(&self, x: &ConePoint, c_upper: f64) -> SeriesValue {
        let w = self.center.shadow();
        let t = tau(x, &self.center);
        let gap = x.element().dist(self.center.element());
        let bound = move |n: usize| {
            let even = c_upper * t.powi(2 * (n / 2) as i32);
            if n.is_multiple_of(2) {
                even
            } else {
                even * c_upper * gap
            }
        };
        eval_series(&self.center, &self.coeffs, self.order, x, t, |n, z| complex_spherical(w, n, z), bound)
    }

    pub fn eval_batch(&self, xs: &[ConePoint], c_upper: f64, exec: Exec) -> Vec<SeriesValue> {
        exec.map_slice(xs, |x| self.eval(x, c_upper))
    }

    pub fn radius(&self) -> RadiusEstimate {
        let norms: Vec<f64> = self.coeffs.iter().map(Element::norm).collect();
        abel_radius(&norms, default_window(norms.len())).expect("window fits")
    }
}

fn check_coeffs(center: &ConePoint, coeffs: &[Element]) -> crate::Result<()> {
    if coeffs.is_empty() {
        return Err(crate::Error::InvalidArgument("a series needs at least one coefficient".into()));
    }
    for c in coeffs {
        if !std::ptr::eq(c.spec(), center.spec()) {
            return Err(crate::Error::SpecMismatch {
                left: format!("{:?}", center.spec().kind()),
                right: format!("{:?}", c.spec().kind()),
            });
        }
    }
    Ok(())
}

/// n-th roots of ‖(x − y)^{·n}‖ and ‖S_{y,n}(x)‖ against σ_A and τ_A.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitLawReport {
    pub sigma: f64,
    pub tau: f64,
    /// ‖(x − y)^{·n}‖^{1/n}, n = 1..=N.
    pub power_roots: Vec<f64>,
    /// ‖S_{y,n}(x)‖^{1/n}, n = 1..=N.
    pub spherical_roots: Vec<f64>,
    /// |root_N − σ| / σ (absolute when σ = 0).
    pub power_deviation: f64,
    pub spherical_deviation: f64,
}

fn deviation(root: f64, target: f64) -> f64 {
    if target > 0.0 {
        (root - target).abs() / target
    } else {
        (root - target).abs()
    }
}

/// Computes both root sequences with the powers scaled by σⁿ and τⁿ so that
/// large N neither overflows nor underflows.
pub fn limit_laws_check(y: &ConePoint, x: &ConePoint, n_max: usize) -> crate::Result<LimitLawReport> {
    if n_max < 10 {
        return Err(crate::Error::InvalidArgument(format!("need N >= 10, got {n_max}")));
    }
    let s = sigma(x, y);
    let t = tau(x, y);
    let w = y.shadow();
    let j = center_unit(y, x);
    let mut power_roots = Vec::with_capacity(n_max);
    let mut spherical_roots = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let p = if s > 0.0 {
            let v = lift(y, x, |z| phi(&j, ((z - w) / s).powu(n as u32)));
            s * v.norm().powf(1.0 / n as f64)
        } else {
            0.0
        };
        power_roots.push(p);
        let q = if t > 0.0 {
            let v = lift(y, x, |z| {
                let d = (delta_complex(w, z) / (t * t)).powu((n / 2) as u32);
                phi(&j, if n % 2 == 1 { d * (z - w) / t } else { d })
            });
            t * v.norm().powf(1.0 / n as f64)
        } else {
            spherical_poly(y, n, x).norm().powf(1.0 / n as f64)
        };
        spherical_roots.push(q);
    }
    let power_deviation = deviation(*power_roots.last().expect("n_max >= 10"), s);
    let spherical_deviation = deviation(*spherical_roots.last().expect("n_max >= 10"), t);
    Ok(LimitLawReport { sigma: s, tau: t, power_roots, spherical_roots, power_deviation, spherical_deviation })
}

/// Power series coefficients of the restriction of `f` to the plane of
/// `y`, read off a stem polynomial. Exposed for tests and tools that need
/// a reference expansion.
pub fn stem_values_on_plane<F: SliceFunction + ?Sized>(f: &F, j: &Element, zs: &[Complex64]) -> Vec<Element> {
    zs.iter().map(|&z| f.eval_on_plane(j, z)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::sampling;
    use crate::slice::{induce, StemPolynomial};
    use proptest::prelude::*;

    fn h(s: &str) -> Element {
        Element::parse(AlgebraSpec::quaternions(), s).unwrap()
    }

    fn hp(s: &str) -> ConePoint {
        ConePoint::from_element(&h(s)).unwrap()
    }

    #[test]
    fn slice_power_examples() {
        assert!((slice_power(&hp("0"), 2, &hp("j")) - h("-1")).max_abs() < 1e-15);
        let v = slice_power(&hp("i"), 1, &hp("j"));
        let oracle = induce(&StemPolynomial::linear(&h("i")), &hp("j"));
        assert!((&v - &oracle).max_abs() < 1e-15);
        assert!((v - h("-i+j")).max_abs() < 1e-15);
        assert_eq!(slice_power(&hp("1+k"), 0, &hp("2-3i")), h("1"));
    }

    #[test]
    fn slice_power_on_plane_and_real_center() {
        let y = hp("0.5+2j");
        let x = hp("-1+0.3j");
        let v = slice_power(&y, 3, &x);
        let d = x.element() - y.element();
        assert!((v - &(&d * &d) * &d).max_abs() < 1e-13);
        let y = hp("0.5");
        let x = hp("1+i+k");
        let d = x.element() - y.element();
        assert!((slice_power(&y, 4, &x) - &(&(&d * &d) * &d) * &d).max_abs() < 1e-12);
    }

    #[test]
    fn spherical_poly_examples() {
        assert_eq!(spherical_poly(&hp("i"), 0, &hp("3+k")), h("1"));
        assert!(spherical_poly(&hp("i"), 2, &hp("j")).max_abs() < 1e-15);
        let y = hp("0.2+1.1k");
        let x = hp("0.7-0.4i+0.9j");
        let d = crate::geometry::delta_in_algebra(&y, x.element()).norm();
        for m in 0..=6 {
            let s = spherical_poly(&y, 2 * m, &x).norm();
            assert!((s - d.powi(m as i32)).abs() < 1e-12 * d.powi(m as i32).max(1.0));
        }
    }

    #[test]
    fn abel_radius_examples() {
        let ones = vec![1.0; 50];
        assert_eq!(abel_radius(&ones, (0, 49)).unwrap().radius, 1.0);
        let pow2: Vec<f64> = (0..50).map(|n| 2f64.powi(n)).collect();
        assert!((abel_radius(&pow2, (0, 49)).unwrap().radius - 0.5).abs() < 1e-14);
        let scaled: Vec<f64> = (0..50).map(|n| 7.0 * 0.25f64.powi(n)).collect();
        assert!((abel_radius(&scaled, (10, 49)).unwrap().radius - 4.0).abs() < 1e-12);
        assert!(abel_radius(&[0.0; 5], (0, 4)).unwrap().radius.is_infinite());
        assert!(abel_radius(&ones, (3, 60)).is_err());
    }

    #[test]
    fn geometric_series() {
        let spec = AlgebraSpec::quaternions();
        let coeffs = vec![Element::one(spec); 60];
        let p = PowerSeries::new(ConePoint::real(spec, 0.0), coeffs.clone()).unwrap().with_order(40);
        let v = p.eval(&hp("0.5"), 1.0);
        assert!((v.value.scalar() - 2.0).abs() < 1e-12);
        assert!(v.tail_bound >= 2.0 * 0.5f64.powi(41) * 0.999);
        assert!(v.divergence.is_none());
        let far = PowerSeries::new(ConePoint::real(spec, 0.0), coeffs).unwrap().eval(&hp("2"), 1.0);
        let d = far.divergence.unwrap();
        assert!(d.outside_radius && d.growth && d.assured);
    }

    #[test]
    fn exp_series_matches_plane() {
        let spec = AlgebraSpec::quaternions();
        let y = hp("0.3+0.4k");
        let mut coeffs = Vec::new();
        let mut f = 1.0;
        for n in 0..40 {
            if n > 0 {
                f /= n as f64;
            }
            coeffs.push(Element::real(spec, f));
        }
        let p = PowerSeries::new(y.clone(), coeffs).unwrap();
        let x = hp("-0.2+1.1k");
        let v = p.eval(&x, 1.0).value;
        let e = (Complex64::new(-0.2, 1.1) - Complex64::new(0.3, 0.4)).exp();
        assert!((v - phi(y.j(), e)).max_abs() < 1e-12);
    }

    #[test]
    fn sphere_of_center_truncates() {
        let spec = AlgebraSpec::quaternions();
        let y = hp("0.5+k");
        let coeffs: Vec<Element> = (0..10).map(|n| Element::basis(spec, n % 4).scale(1.0 + n as f64)).collect();
        let s = SphericalSeries::new(y.clone(), coeffs.clone()).unwrap();
        let x = hp("0.5+0.6i+0.8j");
        let direct = &coeffs[0] + &(&(x.element() - y.element()) * &coeffs[1]);
        assert!((s.eval(&x, 1.0).value - direct).max_abs() < 1e-12);
    }

    #[test]
    fn limit_laws_on_plane() {
        let y = hp("0.2+0.7j");
        let x = hp("-0.4+1.5j");
        let r = limit_laws_check(&y, &x, 30).unwrap();
        for root in &r.power_roots {
            assert!((root - r.sigma).abs() < 1e-12);
        }
        let same_sphere = hp("0.2+0.7i");
        let r = limit_laws_check(&y, &same_sphere, 20).unwrap();
        assert_eq!(r.tau, 0.0);
        assert!(r.spherical_roots[1..].iter().all(|&v| v == 0.0));
    }

    proptest! {
        #[test]
        fn slice_power_routes_agree(seed in any::<u64>(), n in 0usize..=30, octonions in any::<bool>()) {
            let spec = if octonions { AlgebraSpec::octonions() } else { AlgebraSpec::clifford(3).unwrap() };
            let mut rng = sampling::rng_for(seed, 0);
            let x = sampling::cone_point(spec, &mut rng, 1.2);
            let y = sampling::cone_point(spec, &mut rng, 1.2);
            let a = slice_power(&y, n, &x);
            let b = slice_power_via_stem(&y, n, &x);
            prop_assert!((&a - &b).max_abs() <= 1e-10 * a.max_abs().max(1.0));
        }

        #[test]
        fn spherical_routes_agree(seed in any::<u64>(), n in 0usize..=20) {
            let spec = AlgebraSpec::octonions();
            let mut rng = sampling::rng_for(seed, 0);
            let x = sampling::cone_point(spec, &mut rng, 1.2);
            let y = sampling::cone_point(spec, &mut rng, 1.2);
            let a = spherical_poly(&y, n, &x);
            let b = spherical_poly_via_plane(&y, n, &x);
            prop_assert!((&a - &b).max_abs() <= 1e-10 * a.max_abs().max(1.0));
        }

        #[test]
        fn power_estimate_holds(seed in any::<u64>(), n in 0usize..=25) {
            let spec = AlgebraSpec::clifford(3).unwrap();
            let mut rng = sampling::rng_for(seed, 0);
            let x = sampling::cone_point(spec, &mut rng, 1.0);
            let y = sampling::cone_point(spec, &mut rng, 1.0);
            // C_A = √2 is an upper bound for ℝ₃ with the euclidean norm
            let c = 2f64.sqrt();
            let v = slice_power(&y, n, &x).norm();
            prop_assert!(v <= c * (1.0 + c) * sigma(&x, &y).powi(n as i32) * (1.0 + 1e-12) + 1e-14);
        }
    }
}
