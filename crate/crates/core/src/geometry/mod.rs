//! The σ_A metric, the Cassini pseudo-metric τ_A, their balls, and the
//! characteristic polynomial Δ_y.

mod cassini;

pub use cassini::{
    cassini_arclength, cassini_arclength_closed, cassini_boundary, circle_boundary, normalized_length,
    theta_closed_form, theta_constant, BoundaryLoop, BoundaryNode, ThetaEstimate, Topology,
};

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{ConePoint, Element, CONE_TOL};
use crate::slice::StemPolynomial;

/// Δ_w(z) = (z − w)(z − w̄).
pub fn delta_complex(w: Complex64, z: Complex64) -> Complex64 {
    (z - w) * (z - w.conj())
}

/// τ(z, w) = √|Δ_w(z)|.
pub fn tau_complex(z: Complex64, w: Complex64) -> f64 {
    delta_complex(w, z).norm().sqrt()
}

/// S_{w,2m}(z) = Δ_w(z)^m and S_{w,2m+1}(z) = Δ_w(z)^m (z − w).
pub fn complex_spherical(w: Complex64, n: usize, z: Complex64) -> Complex64 {
    let d = delta_complex(w, z).powu((n / 2) as u32);
    if n % 2 == 1 {
        d * (z - w)
    } else {
        d
    }
}

/// Coordinate of `x` in the plane ℂ_J of `y`, or None if `x` is off that
/// plane. A real `y` puts every point in its plane.
pub fn coordinate_in_plane_of(x: &ConePoint, y: &ConePoint) -> Option<Complex64> {
    if y.is_real() {
        return Some(x.shadow());
    }
    x.coordinate_in(y.j(), CONE_TOL)
}

/// σ_A(x, y): ‖x − y‖_A when x lies in the plane of y, otherwise
/// √(|re x − re y|² + (‖im x‖ + ‖im y‖)²).
pub fn sigma(x: &ConePoint, y: &ConePoint) -> f64 {
    if x.is_real() || y.is_real() || coordinate_in_plane_of(x, y).is_some() {
        return x.element().dist(y.element());
    }
    let da = x.alpha() - y.alpha();
    da.hypot(x.beta() + y.beta())
}

/// σ_A(x, y) from the complex shadows: |z − w| on the plane of y and
/// max(|z − w|, |z − w̄|) off it.
pub fn sigma_from_shadows(x: &ConePoint, y: &ConePoint) -> f64 {
    let w = y.shadow();
    match coordinate_in_plane_of(x, y) {
        Some(z) => (z - w).norm(),
        None => {
            let z = x.shadow();
            (z - w).norm().max((z - w.conj()).norm())
        }
    }
}

/// τ_A(x, y) = √|Δ_w(z)| from the complex shadows.
pub fn tau(x: &ConePoint, y: &ConePoint) -> f64 {
    tau_complex(x.shadow(), y.shadow())
}

/// Δ_y(x) = x² − x t(y) + n(y) computed in A.
pub fn delta_in_algebra(y: &ConePoint, x: &Element) -> Element {
    let t = 2.0 * y.alpha();
    let n = y.alpha() * y.alpha() + y.beta() * y.beta();
    let mut out = x * x;
    out -= &x.scale(t);
    out += &Element::real(x.spec(), n);
    out
}

/// τ_A(x, y) = √‖Δ_y(x)‖_A computed in A.
pub fn tau_direct(x: &ConePoint, y: &ConePoint) -> f64 {
    delta_in_algebra(y, x.element()).norm().sqrt()
}

/// The stem z² − z t(y) + n(y) of Δ_y.
pub fn characteristic_poly(y: &ConePoint) -> StemPolynomial {
    let spec = y.spec();
    let t = 2.0 * y.alpha();
    let n = y.alpha() * y.alpha() + y.beta() * y.beta();
    StemPolynomial::from_elements(vec![Element::real(spec, n), Element::real(spec, -t), Element::one(spec)])
        .expect("same spec")
}

/// The σ_A-ball Σ_A(y, r) = B_J(y, r) ∪ Ω(y, r).
#[derive(Debug, Clone)]
pub struct SigmaBall {
    pub center: ConePoint,
    pub radius: f64,
}

impl SigmaBall {
    pub fn new(center: ConePoint, radius: f64) -> crate::Result<Self> {
        if !(radius > 0.0) {
            return Err(crate::Error::InvalidArgument(format!("radius must be positive, got {radius}")));
        }
        Ok(SigmaBall { center, radius })
    }

    /// Membership in the disk B_J(y, r) of the plane of y.
    pub fn in_plane_disk(&self, x: &ConePoint) -> bool {
        coordinate_in_plane_of(x, &self.center).is_some_and(|z| (z - self.center.shadow()).norm() < self.radius)
    }

    /// Membership in Ω(y, r), the circularization of B(w, r) ∩ B(w̄, r).
    pub fn in_omega(&self, x: &ConePoint) -> bool {
        let w = self.center.shadow();
        let z = x.shadow();
        (z - w).norm() < self.radius && (z - w.conj()).norm() < self.radius
    }

    /// Ω(y, r) is empty exactly when the disks B(w, r), B(w̄, r) are disjoint.
    pub fn omega_is_empty(&self) -> bool {
        self.radius <= self.center.beta()
    }

    pub fn contains(&self, x: &ConePoint) -> bool {
        sigma(x, &self.center) < self.radius
    }

    /// Slices of the boundary in the complex coordinate: loop 0 is the circle
    /// |z − w| = r bounding B_J(y, r); loop 1, present when Ω(y, r) is not
    /// empty, is the boundary of the lens B(w, r) ∩ B(w̄, r).
    pub fn boundary(&self, n_points: usize) -> Vec<BoundaryLoop> {
        let w = self.center.shadow();
        let r = self.radius;
        let mut loops = vec![circle_boundary(w, r, n_points)];
        if self.omega_is_empty() {
            return loops;
        }
        let eta = w.im.abs();
        let start = eta.atan2((r * r - eta * eta).sqrt());
        let span = std::f64::consts::PI - 2.0 * start;
        let half = n_points.div_ceil(2).max(1);
        let arc = |center: Complex64, from: f64, offset: f64| {
            (0..half).map(move |k| {
                let t = (k as f64 + 0.5) * span / half as f64;
                let e = Complex64::from_polar(r, from + t);
                BoundaryNode { param: offset + t, z: center + e, dz: Complex64::new(0.0, 1.0) * e }
            })
        };
        let top = Complex64::new(w.re, -eta);
        let nodes = arc(top, start, 0.0).chain(arc(top.conj(), std::f64::consts::PI + start, span)).collect();
        loops.push(BoundaryLoop { label: 1, period: 2.0 * span, nodes });
        loops
    }
}

/// The τ_A-ball U_A(y, r), the circularization of U(w, r).
#[derive(Debug, Clone)]
pub struct CassiniBall {
    pub center: ConePoint,
    pub radius: f64,
}

impl CassiniBall {
    pub fn new(center: ConePoint, radius: f64) -> crate::Result<Self> {
        if !(radius > 0.0) {
            return Err(crate::Error::InvalidArgument(format!("radius must be positive, got {radius}")));
        }
        Ok(CassiniBall { center, radius })
    }

    pub fn topology(&self) -> Topology {
        Topology::classify(self.center.beta(), self.radius)
    }

    pub fn contains(&self, x: &ConePoint) -> bool {
        tau(x, &self.center) < self.radius
    }

    pub fn boundary(&self, n_points: usize) -> crate::Result<Vec<BoundaryLoop>> {
        cassini_boundary(self.center.shadow(), self.radius, n_points)
    }
}

/// Both sides of √(|Δ_w(z)| + |im w|²) − |im w| ≤ |z − w| ≤ √(|Δ_w(z)| + |im w|²) + |im w|.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Sandwich {
    pub lower: f64,
    pub middle: f64,
    pub upper: f64,
}

impl Sandwich {
    /// Smallest of the two gaps; negative when an inequality fails.
    pub fn slack(&self) -> f64 {
        (self.middle - self.lower).min(self.upper - self.middle)
    }
}

pub fn sto_sandwich(z: Complex64, w: Complex64) -> Sandwich {
    let d = delta_complex(w, z).norm();
    let eta = w.im.abs();
    let root = (d + eta * eta).sqrt();
    Sandwich { lower: root - eta, middle: (z - w).norm(), upper: root + eta }
}

pub fn sto_inequality_check(z: Complex64, w: Complex64) -> bool {
    let s = sto_sandwich(z, w);
    s.slack() >= -1e-12 * s.upper.max(1.0)
}

/// ‖x − y‖_A ≤ σ_A(x, y).
pub fn sigma_dominates_norm(x: &ConePoint, y: &ConePoint) -> bool {
    let s = sigma(x, y);
    x.element().dist(y.element()) <= s + 1e-12 * s.max(1.0)
}

/// Slack of |S_{w,n+1}(z)| between τⁿ(√(τ² + η²) − η) and τⁿ(√(τ² + η²) + η).
pub fn spherical_sandwich(w: Complex64, z: Complex64, n: usize) -> Sandwich {
    let t = tau_complex(z, w);
    let eta = w.im.abs();
    let root = (t * t + eta * eta).sqrt();
    let tn = t.powi(n as i32);
    Sandwich { lower: tn * (root - eta), middle: complex_spherical(w, n + 1, z).norm(), upper: tn * (root + eta) }
}

/// |ζ − z| − (τ(w,ζ) − τ(w,z))² / (3τ(w,ζ) + 2|im w|), defined when τ(w,ζ) > τ(w,z).
pub fn separation_slack(w: Complex64, z: Complex64, zeta: Complex64) -> Option<f64> {
    let s = tau_complex(z, w);
    let r = tau_complex(zeta, w);
    if r <= s {
        return None;
    }
    let bound = (r - s).powi(2) / (3.0 * r + 2.0 * w.im.abs());
    Some((zeta - z).norm() - bound)
}

/// |S_{w,n+1}(ζ)| − τ^{n+1} τ/(τ + 2|im w|) with τ = τ(w, ζ).
pub fn boundary_spherical_slack(w: Complex64, zeta: Complex64, n: usize) -> f64 {
    let r = tau_complex(zeta, w);
    let bound = r.powi(n as i32 + 1) * r / (r + 2.0 * w.im.abs());
    complex_spherical(w, n + 1, zeta).norm() - bound
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::sampling;
    use crate::slice::SliceFunction;
    use proptest::prelude::*;

    fn hp(s: &str) -> ConePoint {
        ConePoint::from_element(&Element::parse(AlgebraSpec::quaternions(), s).unwrap()).unwrap()
    }

    #[test]
    fn lens_boundary_lies_on_both_disks() {
        let ball = SigmaBall::new(hp("0.2+0.5i"), 0.8).unwrap();
        let w = ball.center.shadow();
        let loops = ball.boundary(64);
        assert_eq!(loops.len(), 2);
        for n in &loops[1].nodes {
            let (a, b) = ((n.z - w).norm(), (n.z - w.conj()).norm());
            assert!((a.max(b) - 0.8).abs() < 1e-14 && a.min(b) <= 0.8 + 1e-14);
        }
        // the lens is convex, so its area from the node sum is positive
        let area: f64 = loops[1].nodes.iter().map(|n| (n.z.conj() * n.dz).im).sum::<f64>() * loops[1].weight() / 2.0;
        assert!(area > 0.0);
        assert_eq!(SigmaBall::new(hp("0.2+0.5i"), 0.4).unwrap().boundary(8).len(), 1);
    }

    #[test]
    fn sigma_examples() {
        assert!((sigma(&hp("2+3i"), &hp("i")) - 8f64.sqrt()).abs() < 1e-15);
        assert!((sigma(&hp("i"), &hp("j")) - 2.0).abs() < 1e-15);
        assert_eq!(sigma(&hp("1+k"), &hp("1+k")), 0.0);
        // opposite unit: x = -i lies in ℂ_i
        assert!((sigma(&hp("-i"), &hp("i")) - 2.0).abs() < 1e-15);
        assert!((sigma_from_shadows(&hp("-i"), &hp("i")) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(&hp("i"), &hp("j")), 0.0);
        assert!((tau(&hp("2"), &hp("0")) - 2.0).abs() < 1e-15);
        assert!((tau(&hp("1+i"), &hp("i")) - 5f64.powf(0.25)).abs() < 1e-15);
        assert!((tau_direct(&hp("1+i"), &hp("i")) - 5f64.powf(0.25)).abs() < 1e-15);
    }

    #[test]
    fn characteristic_polynomials() {
        let h = AlgebraSpec::quaternions();
        let e = |s: &str| Element::parse(h, s).unwrap();
        assert_eq!(characteristic_poly(&hp("i")), StemPolynomial::from_elements(vec![e("1"), e("0"), e("1")]).unwrap());
        assert_eq!(characteristic_poly(&hp("1+j")), StemPolynomial::from_elements(vec![e("2"), e("-2"), e("1")]).unwrap());
        // Δ_y(x) lies in ℂ_I for x ∈ ℂ_I
        let x = hp("0.5+0.6i+0.8k");
        let d = characteristic_poly(&hp("1+j")).eval(&x);
        let p = ConePoint::from_element(&d).unwrap();
        assert!(p.coordinate_in(x.j(), 1e-12).is_some());
        assert!((&d - &delta_in_algebra(&hp("1+j"), x.element())).max_abs() < 1e-14);
    }

    #[test]
    fn sigma_ball_decomposition() {
        let y = hp("2j");
        let ball = SigmaBall::new(y.clone(), 1.0).unwrap();
        assert!(ball.omega_is_empty());
        assert!(ball.contains(&hp("2.5j")));
        assert!(!ball.contains(&hp("2.5i")));
        let big = SigmaBall::new(y, 3.0).unwrap();
        assert!(!big.omega_is_empty());
        for x in ["0.5", "0.2+0.3i", "1+2j", "-1+k"] {
            let x = hp(x);
            assert_eq!(big.contains(&x), big.in_plane_disk(&x) || big.in_omega(&x), "{x:?}");
        }
    }

    #[test]
    fn cassini_ball_topology() {
        let y = hp("j");
        assert_eq!(CassiniBall::new(y.clone(), 0.5).unwrap().topology(), Topology::TwoLoops);
        assert_eq!(CassiniBall::new(y.clone(), 1.0).unwrap().topology(), Topology::Lemniscate);
        assert_eq!(CassiniBall::new(y.clone(), 2.0).unwrap().topology(), Topology::OneLoop);
        assert!(CassiniBall::new(y.clone(), 0.5).unwrap().contains(&hp("1.1i")));
    }

    #[test]
    fn sandwich_equality_cases() {
        let w = Complex64::new(0.3, 1.2);
        assert!(sto_inequality_check(w, w));
        let s = sto_sandwich(w, w);
        assert_eq!(s.lower, 0.0);
        assert!((s.upper - 2.4).abs() < 1e-15);
        let x = hp("1+2i");
        let y = hp("-1+i");
        assert!((x.element().dist(y.element()) - sigma(&x, &y)).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn sigma_routes_agree(seed in any::<u64>(), clifford in any::<bool>()) {
            let spec = if clifford { AlgebraSpec::clifford(3).unwrap() } else { AlgebraSpec::quaternions() };
            let mut rng = sampling::rng_for(seed, 0);
            let x = sampling::cone_point(spec, &mut rng, 2.0);
            let y = sampling::cone_point(spec, &mut rng, 2.0);
            prop_assert!((sigma(&x, &y) - sigma_from_shadows(&x, &y)).abs() < 1e-12);
            let same = ConePoint::new(x.alpha(), x.beta(), y.j().clone()).unwrap();
            prop_assert!((sigma(&same, &y) - sigma_from_shadows(&same, &y)).abs() < 1e-12);
            prop_assert!(sigma_dominates_norm(&x, &y));
            let (t1, t2) = (tau(&x, &y), tau_direct(&x, &y));
            prop_assert!((t1 * t1 - t2 * t2).abs() <= 1e-12 * (t1 * t1).max(1.0));
        }

        #[test]
        fn sigma_tau_inequalities(seed in any::<u64>(), n in 0usize..=20) {
            let mut rng = sampling::rng_for(seed, 0);
            let w = sampling::complex(&mut rng, 2.0);
            let z = sampling::complex(&mut rng, 2.0);
            let zeta = sampling::complex(&mut rng, 2.0);
            let s = spherical_sandwich(w, z, n);
            prop_assert!(s.slack() >= -1e-10 * s.upper.max(1.0));
            if let Some(slack) = separation_slack(w, z, zeta) {
                prop_assert!(slack >= -1e-12);
            }
            let b = boundary_spherical_slack(w, zeta, n);
            prop_assert!(b >= -1e-10 * complex_spherical(w, n + 1, zeta).norm().max(1.0));
        }
    }
}
