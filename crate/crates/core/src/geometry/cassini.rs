//! Cassini ovals |z − w||z − w̄| = r² and their lengths.
//!
//! Boundaries are parametrized by the argument ψ of Δ_w(z) = r² e^{iψ}. On
//! the curve (z − ξ)² = r² e^{iψ} − η², so every node is exact up to
//! rounding and dz/dψ = i r² e^{iψ} / (2(z − ξ)) is available in closed form.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, Tolerance};

/// Shape of the level set |Δ_w| = r² relative to η = |im w|.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Topology {
    TwoLoops,
    Lemniscate,
    OneLoop,
}

impl Topology {
    pub fn classify(eta: f64, r: f64) -> Topology {
        let eta = eta.abs();
        if (r - eta).abs() <= 1e-12 * r.max(eta) {
            Topology::Lemniscate
        } else if r < eta {
            Topology::TwoLoops
        } else {
            Topology::OneLoop
        }
    }
}

/// One quadrature node of a closed contour, with the parameter derivative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryNode {
    pub param: f64,
    pub z: Complex64,
    pub dz: Complex64,
}

/// A closed, counterclockwise contour sampled at midpoints of `n` equal
/// parameter panels; `weight()` turns a node sum into the trapezoid rule.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryLoop {
    pub label: usize,
    pub period: f64,
    pub nodes: Vec<BoundaryNode>,
}

impl BoundaryLoop {
    pub fn weight(&self) -> f64 {
        self.period / self.nodes.len() as f64
    }

    /// Trapezoid approximation of the length.
    pub fn length(&self) -> f64 {
        self.weight() * self.nodes.iter().map(|n| n.dz.norm()).sum::<f64>()
    }
}

fn midpoints(period: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| (k as f64 + 0.5) * period / n as f64)
}

// Periodic grading that vanishes to order p at both ends of [0, 2π], used
// to smooth the square-root behaviour of the lemniscate loops at the node
// z = ξ. Returns ψ/2π, 1 − ψ/2π (computed without cancellation) and dψ/dt.
fn graded(t: f64, p: f64) -> (f64, f64, f64) {
    let v = |s: f64| (1.0 / p - 0.5) * ((PI - s) / PI).powi(3) + (s - PI) / (p * PI) + 0.5;
    let dv = |s: f64| -3.0 * (1.0 / p - 0.5) * (PI - s).powi(2) / PI.powi(3) + 1.0 / (p * PI);
    let a = v(t).powf(p);
    let b = v(TAU - t).powf(p);
    let da = p * v(t).powf(p - 1.0) * dv(t);
    let db = -p * v(TAU - t).powf(p - 1.0) * dv(TAU - t);
    (a / (a + b), b / (a + b), TAU * (da * b - a * db) / ((a + b) * (a + b)))
}

const LEMNISCATE_GRADING: f64 = 6.0;

/// The counterclockwise circle c + r e^{iθ}.
pub fn circle_boundary(center: Complex64, r: f64, n_points: usize) -> BoundaryLoop {
    let nodes = midpoints(TAU, n_points)
        .map(|t| {
            let e = Complex64::from_polar(r, t);
            BoundaryNode { param: t, z: center + e, dz: Complex64::new(0.0, 1.0) * e }
        })
        .collect();
    BoundaryLoop { label: 0, period: TAU, nodes }
}

/// Points of |z − w||z − w̄| = r².
///
/// For r > η (η = |im w|) one loop, ψ ∈ [0, 4π). For r ≤ η two loops around
/// w and w̄, each with ψ ∈ [0, 2π) and both counterclockwise; at r = η they
/// meet at ξ and the parameter is graded there.
pub fn cassini_boundary(w: Complex64, r: f64, n_points: usize) -> Result<Vec<BoundaryLoop>> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidArgument(format!("Cassini radius must be positive, got {r}")));
    }
    if n_points < 8 {
        return Err(Error::InvalidArgument(format!("need at least 8 points per loop, got {n_points}")));
    }
    let xi = w.re;
    let eta = w.im.abs();
    let i = Complex64::new(0.0, 1.0);
    let r2 = r * r;
    let topology = Topology::classify(eta, r);
    if topology == Topology::OneLoop {
        let q = (eta / r).powi(2);
        let nodes = midpoints(2.0 * TAU, n_points)
            .map(|psi| {
                let u = Complex64::from_polar(r, psi / 2.0) * (1.0 - q * Complex64::from_polar(1.0, -psi)).sqrt();
                let dz = i * r2 * Complex64::from_polar(1.0, psi) / (2.0 * u);
                BoundaryNode { param: psi, z: xi + u, dz }
            })
            .collect();
        return Ok(vec![BoundaryLoop { label: 0, period: 2.0 * TAU, nodes }]);
    }
    let graded_param = topology == Topology::Lemniscate;
    let loops = [1.0, -1.0]
        .iter()
        .enumerate()
        .map(|(label, &side)| {
            let nodes = midpoints(TAU, n_points)
                .map(|t| {
                    let (share, rest, dpsi) =
                        if graded_param { graded(t, LEMNISCATE_GRADING) } else { (t / TAU, 1.0 - t / TAU, 1.0) };
                    let psi = TAU * share;
                    let half_sin = if share < rest { (PI * share).sin() } else { (PI * rest).sin() };
                    // (z − ξ)² = r² e^{iψ} − η² with z − ξ ≈ ±iη on the two loops;
                    // η² − r² e^{iψ} = (η² − r²) − 2i r² sin(ψ/2) e^{iψ/2}
                    let gap = (eta * eta - r2) - 2.0 * i * r2 * half_sin * Complex64::from_polar(1.0, psi / 2.0);
                    let u = side * i * gap.sqrt();
                    let dz = i * r2 * Complex64::from_polar(1.0, psi) / (2.0 * u) * dpsi;
                    BoundaryNode { param: t, z: xi + u, dz }
                })
                .collect();
            BoundaryLoop { label, period: TAU, nodes }
        })
        .collect();
    Ok(loops)
}

fn quad_tol() -> Tolerance {
    Tolerance { abs: 1e-14, rel: 1e-13, max_intervals: 4000 }
}

/// Length of the Cassini oval with foci ξ ± iη and radius r, integrating
/// |dz/dψ| = r²/(2|z − ξ|) along the boundary parametrization.
///
/// By symmetry ℓ = 2r² ∫₀^π |r² e^{iψ} − η²|^{−1/2} dψ; the substitution
/// ψ = t² keeps the integrand bounded at the lemniscate node.
pub fn cassini_arclength(eta: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) || eta < 0.0 {
        return Err(Error::InvalidArgument(format!("need eta >= 0 and r > 0, got ({eta}, {r})")));
    }
    let r2 = r * r;
    let e2 = eta * eta;
    let integrand = |t: f64| {
        let psi = t * t;
        let m2 = (r2 - e2).powi(2) + 4.0 * r2 * e2 * (psi / 2.0).sin().powi(2);
        2.0 * t / m2.sqrt().sqrt()
    };
    let q = integrate(integrand, 0.0, PI.sqrt(), quad_tol())?;
    Ok(2.0 * r2 * q.value)
}

/// The same length from the closed integral
/// ℓ(i, γ) = 4γ²/√(1+γ²) ∫₀^{π/2} (1 − k sin²φ)^{−1/4} dφ, k = 4γ²/(1+γ²)²,
/// scaled by ℓ(w, r) = η ℓ(i, r/η). The substitution φ = π/2 − u² removes
/// the singularity at γ = 1.
pub fn cassini_arclength_closed(eta: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) || eta < 0.0 {
        return Err(Error::InvalidArgument(format!("need eta >= 0 and r > 0, got ({eta}, {r})")));
    }
    if eta == 0.0 {
        return Ok(TAU * r);
    }
    let g = r / eta;
    let g2 = g * g;
    let k = 4.0 * g2 / ((1.0 + g2) * (1.0 + g2));
    let one_minus_k = ((1.0 - g2) / (1.0 + g2)).powi(2);
    let integrand = |u: f64| {
        // 1 − k cos²(u²) = (1 − k) + k sin²(u²)
        let s = (u * u).sin();
        2.0 * u * (one_minus_k + k * s * s).powf(-0.25)
    };
    let q = integrate(integrand, 0.0, (PI / 2.0).sqrt(), quad_tol())?;
    Ok(eta * 4.0 * g2 / (1.0 + g2).sqrt() * q.value)
}

/// L(i, γ) = γ⁻²(1 + √(1+γ²)) ℓ(i, γ), the oval length divided by
/// √(γ² + 1) − 1.
pub fn normalized_length(gamma: f64) -> Result<f64> {
    let l = cassini_arclength(1.0, gamma)?;
    Ok((1.0 + (1.0 + gamma * gamma).sqrt()) * l / (gamma * gamma))
}

/// (1 + √2) Γ(1/4)² / (2π^{3/2}).
pub fn theta_closed_form() -> f64 {
    let g = statrs::function::gamma::gamma(0.25);
    (1.0 + 2f64.sqrt()) * g * g / (2.0 * PI.powf(1.5))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaEstimate {
    /// Location of the maximum of L(i, γ).
    pub gamma: f64,
    /// max L(i, γ) / 2π.
    pub value: f64,
    pub evaluations: usize,
}

/// Golden-section search for the maximum of L(i, γ)/2π on γ ∈ [0.5, 2].
pub fn theta_constant() -> Result<ThetaEstimate> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (0.5f64, 2.0f64);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = normalized_length(c)?;
    let mut fd = normalized_length(d)?;
    let mut evaluations = 2;
    while b - a > 1e-12 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = normalized_length(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = normalized_length(d)?;
        }
        evaluations += 1;
    }
    let (gamma, best) = if fc > fd { (c, fc) } else { (d, fd) };
    Ok(ThetaEstimate { gamma, value: best / TAU, evaluations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::delta_complex;

    // mpmath, 30 digits
    const GAMMA_QUARTER: f64 = 3.625_609_908_221_908_311_930_685_155_87;
    const THETA: f64 = 2.849_594_282_364_242_598_608_197_406_16;
    const LEMNISCATE: f64 = 7.416_298_709_205_487_673_735_401_388_78;

    fn winding(l: &BoundaryLoop, p: Complex64) -> f64 {
        let s: Complex64 = l.nodes.iter().map(|n| n.dz / (n.z - p)).sum();
        (s * l.weight() / Complex64::new(0.0, TAU)).re
    }

    #[test]
    fn boundary_points_are_on_the_oval() {
        for (w, r) in [(Complex64::new(0.0, 1.0), 0.5), (Complex64::new(0.3, 1.0), 1.0), (Complex64::new(-1.0, 0.7), 2.0), (Complex64::new(2.0, 0.0), 1.5)] {
            for l in cassini_boundary(w, r, 257).unwrap() {
                for n in &l.nodes {
                    assert!((delta_complex(w, n.z).norm() - r * r).abs() < 1e-10, "{w} {r} {:?}", n);
                }
            }
        }
    }

    #[test]
    fn real_center_gives_a_circle() {
        let loops = cassini_boundary(Complex64::new(0.0, 0.0), 1.0, 64).unwrap();
        assert_eq!(loops.len(), 1);
        assert!(loops[0].nodes.iter().all(|n| (n.z.norm() - 1.0).abs() < 1e-14));
        assert!((loops[0].length() - TAU).abs() < 1e-12);
    }

    #[test]
    fn lemniscate_through_origin() {
        let loops = cassini_boundary(Complex64::new(0.0, 1.0), 1.0, 512).unwrap();
        assert_eq!(loops.len(), 2);
        let far = loops.iter().flat_map(|l| l.nodes.iter()).map(|n| n.z.norm()).fold(0.0, f64::max);
        let near = loops.iter().flat_map(|l| l.nodes.iter()).map(|n| n.z.norm()).fold(f64::MAX, f64::min);
        assert!(far <= 2f64.sqrt() + 1e-12 && far > 2f64.sqrt() - 1e-4, "{far}");
        assert!(near < 1e-3, "{near}");
        let total: f64 = loops.iter().map(BoundaryLoop::length).sum();
        assert!((total - LEMNISCATE).abs() < 1e-9, "{total}");
    }

    #[test]
    fn two_loops_wind_once_around_each_focus() {
        let w = Complex64::new(0.0, 1.0);
        let loops = cassini_boundary(w, 0.5, 128).unwrap();
        assert_eq!(loops.len(), 2);
        assert!((winding(&loops[0], w) - 1.0).abs() < 1e-12);
        assert!(winding(&loops[0], w.conj()).abs() < 1e-12);
        assert!((winding(&loops[1], w.conj()) - 1.0).abs() < 1e-12);
        assert!(winding(&loops[1], w).abs() < 1e-12);
        let one = cassini_boundary(w, 2.0, 128).unwrap();
        assert!((winding(&one[0], w) - 1.0).abs() < 1e-12);
        assert!((winding(&one[0], w.conj()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(cassini_boundary(Complex64::new(0.0, 1.0), 0.0, 64).is_err());
        assert!(cassini_boundary(Complex64::new(0.0, 1.0), 1.0, 4).is_err());
    }

    #[test]
    fn arclength_routes() {
        assert!((cassini_arclength(0.0, 2.5).unwrap() - TAU * 2.5).abs() < 1e-12);
        assert!((cassini_arclength(1.0, 1.0).unwrap() - LEMNISCATE).abs() < 1e-10);
        assert!((cassini_arclength_closed(1.0, 1.0).unwrap() - LEMNISCATE).abs() < 1e-10);
        // mpmath values of ℓ(i, γ)
        for (g, l) in [(0.5, 1.577_087_546_864_015_3), (0.9, 5.388_316_755_349_32), (1.5, 9.551_260_818_071_88), (2.0, 12.616_700_374_912_1)] {
            assert!((cassini_arclength(1.0, g).unwrap() - l).abs() < 1e-11, "{g}");
            assert!((cassini_arclength_closed(1.0, g).unwrap() - l).abs() < 1e-11, "{g}");
        }
        // scaling ℓ(w, r) = η ℓ(i, r/η)
        let a = cassini_arclength(2.0, 3.0).unwrap();
        let b = 2.0 * cassini_arclength(1.0, 1.5).unwrap();
        assert!((a - b).abs() < 1e-11);
    }

    #[test]
    fn normalized_length_values() {
        for (g, v) in [(0.5, 13.361_300_109_968_7), (0.9, 15.601_920_423_026_0), (1.5, 11.897_796_058_007_1), (2.0, 10.207_125_016_240_7)] {
            assert!((normalized_length(g).unwrap() - v).abs() < 1e-10, "{g}");
        }
    }

    #[test]
    fn theta_values() {
        assert!((statrs::function::gamma::gamma(0.25) - GAMMA_QUARTER).abs() < 1e-13);
        assert!((theta_closed_form() - THETA).abs() < 1e-13);
        let t = theta_constant().unwrap();
        assert!((t.value - THETA).abs() < 1e-5, "{t:?}");
        assert!((t.gamma - 1.0).abs() < 1e-6);
    }
}
