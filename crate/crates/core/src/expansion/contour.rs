//! Coefficients as contour integrals over circles and Cassini ovals in ℂ_J,
//! by the trapezoid rule with a node-doubling check.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::algebra::{ConePoint, Element};
use crate::error::{Error, Result};
use crate::geometry::{cassini_boundary, circle_boundary, complex_spherical, BoundaryLoop};
use crate::par::Exec;
use crate::plane::phi;

/// Quadrature settings shared by the contour routines.
#[derive(Debug, Clone, Copy)]
pub struct ContourOptions {
    /// Nodes per loop of the coarse rule; the check uses twice as many.
    pub nodes: usize,
    /// Allowed disagreement between the two rules, relative to
    /// max(1, ‖value‖).
    pub tol: f64,
    pub exec: Exec,
}

impl Default for ContourOptions {
    fn default() -> Self {
        ContourOptions { nodes: 256, tol: 1e-9, exec: Exec::default() }
    }
}

/// A contour coefficient with its refinement diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourValue {
    /// Value of the finer rule.
    pub value: Element,
    /// max-abs difference between the coarse and the fine rule.
    pub refinement: f64,
    /// Nodes per loop of the fine rule.
    pub nodes: usize,
    /// Largest ‖f‖ seen on the fine nodes.
    pub sup_f: f64,
}

/// f sampled on every node, in node order.
pub(crate) fn sample_loops<F>(loops: &[BoundaryLoop], f: &F, exec: Exec) -> Vec<Vec<Element>>
where
    F: Fn(Complex64) -> Element + Sync,
{
    loops.iter().map(|lp| exec.map_slice(&lp.nodes, |node| f(node.z))).collect()
}

// (2πJ)^{-1} Σ_loops Σ_nodes Φ_J(k(n, ζ) dζ) f(ζ), the left factor applied last.
fn rule<K>(j: &Element, loops: &[BoundaryLoop], values: &[Vec<Element>], order: usize, kernel: &K) -> Vec<Element>
where
    K: Fn(usize, Complex64) -> Complex64,
{
    let spec = j.spec();
    let prefactor = phi(j, Complex64::new(0.0, 2.0 * PI).inv());
    (0..=order)
        .map(|n| {
            let mut acc = Element::zero(spec);
            for (lp, vals) in loops.iter().zip(values) {
                let wgt = lp.weight();
                for (node, v) in lp.nodes.iter().zip(vals) {
                    acc += &(&phi(j, kernel(n, node.z) * node.dz * wgt) * v);
                }
            }
            &prefactor * &acc
        })
        .collect()
}

fn doubled<B, K, F>(j: &Element, boundary: B, f: &F, order: usize, kernel: K, opts: ContourOptions) -> Result<Vec<ContourValue>>
where
    B: Fn(usize) -> Result<Vec<BoundaryLoop>>,
    K: Fn(usize, Complex64) -> Complex64,
    F: Fn(Complex64) -> Element + Sync,
{
    if opts.nodes < 8 {
        return Err(Error::InvalidArgument(format!("need at least 8 nodes per loop, got {}", opts.nodes)));
    }
    let coarse_loops = boundary(opts.nodes)?;
    let fine_loops = boundary(2 * opts.nodes)?;
    let coarse_vals = sample_loops(&coarse_loops, f, opts.exec);
    let fine_vals = sample_loops(&fine_loops, f, opts.exec);
    let sup_f = fine_vals.iter().flatten().map(Element::norm).fold(0.0, f64::max);
    let coarse = rule(j, &coarse_loops, &coarse_vals, order, &kernel);
    let fine = rule(j, &fine_loops, &fine_vals, order, &kernel);
    coarse
        .into_iter()
        .zip(fine)
        .enumerate()
        .map(|(n, (c, v))| {
            let refinement = (&c - &v).max_abs();
            if !refinement.is_finite() || refinement > opts.tol * v.max_abs().max(1.0) {
                return Err(Error::NonConvergence(format!(
                    "coefficient {n}: {} and {} nodes differ by {refinement:e}",
                    opts.nodes,
                    2 * opts.nodes
                )));
            }
            Ok(ContourValue { value: v, refinement, nodes: 2 * opts.nodes, sup_f })
        })
        .collect()
}

/// a_0..=a_order as (2πJ)^{-1} ∫_{∂B_J(y,r)} (ζ − y)^{−n−1} dζ f(ζ). `f_on_plane`
/// receives the ℂ_J coordinate of ζ.
pub fn contour_coeffs_power<F>(f_on_plane: &F, y: &ConePoint, r: f64, order: usize, opts: ContourOptions) -> Result<Vec<ContourValue>>
where
    F: Fn(Complex64) -> Element + Sync,
{
    if !(r > 0.0) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {r}")));
    }
    let w = y.shadow();
    let kernel = move |n: usize, z: Complex64| (z - w).powi(-(n as i32) - 1);
    doubled(y.j(), |m| Ok(vec![circle_boundary(w, r, m)]), f_on_plane, order, kernel, opts)
}

pub fn contour_coeff_power<F>(f_on_plane: &F, y: &ConePoint, r: f64, n: usize, opts: ContourOptions) -> Result<ContourValue>
where
    F: Fn(Complex64) -> Element + Sync,
{
    Ok(contour_coeffs_power(f_on_plane, y, r, n, opts)?.pop().expect("order + 1 values"))
}

/// s_0..=s_order as (2πJ)^{-1} ∫_{∂U_J(y,r)} S_{y,n+1}(ζ)^{-1} dζ f(ζ), summed
/// over every loop of the oval.
pub fn contour_coeffs_spherical<F>(
    f_on_plane: &F,
    y: &ConePoint,
    r: f64,
    order: usize,
    opts: ContourOptions,
) -> Result<Vec<ContourValue>>
where
    F: Fn(Complex64) -> Element + Sync,
{
    let w = y.shadow();
    let boundary = |m: usize| {
        let loops = cassini_boundary(w, r, m)?;
        let touches = loops.iter().flat_map(|lp| &lp.nodes).any(|node| {
            let d = (node.z - w).norm() * (node.z - w.conj()).norm();
            d <= f64::EPSILON * r * r
        });
        if touches {
            return Err(Error::OutsideRegion(format!("oval of radius {r} meets the sphere of the center")));
        }
        Ok(loops)
    };
    let kernel = move |n: usize, z: Complex64| complex_spherical(w, n + 1, z).inv();
    doubled(y.j(), boundary, f_on_plane, order, kernel, opts)
}

pub fn contour_coeff_spherical<F>(f_on_plane: &F, y: &ConePoint, r: f64, n: usize, opts: ContourOptions) -> Result<ContourValue>
where
    F: Fn(Complex64) -> Element + Sync,
{
    Ok(contour_coeffs_spherical(f_on_plane, y, r, n, opts)?.pop().expect("order + 1 values"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::expansion::coeffs::{derivatives_at_center_pair, spherical_numbers_by_system, taylor_coeffs_by_derivative};
    use crate::sampling;
    use crate::slice::{ComplexElement, PiecewiseConstantStem, SliceFunction, StemPolynomial};

    fn h(s: &str) -> Element {
        Element::parse(AlgebraSpec::quaternions(), s).unwrap()
    }

    #[test]
    fn power_orthogonality() {
        let y = ConePoint::from_element(&h("0.3+0.8j")).unwrap();
        let w = y.shadow();
        for m in 0..6 {
            let f = |z: Complex64| phi(y.j(), (z - w).powu(m as u32));
            let c = contour_coeffs_power(&f, &y, 0.7, 8, ContourOptions::default()).unwrap();
            for (n, v) in c.iter().enumerate() {
                let expect = if n == m { 1.0 } else { 0.0 };
                assert!((v.value.scalar() - expect).abs() < 1e-12 && v.value.without_scalar().max_abs() < 1e-12);
            }
        }
    }

    #[test]
    fn spherical_orthogonality_on_both_topologies() {
        let y = ConePoint::from_element(&h("0.1+0.9i")).unwrap();
        let w = y.shadow();
        for r in [0.5, 0.9, 1.6] {
            for m in 0..6 {
                let f = |z: Complex64| phi(y.j(), complex_spherical(w, m, z));
                let c = contour_coeffs_spherical(&f, &y, r, 8, ContourOptions::default()).unwrap();
                for (n, v) in c.iter().enumerate() {
                    let expect = if n == m { 1.0 } else { 0.0 };
                    assert!((&v.value - &h("1").scale(expect)).max_abs() < 1e-9, "r={r} m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn example_on_two_loops() {
        let f = PiecewiseConstantStem::new(ComplexElement { re: h("1"), im: h("-k") });
        let y = ConePoint::from_element(&h("k")).unwrap();
        let opts = ContourOptions { nodes: 512, ..ContourOptions::default() };
        let c = contour_coeffs_spherical(&|z| f.eval_on_plane(y.j(), z), &y, 0.5, 3, opts).unwrap();
        let expect = [h("2"), h("-k"), h("0.5"), h("-0.5k")];
        for (v, e) in c.iter().zip(&expect) {
            assert!((&v.value - e).max_abs() < 1e-10);
        }
    }

    #[test]
    fn contour_matches_derivatives() {
        let spec = AlgebraSpec::clifford(3).unwrap();
        let mut rng = sampling::rng_for(5, 0);
        let f = sampling::stem_polynomial(spec, &mut rng, 8, 1.0);
        let y = sampling::cone_point(spec, &mut rng, 1.0);
        let on_plane = |z| f.eval_on_plane(y.j(), z);
        let a = taylor_coeffs_by_derivative(&f, &y, 10);
        let c = contour_coeffs_power(&on_plane, &y, 0.8, 10, ContourOptions::default()).unwrap();
        for (x, v) in a.iter().zip(&c) {
            assert!((x - &v.value).max_abs() < 1e-9 * x.max_abs().max(1.0));
        }
        let (da, db) = derivatives_at_center_pair(&f, &y, 10).unwrap();
        let s = spherical_numbers_by_system(&da, &db, &y, 10).unwrap();
        let c = contour_coeffs_spherical(&on_plane, &y, 0.8, 10, ContourOptions::default()).unwrap();
        for (x, v) in s.iter().zip(&c) {
            assert!((x - &v.value).max_abs() < 1e-9 * x.max_abs().max(1.0));
        }
    }

    #[test]
    fn coarse_rule_is_rejected() {
        let y = ConePoint::from_element(&h("i")).unwrap();
        let f = StemPolynomial::monomial(40, h("1"));
        let opts = ContourOptions { nodes: 16, tol: 1e-12, exec: Exec::Sequential };
        let r = contour_coeffs_power(&|z| f.eval_on_plane(y.j(), z), &y, 1.0, 2, opts);
        assert!(matches!(r, Err(Error::NonConvergence(_))));
    }
}
