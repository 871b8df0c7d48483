//! Remainders of truncated power and spherical expansions, computed by
//! direct subtraction and by the integral kernel, with the a priori bounds.
//!
//! The kernel route works on stems: for the central variable z the
//! integrand Δ_ζ(z)^{-1}(ζ^c − z)J^{-1} k(ζ) dζ lives in ℂ_J ⊗ ℂ and acts on
//! f(ζ) from the left. Multiplying by the stem of (z − y)^{n+1}, resp.
//! S_{y,n+1}(z), is the slice product; inducing at x finishes.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::coeffs::{derivatives_at_center_pair, spherical_numbers_by_system, taylor_coeffs_by_derivative};
use super::contour::{sample_loops, ContourOptions};
use crate::algebra::{AlgebraConstants, ConePoint, Element};
use crate::error::{Error, Result};
use crate::geometry::{cassini_boundary, circle_boundary, complex_spherical, delta_complex, sigma, tau, theta_closed_form, BoundaryLoop};
use crate::plane::{phi, Bicomplex};
use crate::series::partial_sum;
use crate::slice::{ComplexElement, SliceRegular};

/// Both evaluations of a remainder and its bound.
#[derive(Debug, Clone, PartialEq)]
pub struct Remainder {
    /// f(x) minus the partial sum.
    pub direct: Element,
    /// The same quantity from the integral kernel.
    pub kernel: Element,
    pub bound: f64,
    /// Largest ‖f‖ on the contour nodes.
    pub sup_f: f64,
    /// σ_A(x, y) or τ_A(x, y).
    pub distance: f64,
}

impl Remainder {
    pub fn agreement(&self) -> f64 {
        (&self.direct - &self.kernel).max_abs()
    }
}

/// (3r + 2η)(r + 2η)² / (r(r − τ)²).
pub fn spherical_bound_factor(r: f64, eta: f64, tau: f64) -> f64 {
    (3.0 * r + 2.0 * eta) * (r + 2.0 * eta).powi(2) / (r * (r - tau).powi(2))
}

/// C′ = C_A(1 + C_A²)(h + 1)HΘ for the spherical remainder.
pub fn spherical_remainder_constant(consts: &AlgebraConstants, spec: &crate::AlgebraSpec) -> f64 {
    (1.0 + consts.c_upper * consts.c_upper) * spherical_coefficient_constant(consts, spec)
}

/// C = C_A(h + 1)HΘ for spherical numbers.
pub fn spherical_coefficient_constant(consts: &AlgebraConstants, spec: &crate::AlgebraSpec) -> f64 {
    consts.power_coefficient_constant(spec) * theta_closed_form()
}

// Stem of the kernel integral at the central point z, already multiplied by
// `prefix` and (2π)^{-1}.
fn kernel_stem<K>(
    j: &Element,
    loops: &[BoundaryLoop],
    values: &[Vec<Element>],
    z: Complex64,
    prefix: Bicomplex,
    weight: K,
) -> ComplexElement
where
    K: Fn(Complex64) -> Complex64,
{
    let mut acc = ComplexElement::zero(j.spec());
    let minus_j = Bicomplex::from_plane(Complex64::new(0.0, -1.0));
    for (lp, vals) in loops.iter().zip(values) {
        let wgt = lp.weight() / (2.0 * PI);
        for (node, v) in lp.nodes.iter().zip(vals) {
            let zeta = node.z;
            let delta = z * z - 2.0 * zeta.re * z + zeta.norm_sqr();
            let b = prefix
                * Bicomplex::from_central(delta.inv())
                * -Bicomplex::central_minus_plane(z, zeta.conj())
                * minus_j
                * Bicomplex::from_plane(weight(zeta) * node.dz * wgt);
            acc.add_assign(&ComplexElement::from_element(v.clone()).left_bicomplex(j, b));
        }
    }
    acc
}

fn induce_at(stem: &ComplexElement, x: &ConePoint) -> Element {
    if x.is_real() {
        stem.re.clone()
    } else {
        stem.induce_with(x.j())
    }
}

/// f(x) − Σ_{k≤n}(x − y)^{·k} a_k for x ∈ Ω(y, r), both ways, with the bound
/// C′ sup_{F_J(y,r)}‖f‖ (σ/r)ⁿ σ/(r − σ).
pub fn power_remainder<F: SliceRegular + ?Sized>(
    f: &F,
    y: &ConePoint,
    r: f64,
    n: usize,
    x: &ConePoint,
    consts: &AlgebraConstants,
    opts: ContourOptions,
) -> Result<Remainder> {
    let s = sigma(x, y);
    if !(r > 0.0) || s >= r {
        return Err(Error::OutsideRegion(format!("sigma = {s} is not below r = {r}")));
    }
    let a = taylor_coeffs_by_derivative(f, y, n);
    let w = y.shadow();
    let direct = f.eval(x) - partial_sum(y, &a, x, |k, z| (z - w).powu(k as u32));

    let (r_stem, sup_f) = power_kernel_stem(f, y, r, n, x.shadow(), opts);
    let prefix = Bicomplex::central_minus_plane(x.shadow(), y.shadow()).powu(n as u32 + 1);
    let kernel = induce_at(&r_stem.left_bicomplex(y.j(), prefix), x);
    let bound = consts.power_remainder_constant(y.spec()) * sup_f * (s / r).powi(n as i32) * s / (r - s);
    Ok(Remainder { direct, kernel, bound, sup_f, distance: s })
}

/// f(x) − Σ_{k≤n} S_{y,k}(x) s_k for τ_A(x, y) < r, both ways, with the bound
/// C′ S_f (τ/r)ⁿ (3r + 2η)(r + 2η)² / (r(r − τ)²).
pub fn spherical_remainder<F: SliceRegular + ?Sized>(
    f: &F,
    y: &ConePoint,
    r: f64,
    n: usize,
    x: &ConePoint,
    consts: &AlgebraConstants,
    opts: ContourOptions,
) -> Result<Remainder> {
    let t = tau(x, y);
    if !(r > 0.0) || t >= r {
        return Err(Error::OutsideRegion(format!("tau = {t} is not below r = {r}")));
    }
    let (at_y, at_yc) = derivatives_at_center_pair(f, y, n)?;
    let s = spherical_numbers_by_system(&at_y, &at_yc, y, n)?;
    let w = y.shadow();
    let direct = f.eval(x) - partial_sum(y, &s, x, |k, z| complex_spherical(w, k, z));

    let j = y.j();
    let on_plane = |zeta: Complex64| f.eval_on_plane(j, zeta);
    let loops = cassini_boundary(w, r, opts.nodes)?;
    let values = sample_loops(&loops, &on_plane, opts.exec);
    let z = x.shadow();
    let m = n.div_ceil(2);
    let mut prefix = Bicomplex::from_central(delta_complex(w, z)).powu(m as u32);
    if (n + 1) % 2 == 1 {
        prefix = prefix * Bicomplex::central_minus_plane(z, w);
    }
    let stem = kernel_stem(j, &loops, &values, z, prefix, |zeta| complex_spherical(w, n + 1, zeta).inv());
    let kernel = induce_at(&stem, x);

    let sup_f = values.iter().flatten().map(Element::norm).fold(0.0, f64::max);
    let bound = spherical_remainder_constant(consts, y.spec())
        * sup_f
        * (t / r).powi(n as i32)
        * spherical_bound_factor(r, y.beta(), t);
    Ok(Remainder { direct, kernel, bound, sup_f, distance: t })
}

// Stem of R_{y,n}(f) at z and sup ‖f‖ over both circles of F_J(y, r).
fn power_kernel_stem<F: SliceRegular + ?Sized>(
    f: &F,
    y: &ConePoint,
    r: f64,
    n: usize,
    z: Complex64,
    opts: ContourOptions,
) -> (ComplexElement, f64) {
    let j = y.j();
    let w = y.shadow();
    let on_plane = |zeta: Complex64| f.eval_on_plane(j, zeta);
    let circle = vec![circle_boundary(w, r, opts.nodes)];
    let values = sample_loops(&circle, &on_plane, opts.exec);
    let stem = kernel_stem(j, &circle, &values, z, Bicomplex::ONE, |zeta| (zeta - w).powi(-(n as i32) - 1));
    let mirror = vec![circle_boundary(w.conj(), r, opts.nodes)];
    let sup_f = values
        .iter()
        .chain(&sample_loops(&mirror, &on_plane, opts.exec))
        .flatten()
        .map(Element::norm)
        .fold(0.0, f64::max);
    (stem, sup_f)
}

/// R_{y,n}(f)(x) induced from its stem, without the (2π)^{-1} factor.
pub fn power_kernel<F: SliceRegular + ?Sized>(f: &F, y: &ConePoint, r: f64, n: usize, x: &ConePoint, opts: ContourOptions) -> Element {
    let (stem, _) = power_kernel_stem(f, y, r, n, x.shadow(), opts);
    induce_at(&stem, x).scale(2.0 * PI)
}

/// The associative form ∫ Δ_ζ(x)^{-1}(ζ^c − x)J^{-1}(ζ − y)^{−n−1} dζ f(ζ) of the
/// power remainder kernel, evaluated pointwise in A.
pub fn power_kernel_pointwise<F: SliceRegular + ?Sized>(
    f: &F,
    y: &ConePoint,
    r: f64,
    n: usize,
    x: &ConePoint,
    opts: ContourOptions,
) -> Result<Element> {
    let spec = y.spec();
    if !spec.is_associative() {
        return Err(Error::Unsupported("the pointwise kernel needs an associative algebra".into()));
    }
    let j = y.j();
    let w = y.shadow();
    let circle = circle_boundary(w, r, opts.nodes);
    let xe = x.element();
    let minus_j = j.scale(-1.0);
    let mut acc = Element::zero(spec);
    for node in &circle.nodes {
        let zeta = node.z;
        // Δ_ζ(x) = x² − 2 Re ζ x + |ζ|² lies in ℂ_I
        let d = delta_complex(zeta, x.shadow());
        let d_inv = if x.is_real() { Element::real(spec, d.re.recip()) } else { phi(x.j(), d.inv()) };
        let zc_minus_x = phi(j, zeta.conj()) - xe;
        let tail = &phi(j, (zeta - w).powi(-(n as i32) - 1) * node.dz * circle.weight()) * &f.eval_on_plane(j, zeta);
        acc += &(&(&(&d_inv * &zc_minus_x) * &minus_j) * &tail);
    }
    Ok(acc)
}
