//! The invariant suite behind `slice-series verify`.
//!
//! Every property draws its samples from per-index ChaCha streams, so the
//! outcome depends only on the seed and the sample count. Each check yields
//! a margin: nonnegative means the property held, and the most negative
//! margin is reported.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{algebra_constants, AlgebraConstants, AlgebraSpec, ConePoint, Element, CONE_TOL};
use crate::expansion::{
    center_derivative, coefficient_residual, coefficients, conjugate_derivative, conjugate_derivative_from_spherical,
    contour_coeffs_power, contour_coeffs_spherical, derivative_from_spherical, power_remainder, spherical_numbers_by_system,
    spherical_remainder, ContourOptions, ExpandOptions, GaussInt, Kind, Method,
};
use crate::geometry::{
    boundary_spherical_slack, cassini_boundary, delta_complex, delta_in_algebra, normalized_length, separation_slack, sigma,
    sigma_dominates_norm, spherical_sandwich, sto_sandwich, tau, tau_complex,
};
use crate::par::Exec;
use crate::plane::phi;
use crate::sampling;
use crate::series::{slice_power, slice_power_via_stem, spherical_poly, PowerSeries};
use crate::slice::{representation_formula, ComplexElement, SliceFunction, StemPolynomial};

/// Sample budget and seed for a run.
#[derive(Debug, Clone, Copy)]
pub struct Context {
    pub samples: usize,
    pub seed: u64,
    pub exec: Exec,
}

impl Context {
    fn scaled(&self, divisor: usize, floor: usize) -> usize {
        (self.samples / divisor).max(floor)
    }

    fn sweep<F>(&self, stream: u64, n: usize, f: F) -> Vec<f64>
    where
        F: Fn(&mut ChaCha8Rng) -> f64 + Sync + Send,
    {
        let seed = self.seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        self.exec.map_range(n, |i| f(&mut sampling::rng_for(seed, i as u64)))
    }

    fn constants(&self, spec: &'static AlgebraSpec) -> AlgebraConstants {
        algebra_constants(spec, 400, self.seed ^ 0x5eed, self.exec)
    }
}

/// Outcome of one named property.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyResult {
    pub name: &'static str,
    pub module: &'static str,
    pub checks: usize,
    pub failures: usize,
    pub worst_margin: f64,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

type Runner = fn(&Context) -> Vec<f64>;

/// A named invariant.
pub struct Property {
    pub name: &'static str,
    pub module: &'static str,
    run: Runner,
}

impl Property {
    pub fn run(&self, ctx: &Context) -> PropertyResult {
        let margins = (self.run)(ctx);
        let failures = margins.iter().filter(|m| !(**m >= 0.0)).count();
        let worst_margin = margins.iter().copied().fold(f64::INFINITY, |a, b| if b.is_nan() { f64::NEG_INFINITY } else { a.min(b) });
        PropertyResult { name: self.name, module: self.module, checks: margins.len(), failures, worst_margin }
    }
}

pub fn properties() -> Vec<Property> {
    macro_rules! p {
        ($module:literal, $name:ident) => {
            Property { name: stringify!($name), module: $module, run: $name }
        };
    }
    vec![
        p!("algebra", anti_involution),
        p!("algebra", alternativity),
        p!("algebra", artin_bracketings),
        p!("algebra", quasi_banach),
        p!("algebra", cone_round_trip),
        p!("algebra", unit_sphere_characterization),
        p!("slice", real_stem_product_is_pointwise),
        p!("slice", slice_product_convolution),
        p!("slice", representation_round_trip),
        p!("slice", holomorphicity),
        p!("geometry", sigma_metric),
        p!("geometry", tau_pseudo_metric),
        p!("geometry", sigma_dominates_distance),
        p!("geometry", delta_norm_identity),
        p!("geometry", cassini_boundary_residual),
        p!("geometry", cassini_length_monotonicity),
        p!("geometry", sigma_tau_inequalities),
        p!("series", slice_power_routes),
        p!("series", power_estimate),
        p!("series", odd_spherical_sandwich),
        p!("series", tail_bound_rate),
        p!("expansion", three_way_agreement),
        p!("expansion", partial_identities),
        p!("expansion", system_round_trip),
        p!("expansion", quadrature_doubling),
        p!("expansion", remainder_bounds),
    ]
}

/// Runs the whole suite in registry order.
pub fn run_all(ctx: &Context) -> Vec<PropertyResult> {
    properties().iter().map(|p| p.run(ctx)).collect()
}

pub fn run_named(ctx: &Context, name: &str) -> Option<PropertyResult> {
    properties().iter().find(|p| p.name == name).map(|p| p.run(ctx))
}

fn algebras() -> [&'static AlgebraSpec; 4] {
    [
        AlgebraSpec::quaternions(),
        AlgebraSpec::octonions(),
        AlgebraSpec::clifford(3).expect("supported"),
        AlgebraSpec::clifford(5).expect("supported"),
    ]
}

fn pick<R: Rng + ?Sized>(rng: &mut R) -> &'static AlgebraSpec {
    algebras()[rng.random_range(0..4)]
}

fn rel(residual: f64, scale: f64) -> f64 {
    residual / scale.max(1.0)
}

// Cone point with the given ranges for α and β.
fn point_with<R: Rng + ?Sized>(spec: &'static AlgebraSpec, rng: &mut R, j: Option<&Element>, beta: (f64, f64)) -> ConePoint {
    let j = j.cloned().unwrap_or_else(|| sampling::unit_imaginary(spec, rng));
    let alpha = rng.random_range(-1.0..=1.0);
    ConePoint::new(alpha, rng.random_range(beta.0..=beta.1), j).expect("unit imaginary")
}

// Triples that share planes often enough to exercise every branch of σ_A.
fn triple<R: Rng + ?Sized>(spec: &'static AlgebraSpec, rng: &mut R) -> [ConePoint; 3] {
    let pool = [sampling::unit_imaginary(spec, rng), sampling::unit_imaginary(spec, rng)];
    let pt = |rng: &mut R| {
        let j = match rng.random_range(0..4) {
            0 => pool[0].clone(),
            1 => pool[0].scale(-1.0),
            2 => pool[1].clone(),
            _ => sampling::unit_imaginary(spec, rng),
        };
        if rng.random_range(0..10) == 0 {
            ConePoint::real(spec, rng.random_range(-1.0..=1.0))
        } else {
            point_with(spec, rng, Some(&j), (0.0, 1.5))
        }
    };
    [pt(rng), pt(rng), pt(rng)]
}

fn anti_involution(ctx: &Context) -> Vec<f64> {
    ctx.sweep(1, ctx.samples, |rng| {
        let spec = pick(rng);
        let x = sampling::element(spec, rng, 1.0);
        let y = sampling::element(spec, rng, 1.0);
        let lhs = (&x * &y).conj();
        let rhs = &y.conj() * &x.conj();
        1e-12 - rel((&lhs - &rhs).max_abs(), x.norm() * y.norm())
    })
}

fn alternativity(ctx: &Context) -> Vec<f64> {
    ctx.sweep(2, ctx.samples, |rng| {
        let spec = if rng.random::<bool>() { AlgebraSpec::octonions() } else { pick(rng) };
        let x = sampling::element(spec, rng, 1.0);
        let y = sampling::element(spec, rng, 1.0);
        let xx = &x * &x;
        let left = (&(&x * &(&x * &y)) - &(&xx * &y)).max_abs();
        let right = (&(&(&y * &x) * &x) - &(&y * &xx)).max_abs();
        1e-10 - rel(left.max(right), x.norm() * x.norm() * y.norm())
    })
}

fn bracketings(factors: &[&Element]) -> Vec<Element> {
    if factors.len() == 1 {
        return vec![factors[0].clone()];
    }
    let mut out = Vec::new();
    for split in 1..factors.len() {
        for l in bracketings(&factors[..split]) {
            for r in bracketings(&factors[split..]) {
                out.push(&l * &r);
            }
        }
    }
    out
}

fn artin_bracketings(ctx: &Context) -> Vec<f64> {
    ctx.sweep(3, ctx.scaled(4, 10), |rng| {
        let spec = if rng.random::<bool>() { AlgebraSpec::octonions() } else { pick(rng) };
        let x = sampling::element(spec, rng, 1.0);
        let y = sampling::element(spec, rng, 1.0);
        let scale = x.norm().max(y.norm()).max(1.0).powi(4);
        let mut worst: f64 = 0.0;
        for len in 1..=4usize {
            for mask in 0..(1u32 << len) {
                let word: Vec<&Element> = (0..len).map(|b| if mask >> b & 1 == 1 { &y } else { &x }).collect();
                let products = bracketings(&word);
                for p in &products[1..] {
                    worst = worst.max((p - &products[0]).max_abs());
                }
            }
        }
        1e-10 - worst / scale
    })
}

fn quasi_banach(ctx: &Context) -> Vec<f64> {
    let consts: Vec<AlgebraConstants> = algebras().iter().map(|s| ctx.constants(s)).collect();
    ctx.sweep(4, ctx.samples, |rng| {
        let k = rng.random_range(0..4);
        let spec = algebras()[k];
        let c = consts[k];
        let cone = sampling::cone_point(spec, rng, 1.0).element().clone();
        let other = sampling::element(spec, rng, 1.0);
        let scale = cone.norm() * other.norm();
        let mut margin = f64::INFINITY;
        for p in [&cone * &other, &other * &cone] {
            let n = p.norm();
            margin = margin.min((n - c.c_lower * scale) / scale + 1e-12);
            margin = margin.min((c.c_upper * scale - n) / scale + 1e-12);
        }
        let free = sampling::element(spec, rng, 1.0);
        let n = (&other * &free).norm();
        margin.min((c.c_upper * other.norm() * free.norm() - n) / (other.norm() * free.norm()) + 1e-12)
    })
}

fn cone_round_trip(ctx: &Context) -> Vec<f64> {
    ctx.sweep(5, ctx.samples, |rng| {
        let spec = pick(rng);
        let p = point_with(spec, rng, None, (1e-3, 2.0));
        let back = match ConePoint::decompose(p.element(), CONE_TOL) {
            Ok(b) => b,
            Err(_) => return -1.0,
        };
        let err = (back.alpha() - p.alpha()).abs().max((back.beta() - p.beta()).abs()).max((back.j() - p.j()).max_abs());
        1e-12 - rel(err, p.element().norm())
    })
}

fn unit_sphere_characterization(ctx: &Context) -> Vec<f64> {
    ctx.sweep(6, ctx.samples, |rng| {
        let spec = pick(rng);
        let spec_one = Element::one(spec);
        // J ∈ 𝕊_A ⇒ t(J) = 0, n(J) = 1
        let j = sampling::unit_imaginary(spec, rng);
        let forward = j.trace().max_abs().max((&j.norm_q() - &spec_one).max_abs());
        // t(K) = 0, n(K) = 1 for K built from a cone element ⇒ K² = −1
        let x = sampling::cone_point(spec, rng, 1.0).element().clone();
        let t = x.trace().scalar();
        let n = x.norm_q().scalar();
        let disc = n - t * t / 4.0;
        if disc <= 1e-2 {
            return 1e-12 - forward;
        }
        let k = (&x - &Element::real(spec, t / 2.0)).scale(1.0 / disc.sqrt());
        let conditions = k.trace().max_abs().max((&k.norm_q() - &spec_one).max_abs());
        let square = (&(&k * &k) + &spec_one).max_abs();
        1e-12 - forward.max(conditions).max(square) / x.norm().max(1.0)
    })
}

fn random_stem(spec: &'static AlgebraSpec, rng: &mut ChaCha8Rng, degrees: std::ops::RangeInclusive<usize>) -> StemPolynomial {
    let d = rng.random_range(degrees);
    sampling::stem_polynomial(spec, rng, d, 1.0)
}

fn real_stem(rng: &mut ChaCha8Rng, spec: &'static AlgebraSpec, degree: usize) -> StemPolynomial {
    let coeffs = (0..=degree).map(|_| ComplexElement::from_element(Element::real(spec, rng.random_range(-1.0..=1.0)))).collect();
    StemPolynomial::new(coeffs).expect("nonempty")
}

fn real_stem_product_is_pointwise(ctx: &Context) -> Vec<f64> {
    ctx.sweep(7, ctx.scaled(4, 10), |rng| {
        let spec = pick(rng);
        let f = { let d = rng.random_range(0..=6); real_stem(rng, spec, d) };
        let g = random_stem(spec, rng, 0..=6);
        let x = sampling::cone_point(spec, rng, 1.0);
        let fg = f.slice_product(&g).expect("same algebra").eval(&x);
        let pointwise = &f.eval(&x) * &g.eval(&x);
        1e-10 - rel((&fg - &pointwise).max_abs(), pointwise.max_abs())
    })
}

fn slice_product_convolution(ctx: &Context) -> Vec<f64> {
    ctx.sweep(8, ctx.scaled(4, 10), |rng| {
        let spec = pick(rng);
        let f = random_stem(spec, rng, 0..=6);
        let g = random_stem(spec, rng, 0..=6);
        let z = sampling::complex(rng, 1.0);
        let lhs = f.slice_product(&g).expect("same algebra").stem(z);
        let rhs = f.stem(z).checked_mul(&g.stem(z)).expect("same algebra");
        1e-10 - rel(lhs.sub(&rhs).max_abs(), rhs.max_abs())
    })
}

fn representation_round_trip(ctx: &Context) -> Vec<f64> {
    ctx.sweep(9, ctx.scaled(4, 10), |rng| {
        let spec = pick(rng);
        let f = random_stem(spec, rng, 0..=8);
        let i = sampling::unit_imaginary(spec, rng);
        let j = sampling::unit_imaginary(spec, rng);
        let z = Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(0.01..=1.5));
        let direct = f.eval_on_plane(&i, z);
        let rebuilt = representation_formula(&f.eval_on_plane(&j, z), &f.eval_on_plane(&j, z.conj()), &i, &j).expect("units");
        1e-11 - rel((&direct - &rebuilt).max_abs(), direct.max_abs())
    })
}

fn holomorphicity(ctx: &Context) -> Vec<f64> {
    ctx.sweep(10, ctx.scaled(4, 10), |rng| {
        let spec = pick(rng);
        let f = random_stem(spec, rng, 0..=10);
        let z = sampling::complex(rng, 1.2);
        let scale = f.stem(z).max_abs();
        1e-12 - rel(f.antiholomorphic_derivative(z).max_abs(), scale)
    })
}

fn sigma_metric(ctx: &Context) -> Vec<f64> {
    ctx.sweep(11, ctx.samples, |rng| {
        let spec = if rng.random::<bool>() { AlgebraSpec::quaternions() } else { AlgebraSpec::clifford(3).expect("supported") };
        let [x, y, z] = triple(spec, rng);
        let asym = (sigma(&x, &y) - sigma(&y, &x)).abs();
        let ident = sigma(&x, &x);
        let triangle = sigma(&x, &y) + sigma(&y, &z) - sigma(&x, &z);
        (triangle + 1e-10).min(1e-12 - asym).min(1e-12 - ident)
    })
}

fn tau_pseudo_metric(ctx: &Context) -> Vec<f64> {
    ctx.sweep(12, ctx.samples, |rng| {
        let spec = if rng.random::<bool>() { AlgebraSpec::quaternions() } else { AlgebraSpec::clifford(3).expect("supported") };
        let [x, y, z] = triple(spec, rng);
        let asym = (tau(&x, &y) - tau(&y, &x)).abs();
        let triangle = tau(&x, &y) + tau(&y, &z) - tau(&x, &z);
        // a point on the sphere of x
        let twin = ConePoint::new(x.alpha(), x.beta(), sampling::unit_imaginary(spec, rng)).expect("unit");
        let on_sphere = tau(&x, &twin);
        let apart = if (x.alpha() - y.alpha()).abs() > 1e-6 || (x.beta() - y.beta()).abs() > 1e-6 {
            tau(&x, &y)
        } else {
            1.0
        };
        (triangle + 1e-10).min(1e-12 - asym).min(1e-7 - on_sphere).min(apart)
    })
}

fn sigma_dominates_distance(ctx: &Context) -> Vec<f64> {
    ctx.sweep(13, ctx.samples, |rng| {
        let spec = if rng.random::<bool>() { AlgebraSpec::quaternions() } else { AlgebraSpec::clifford(3).expect("supported") };
        let [x, y, _] = triple(spec, rng);
        if sigma_dominates_norm(&x, &y) {
            sigma(&x, &y) - x.element().dist(y.element()) + 1e-12 * sigma(&x, &y).max(1.0)
        } else {
            -1.0
        }
    })
}

fn delta_norm_identity(ctx: &Context) -> Vec<f64> {
    ctx.sweep(14, ctx.samples, |rng| {
        let spec = pick(rng);
        let [x, y, _] = triple(spec, rng);
        let lhs = delta_in_algebra(&y, x.element()).norm();
        let rhs = delta_complex(y.shadow(), x.shadow()).norm();
        1e-12 - (lhs - rhs).abs() / rhs.max(1e-300).max(1e-3)
    })
}

fn cassini_boundary_residual(ctx: &Context) -> Vec<f64> {
    ctx.sweep(15, ctx.scaled(20, 10), |rng| {
        let w = Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(0.0..=1.5));
        let r = if rng.random_range(0..8) == 0 { w.im } else { rng.random_range(0.05..=2.5) };
        if r <= 0.0 {
            return 0.0;
        }
        let loops = cassini_boundary(w, r, 64).expect("valid radius");
        let worst = loops.iter().flat_map(|l| &l.nodes).map(|n| (delta_complex(w, n.z).norm() - r * r).abs()).fold(0.0, f64::max);
        1e-10 - worst / (r * r).max(1.0)
    })
}

fn cassini_length_monotonicity(_ctx: &Context) -> Vec<f64> {
    let below: Vec<f64> = (1..=25).map(|k| 0.02 + 0.98 * k as f64 / 25.0).collect();
    let above: Vec<f64> = (0..25).map(|k| 1.0 + 9.0 * (k as f64 + 1.0) / 25.0).collect();
    let l = |g: f64| normalized_length(g).unwrap_or(f64::NAN);
    let mut margins = Vec::new();
    let mut prev = l(0.02);
    margins.push(0.05 - (prev - 4.0 * std::f64::consts::PI).abs());
    for &g in &below {
        let v = l(g);
        margins.push(v - prev);
        prev = v;
    }
    let peak = prev;
    for &g in &above {
        let v = l(g);
        margins.push(prev - v);
        margins.push(v - 2.0 * std::f64::consts::PI);
        prev = v;
    }
    margins.push(peak - prev);
    margins
}

fn sigma_tau_inequalities(ctx: &Context) -> Vec<f64> {
    ctx.sweep(17, ctx.samples, |rng| {
        let w = Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.5..=1.5));
        let z = sampling::complex(rng, 2.0);
        let zeta = sampling::complex(rng, 2.0);
        let n = rng.random_range(0..=20);
        let rel_slack = |s: crate::geometry::Sandwich| s.slack() / s.upper.max(1e-300) + 1e-10;
        let mut m = rel_slack(sto_sandwich(z, w)).min(rel_slack(spherical_sandwich(w, z, n)));
        if let Some(s) = separation_slack(w, z, zeta) {
            m = m.min(s / (zeta - z).norm().max(1e-300) + 1e-10);
        }
        let scale = crate::geometry::complex_spherical(w, n + 1, zeta).norm().max(1e-300);
        m.min(boundary_spherical_slack(w, zeta, n) / scale + 1e-10)
    })
}

fn slice_power_routes(ctx: &Context) -> Vec<f64> {
    ctx.sweep(18, ctx.scaled(4, 10), |rng| {
        let spec = pick(rng);
        let [x, y, _] = triple(spec, rng);
        let n = rng.random_range(0..=30);
        let a = slice_power(&y, n, &x);
        let b = slice_power_via_stem(&y, n, &x);
        // the stem product runs through values as large as the stem itself
        let (z, w) = (x.shadow(), y.shadow());
        let stem_size = (z - w).norm().max((z - w.conj()).norm()).powi(n as i32);
        1e-10 - rel((&a - &b).max_abs(), a.max_abs().max(stem_size))
    })
}

fn power_estimate(ctx: &Context) -> Vec<f64> {
    let consts: Vec<AlgebraConstants> = algebras().iter().map(|s| ctx.constants(s)).collect();
    ctx.sweep(19, ctx.scaled(4, 10), |rng| {
        let k = rng.random_range(0..4);
        let spec = algebras()[k];
        let c = consts[k].c_upper;
        let [x, y, _] = triple(spec, rng);
        let n = rng.random_range(0..=25);
        let bound = c * (1.0 + c) * sigma(&x, &y).powi(n as i32);
        let v = slice_power(&y, n, &x).norm();
        (bound - v) / bound.max(1e-300) + 1e-12
    })
}

fn odd_spherical_sandwich(ctx: &Context) -> Vec<f64> {
    let consts: Vec<AlgebraConstants> = algebras().iter().map(|s| ctx.constants(s)).collect();
    ctx.sweep(20, ctx.scaled(4, 10), |rng| {
        let k = rng.random_range(0..4);
        let spec = algebras()[k];
        let c = consts[k];
        let [x, y, _] = triple(spec, rng);
        let m = rng.random_range(0..=10);
        let d = delta_in_algebra(&y, x.element()).norm().powi(m as i32);
        let base = d * x.element().dist(y.element());
        if base == 0.0 {
            return 0.0;
        }
        let v = spherical_poly(&y, 2 * m + 1, &x).norm();
        ((v - c.c_lower * base) / base + 1e-12).min((c.c_upper * base - v) / base + 1e-12)
    })
}

fn tail_bound_rate(ctx: &Context) -> Vec<f64> {
    let consts: Vec<AlgebraConstants> = algebras().iter().map(|s| ctx.constants(s)).collect();
    ctx.sweep(21, ctx.scaled(20, 10), |rng| {
        let k = rng.random_range(0..4);
        let spec = algebras()[k];
        let y = sampling::cone_point(spec, rng, 1.0);
        let rho: f64 = rng.random_range(1.5..=3.0);
        let coeffs: Vec<Element> = (0..60).map(|n| sampling::element(spec, rng, 1.0).scale(rho.powi(-n))).collect();
        let series = PowerSeries::new(y.clone(), coeffs).expect("same algebra");
        let x = loop {
            let x = sampling::cone_point(spec, rng, 1.5);
            if sigma(&x, &y) < 0.8 * rho {
                break x;
            }
        };
        let full = series.eval(&x, consts[k].c_upper);
        let m = rng.random_range(2..=40);
        let part = series.clone().with_order(m).eval(&x, consts[k].c_upper);
        let gap = (&full.value - &part.value).norm();
        (part.tail_bound - gap) / part.tail_bound.max(1e-300) + 1e-9
    })
}

// y off the real axis with a moderate imaginary part.
fn center<R: Rng + ?Sized>(spec: &'static AlgebraSpec, rng: &mut R) -> ConePoint {
    point_with(spec, rng, None, (0.3, 1.2))
}

fn three_way_agreement(ctx: &Context) -> Vec<f64> {
    ctx.sweep(22, ctx.scaled(200, 4), |rng| {
        let spec = if rng.random::<bool>() { AlgebraSpec::quaternions() } else { AlgebraSpec::clifford(3).expect("supported") };
        let f = random_stem(spec, rng, 1..=12);
        let y = center(spec, rng);
        let opts = ExpandOptions { radius: 1.5 * y.beta().max(0.5), contour: ContourOptions { exec: Exec::Sequential, ..Default::default() } };
        let mut worst: f64 = 0.0;
        for kind in [Kind::Power, Kind::Spherical] {
            let lists: Vec<Vec<Element>> = match Method::ALL.iter().map(|&m| coefficients(&f, &y, 12, kind, m, &opts)).collect() {
                Ok(l) => l,
                Err(_) => return -1.0,
            };
            for a in 0..3 {
                for b in a + 1..3 {
                    worst = worst.max(coefficient_residual(&lists[a], &lists[b]));
                }
            }
        }
        1e-8 - worst
    })
}

// Coefficients of S_{w,ℓ}(z) as a polynomial in z over the Gaussian integers.
fn spherical_poly_coeffs(l: usize, w: GaussInt) -> Vec<GaussInt> {
    let wbar = GaussInt::new(w.re, -w.im);
    let mul_linear = |p: &[GaussInt], root: GaussInt| {
        let mut out = vec![GaussInt::ZERO; p.len() + 1];
        for (k, c) in p.iter().enumerate() {
            out[k + 1] = out[k + 1] + *c;
            out[k] = out[k] + (*c * root).scale(-1);
        }
        out
    };
    let mut p = vec![GaussInt::ONE];
    for _ in 0..l / 2 {
        p = mul_linear(&p, w);
        p = mul_linear(&p, wbar);
    }
    if l % 2 == 1 {
        p = mul_linear(&p, w);
    }
    p
}

fn derivative_at(p: &[GaussInt], n: usize, at: GaussInt) -> GaussInt {
    let mut acc = GaussInt::ZERO;
    for (k, c) in p.iter().enumerate().skip(n) {
        let falling: i128 = ((k - n + 1)..=k).map(|v| v as i128).product();
        acc = acc + c.scale(falling) * at.pow((k - n) as u32);
    }
    acc
}

fn partial_identities(_ctx: &Context) -> Vec<f64> {
    let mut margins = Vec::new();
    for w in [GaussInt::new(0, 1), GaussInt::new(2, 3), GaussInt::new(-1, 2), GaussInt::new(3, -1)] {
        let wbar = GaussInt::new(w.re, -w.im);
        for l in 0..=12 {
            let p = spherical_poly_coeffs(l, w);
            for n in 0..=6 {
                let ok = derivative_at(&p, n, w) == center_derivative(n, l, w.im as i64)
                    && derivative_at(&p, n, wbar) == conjugate_derivative(n, l, w.im as i64);
                margins.push(if ok { 0.0 } else { -1.0 });
            }
        }
    }
    margins
}

fn system_round_trip(ctx: &Context) -> Vec<f64> {
    ctx.sweep(24, ctx.scaled(10, 10), |rng| {
        let spec = pick(rng);
        let y = center(spec, rng);
        let order = 12;
        let s: Vec<Element> = (0..=order + 1).map(|_| sampling::element(spec, rng, 1.0)).collect();
        let at_y: Vec<Element> = (0..=order / 2).map(|m| derivative_from_spherical(&s, &y, m).expect("long enough")).collect();
        let at_yc: Vec<Element> =
            (0..=order / 2).map(|m| conjugate_derivative_from_spherical(&s, &y, m).expect("long enough")).collect();
        let back = spherical_numbers_by_system(&at_y, &at_yc, &y, order).expect("non-real center");
        // measured on the unknowns (2 im y)^n s_n the system actually solves for
        let scaled = |v: &[Element]| -> Vec<Element> { v.iter().enumerate().map(|(n, e)| e.scale((2.0 * y.beta()).powi(n as i32))).collect() };
        let (a, b) = (scaled(&s[..=order]), scaled(&back));
        let size = a.iter().map(Element::max_abs).fold(0.0, f64::max);
        let gap = a.iter().zip(&b).map(|(u, v)| (u - v).max_abs()).fold(0.0, f64::max);
        1e-12 - gap / size
    })
}

fn quadrature_doubling(ctx: &Context) -> Vec<f64> {
    let runs = ctx.sweep(25, ctx.scaled(100, 4), |rng| {
        let spec = pick(rng);
        let y = center(spec, rng);
        let w = y.shadow();
        let r = rng.random_range(0.3..=1.0);
        let pole = w + Complex64::from_polar(2.0 * r, rng.random_range(0.0..std::f64::consts::TAU));
        let a = sampling::element(spec, rng, 1.0);
        let j = y.j().clone();
        let f = |z: Complex64| &phi(&j, (z - pole).inv()) * &a;
        let n = rng.random_range(0..=6);
        let exact = &phi(&j, -(pole - w).powi(-(n as i32) - 1)) * &a;
        let loose = |nodes| ContourOptions { nodes, tol: f64::INFINITY, exec: Exec::Sequential };
        let errors: Vec<f64> = [8, 16, 32, 64]
            .iter()
            .map(|&m| match contour_coeffs_power(&f, &y, r, n, loose(m)) {
                Ok(v) => (&v[n].value - &exact).max_abs() / exact.max_abs(),
                Err(_) => f64::NAN,
            })
            .collect();
        let mut margin = f64::INFINITY;
        for pair in errors.windows(2) {
            if pair[0] > 1e-11 && pair[0] < 1e-2 {
                margin = margin.min(1e-2 - pair[1] / pair[0]);
            }
        }
        // the oval rule, against a much finer rule, with the pole on the oval of twice the radius
        let r = r.max(1.2 * w.im.abs());
        let far = match cassini_boundary(w, 2.0 * r, 16) {
            Ok(loops) => {
                let nodes: Vec<Complex64> = loops.iter().flat_map(|l| l.nodes.iter().map(|n| n.z)).collect();
                nodes[rng.random_range(0..nodes.len())]
            }
            Err(_) => return f64::NAN,
        };
        let g = |z: Complex64| &phi(&j, (z - far).inv()) * &a;
        let sph = |m| contour_coeffs_spherical(&g, &y, r, n, loose(m)).map(|v| v[n].value.clone());
        let reference = match sph(1024) {
            Ok(v) => v,
            Err(_) => return f64::NAN,
        };
        let errs: Vec<f64> = [16, 32, 64, 128]
            .iter()
            .map(|&m| sph(m).map(|v| (&v - &reference).max_abs() / reference.max_abs().max(1e-300)).unwrap_or(f64::NAN))
            .collect();
        for pair in errs.windows(2) {
            if pair[0] > 1e-11 && pair[0] < 1e-2 {
                margin = margin.min(1e-2 - pair[1] / pair[0]);
            }
        }
        if margin.is_infinite() {
            0.0
        } else {
            margin
        }
    });
    runs
}

fn remainder_bounds(ctx: &Context) -> Vec<f64> {
    let consts: Vec<AlgebraConstants> = algebras().iter().map(|s| ctx.constants(s)).collect();
    ctx.sweep(26, ctx.scaled(100, 6), |rng| {
        let k = rng.random_range(0..3);
        let spec = algebras()[k];
        let f = random_stem(spec, rng, 1..=8);
        let y = center(spec, rng);
        let w = y.shadow();
        let n = rng.random_range(0..=10);
        let opts = ContourOptions { nodes: 512, tol: 1e-9, exec: Exec::Sequential };
        let draw = |rng: &mut ChaCha8Rng, accept: &dyn Fn(Complex64) -> bool| -> Option<ConePoint> {
            for _ in 0..200 {
                let z = Complex64::new(w.re + rng.random_range(-2.0..=2.0), rng.random_range(0.0..=2.0 + w.im));
                if accept(z) {
                    let j = sampling::unit_imaginary(spec, rng);
                    return ConePoint::on_plane(&j, z).ok();
                }
            }
            None
        };
        // power: r above η so that Ω(y, r) is not empty
        let r = w.im + rng.random_range(0.2..=1.0);
        let mut margin = f64::INFINITY;
        let inside = |z: Complex64| (z - w).norm().max((z - w.conj()).norm()) < 0.85 * r;
        if let Some(x) = draw(rng, &inside) {
            let rem = match power_remainder(&f, &y, r, n, &x, &consts[k], opts) {
                Ok(rem) => rem,
                Err(_) => return -1.0,
            };
            let scale = rem.direct.max_abs().max(rem.sup_f * 1e-6).max(1e-300);
            margin = margin.min((rem.bound - rem.direct.norm()) / rem.bound.max(1e-300) + 1e-12);
            margin = margin.min(1e-8 - rem.agreement() / scale.max(1.0));
        }
        // spherical: keep the oval away from the lemniscate
        let r = if rng.random::<bool>() { w.im * rng.random_range(0.4..=0.8) } else { w.im * rng.random_range(1.25..=2.0) };
        let inside = |z: Complex64| tau_complex(z, w) < 0.85 * r;
        if let Some(x) = draw(rng, &inside) {
            let rem = match spherical_remainder(&f, &y, r, n, &x, &consts[k], opts) {
                Ok(rem) => rem,
                Err(_) => return -1.0,
            };
            let scale = rem.direct.max_abs().max(rem.sup_f * 1e-6).max(1e-300);
            margin = margin.min((rem.bound - rem.direct.norm()) / rem.bound.max(1e-300) + 1e-12);
            margin = margin.min(1e-8 - rem.agreement() / scale.max(1.0));
        }
        if margin.is_infinite() {
            0.0
        } else {
            margin
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_at_small_budget() {
        let ctx = Context { samples: 200, seed: 7, exec: Exec::default() };
        for r in run_all(&ctx) {
            assert!(r.passed(), "{} failed {}/{} (worst margin {:e})", r.name, r.failures, r.checks, r.worst_margin);
        }
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = properties().iter().map(|p| p.name).collect();
        let n = names.len();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), n);
    }

    #[test]
    fn symbolic_oracle_basics() {
        // S_{i,2}(z) = z² + 1
        let p = spherical_poly_coeffs(2, GaussInt::new(0, 1));
        assert_eq!(p, vec![GaussInt::ONE, GaussInt::ZERO, GaussInt::ONE]);
        assert_eq!(derivative_at(&p, 1, GaussInt::new(0, 1)), GaussInt::new(0, 2));
    }
}
