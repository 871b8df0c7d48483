use nalgebra::DMatrix;
use serde::Serialize;

use super::{is_unit_imaginary, AlgebraSpec, Element, NormKind, SplittingBase};
use crate::par::Exec;
use crate::sampling;

/// Sampled estimates of the structural constants of a normed algebra.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlgebraConstants {
    /// c_A: lower constant in c_A‖x‖‖y‖ ≤ ‖xy‖ for cone factors.
    pub c_lower: f64,
    /// C_A: upper constant in ‖xy‖ ≤ C_A‖x‖‖y‖.
    pub c_upper: f64,
    /// H: bound of splitting-base coordinates against ‖·‖_A.
    pub h_bound: f64,
    pub samples: usize,
}

impl AlgebraConstants {
    /// The number h of extra splitting units, (dim − 2)/2.
    pub fn h(spec: &AlgebraSpec) -> usize {
        spec.dim() / 2 - 1
    }

    /// C_A(h+1)H, the Cauchy-estimate constant for power coefficients.
    pub fn power_coefficient_constant(&self, spec: &AlgebraSpec) -> f64 {
        self.c_upper * (Self::h(spec) as f64 + 1.0) * self.h_bound
    }

    /// C_A(1 + C_A²)(h+1)H, the constant of the power remainder bound.
    pub fn power_remainder_constant(&self, spec: &AlgebraSpec) -> f64 {
        (1.0 + self.c_upper * self.c_upper) * self.power_coefficient_constant(spec)
    }
}

fn largest_singular(m: &DMatrix<f64>) -> f64 {
    m.singular_values().max()
}

fn smallest_singular(m: &DMatrix<f64>) -> f64 {
    m.singular_values().min()
}

// Top right singular vector of m as an element.
fn top_input(spec: &'static AlgebraSpec, m: &DMatrix<f64>) -> Element {
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.expect("requested v_t");
    let (imax, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .fold((0, f64::MIN), |acc, (i, &s)| if s > acc.1 { (i, s) } else { acc });
    let row: Vec<f64> = vt.row(imax).iter().copied().collect();
    Element::from_coords(spec, &row).expect("singular vector")
}

/// Basis vectors that are square roots of −1.
fn basis_units(spec: &'static AlgebraSpec) -> Vec<Element> {
    (1..spec.dim())
        .map(|i| Element::basis(spec, i))
        .filter(|e| is_unit_imaginary(e, 1e-12))
        .collect()
}

fn unit_cone_element(spec: &'static AlgebraSpec, rng: &mut rand_chacha::ChaCha8Rng) -> Element {
    use rand::Rng;
    let theta = rng.random_range(0.0..std::f64::consts::TAU);
    let j = sampling::unit_imaginary(spec, rng);
    let x = Element::real(spec, theta.cos()) + j.scale(theta.sin());
    let n = x.norm();
    x.scale(1.0 / n)
}

/// Estimate (c_A, C_A, H) from deterministic basis candidates plus `samples`
/// seeded random candidates.
///
/// For the euclidean norm each random candidate is refined by alternating
/// singular-vector steps, which converge to local extrema of ‖xy‖. Minima are
/// reported as upper estimates and maxima as lower estimates of the true
/// constants; both are monotone in `samples` for a fixed seed.
pub fn algebra_constants(spec: &'static AlgebraSpec, samples: usize, seed: u64, exec: Exec) -> AlgebraConstants {
    let euclidean = spec.norm_kind() == NormKind::Euclidean;
    let units = basis_units(spec);

    // C_A
    let mut c_upper: f64 = 1.0;
    for i in 0..spec.dim() {
        for j in 0..spec.dim() {
            let x = Element::basis(spec, i);
            let y = Element::basis(spec, j);
            let p = (&x * &y).norm() / (x.norm() * y.norm());
            c_upper = c_upper.max(p);
        }
    }
    let sampled_upper = exec.map_range(samples, |s| {
        let mut rng = sampling::rng_for(seed, 3 * s as u64);
        let mut x = sampling::unit_element(spec, &mut rng);
        let y = sampling::unit_element(spec, &mut rng);
        let mut best = (&x * &y).norm();
        if euclidean {
            let mut y = y;
            for _ in 0..4 {
                let r = y.right_matrix();
                x = top_input(spec, &r);
                let l = x.left_matrix();
                best = best.max(largest_singular(&l));
                y = top_input(spec, &l);
            }
        }
        best
    });
    c_upper = sampled_upper.into_iter().fold(c_upper, f64::max);

    // c_A
    let min_over_middle = |x: &Element, z: &Element, y: Option<&Element>| -> f64 {
        if euclidean {
            smallest_singular(&(z.right_matrix() * x.left_matrix()))
        } else {
            let y = y.expect("middle factor");
            (&(x * y) * z).norm()
        }
    };
    let mut c_lower: f64 = f64::INFINITY;
    let mut cone_units = vec![Element::one(spec)];
    cone_units.extend(units.iter().cloned());
    for x in &cone_units {
        for z in &cone_units {
            let xn = x.scale(1.0 / x.norm());
            let zn = z.scale(1.0 / z.norm());
            let y = Element::one(spec);
            c_lower = c_lower.min(min_over_middle(&xn, &zn, Some(&y)));
        }
    }
    let sampled_lower = exec.map_range(samples, |s| {
        let mut rng = sampling::rng_for(seed, 3 * s as u64 + 1);
        let x = unit_cone_element(spec, &mut rng);
        let z = unit_cone_element(spec, &mut rng);
        let y = sampling::unit_element(spec, &mut rng);
        min_over_middle(&x, &z, Some(&y))
    });
    c_lower = sampled_lower.into_iter().fold(c_lower, f64::min);

    // H
    let mut h_bound: f64 = 0.0;
    for j in &units {
        if let Ok(b) = SplittingBase::new(j) {
            h_bound = h_bound.max(b.coordinate_bound());
        }
    }
    let sampled_h = exec.map_range(samples, |s| {
        let mut rng = sampling::rng_for(seed, 3 * s as u64 + 2);
        let j = sampling::unit_imaginary(spec, &mut rng);
        SplittingBase::new(&j).map(|b| b.coordinate_bound()).unwrap_or(0.0)
    });
    h_bound = sampled_h.into_iter().fold(h_bound, f64::max);

    AlgebraConstants { c_lower, c_upper, h_bound, samples }
}
