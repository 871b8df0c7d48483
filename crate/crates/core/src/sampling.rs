//! Seeded random generators for algebra elements, cone points and stems.
//!
//! Each sample index gets its own ChaCha stream, so a run with more samples
//! visits a superset of the points of a shorter run with the same seed.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{AlgebraKind, AlgebraSpec, ConePoint, Element};
use crate::slice::{ComplexElement, StemPolynomial};

/// The generator for sample `index` under `seed`.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn gaussian_vec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

fn normalize(v: &mut [f64]) {
    let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|c| *c /= n);
    }
}

/// Uniform coordinates in [−scale, scale].
pub fn element<R: Rng + ?Sized>(spec: &'static AlgebraSpec, rng: &mut R, scale: f64) -> Element {
    let c: Vec<f64> = (0..spec.dim()).map(|_| rng.random_range(-scale..=scale)).collect();
    Element::from_coords(spec, &c).expect("sampled coordinates")
}

/// Uniformly distributed direction with ‖x‖_A = 1.
pub fn unit_element<R: Rng + ?Sized>(spec: &'static AlgebraSpec, rng: &mut R) -> Element {
    loop {
        let c = gaussian_vec(rng, spec.dim());
        let x = Element::from_coords(spec, &c).expect("sampled coordinates");
        let n = x.norm();
        if n > 1e-6 {
            return x.scale(1.0 / n);
        }
    }
}

/// A random element of 𝕊_A.
///
/// ℍ and 𝕆 are sampled uniformly on the unit imaginary sphere. For ℝ_n the
/// sample is either a unit vector or a unit imaginary of the quaternion
/// subalgebra spanned by two random orthonormal vectors f₁, f₂ and f₁f₂.
pub fn unit_imaginary<R: Rng + ?Sized>(spec: &'static AlgebraSpec, rng: &mut R) -> Element {
    match spec.kind() {
        AlgebraKind::Complex => {
            let s = if rng.random::<bool>() { 1.0 } else { -1.0 };
            Element::basis(spec, 1).scale(s)
        }
        AlgebraKind::Quaternion | AlgebraKind::Octonion => {
            let mut c = gaussian_vec(rng, spec.dim());
            c[0] = 0.0;
            normalize(&mut c);
            Element::from_coords(spec, &c).expect("sampled coordinates")
        }
        AlgebraKind::Clifford(n) => {
            let n = n as usize;
            let vector = |v: &[f64]| {
                let mut c = vec![0.0; spec.dim()];
                c[1..=n].copy_from_slice(v);
                Element::from_coords(spec, &c).expect("sampled coordinates")
            };
            let mut f1 = gaussian_vec(rng, n);
            normalize(&mut f1);
            if n == 1 || rng.random::<f64>() < 0.3 {
                return vector(&f1);
            }
            let mut f2 = gaussian_vec(rng, n);
            let dot: f64 = f1.iter().zip(&f2).map(|(a, b)| a * b).sum();
            f2.iter_mut().zip(&f1).for_each(|(b, a)| *b -= dot * a);
            normalize(&mut f2);
            let (e1, e2) = (vector(&f1), vector(&f2));
            let e3 = &e1 * &e2;
            let mut q = gaussian_vec(rng, 3);
            normalize(&mut q);
            e1.scale(q[0]) + e2.scale(q[1]) + e3.scale(q[2])
        }
    }
}

/// α + βJ with α ∈ [−scale, scale], β ∈ (0, scale], J random.
pub fn cone_point<R: Rng + ?Sized>(spec: &'static AlgebraSpec, rng: &mut R, scale: f64) -> ConePoint {
    let alpha = rng.random_range(-scale..=scale);
    let beta = scale * (1.0 - rng.random::<f64>());
    ConePoint::new(alpha, beta, unit_imaginary(spec, rng)).expect("sampled unit imaginary")
}

/// A complex number with both parts in [−scale, scale].
pub fn complex<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Complex64 {
    Complex64::new(rng.random_range(-scale..=scale), rng.random_range(-scale..=scale))
}

/// Σ z^k a_k with A-valued coefficients in [−scale, scale].
pub fn stem_polynomial<R: Rng + ?Sized>(
    spec: &'static AlgebraSpec,
    rng: &mut R,
    degree: usize,
    scale: f64,
) -> StemPolynomial {
    let coeffs = (0..=degree).map(|_| ComplexElement::from_element(element(spec, rng, scale))).collect();
    StemPolynomial::new(coeffs).expect("sampled stem")
}
