use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{is_unit_imaginary, Element, CONE_TOL};
use crate::error::{Error, Result};

/// A real basis (1, J, J₁, JJ₁, …, J_h, JJ_h) that makes A a left ℂ_J-module.
#[derive(Clone, Debug)]
pub struct SplittingBase {
    j: Element,
    vectors: Vec<Element>,
    inverse: DMatrix<f64>,
    determinant: f64,
}

impl SplittingBase {
    /// Extend {1, J} greedily: at each step take the canonical basis vector
    /// farthest from the current span, normalize its orthogonal residual to
    /// get J_ℓ, and append the pair J_ℓ, J·J_ℓ.
    pub fn new(j: &Element) -> Result<SplittingBase> {
        if !is_unit_imaginary(j, CONE_TOL) {
            return Err(Error::InvalidArgument(format!("{j} is not a square root of -1")));
        }
        let spec = j.spec();
        let d = spec.dim();
        let mut ortho: Vec<DVector<f64>> = Vec::with_capacity(d);
        let residual = |ortho: &[DVector<f64>], v: &DVector<f64>| {
            let mut r = v.clone();
            for _ in 0..2 {
                for q in ortho {
                    let c = q.dot(&r);
                    r.axpy(-c, q, 1.0);
                }
            }
            r
        };
        let push = |ortho: &mut Vec<DVector<f64>>, e: &Element| -> Result<()> {
            let v = DVector::from_column_slice(e.coords());
            let r = residual(ortho, &v);
            let n = r.norm();
            if n < 1e-8 {
                return Err(Error::InvalidArgument("splitting base degenerated".into()));
            }
            ortho.push(r / n);
            Ok(())
        };
        let one = Element::one(spec);
        let mut vectors = vec![one.clone(), j.clone()];
        push(&mut ortho, &one)?;
        push(&mut ortho, j)?;
        while vectors.len() < d {
            let mut best: Option<(f64, DVector<f64>)> = None;
            for k in 0..d {
                let r = residual(&ortho, &DVector::from_fn(d, |i, _| if i == k { 1.0 } else { 0.0 }));
                let n = r.norm();
                if best.as_ref().is_none_or(|(m, _)| n > *m + 1e-12) {
                    best = Some((n, r));
                }
            }
            let (_, r) = best.expect("nonempty basis");
            let raw = Element::from_coords(spec, r.as_slice())?;
            let jl = raw.scale(1.0 / raw.norm());
            let jjl = j * &jl;
            push(&mut ortho, &jl)?;
            push(&mut ortho, &jjl)?;
            vectors.push(jl);
            vectors.push(jjl);
        }
        let basis = DMatrix::from_fn(d, d, |r, c| vectors[c].coords()[r]);
        let determinant = basis.determinant();
        let inverse = basis
            .try_inverse()
            .ok_or_else(|| Error::InvalidArgument("splitting base is singular".into()))?;
        Ok(SplittingBase { j: j.clone(), vectors, inverse, determinant })
    }

    pub fn j(&self) -> &Element {
        &self.j
    }

    /// The ordered basis (1, J, J₁, JJ₁, …).
    pub fn vectors(&self) -> &[Element] {
        &self.vectors
    }

    /// Number of extra units J₁ … J_h.
    pub fn h(&self) -> usize {
        self.vectors.len() / 2 - 1
    }

    pub fn determinant(&self) -> f64 {
        self.determinant
    }

    /// Operator norm of the map from canonical coordinates to splitting
    /// coordinates; bounds ‖x‖_B / ‖x‖ for the euclidean norm and, since the
    /// Clifford operator norm dominates it, for that norm too.
    pub fn coordinate_bound(&self) -> f64 {
        self.inverse.singular_values().max()
    }

    /// The complex components f̂_ℓ with x = Σ Φ_J(f̂_ℓ) J_ℓ, J₀ = 1.
    pub fn components(&self, x: &Element) -> Vec<Complex64> {
        let c = &self.inverse * DVector::from_column_slice(x.coords());
        (0..=self.h()).map(|l| Complex64::new(c[2 * l], c[2 * l + 1])).collect()
    }

    /// Σ Φ_J(c_ℓ) J_ℓ.
    pub fn recompose(&self, components: &[Complex64]) -> Element {
        let mut out = Element::zero(self.j.spec());
        for (l, c) in components.iter().enumerate() {
            out += &self.vectors[2 * l].scale(c.re);
            out += &self.vectors[2 * l + 1].scale(c.im);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::sampling;

    #[test]
    fn quaternion_standard_split() {
        let h = AlgebraSpec::quaternions();
        let b = SplittingBase::new(&Element::basis(h, 1)).unwrap();
        let names: Vec<String> = b.vectors().iter().map(|v| v.to_string()).collect();
        assert_eq!(names, ["1", "1i", "1j", "1k"]);
        assert_eq!(b.h(), 1);
        assert!((b.coordinate_bound() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tilted_quaternion_split() {
        let h = AlgebraSpec::quaternions();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let j = Element::from_coords(h, &[0.0, s, s, 0.0]).unwrap();
        let b = SplittingBase::new(&j).unwrap();
        assert!(b.determinant().abs() > 1e-8);
        let x = Element::from_coords(h, &[0.3, -1.0, 2.0, 0.5]).unwrap();
        let back = b.recompose(&b.components(&x));
        assert!((back - x).max_abs() < 1e-13);
    }

    #[test]
    fn complex_has_no_extra_units() {
        let c = AlgebraSpec::complex();
        let b = SplittingBase::new(&Element::basis(c, 1)).unwrap();
        assert_eq!(b.h(), 0);
        assert_eq!(b.vectors().len(), 2);
    }

    #[test]
    fn random_splits_are_bases() {
        for spec in [AlgebraSpec::octonions(), AlgebraSpec::clifford(3).unwrap(), AlgebraSpec::clifford(5).unwrap()] {
            let mut rng = sampling::rng_for(1, 0);
            for _ in 0..20 {
                let j = sampling::unit_imaginary(spec, &mut rng);
                let b = SplittingBase::new(&j).unwrap();
                assert_eq!(b.vectors().len(), spec.dim());
                assert!(b.determinant().abs() > 1e-8);
                for v in b.vectors()[2..].iter().step_by(2) {
                    assert!((v.norm() - 1.0).abs() < 1e-12);
                }
                let x = sampling::element(spec, &mut rng, 1.0);
                assert!((b.recompose(&b.components(&x)) - x).max_abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_non_imaginary() {
        let h = AlgebraSpec::quaternions();
        assert!(SplittingBase::new(&Element::one(h)).is_err());
    }
}
