//! Coefficients from derivatives: Taylor coefficients, the spherical
//! system and its Cramer form, and the way back.

use num_complex::Complex64;

use super::matrix::{last_column_cofactors, spherical_entry};
use crate::algebra::{ConePoint, Element};
use crate::error::{Error, Result};
use crate::plane::phi;
use crate::slice::SliceRegular;

/// a_n = (1/n!) ∂ⁿf/∂xⁿ(y) for n = 0..=order.
pub fn taylor_coeffs_by_derivative<F: SliceRegular + ?Sized>(f: &F, y: &ConePoint, order: usize) -> Vec<Element> {
    (0..=order).map(|n| f.scaled_cullen_derivative(n, y)).collect()
}

/// Scaled derivatives (1/m!)∂^m f at y and at y^c, as many as the system of
/// the given order reads.
pub fn derivatives_at_center_pair<F: SliceRegular + ?Sized>(
    f: &F,
    y: &ConePoint,
    order: usize,
) -> Result<(Vec<Element>, Vec<Element>)> {
    if y.is_real() {
        return Err(Error::RealPoint("the spherical system needs a center off the real axis".into()));
    }
    let w = y.shadow();
    let at_y = (0..=order / 2).map(|m| f.scaled_derivative_on_plane(m, y.j(), w)).collect();
    let at_yc = (0..=order / 2).map(|m| f.scaled_derivative_on_plane(m, y.j(), w.conj())).collect();
    Ok((at_y, at_yc))
}

fn two_im(y: &ConePoint) -> Complex64 {
    Complex64::new(0.0, 2.0 * y.beta())
}

/// The right-hand side E_0..=E_order.
pub fn system_rhs(at_y: &[Element], at_yc: &[Element], y: &ConePoint, order: usize) -> Result<Vec<Element>> {
    if y.is_real() {
        return Err(Error::RealPoint("the spherical system needs a center off the real axis".into()));
    }
    let need_y = order / 2 + 1;
    let need_yc = if order == 0 { 0 } else { (order - 1) / 2 + 1 };
    if at_y.len() < need_y || at_yc.len() < need_yc {
        return Err(Error::InsufficientTerms { needed: need_y.max(need_yc), got: at_y.len().min(at_yc.len()) });
    }
    let t = two_im(y);
    Ok((0..=order)
        .map(|n| {
            let m = n / 2;
            if n % 2 == 0 {
                &phi(y.j(), t.powu(m as u32)) * &at_y[m]
            } else {
                &phi(y.j(), (-t).powu(m as u32)) * &at_yc[m]
            }
        })
        .collect())
}

/// s_0..=s_order by forward substitution in 𝔢·𝔰 = 𝔈 with
/// 𝔰_n = (2 im y)ⁿ s_n. The diagonal is ±1, so no division occurs until the
/// final rescaling.
pub fn spherical_numbers_by_system(at_y: &[Element], at_yc: &[Element], y: &ConePoint, order: usize) -> Result<Vec<Element>> {
    let rhs = system_rhs(at_y, at_yc, y, order)?;
    let mut unknowns: Vec<Element> = Vec::with_capacity(order + 1);
    for (n, e_n) in rhs.iter().enumerate() {
        let mut acc = e_n.clone();
        for (l, u) in unknowns.iter().enumerate().skip(n / 2) {
            let e = spherical_entry(n, l);
            if e != 0 {
                acc -= &u.scale(e as f64);
            }
        }
        unknowns.push(acc.scale(spherical_entry(n, n) as f64));
    }
    let t = two_im(y);
    Ok(unknowns.iter().enumerate().map(|(n, u)| &phi(y.j(), t.powu(n as u32).inv()) * u).collect())
}

/// s_n from the Cramer form (2 im y)^{−n} det(𝔢_n|𝔈_n) / det 𝔢_{[n]}, the
/// determinant expanded along its A-valued last column.
pub fn spherical_number_by_cramer(at_y: &[Element], at_yc: &[Element], y: &ConePoint, n: usize) -> Result<Element> {
    let rhs = system_rhs(at_y, at_yc, y, n)?;
    let cof = last_column_cofactors(n)?;
    let spec = y.spec();
    let mut det = Element::zero(spec);
    for (c, e) in cof.iter().zip(&rhs) {
        if *c != 0 {
            det += &e.scale(*c as f64);
        }
    }
    // det of the leading (n+1)×(n+1) block is Π(−1)^k
    let lead = if (n * (n + 1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(&phi(y.j(), two_im(y).powu(n as u32).inv()) * &det.scale(lead))
}

/// (1/n!)∂ⁿS(y) = (2 im y)^{−n} Σ_{ℓ=n}^{2n} e_{2n,ℓ}(2 im y)^ℓ s_ℓ.
pub fn derivative_from_spherical(s: &[Element], y: &ConePoint, n: usize) -> Result<Element> {
    if s.len() < 2 * n + 1 {
        return Err(Error::InsufficientTerms { needed: 2 * n + 1, got: s.len() });
    }
    let t = two_im(y);
    let mut acc = Element::zero(y.spec());
    for (l, sl) in s.iter().enumerate().take(2 * n + 1).skip(n) {
        let e = spherical_entry(2 * n, l);
        if e != 0 {
            acc += &(&phi(y.j(), t.powu((l - n) as u32) * e as f64) * sl);
        }
    }
    Ok(acc)
}

/// (1/n!)∂ⁿS(y^c) = Σ_{ℓ=n}^{2n+1} (−1)^ℓ e_{2n+1,ℓ}(−2 im y)^{ℓ−n} s_ℓ.
pub fn conjugate_derivative_from_spherical(s: &[Element], y: &ConePoint, n: usize) -> Result<Element> {
    if s.len() < 2 * n + 2 {
        return Err(Error::InsufficientTerms { needed: 2 * n + 2, got: s.len() });
    }
    let t = -two_im(y);
    let mut acc = Element::zero(y.spec());
    for (l, sl) in s.iter().enumerate().take(2 * n + 2).skip(n) {
        let e = spherical_entry(2 * n + 1, l) * if l % 2 == 0 { 1 } else { -1 };
        if e != 0 {
            acc += &(&phi(y.j(), t.powu((l - n) as u32) * e as f64) * sl);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::sampling;
    use crate::slice::{ComplexElement, PiecewiseConstantStem, StemPolynomial};

    fn h(s: &str) -> Element {
        Element::parse(AlgebraSpec::quaternions(), s).unwrap()
    }

    fn example() -> (PiecewiseConstantStem, ConePoint) {
        let upper = ComplexElement { re: h("1"), im: h("-k") };
        (PiecewiseConstantStem::new(upper), ConePoint::from_element(&h("k")).unwrap())
    }

    fn binom_4k(k: usize) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (2 * k - i) as f64 / ((i + 1) as f64 * 4.0))
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn example_spherical_numbers() {
        let (f, y) = example();
        let (a, b) = derivatives_at_center_pair(&f, &y, 9).unwrap();
        let s = spherical_numbers_by_system(&a, &b, &y, 9).unwrap();
        assert!((&s[0] - &h("2")).max_abs() < 1e-14);
        for n in 1..=9 {
            let k = (n - 1) / 2;
            let expect = if n % 2 == 1 { h("-k").scale(binom_4k(k)) } else { h("1").scale(binom_4k(n / 2)) };
            assert!((&s[n] - &expect).max_abs() < 1e-14, "s_{n} = {:?}", s[n]);
            let c = spherical_number_by_cramer(&a, &b, &y, n).unwrap();
            assert!((&c - &expect).max_abs() < 1e-13, "cramer s_{n}");
        }
        assert!(derivative_from_spherical(&s, &y, 1).unwrap().max_abs() < 1e-14);
        assert!((derivative_from_spherical(&s, &y, 0).unwrap() - h("2")).max_abs() < 1e-14);
    }

    #[test]
    fn linear_function_has_one_number() {
        let y = ConePoint::from_element(&h("0.5+2i")).unwrap();
        let f = StemPolynomial::linear(y.element());
        let (a, b) = derivatives_at_center_pair(&f, &y, 6).unwrap();
        let s = spherical_numbers_by_system(&a, &b, &y, 6).unwrap();
        assert!((&s[1] - &h("1")).max_abs() < 1e-14);
        for (n, sn) in s.iter().enumerate().filter(|(n, _)| *n != 1) {
            assert!(sn.max_abs() < 1e-14, "s_{n}");
        }
    }

    #[test]
    fn taylor_of_cubic() {
        let y = ConePoint::from_element(&h("i")).unwrap();
        let f = StemPolynomial::monomial(3, h("1"));
        let a = taylor_coeffs_by_derivative(&f, &y, 5);
        let i = h("i");
        let expect = [&(&i * &i) * &i, (&i * &i).scale(3.0), i.scale(3.0), h("1"), h("0"), h("0")];
        for (x, e) in a.iter().zip(&expect) {
            assert!((x - e).max_abs() < 1e-14);
        }
    }

    #[test]
    fn round_trip_on_random_stems() {
        let spec = AlgebraSpec::octonions();
        let mut rng = sampling::rng_for(11, 0);
        for _ in 0..20 {
            let f = sampling::stem_polynomial(spec, &mut rng, 9, 1.0);
            let y = sampling::cone_point(spec, &mut rng, 1.0);
            let (a, b) = derivatives_at_center_pair(&f, &y, 20).unwrap();
            let s = spherical_numbers_by_system(&a, &b, &y, 20).unwrap();
            for n in 0..=9 {
                let back = derivative_from_spherical(&s, &y, n).unwrap();
                assert!((&back - &a[n]).max_abs() < 1e-10 * a[n].max_abs().max(1.0));
                let back = conjugate_derivative_from_spherical(&s, &y, n).unwrap();
                assert!((&back - &b[n]).max_abs() < 1e-10 * b[n].max_abs().max(1.0));
            }
        }
    }

    #[test]
    fn rejects_real_centers_and_short_lists() {
        let y = ConePoint::real(AlgebraSpec::quaternions(), 1.0);
        assert!(matches!(spherical_numbers_by_system(&[], &[], &y, 2), Err(Error::RealPoint(_))));
        let y = ConePoint::from_element(&h("j")).unwrap();
        assert!(spherical_numbers_by_system(&[h("1")], &[h("1")], &y, 4).is_err());
        assert!(derivative_from_spherical(&[h("1")], &y, 1).is_err());
    }
}
