//! The spherical matrix and exact integer helpers.

use serde::Serialize;

use crate::error::{Error, Result};

/// C(a, b) with C(a, b) = 0 when b < 0 or b > a.
pub fn binomial(a: i64, b: i64) -> i64 {
    if b < 0 || a < 0 || b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: i64 = 1;
    for i in 0..b {
        acc = acc * (a - i) / (i + 1);
    }
    acc
}

/// e_{nℓ} from the four parity cases.
pub fn spherical_entry(n: usize, l: usize) -> i64 {
    let (m, k) = ((n / 2) as i64, (l / 2) as i64);
    match (n % 2, l % 2) {
        (_, 0) => binomial(k, m - k),
        (0, 1) => binomial(k, m - k - 1),
        _ => -binomial(k + 1, m - k),
    }
}

/// The leading (N+1)×(N+1) block of the spherical matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SphericalMatrix {
    pub order: usize,
    pub entries: Vec<Vec<i64>>,
}

impl SphericalMatrix {
    pub fn get(&self, n: usize, l: usize) -> i64 {
        self.entries[n][l]
    }

    pub fn nonzeros_in_row(&self, n: usize) -> usize {
        self.entries[n].iter().filter(|&&e| e != 0).count()
    }
}

pub fn spherical_matrix(order: usize) -> SphericalMatrix {
    let entries = (0..=order).map(|n| (0..=order).map(|l| spherical_entry(n, l)).collect()).collect();
    SphericalMatrix { order, entries }
}

/// Fraction-free Gaussian elimination; `None` on i128 overflow.
pub fn bareiss_det(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return Some(0);
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].checked_mul(m[k][k])?.checked_sub(m[i][k].checked_mul(m[k][j])?)?;
                m[i][j] = v / prev;
            }
        }
        prev = m[k][k];
    }
    Some(sign * m[n - 1][n - 1])
}

/// Signed integer cofactors of the last column of (𝔢_n | E): entry i is
/// (−1)^{i+n} times the minor of the (n+1)×n block with row i removed.
pub fn last_column_cofactors(n: usize) -> Result<Vec<i128>> {
    (0..=n)
        .map(|i| {
            let minor: Vec<Vec<i128>> = (0..=n)
                .filter(|&r| r != i)
                .map(|r| (0..n).map(|c| spherical_entry(r, c) as i128).collect())
                .collect();
            let d = bareiss_det(minor).ok_or_else(|| Error::Unsupported(format!("cofactor overflow at order {n}")))?;
            Ok(if (i + n).is_multiple_of(2) { d } else { -d })
        })
        .collect()
}

/// A Gaussian integer a + ib.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GaussInt {
    pub re: i128,
    pub im: i128,
}

impl std::ops::Mul for GaussInt {
    type Output = GaussInt;

    fn mul(self, o: GaussInt) -> GaussInt {
        GaussInt { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
}

impl std::ops::Add for GaussInt {
    type Output = GaussInt;

    fn add(self, o: GaussInt) -> GaussInt {
        GaussInt { re: self.re + o.re, im: self.im + o.im }
    }
}

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
    pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };

    pub fn new(re: i128, im: i128) -> Self {
        GaussInt { re, im }
    }

    pub fn scale(self, s: i128) -> GaussInt {
        GaussInt { re: self.re * s, im: self.im * s }
    }

    pub fn pow(self, e: u32) -> GaussInt {
        (0..e).fold(GaussInt::ONE, |acc, _| acc * self)
    }
}

fn factorial(n: usize) -> i128 {
    (1..=n as i128).product()
}

/// n!·e_{2n,ℓ}(2iη)^{ℓ−n}: the n-th z-derivative of S_{w,ℓ} at w, for
/// w with imaginary part η.
pub fn center_derivative(n: usize, l: usize, eta: i64) -> GaussInt {
    if l < n {
        return GaussInt::ZERO;
    }
    let e = spherical_entry(2 * n, l) as i128;
    GaussInt::new(0, 2 * eta as i128).pow((l - n) as u32).scale(factorial(n) * e)
}

/// n!(−1)^ℓ e_{2n+1,ℓ}(−2iη)^{ℓ−n}: the same derivative at w̄.
pub fn conjugate_derivative(n: usize, l: usize, eta: i64) -> GaussInt {
    if l < n {
        return GaussInt::ZERO;
    }
    let sign = if l.is_multiple_of(2) { 1 } else { -1 };
    let e = spherical_entry(2 * n + 1, l) as i128;
    GaussInt::new(0, -2 * eta as i128).pow((l - n) as u32).scale(sign * factorial(n) * e)
}
