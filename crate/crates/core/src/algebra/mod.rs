//! Real alternative *-algebras with unity: ℂ, ℍ, 𝕆 and the Clifford algebras
//! ℝ_n of signature (0, n).

mod cone;
mod constants;
mod element;
mod splitting;

pub use cone::{inverse_in_cone, is_unit_imaginary, ConePoint, CONE_TOL};
pub use constants::{algebra_constants, AlgebraConstants};
pub use element::Element;
pub use splitting::SplittingBase;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which algebra a spec describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgebraKind {
    Complex,
    Quaternion,
    Octonion,
    /// ℝ_n with e_i² = −1, 1 ≤ n ≤ 5.
    Clifford(u8),
}

/// The distinguished norm ‖·‖_A.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum NormKind {
    #[default]
    Euclidean,
    /// Operator norm of left multiplication. Clifford algebras only.
    CliffordOperator,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraKind::Complex => write!(f, "C"),
            AlgebraKind::Quaternion => write!(f, "H"),
            AlgebraKind::Octonion => write!(f, "O"),
            AlgebraKind::Clifford(n) => write!(f, "Cl{n}"),
        }
    }
}

impl std::str::FromStr for AlgebraKind {
    type Err = Error;

    /// Accepts `C`, `H`, `O`, `Cl3`, `R3` or `clifford:3` (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let kind = match t.as_str() {
            "c" | "complex" => AlgebraKind::Complex,
            "h" | "quaternion" | "quaternions" => AlgebraKind::Quaternion,
            "o" | "octonion" | "octonions" => AlgebraKind::Octonion,
            _ => {
                let digits = t
                    .strip_prefix("clifford:")
                    .or_else(|| t.strip_prefix("cl"))
                    .or_else(|| t.strip_prefix('r'))
                    .ok_or_else(|| Error::Parse(format!("unknown algebra `{s}`")))?;
                let n: u8 = digits
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("unknown algebra `{s}`")))?;
                AlgebraKind::Clifford(n)
            }
        };
        Ok(kind)
    }
}

/// Structure data of one algebra instance.
///
/// Specs are interned: [`AlgebraSpec::get`] always hands out the same
/// `&'static` reference for a given (kind, norm), so elements carry a plain
/// reference and spec equality is pointer equality.
pub struct AlgebraSpec {
    kind: AlgebraKind,
    norm: NormKind,
    dim: usize,
    names: Vec<String>,
    // products[i * dim + j] = (k, s) means v_i v_j = s v_k
    products: Vec<(usize, f64)>,
    conj_signs: Vec<f64>,
    grades: Vec<u32>,
}

impl fmt::Debug for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraSpec({}, {:?})", self.kind, self.norm)
    }
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.norm == other.norm
    }
}

type Registry = Mutex<HashMap<(AlgebraKind, NormKind), &'static AlgebraSpec>>;

fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

impl AlgebraSpec {
    /// Interned spec for `kind` with norm `norm`.
    pub fn get(kind: AlgebraKind, norm: NormKind) -> Result<&'static AlgebraSpec> {
        if let AlgebraKind::Clifford(n) = kind {
            if !(1..=5).contains(&n) {
                return Err(Error::Unsupported(format!("Clifford(n) needs 1 <= n <= 5, got {n}")));
            }
        }
        if norm == NormKind::CliffordOperator && !matches!(kind, AlgebraKind::Clifford(_)) {
            return Err(Error::Unsupported(format!("operator norm is only offered for Clifford algebras, not {kind}")));
        }
        let mut reg = registry().lock().unwrap_or_else(|e| e.into_inner());
        let spec = reg
            .entry((kind, norm))
            .or_insert_with(|| Box::leak(Box::new(AlgebraSpec::build(kind, norm))));
        Ok(*spec)
    }

    /// ℂ with the euclidean norm.
    pub fn complex() -> &'static AlgebraSpec {
        Self::get(AlgebraKind::Complex, NormKind::Euclidean).expect("complex spec")
    }

    /// ℍ with the euclidean norm.
    pub fn quaternions() -> &'static AlgebraSpec {
        Self::get(AlgebraKind::Quaternion, NormKind::Euclidean).expect("quaternion spec")
    }

    /// 𝕆 with the euclidean norm.
    pub fn octonions() -> &'static AlgebraSpec {
        Self::get(AlgebraKind::Octonion, NormKind::Euclidean).expect("octonion spec")
    }

    /// ℝ_n with the euclidean norm.
    pub fn clifford(n: u8) -> Result<&'static AlgebraSpec> {
        Self::get(AlgebraKind::Clifford(n), NormKind::Euclidean)
    }

    fn build(kind: AlgebraKind, norm: NormKind) -> AlgebraSpec {
        let (names, products, conj_signs, grades) = match kind {
            AlgebraKind::Complex => division_table(&["1", "i"], &[]),
            AlgebraKind::Quaternion => division_table(&["1", "i", "j", "k"], &[(1, 2, 3)]),
            AlgebraKind::Octonion => division_table(
                &["1", "e1", "e2", "e3", "e4", "e5", "e6", "e7"],
                &FANO_TRIPLES,
            ),
            AlgebraKind::Clifford(n) => clifford_table(n as usize),
        };
        AlgebraSpec { kind, norm, dim: names.len(), names, products, conj_signs, grades }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn norm_kind(&self) -> NormKind {
        self.norm
    }

    /// dim_ℝ A.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Basis labels, unity first.
    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    /// Coordinatewise signs of the conjugation x ↦ x^c.
    pub fn conjugation_signs(&self) -> &[f64] {
        &self.conj_signs
    }

    /// Blade grade of each basis vector (0 for unity, 1 for the imaginary units
    /// of ℂ, ℍ, 𝕆).
    pub fn grades(&self) -> &[u32] {
        &self.grades
    }

    /// v_i v_j as (index, sign).
    #[inline]
    pub fn basis_product(&self, i: usize, j: usize) -> (usize, f64) {
        self.products[i * self.dim + j]
    }

    /// v_i v_j as an element.
    pub fn structure_constant(&'static self, i: usize, j: usize) -> Element {
        let (k, s) = self.basis_product(i, j);
        let mut c = vec![0.0; self.dim];
        c[k] = s;
        Element::from_vec_unchecked(self, c)
    }

    /// Whether the multiplication is associative (all but 𝕆).
    pub fn is_associative(&self) -> bool {
        self.kind != AlgebraKind::Octonion
    }

    /// Index of a basis label such as `k`, `e3` or `e12`.
    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Fano-plane triples (a, b, c) with e_a e_b = e_c.
pub const FANO_TRIPLES: [(usize, usize, usize); 7] =
    [(1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5)];

type Table = (Vec<String>, Vec<(usize, f64)>, Vec<f64>, Vec<u32>);

// Cayley tables of ℂ, ℍ, 𝕆 from cyclic triples of imaginary units.
fn division_table(names: &[&str], triples: &[(usize, usize, usize)]) -> Table {
    let d = names.len();
    let mut products = vec![(0usize, 0.0f64); d * d];
    for i in 0..d {
        products[i] = (i, 1.0);
        products[i * d] = (i, 1.0);
    }
    for i in 1..d {
        products[i * d + i] = (0, -1.0);
    }
    for &(a, b, c) in triples {
        for (p, q, r) in [(a, b, c), (b, c, a), (c, a, b)] {
            products[p * d + q] = (r, 1.0);
            products[q * d + p] = (r, -1.0);
        }
    }
    let conj = (0..d).map(|i| if i == 0 { 1.0 } else { -1.0 }).collect();
    let grades = (0..d).map(|i| u32::from(i != 0)).collect();
    (names.iter().map(|s| s.to_string()).collect(), products, conj, grades)
}

fn clifford_table(n: usize) -> Table {
    let mut masks: Vec<u32> = (0..(1u32 << n)).collect();
    let indices = |m: u32| -> Vec<u32> { (0..n as u32).filter(|b| m >> b & 1 == 1).collect() };
    masks.sort_by(|&a, &b| a.count_ones().cmp(&b.count_ones()).then_with(|| indices(a).cmp(&indices(b))));
    let d = masks.len();
    let mut position = vec![0usize; d];
    for (idx, &m) in masks.iter().enumerate() {
        position[m as usize] = idx;
    }
    let mut products = Vec::with_capacity(d * d);
    for &a in &masks {
        for &b in &masks {
            let mut swaps = 0u32;
            for bit in 0..n as u32 {
                if b >> bit & 1 == 1 {
                    swaps += (a >> (bit + 1)).count_ones();
                }
            }
            let parity = swaps + (a & b).count_ones();
            let sign = if parity.is_multiple_of(2) { 1.0 } else { -1.0 };
            products.push((position[(a ^ b) as usize], sign));
        }
    }
    let names = masks
        .iter()
        .map(|&m| {
            if m == 0 {
                "1".to_string()
            } else {
                let digits: String = indices(m).iter().map(|b| char::from(b'1' + *b as u8)).collect();
                format!("e{digits}")
            }
        })
        .collect();
    let grades: Vec<u32> = masks.iter().map(|m| m.count_ones()).collect();
    let conj = grades
        .iter()
        .map(|&k| if (k * (k + 1) / 2) % 2 == 0 { 1.0 } else { -1.0 })
        .collect();
    (names, products, conj, grades)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_specs() -> Vec<&'static AlgebraSpec> {
        let mut v = vec![AlgebraSpec::complex(), AlgebraSpec::quaternions(), AlgebraSpec::octonions()];
        for n in 1..=5 {
            v.push(AlgebraSpec::clifford(n).unwrap());
        }
        v
    }

    #[test]
    fn interned() {
        let a = AlgebraSpec::get(AlgebraKind::Quaternion, NormKind::Euclidean).unwrap();
        assert!(std::ptr::eq(a, AlgebraSpec::quaternions()));
    }

    #[test]
    fn dimensions() {
        let dims: Vec<usize> = all_specs().iter().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![2, 4, 8, 2, 4, 8, 16, 32]);
    }

    #[test]
    fn unity_row_and_column() {
        for spec in all_specs() {
            for i in 0..spec.dim() {
                assert_eq!(spec.basis_product(0, i), (i, 1.0));
                assert_eq!(spec.basis_product(i, 0), (i, 1.0));
            }
        }
    }

    #[test]
    fn quaternion_units() {
        let h = AlgebraSpec::quaternions();
        assert_eq!(h.basis_product(1, 2), (3, 1.0));
        assert_eq!(h.basis_product(2, 1), (3, -1.0));
        assert_eq!(h.basis_product(2, 3), (1, 1.0));
        assert_eq!(h.basis_product(3, 1), (2, 1.0));
    }

    #[test]
    fn clifford_basis_order_and_signs() {
        let c3 = AlgebraSpec::clifford(3).unwrap();
        let names: Vec<&str> = c3.basis_names().iter().map(|s| s.as_str()).collect();
        assert_eq!(names, ["1", "e1", "e2", "e3", "e12", "e13", "e23", "e123"]);
        assert_eq!(c3.conjugation_signs(), &[1.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0, 1.0]);
        let e12 = c3.basis_index("e12").unwrap();
        // e12 e12 = -1, e1 e2 = e12, e2 e1 = -e12
        assert_eq!(c3.basis_product(e12, e12), (0, -1.0));
        assert_eq!(c3.basis_product(1, 2), (e12, 1.0));
        assert_eq!(c3.basis_product(2, 1), (e12, -1.0));
        // e123 squares to +1 in signature (0, 3)
        assert_eq!(c3.basis_product(7, 7), (0, 1.0));

        let c4 = AlgebraSpec::clifford(4).unwrap();
        let n4: Vec<&str> = c4.basis_names()[5..11].iter().map(|s| s.as_str()).collect();
        assert_eq!(n4, ["e12", "e13", "e14", "e23", "e24", "e34"]);
    }

    #[test]
    fn parse_kinds() {
        assert_eq!("H".parse::<AlgebraKind>().unwrap(), AlgebraKind::Quaternion);
        assert_eq!("cl3".parse::<AlgebraKind>().unwrap(), AlgebraKind::Clifford(3));
        assert_eq!("clifford:5".parse::<AlgebraKind>().unwrap(), AlgebraKind::Clifford(5));
        assert!("X".parse::<AlgebraKind>().is_err());
        assert!(AlgebraSpec::get(AlgebraKind::Clifford(6), NormKind::Euclidean).is_err());
        assert!(AlgebraSpec::get(AlgebraKind::Octonion, NormKind::CliffordOperator).is_err());
    }
}
