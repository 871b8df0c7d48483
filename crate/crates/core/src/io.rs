//! JSON readers and writers for algebras, elements, stems and series.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{AlgebraKind, AlgebraSpec, ConePoint, Element, NormKind};
use crate::error::{Error, Result};
use crate::series::{PowerSeries, SphericalSeries};
use crate::slice::{ComplexElement, PiecewiseConstantStem, SliceFunction, SliceRegular, StemPolynomial};

fn parse_err(what: &str, e: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{what}: {e}"))
}

/// `H`, `O`, `C`, or a Clifford algebra as `Cl3`, `R3` or `clifford:3`.
pub fn parse_algebra_kind(name: &str) -> Result<AlgebraKind> {
    let t = name.trim();
    match t {
        "H" | "h" | "quaternions" => return Ok(AlgebraKind::Quaternion),
        "O" | "o" | "octonions" => return Ok(AlgebraKind::Octonion),
        "C" | "c" | "complex" => return Ok(AlgebraKind::Complex),
        _ => {}
    }
    let lower = t.to_ascii_lowercase();
    let digits = ["clifford:", "clifford", "cl", "r"].iter().find_map(|p| lower.strip_prefix(p));
    match digits.and_then(|d| d.parse::<u8>().ok()) {
        Some(n) => Ok(AlgebraKind::Clifford(n)),
        None => Err(Error::Parse(format!("unknown algebra `{t}` (H, O, C, Cl<n>)"))),
    }
}

pub fn parse_norm_kind(name: &str) -> Result<NormKind> {
    match name {
        "euclidean" => Ok(NormKind::Euclidean),
        "clifford_operator" => Ok(NormKind::CliffordOperator),
        other => Err(Error::Parse(format!("unknown norm `{other}` (euclidean, clifford_operator)"))),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AlgebraField {
    Name(String),
    Clifford { clifford: u8 },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraConfig {
    algebra: AlgebraField,
    #[serde(default)]
    norm: Option<String>,
}

/// Reads `{"algebra": "H" | "O" | "C" | {"clifford": n}, "norm": ...}`.
pub fn algebra_from_config(json: &str) -> Result<&'static AlgebraSpec> {
    let cfg: AlgebraConfig = serde_json::from_str(json).map_err(|e| parse_err("algebra config", e))?;
    let kind = match cfg.algebra {
        AlgebraField::Name(s) => parse_algebra_kind(&s)?,
        AlgebraField::Clifford { clifford } => AlgebraKind::Clifford(clifford),
    };
    let norm = cfg.norm.as_deref().map(parse_norm_kind).transpose()?.unwrap_or_default();
    AlgebraSpec::get(kind, norm)
}

/// An element given as a coordinate array or as an expression string.
pub fn element_from_value(spec: &'static AlgebraSpec, v: &Value) -> Result<Element> {
    match v {
        Value::String(s) => Element::parse(spec, s),
        Value::Number(n) => Ok(Element::real(spec, n.as_f64().unwrap_or(f64::NAN))),
        Value::Array(items) => {
            let coords = items
                .iter()
                .map(|c| c.as_f64().ok_or_else(|| Error::Parse(format!("coordinate `{c}` is not a number"))))
                .collect::<Result<Vec<f64>>>()?;
            Element::from_coords(spec, &coords)
        }
        other => Err(Error::Parse(format!("cannot read `{other}` as an element"))),
    }
}

/// A point of the quadratic cone, given like an element.
pub fn point_from_value(spec: &'static AlgebraSpec, v: &Value) -> Result<ConePoint> {
    ConePoint::from_element(&element_from_value(spec, v)?)
}

/// A list of points: a JSON array of elements, or a single element.
pub fn points_from_json(spec: &'static AlgebraSpec, json: &str) -> Result<Vec<ConePoint>> {
    let v: Value = serde_json::from_str(json).map_err(|e| parse_err("points", e))?;
    match &v {
        // a bare coordinate array is one point
        Value::Array(items) if items.iter().all(Value::is_number) => Ok(vec![point_from_value(spec, &v)?]),
        Value::Array(items) => items.iter().map(|p| point_from_value(spec, p)).collect(),
        _ => Ok(vec![point_from_value(spec, &v)?]),
    }
}

/// A slice function read from JSON: a polynomial stem or a stem that is
/// constant on each half plane.
#[derive(Clone, Debug, PartialEq)]
pub enum StemInput {
    Polynomial(StemPolynomial),
    PiecewiseConstant(PiecewiseConstantStem),
}

impl SliceFunction for StemInput {
    fn spec(&self) -> &'static AlgebraSpec {
        match self {
            StemInput::Polynomial(p) => p.spec(),
            StemInput::PiecewiseConstant(p) => p.spec(),
        }
    }

    fn stem(&self, z: Complex64) -> ComplexElement {
        match self {
            StemInput::Polynomial(p) => p.stem(z),
            StemInput::PiecewiseConstant(p) => p.stem(z),
        }
    }
}

impl SliceRegular for StemInput {
    fn scaled_derivative(&self, n: usize, z: Complex64) -> ComplexElement {
        match self {
            StemInput::Polynomial(p) => p.scaled_derivative(n, z),
            StemInput::PiecewiseConstant(p) => p.scaled_derivative(n, z),
        }
    }
}

fn complex_element(spec: &'static AlgebraSpec, obj: &Value) -> Result<ComplexElement> {
    let part = |key: &str| match obj.get(key) {
        Some(v) => element_from_value(spec, v),
        None => Ok(Element::zero(spec)),
    };
    ComplexElement::new(part("c1")?, part("c2")?)
}

/// Reads `[{"k": power, "c1": [..], "c2": [..]}, ...]` or
/// `{"piecewise_constant": {"c1": .., "c2": ..}}`. The outer object may also
/// wrap either form as `{"stem": .., "center": ..}`; the center is returned
/// when present.
pub fn stem_from_json(spec: &'static AlgebraSpec, json: &str) -> Result<(StemInput, Option<ConePoint>)> {
    let v: Value = serde_json::from_str(json).map_err(|e| parse_err("stem", e))?;
    if let Some(inner) = v.get("stem") {
        let center = v.get("center").map(|c| point_from_value(spec, c)).transpose()?;
        return Ok((stem_from_value(spec, inner)?, center));
    }
    Ok((stem_from_value(spec, &v)?, None))
}

fn stem_from_value(spec: &'static AlgebraSpec, v: &Value) -> Result<StemInput> {
    if let Some(upper) = v.get("piecewise_constant") {
        return Ok(StemInput::PiecewiseConstant(PiecewiseConstantStem::new(complex_element(spec, upper)?)));
    }
    let terms = v.as_array().ok_or_else(|| Error::Parse("stem must be a list of terms".into()))?;
    let mut coeffs: Vec<ComplexElement> = Vec::new();
    for t in terms {
        let k = t
            .get("k")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse(format!("term `{t}` needs a nonnegative integer `k`")))? as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, ComplexElement::zero(spec));
        }
        coeffs[k].add_assign(&complex_element(spec, t)?);
    }
    if coeffs.is_empty() {
        coeffs.push(ComplexElement::zero(spec));
    }
    let stem = StemPolynomial::new(coeffs)?;
    let defect = stem.parity_defect();
    if defect > 0.0 {
        log::warn!("stem has imaginary coefficients (size {defect:e}); F(z^c) = F(z)^c fails");
    }
    Ok(StemInput::Polynomial(stem))
}

#[derive(Serialize)]
struct StemTerm {
    k: usize,
    c1: Vec<f64>,
    c2: Vec<f64>,
}

/// The term-list form read by [`stem_from_json`].
pub fn stem_to_json(stem: &StemPolynomial) -> Value {
    let terms: Vec<StemTerm> = stem
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| StemTerm { k, c1: c.re.coords().to_vec(), c2: c.im.coords().to_vec() })
        .collect();
    serde_json::to_value(terms).expect("plain data")
}

/// Center, coefficients and truncation order of a stored series.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesInput {
    pub center: ConePoint,
    pub coeffs: Vec<Element>,
    pub order: usize,
}

impl SeriesInput {
    pub fn power(&self) -> Result<PowerSeries> {
        Ok(PowerSeries::new(self.center.clone(), self.coeffs.clone())?.with_order(self.order))
    }

    pub fn spherical(&self) -> Result<SphericalSeries> {
        Ok(SphericalSeries::new(self.center.clone(), self.coeffs.clone())?.with_order(self.order))
    }
}

/// Reads `{"center": .., "coeffs": [[..], ..], "order": n}`; `order` defaults
/// to the last coefficient.
pub fn series_from_json(spec: &'static AlgebraSpec, json: &str) -> Result<SeriesInput> {
    let v: Value = serde_json::from_str(json).map_err(|e| parse_err("series", e))?;
    let center = point_from_value(spec, v.get("center").ok_or_else(|| Error::Parse("series needs `center`".into()))?)?;
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("series needs a `coeffs` list".into()))?
        .iter()
        .map(|c| element_from_value(spec, c))
        .collect::<Result<Vec<_>>>()?;
    if coeffs.is_empty() {
        return Err(Error::Parse("series needs at least one coefficient".into()));
    }
    let order = match v.get("order") {
        None | Some(Value::Null) => coeffs.len() - 1,
        Some(o) => o.as_u64().ok_or_else(|| Error::Parse(format!("order `{o}` is not a nonnegative integer")))? as usize,
    };
    Ok(SeriesInput { center, coeffs, order })
}

pub fn series_to_json(center: &ConePoint, coeffs: &[Element], order: usize) -> Value {
    serde_json::json!({
        "center": center.element().coords(),
        "coeffs": coeffs.iter().map(|c| c.coords().to_vec()).collect::<Vec<_>>(),
        "order": order,
    })
}
