//! Text and JSON interchange formats.
//!
//! Elements print as `0xNN` (canonical) or `a^k` when power notation is
//! requested; both are accepted on input. Polynomials are comma-separated
//! coefficient tokens, low degree first.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::matrix::FMatrix;
use crate::skew::SkewPoly;
use crate::twist::ThetaDerivation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Notation {
    #[default]
    Hex,
    Power,
}

fn parse_u32(token: &str) -> Result<u32> {
    let t = token.trim();
    let parsed = if let Some(hex) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        u32::from_str_radix(hex, 16)
    } else {
        t.parse()
    };
    parsed.map_err(|_| Error::Parse(format!("invalid number {t:?}")))
}

/// Accepts `0xNN`, a decimal bitmask, `a^k`, `a`, `0` and `1`.
pub fn parse_elem(field: FieldSpec, token: &str) -> Result<Elem> {
    let t = token.trim();
    if t == "a" {
        return Ok(field.generator());
    }
    if let Some(exp) = t.strip_prefix("a^") {
        let k: u64 = exp
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid exponent in {t:?}")))?;
        return Ok(field.power(k));
    }
    field.elem(parse_u32(t)?)
}

pub fn format_elem(field: FieldSpec, a: Elem, notation: Notation) -> String {
    match notation {
        Notation::Hex => format!("{:#x}", a.0),
        Notation::Power => match field.log(a) {
            None => "0".to_string(),
            Some(k) => format!("a^{k}"),
        },
    }
}

pub fn parse_elems(field: FieldSpec, list: &str) -> Result<Vec<Elem>> {
    list.split(',').map(|t| parse_elem(field, t)).collect()
}

pub fn parse_poly(ring: ThetaDerivation, list: &str) -> Result<SkewPoly> {
    SkewPoly::new(ring, parse_elems(ring.field(), list)?)
}

pub fn format_poly(p: &SkewPoly, notation: Notation) -> String {
    if p.is_zero() {
        return format_elem(p.field(), Elem::ZERO, notation);
    }
    p.coeffs()
        .iter()
        .map(|&c| format_elem(p.field(), c, notation))
        .collect::<Vec<_>>()
        .join(",")
}

/// `m:modulus_hex[:generator_hex]`.
pub fn parse_field_flag(flag: &str) -> Result<FieldSpec> {
    let parts: Vec<&str> = flag.split(':').collect();
    if !(2..=3).contains(&parts.len()) {
        return Err(Error::Parse(format!(
            "field must be m:modulus[:generator], got {flag:?}"
        )));
    }
    let m = parse_u32(parts[0])?;
    let modulus = parse_u32(parts[1])?;
    let generator = parts.get(2).map(|g| parse_u32(g)).transpose()?;
    FieldSpec::new(m, modulus, generator)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub m: u32,
    pub modulus: String,
    pub generator: String,
}

impl FieldJson {
    pub fn from_spec(field: FieldSpec) -> Self {
        FieldJson {
            m: field.degree(),
            modulus: format!("{:#x}", field.modulus()),
            generator: format!("{:#x}", field.generator().0),
        }
    }

    pub fn to_spec(&self) -> Result<FieldSpec> {
        FieldSpec::new(self.m, parse_u32(&self.modulus)?, Some(parse_u32(&self.generator)?))
    }
}

/// The matrix interchange document. Extra keys (such as a build-time
/// `checks` summary) are carried along untouched.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub field: FieldJson,
    pub theta_k: u32,
    pub beta: String,
    pub rows: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub checks: Option<serde_json::Value>,
}

impl MatrixFile {
    pub fn new(matrix: &FMatrix, d: &ThetaDerivation, notation: Notation) -> Self {
        let field = matrix.field();
        MatrixFile {
            field: FieldJson::from_spec(field),
            theta_k: d.automorphism().exponent(),
            beta: format!("{:#x}", d.beta().0),
            rows: matrix
                .to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(|e| format_elem(field, e, notation)).collect())
                .collect(),
            checks: None,
        }
    }

    /// Rebuilds the matrix and the (theta, delta) context it was built in.
    pub fn decode(&self) -> Result<(FMatrix, ThetaDerivation)> {
        let field = self.field.to_spec()?;
        let beta = parse_elem(field, &self.beta)?;
        let d = ThetaDerivation::from_parts(field, self.theta_k, Some(beta).filter(|b| !b.is_zero()))?;
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|t| parse_elem(field, t)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok((FMatrix::from_rows(field, rows)?, d))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix documents always serialize")
    }
}
