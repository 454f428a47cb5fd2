//! Replays the published worked examples against fixture files and
//! reports expected vs. computed values.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Automorphism, Elem, FieldSpec};
use crate::matrix::FMatrix;
use crate::mds::{is_involutory, is_mds};
use crate::skew::SkewPoly;
use crate::structured::{delta_theta_circulant, quasi_recursive_product, TwistFamily};
use crate::text::{format_elem, format_poly, parse_poly, FieldJson, MatrixFile, Notation};
use crate::twist::ThetaDerivation;

pub const CIRCULANT_FIXTURE: &str = "twisted_circulant_4x4.json";
pub const RECURSIVE_FIXTURE: &str = "involutory_recursive_2x2.json";
pub const HADAMARD_FIXTURE: &str = "hadamard_family_gf256.json";

const EMBEDDED: [(&str, &str); 3] = [
    (CIRCULANT_FIXTURE, include_str!("../../../fixtures/twisted_circulant_4x4.json")),
    (RECURSIVE_FIXTURE, include_str!("../../../fixtures/involutory_recursive_2x2.json")),
    (HADAMARD_FIXTURE, include_str!("../../../fixtures/hadamard_family_gf256.json")),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported for reference only; never affects the overall verdict.
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

impl Outcome {
    fn check(name: impl Into<String>, expected: impl ToString, computed: impl ToString) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let status = if expected == computed {
            Status::Pass
        } else {
            Status::Fail
        };
        Outcome {
            name: name.into(),
            expected,
            computed,
            status,
        }
    }

    fn info(name: impl Into<String>, expected: impl ToString, computed: impl ToString) -> Self {
        Outcome {
            name: name.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            status: Status::Info,
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
struct HadamardFixture {
    field: FieldJson,
    base: String,
    polynomials: Vec<String>,
    matrices: Vec<Vec<Vec<String>>>,
}

fn load(dir: Option<&Path>, name: &str) -> Result<String> {
    if let Some(dir) = dir {
        let path = dir.join(name);
        if path.exists() {
            return std::fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())));
        }
    }
    let (_, text) = EMBEDDED.iter().find(|(n, _)| *n == name).expect("known fixture");
    Ok((*text).to_string())
}

/// First differing entry, as `(row, col): expected X, computed Y`.
pub fn first_mismatch(expected: &FMatrix, computed: &FMatrix) -> Option<String> {
    if expected.rows() != computed.rows() || expected.cols() != computed.cols() {
        return Some(format!(
            "shape: expected {}x{}, computed {}x{}",
            expected.rows(),
            expected.cols(),
            computed.rows(),
            computed.cols()
        ));
    }
    let f = expected.field();
    for r in 0..expected.rows() {
        for c in 0..expected.cols() {
            if expected[(r, c)] != computed[(r, c)] {
                return Some(format!(
                    "entry ({r},{c}): expected {}, computed {}",
                    format_elem(f, expected[(r, c)], Notation::Hex),
                    format_elem(f, computed[(r, c)], Notation::Hex)
                ));
            }
        }
    }
    None
}

fn matrix_outcome(name: &str, expected: &FMatrix, computed: &FMatrix) -> Outcome {
    match first_mismatch(expected, computed) {
        None => Outcome::check(name, "match", "match"),
        Some(diff) => Outcome::check(name, "match", diff),
    }
}

/// Runs every replay. `fixtures` overrides embedded fixture files by name.
pub fn run_examples(fixtures: Option<&Path>) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    circulant_example(fixtures, &mut out)?;
    small_circulant_example(&mut out)?;
    recursive_example(fixtures, &mut out)?;
    hadamard_example(fixtures, &mut out)?;
    Ok(out)
}

pub fn all_pass(outcomes: &[Outcome]) -> bool {
    outcomes.iter().all(|o| o.status != Status::Fail)
}

fn circulant_example(dir: Option<&Path>, out: &mut Vec<Outcome>) -> Result<()> {
    let (printed, d) = MatrixFile::from_json(&load(dir, CIRCULANT_FIXTURE)?)?.decode()?;
    let f = d.field();
    let row = [Elem(1), f.power(3), f.power(1), Elem(0b111)];
    let built = delta_theta_circulant(&row, &d)?;
    out.push(matrix_outcome("circulant 4x4 (beta = a) entries", &printed, &built));
    out.push(Outcome::check(
        "circulant 4x4 (beta = a) is MDS",
        true,
        is_mds(&built)?.is_mds,
    ));
    Ok(())
}

/// Moduli for GF(2^n), n = 3..=8.
pub const SMALL_CIRCULANT_MODULI: [(u32, u32); 6] = [(3, 0xb), (4, 0x13), (5, 0x25), (6, 0x43), (7, 0x83), (8, 0x11d)];

/// circ(a, 1, 1) with theta = squaring and beta = 1 over GF(2^n).
pub fn small_circulant(n: u32, modulus: u32) -> Result<FMatrix> {
    let f = FieldSpec::new(n, modulus, None)?;
    let d = ThetaDerivation::new(Automorphism::new(f, 1)?, Elem::ONE)?;
    delta_theta_circulant(&[f.generator(), Elem::ONE, Elem::ONE], &d)
}

fn small_circulant_example(out: &mut Vec<Outcome>) -> Result<()> {
    for (n, modulus) in SMALL_CIRCULANT_MODULI {
        let mds = is_mds(&small_circulant(n, modulus)?)?.is_mds;
        let name = format!("circ(a,1,1) over GF(2^{n}) is MDS");
        out.push(if n > 4 {
            Outcome::check(name, true, mds)
        } else {
            Outcome::info(name, "-", mds)
        });
    }
    Ok(())
}

fn recursive_example(dir: Option<&Path>, out: &mut Vec<Outcome>) -> Result<()> {
    let (printed, d) = MatrixFile::from_json(&load(dir, RECURSIVE_FIXTURE)?)?.decode()?;
    let left = parse_poly(d, "a^9,a,1")?;
    let g = parse_poly(d, "a^6,a,1")?;
    let product = left.mul(&g)?;
    out.push(Outcome::check(
        "X^4+1 factorization",
        format_poly(&SkewPoly::x_pow_minus_one(d, 4), Notation::Hex),
        format_poly(&product, Notation::Hex),
    ));
    let ng = quasi_recursive_product(&g, 2, TwistFamily::Bracket)?;
    out.push(matrix_outcome("N_g entries", &printed, &ng));
    out.push(Outcome::check("N_g involutory", true, is_involutory(&ng)));
    out.push(Outcome::check("N_g is MDS", true, is_mds(&ng)?.is_mds));
    Ok(())
}

fn hadamard_example(dir: Option<&Path>, out: &mut Vec<Outcome>) -> Result<()> {
    let fx: HadamardFixture =
        serde_json::from_str(&load(dir, HADAMARD_FIXTURE)?).map_err(|e| Error::Parse(e.to_string()))?;
    let f = fx.field.to_spec()?;
    let d = ThetaDerivation::zero(Automorphism::identity(f));
    let g = parse_poly(d, &fx.base)?;
    let m = g.degree().ok_or(Error::NotMonic)? as u32;
    out.push(Outcome::check(
        "C_g^4 is MDS",
        true,
        is_mds(&quasi_recursive_product(&g, m, TwistFamily::Bracket)?)?.is_mds,
    ));
    for (i, (printed_poly, printed_rows)) in fx.polynomials.iter().zip(&fx.matrices).enumerate() {
        let t = i as u32 + 1;
        let gt = g.hadamard_power(1 << t);
        let printed = parse_poly(d, printed_poly)?;
        out.push(Outcome::check(
            format!("g^(2^{t}) coefficients"),
            format_poly(&printed, Notation::Power),
            format_poly(&gt, Notation::Power),
        ));
        let power = quasi_recursive_product(&gt, m, TwistFamily::Bracket)?;
        out.push(Outcome::check(format!("C_g{t}^4 is MDS"), true, is_mds(&power)?.is_mds));
        let rows = printed_rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| crate::text::parse_elem(f, e))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let printed_matrix = FMatrix::from_rows(f, rows)?;
        let diff = first_mismatch(&printed_matrix, &power).unwrap_or_else(|| "match".into());
        out.push(Outcome::info(format!("printed C_g{t} vs C_g{t}^4"), "match", diff));
    }
    Ok(())
}
