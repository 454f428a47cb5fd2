//! MDS, involution and weight-criterion checks.
//!
//! Minors are enumerated lexicographically (by size, then row set, then
//! column set); the early-exit checks report the first singular one.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::matrix::{determinant_in_place, FMatrix};
use crate::skew::SkewPoly;
use crate::structured::{diag_entries_fixed, diag_similar, perm_similar, twisted_product, TwistFamily};
use crate::twist::ThetaDerivation;

pub const MAX_MDS_ORDER: usize = 8;
/// Upper bound on q^m for the message-space enumerations.
pub const MAX_ENUMERATION: u128 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MdsReport {
    pub is_mds: bool,
    pub failing_minor: Option<Minor>,
    pub minors_checked: u64,
}

/// Lexicographic k-subsets of 0..n.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Total number of square minors, sum_k C(m,k)^2.
pub fn minor_count(m: usize) -> u64 {
    (1..=m as u64).map(|k| binom(m as u64, k).pow(2)).sum()
}

fn minor_is_singular(m: &FMatrix, rows: &[usize], cols: &[usize]) -> bool {
    let k = rows.len();
    let mut buf = Vec::with_capacity(k * k);
    for &r in rows {
        for &c in cols {
            buf.push(m[(r, c)]);
        }
    }
    determinant_in_place(m.field(), k, &mut buf).is_zero()
}

fn check_order(m: &FMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare);
    }
    if m.rows() > MAX_MDS_ORDER {
        return Err(Error::OrderTooLarge {
            order: m.rows(),
            max: MAX_MDS_ORDER,
        });
    }
    Ok(())
}

/// Every square submatrix nonsingular; stops at the first singular minor.
pub fn is_mds(m: &FMatrix) -> Result<MdsReport> {
    mds_scan(m, true)
}

/// Like [`is_mds`] but visits every minor, so `minors_checked` is the full count.
pub fn is_mds_exhaustive(m: &FMatrix) -> Result<MdsReport> {
    mds_scan(m, false)
}

fn mds_scan(m: &FMatrix, early_exit: bool) -> Result<MdsReport> {
    check_order(m)?;
    let n = m.rows();
    let mut checked = 0u64;
    let mut failing = None;
    for k in 1..=n {
        let subsets = combinations(n, k);
        for rows in &subsets {
            for cols in &subsets {
                checked += 1;
                if minor_is_singular(m, rows, cols) && failing.is_none() {
                    failing = Some(Minor {
                        rows: rows.clone(),
                        cols: cols.clone(),
                    });
                    if early_exit {
                        return Ok(MdsReport {
                            is_mds: false,
                            failing_minor: failing,
                            minors_checked: checked,
                        });
                    }
                }
            }
        }
    }
    Ok(MdsReport {
        is_mds: failing.is_none(),
        failing_minor: failing,
        minors_checked: checked,
    })
}

/// Parallel early-exit variant. Row subsets of each size are split across
/// threads; the lexicographically first singular minor is reported, so the
/// witness matches [`is_mds`]. `minors_checked` counts minors up to and
/// including that witness.
pub fn is_mds_parallel(m: &FMatrix) -> Result<MdsReport> {
    check_order(m)?;
    let n = m.rows();
    let mut checked = 0u64;
    for k in 1..=n {
        let subsets = combinations(n, k);
        let hit = subsets.par_iter().enumerate().find_map_first(|(ri, rows)| {
            subsets
                .iter()
                .position(|cols| minor_is_singular(m, rows, cols))
                .map(|ci| (ri, ci))
        });
        if let Some((ri, ci)) = hit {
            checked += (ri * subsets.len() + ci + 1) as u64;
            return Ok(MdsReport {
                is_mds: false,
                failing_minor: Some(Minor {
                    rows: subsets[ri].clone(),
                    cols: subsets[ci].clone(),
                }),
                minors_checked: checked,
            });
        }
        checked += (subsets.len() * subsets.len()) as u64;
    }
    Ok(MdsReport {
        is_mds: true,
        failing_minor: None,
        minors_checked: checked,
    })
}

/// M * M = I.
pub fn is_involutory(m: &FMatrix) -> bool {
    m.is_square() && m.mul(m).map(|p| p.is_identity()).unwrap_or(false)
}

fn enumeration_size(field: FieldSpec, m: usize) -> Result<u128> {
    let size = (field.size() as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if size > MAX_ENUMERATION {
        return Err(Error::SearchSpaceTooLarge {
            size,
            max: MAX_ENUMERATION,
        });
    }
    Ok(size)
}

/// Visits every nonzero vector of length `m` whose lowest nonzero entry is 1
/// (one representative per projective point), in lexicographic order of the
/// coefficient tuple read low-to-high, until `visit` returns `true`.
fn for_each_normalized(field: FieldSpec, m: usize, mut visit: impl FnMut(&[Elem]) -> bool) -> bool {
    let q = field.size() as usize;
    for lead in 0..m {
        // positions below `lead` are zero, `lead` is one, the rest free
        let free = m - lead - 1;
        let total = q.pow(free as u32);
        let mut v = vec![Elem::ZERO; m];
        v[lead] = Elem::ONE;
        for idx in 0..total {
            let mut x = idx;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = Elem((x % q) as u16);
                x /= q;
            }
            if visit(&v) {
                return true;
            }
        }
    }
    false
}

fn weight(v: &[Elem]) -> usize {
    v.iter().filter(|e| !e.is_zero()).count()
}

/// Verdict of an enumeration-based MDS criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionVerdict {
    pub holds: bool,
    /// Coefficients (low-to-high) of the first violating message.
    pub witness: Option<Vec<Elem>>,
}

/// For every nonzero Q of degree < m: wt(Q) + wt(Q * h mod (X^m - 1)) >= m + 1.
///
/// Images of the basis X^s are formed with the ring product and reduced in the
/// quotient; every Q is then a left-linear combination of those images.
/// Weights are invariant under nonzero scalars, so only Q whose lowest nonzero
/// coefficient is 1 are visited.
pub fn weight_criterion_mds(h: &SkewPoly, m: usize) -> Result<CriterionVerdict> {
    let ring = h.ring();
    let field = ring.field();
    enumeration_size(field, m)?;
    let h = h.mod_xm_minus_1(m)?;
    let images: Vec<Vec<Elem>> = (0..m)
        .map(|s| {
            let p = SkewPoly::monomial(ring, Elem::ONE, s).mul(&h)?.mod_xm_minus_1(m)?;
            Ok((0..m).map(|j| p.coeff(j)).collect())
        })
        .collect::<Result<_>>()?;
    Ok(linear_weight_search(field, &images, m))
}

fn linear_weight_search(field: FieldSpec, images: &[Vec<Elem>], m: usize) -> CriterionVerdict {
    let width = images.first().map_or(0, Vec::len);
    let mut witness = None;
    let mut image = vec![Elem::ZERO; width];
    for_each_normalized(field, images.len(), |q| {
        image.iter_mut().for_each(|e| *e = Elem::ZERO);
        for (&c, row) in q.iter().zip(images) {
            if c.is_zero() {
                continue;
            }
            for (o, &r) in image.iter_mut().zip(row) {
                *o = field.add(*o, field.mul(c, r));
            }
        }
        if weight(q) + weight(&image) < m + 1 {
            witness = Some(q.to_vec());
            return true;
        }
        false
    });
    CriterionVerdict {
        holds: witness.is_none(),
        witness,
    }
}

/// Builds M^<r-1> ... M^<1> M and checks it for MDS.
pub fn quasi_r_mds(m: &FMatrix, d: &ThetaDerivation, r: u32) -> Result<MdsReport> {
    if !d.is_commuting() {
        return Err(Error::NonCommutingDerivation);
    }
    is_mds(&twisted_product(m, d, r, TwistFamily::Angle)?)
}

/// Codewords (q | q M) with M = C_g^[t-1] ... C_g must all have weight > m.
///
/// Row k of M is X^(t+k) mod* g, taken from right division; q M is then the
/// remainder of sum q_k X^(t+k), i.e. the message part of a left multiple of g
/// supported on {0..m-1} and {t..t+m-1}.
pub fn support_weight_criterion(g: &SkewPoly, t: usize) -> Result<CriterionVerdict> {
    let ring = g.ring();
    if !ring.is_zero() {
        return Err(Error::DerivationNotZero);
    }
    let m = match g.degree() {
        Some(m) if m >= 1 && g.is_monic() => m,
        _ => return Err(Error::NotMonic),
    };
    if g.coeff(0).is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    if t < m {
        return Err(Error::Precondition(format!("offset {t} is below m = {m}")));
    }
    enumeration_size(ring.field(), m)?;
    let bound = (4 * ring.field().size() as usize).max(t + m);
    if let Some(ord) = g.order(Some(bound))? {
        if t + m > ord {
            return Err(Error::Precondition(format!(
                "offset {t} exceeds ord(g) - m = {}",
                ord as i64 - m as i64
            )));
        }
    }
    let images: Vec<Vec<Elem>> = (0..m)
        .map(|k| {
            let rem = SkewPoly::monomial(ring, Elem::ONE, t + k).right_rem(g)?;
            Ok((0..m).map(|j| rem.coeff(j)).collect())
        })
        .collect::<Result<_>>()?;
    Ok(linear_weight_search(ring.field(), &images, m))
}

/// Quasi r-MDS verdict before and after conjugating by a fixed-field diagonal
/// or a permutation matrix.
pub fn similarity_preserves_quasi_mds(
    m: &FMatrix,
    d: &ThetaDerivation,
    r: u32,
    conjugator: &FMatrix,
) -> Result<(bool, bool)> {
    if !d.is_commuting() {
        return Err(Error::NonCommutingDerivation);
    }
    let conjugated = if conjugator.is_permutation() {
        perm_similar(m, conjugator)?
    } else if conjugator.is_diagonal() {
        if !diag_entries_fixed(conjugator, d) {
            return Err(Error::EntriesNotFixed);
        }
        diag_similar(m, conjugator, d)?
    } else {
        return Err(Error::NotDiagonal);
    };
    Ok((quasi_r_mds(m, d, r)?.is_mds, quasi_r_mds(&conjugated, d, r)?.is_mds))
}
