//! Builders for delta_theta-circulant, companion and quasi-recursive matrices.

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::matrix::FMatrix;
use crate::skew::SkewPoly;
use crate::twist::{binomial_is_odd, ThetaDerivation, TwistKind};

/// Twist family used between the factors of a quasi-recursive product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwistFamily {
    Bracket,
    Angle,
}

impl TwistFamily {
    pub fn kind(self, i: u32) -> TwistKind {
        match self {
            TwistFamily::Bracket => TwistKind::Bracket(i),
            TwistFamily::Angle => TwistKind::Angle(i),
        }
    }
}

/// Row recurrence: row_{j+1}[t] = delta(row_j[t]) + theta(row_j[t-1 mod m]).
/// Works for every beta, commuting or not.
pub fn delta_theta_circulant(first_row: &[Elem], d: &ThetaDerivation) -> Result<FMatrix> {
    let f = d.field();
    if first_row.is_empty() {
        return Err(Error::Precondition("first row is empty".into()));
    }
    if first_row.iter().any(|&a| !f.contains(a)) {
        return Err(Error::FieldMismatch);
    }
    let m = first_row.len();
    let mut rows = Vec::with_capacity(m);
    rows.push(first_row.to_vec());
    for j in 0..m - 1 {
        let prev = &rows[j];
        let next = (0..m)
            .map(|t| f.add(d.delta(prev[t]), d.theta(prev[(t + m - 1) % m])))
            .collect();
        rows.push(next);
    }
    FMatrix::from_rows(f, rows)
}

/// Entry (s, u) = sum_i C(s, i) theta^i(delta^(s-i)(h_{(u-i) mod m})).
pub fn delta_theta_circulant_closed_form(h: &[Elem], d: &ThetaDerivation) -> Result<FMatrix> {
    let f = d.field();
    if !d.is_commuting() {
        return Err(Error::NonCommutingDerivation);
    }
    if h.is_empty() {
        return Err(Error::Precondition("first row is empty".into()));
    }
    if h.iter().any(|&a| !f.contains(a)) {
        return Err(Error::FieldMismatch);
    }
    let m = h.len();
    let mut out = FMatrix::zeros(f, m, m);
    for s in 0..m {
        for u in 0..m {
            let mut acc = Elem::ZERO;
            for i in (0..=s).filter(|&i| binomial_is_odd(s as u64, i as u64)) {
                let shifted = h[(u + m - i % m) % m];
                acc = f.add(acc, d.theta_pow(d.delta_iter(shifted, (s - i) as u64), i as u64));
            }
            out.set(s, u, acc);
        }
    }
    Ok(out)
}

fn require_monic(g: &SkewPoly) -> Result<usize> {
    match g.degree() {
        Some(m) if m >= 1 && g.is_monic() => Ok(m),
        _ => Err(Error::NotMonic),
    }
}

/// Superdiagonal ones, last row (g_0, ..., g_{m-1}).
pub fn companion(g: &SkewPoly) -> Result<FMatrix> {
    let m = require_monic(g)?;
    let f = g.field();
    let mut c = FMatrix::zeros(f, m, m);
    for i in 0..m - 1 {
        c.set(i, i + 1, Elem::ONE);
    }
    for j in 0..m {
        c.set(m - 1, j, g.coeff(j));
    }
    Ok(c)
}

/// Closed-form inverse of the theta^i-twisted companion matrix.
pub fn companion_inverse(g: &SkewPoly, i: u32) -> Result<FMatrix> {
    let m = require_monic(g)?;
    let f = g.field();
    let ring = g.ring();
    let g0 = ring.theta_pow(g.coeff(0), i as u64);
    if g0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let inv_g0 = f.inv(g0)?;
    let mut c = FMatrix::zeros(f, m, m);
    for j in 1..m {
        c.set(0, j - 1, f.mul(ring.theta_pow(g.coeff(j), i as u64), inv_g0));
    }
    c.set(0, m - 1, inv_g0);
    for r in 1..m {
        c.set(r, r - 1, Elem::ONE);
    }
    Ok(c)
}

/// twist(C_g, r-1) * ... * twist(C_g, 1) * C_g, highest twist leftmost.
pub fn quasi_recursive_product(g: &SkewPoly, r: u32, family: TwistFamily) -> Result<FMatrix> {
    if r == 0 {
        return Err(Error::Precondition("r must be at least 1".into()));
    }
    let d = g.ring();
    if family == TwistFamily::Angle && !d.is_commuting() {
        return Err(Error::NonCommutingDerivation);
    }
    twisted_product(&companion(g)?, &d, r, family)
}

/// M^(r-1) * ... * M^(1) * M for any square M.
pub fn twisted_product(m: &FMatrix, d: &ThetaDerivation, r: u32, family: TwistFamily) -> Result<FMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare);
    }
    let mut acc = m.clone();
    for i in 1..r {
        acc = d.twist_matrix(m, family.kind(i))?.mul(&acc)?;
    }
    Ok(acc)
}

/// D * M * D^-1. Entries of D outside the fixed field only warn, since the
/// similarity guarantees need them fixed.
pub fn diag_similar(m: &FMatrix, diag: &FMatrix, d: &ThetaDerivation) -> Result<FMatrix> {
    if !diag.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    if !diag_entries_fixed(diag, d) {
        log::warn!("diagonal entries are not in the fixed field of theta");
    }
    diag.mul(m)?.mul(&diag.inverse()?)
}

pub fn diag_entries_fixed(diag: &FMatrix, d: &ThetaDerivation) -> bool {
    (0..diag.rows()).all(|i| d.automorphism().fixes(diag[(i, i)]))
}

/// P * M * P^-1 for a 0/1 permutation matrix P.
pub fn perm_similar(m: &FMatrix, p: &FMatrix) -> Result<FMatrix> {
    if !p.is_permutation() {
        return Err(Error::NotPermutation);
    }
    p.mul(m)?.mul(&p.transpose())
}

/// Generator data of the theta-cyclic code generated by a right divisor g of
/// X^n - 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaCyclicGenerator {
    /// Rows X^i * g for i < n - m, as an (n-m) x n matrix.
    pub generator: FMatrix,
    /// Rows (X^(m+i) mod* g | e_i): an (n-m) x n systematic generator.
    pub systematic: FMatrix,
    /// For n = 2m, the m x m block of rows X^(m+i) mod* g.
    pub redundant: Option<FMatrix>,
}

pub fn theta_cyclic_generator(g: &SkewPoly, n: usize) -> Result<ThetaCyclicGenerator> {
    let m = require_monic(g)?;
    let ring = g.ring();
    let f = g.field();
    if n < m {
        return Err(Error::Precondition(format!("code length {n} is below deg g = {m}")));
    }
    SkewPoly::check_central(ring, n)?;
    if !g.is_right_divisor_of(&SkewPoly::x_pow_minus_one(ring, n))? {
        return Err(Error::NotDivisor(n));
    }
    let k = n - m;
    let mut generator = FMatrix::zeros(f, k, n);
    let mut shifted = g.clone();
    for i in 0..k {
        if i > 0 {
            shifted = shifted.mul_x_left();
        }
        for (j, &c) in shifted.coeffs().iter().enumerate() {
            generator.set(i, j, c);
        }
    }
    let mut systematic = FMatrix::zeros(f, k, n);
    let mut redundant = FMatrix::zeros(f, k, m);
    for i in 0..k {
        let rem = SkewPoly::monomial(ring, Elem::ONE, m + i).right_rem(g)?;
        for j in 0..m {
            systematic.set(i, j, rem.coeff(j));
            redundant.set(i, j, rem.coeff(j));
        }
        systematic.set(i, m + i, Elem::ONE);
    }
    Ok(ThetaCyclicGenerator {
        generator,
        systematic,
        redundant: (n == 2 * m).then_some(redundant),
    })
}

/// The hypotheses under which N_g = C^[m-1]...C is involutory: theta^m = id
/// and |theta| divides 2m, with delta = 0.
pub fn check_involution_hypotheses(g: &SkewPoly) -> Result<()> {
    let m = require_monic(g)?;
    let ring = g.ring();
    if !ring.is_zero() {
        return Err(Error::DerivationNotZero);
    }
    let order = ring.automorphism().order() as usize;
    if m % order != 0 {
        return Err(Error::Precondition(format!(
            "theta^{m} is not the identity (|theta| = {order})"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Automorphism, FieldSpec};

    fn gf16() -> FieldSpec {
        FieldSpec::gf16()
    }

    fn twisted(k: u32) -> ThetaDerivation {
        ThetaDerivation::zero(Automorphism::new(gf16(), k).unwrap())
    }

    #[test]
    fn plain_circulant() {
        let d = twisted(0);
        let row = [Elem(1), Elem(2), Elem(3)];
        let c = delta_theta_circulant(&row, &d).unwrap();
        let expected = FMatrix::from_bits(gf16(), &[&[1, 2, 3], &[3, 1, 2], &[2, 3, 1]]).unwrap();
        assert_eq!(c, expected);
        assert_eq!(delta_theta_circulant_closed_form(&row, &d).unwrap(), expected);
    }

    #[test]
    fn theta_circulant_closed_form() {
        let d = twisted(1);
        let h = [Elem(1), Elem(2), Elem(6), Elem(9)];
        let c = delta_theta_circulant_closed_form(&h, &d).unwrap();
        for s in 0..4 {
            for u in 0..4 {
                assert_eq!(c[(s, u)], d.theta_pow(h[(u + 4 - s) % 4], s as u64));
            }
        }
    }

    #[test]
    fn closed_form_requires_commuting() {
        let d = ThetaDerivation::new(Automorphism::new(gf16(), 2).unwrap(), Elem(2)).unwrap();
        assert_eq!(
            delta_theta_circulant_closed_form(&[Elem(1), Elem(2)], &d),
            Err(Error::NonCommutingDerivation)
        );
        assert!(delta_theta_circulant(&[], &d).is_err());
    }

    #[test]
    fn companion_shapes() {
        let r = twisted(2);
        let g = SkewPoly::from_bits(r, &[0xc, 2, 1]).unwrap();
        assert_eq!(
            companion(&g).unwrap(),
            FMatrix::from_bits(gf16(), &[&[0, 1], &[0xc, 2]]).unwrap()
        );
        let xm = SkewPoly::monomial(r, Elem::ONE, 3);
        let c = companion(&xm).unwrap();
        assert!(c.row(2).iter().all(|e| e.is_zero()));
        assert_eq!(
            companion(&SkewPoly::from_bits(r, &[1, 3]).unwrap()),
            Err(Error::NotMonic)
        );
    }

    #[test]
    fn companion_inverse_examples() {
        let f = gf16();
        let r = twisted(2);
        let g = SkewPoly::from_bits(r, &[0xc, 2, 1]).unwrap();
        for i in 0..4 {
            let twisted_c = r.twist_matrix(&companion(&g).unwrap(), TwistKind::Bracket(i)).unwrap();
            assert!(companion_inverse(&g, i).unwrap().mul(&twisted_c).unwrap().is_identity());
        }
        let inv = companion_inverse(&g, 0).unwrap();
        let c_inv = f.inv(Elem(0xc)).unwrap();
        assert_eq!(inv.row(0), &[f.mul(Elem(2), c_inv), c_inv]);
        assert_eq!(inv, companion(&g).unwrap().inverse().unwrap());
        let x_minus_1 = SkewPoly::from_bits(twisted(0), &[1, 1]).unwrap();
        assert_eq!(companion_inverse(&x_minus_1, 0).unwrap(), FMatrix::identity(f, 1));
        let bad = SkewPoly::from_bits(r, &[0, 2, 1]).unwrap();
        assert_eq!(companion_inverse(&bad, 0), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn quasi_recursive_examples() {
        let r = twisted(2);
        let g = SkewPoly::from_bits(r, &[0xc, 2, 1]).unwrap();
        assert_eq!(
            quasi_recursive_product(&g, 1, TwistFamily::Bracket).unwrap(),
            companion(&g).unwrap()
        );
        let n = quasi_recursive_product(&g, 2, TwistFamily::Bracket).unwrap();
        assert_eq!(n, FMatrix::from_bits(gf16(), &[&[0xc, 2], &[0b111, 0xc]]).unwrap());
        let id = twisted(0);
        let g = SkewPoly::from_bits(id, &[3, 5, 7, 1]).unwrap();
        assert_eq!(
            quasi_recursive_product(&g, 3, TwistFamily::Bracket).unwrap(),
            companion(&g).unwrap().pow(3).unwrap()
        );
        let nc = ThetaDerivation::new(Automorphism::new(gf16(), 1).unwrap(), Elem(2)).unwrap();
        let g = SkewPoly::from_bits(nc, &[3, 1]).unwrap();
        assert_eq!(
            quasi_recursive_product(&g, 2, TwistFamily::Angle),
            Err(Error::NonCommutingDerivation)
        );
    }

    #[test]
    fn similarity_identities() {
        let f = gf16();
        let d = twisted(2);
        let m = FMatrix::from_bits(f, &[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(diag_similar(&m, &FMatrix::identity(f, 2), &d).unwrap(), m);
        assert_eq!(perm_similar(&m, &FMatrix::identity(f, 2)).unwrap(), m);
        assert_eq!(diag_similar(&m, &m, &d), Err(Error::NotDiagonal));
        assert_eq!(perm_similar(&m, &m), Err(Error::NotPermutation));
        let swap = FMatrix::permutation(f, &[1, 0]).unwrap();
        assert_eq!(
            perm_similar(&m, &swap).unwrap(),
            FMatrix::from_bits(f, &[&[4, 3], &[2, 1]]).unwrap()
        );
    }

    #[test]
    fn theta_cyclic_generator_blocks() {
        let r = twisted(2);
        let g = SkewPoly::from_bits(r, &[0xc, 2, 1]).unwrap();
        let code = theta_cyclic_generator(&g, 4).unwrap();
        assert_eq!(
            code.redundant.unwrap(),
            quasi_recursive_product(&g, 2, TwistFamily::Bracket).unwrap()
        );
        // row 1 of the generator is X * g, carrying theta(g_j)
        let gen = &code.generator;
        assert_eq!(gen.row(0), &[Elem(0xc), Elem(2), Elem(1), Elem(0)]);
        assert_eq!(gen.row(1), &[Elem(0), r.theta(Elem(0xc)), r.theta(Elem(2)), Elem(1)]);
        // every systematic row is a codeword: a left multiple of g
        for i in 0..2 {
            let row = SkewPoly::new(r, code.systematic.row(i).to_vec()).unwrap();
            assert!(g.is_right_divisor_of(&row).unwrap());
        }
        let whole = SkewPoly::x_pow_minus_one(r, 4);
        let degenerate = theta_cyclic_generator(&whole, 4).unwrap();
        assert_eq!(degenerate.generator.rows(), 0);
        assert!(degenerate.redundant.is_none());
        let not_divisor = SkewPoly::from_bits(r, &[1, 2, 1]).unwrap();
        assert_eq!(theta_cyclic_generator(&not_divisor, 4), Err(Error::NotDivisor(4)));
    }
}
