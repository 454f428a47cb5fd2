//! The skew polynomial ring F_q[X; theta, delta] with X * a = theta(a) X + delta(a).
//!
//! Polynomials are stored low-to-high with no trailing zeros. The ring is
//! right Euclidean, so only right division is provided.

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::twist::ThetaDerivation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPoly {
    ring: ThetaDerivation,
    coeffs: Vec<Elem>,
}

impl SkewPoly {
    pub fn new(ring: ThetaDerivation, mut coeffs: Vec<Elem>) -> Result<Self> {
        let field = ring.field();
        if let Some(bad) = coeffs.iter().find(|c| !field.contains(**c)) {
            return Err(Error::ElementOutOfRange {
                bits: bad.bits(),
                m: field.degree(),
            });
        }
        normalize(&mut coeffs);
        Ok(SkewPoly { ring, coeffs })
    }

    pub fn from_bits(ring: ThetaDerivation, bits: &[u32]) -> Result<Self> {
        let coeffs = bits.iter().map(|&b| ring.field().elem(b)).collect::<Result<Vec<_>>>()?;
        SkewPoly::new(ring, coeffs)
    }

    fn raw(ring: ThetaDerivation, mut coeffs: Vec<Elem>) -> Self {
        normalize(&mut coeffs);
        SkewPoly { ring, coeffs }
    }

    pub fn zero(ring: ThetaDerivation) -> Self {
        SkewPoly {
            ring,
            coeffs: Vec::new(),
        }
    }

    pub fn one(ring: ThetaDerivation) -> Self {
        SkewPoly::constant(ring, Elem::ONE)
    }

    pub fn constant(ring: ThetaDerivation, c: Elem) -> Self {
        SkewPoly::raw(ring, vec![c])
    }

    /// c * X^n
    pub fn monomial(ring: ThetaDerivation, c: Elem, n: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; n + 1];
        coeffs[n] = c;
        SkewPoly::raw(ring, coeffs)
    }

    /// X^n - 1 (= X^n + 1 in characteristic 2).
    pub fn x_pow_minus_one(ring: ThetaDerivation, n: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; n + 1];
        coeffs[n] = Elem::ONE;
        coeffs[0] = ring.field().add(coeffs[0], Elem::ONE);
        SkewPoly::raw(ring, coeffs)
    }

    pub fn ring(&self) -> ThetaDerivation {
        self.ring
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field()
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of X^i, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Elem::ONE
    }

    fn same_ring(&self, other: &SkewPoly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.same_ring(other)?;
        let f = self.field();
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Ok(SkewPoly::raw(self.ring, coeffs))
    }

    pub fn sub(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.add(other)
    }

    /// c * self (scalar on the left, where it commutes with nothing).
    pub fn scale_left(&self, c: Elem) -> SkewPoly {
        let f = self.field();
        SkewPoly::raw(self.ring, self.coeffs.iter().map(|&a| f.mul(c, a)).collect())
    }

    /// X * self = sum theta(p_j) X^(j+1) + delta(p_j) X^j.
    pub fn mul_x_left(&self) -> SkewPoly {
        let f = self.field();
        let mut out = vec![Elem::ZERO; self.coeffs.len() + 1];
        for (j, &p) in self.coeffs.iter().enumerate() {
            out[j + 1] = f.add(out[j + 1], self.ring.theta(p));
            out[j] = f.add(out[j], self.ring.delta(p));
        }
        SkewPoly::raw(self.ring, out)
    }

    /// self * other under the commutation rule: sum_i f_i (X^i * g).
    pub fn mul(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.same_ring(other)?;
        let f = self.field();
        if self.is_zero() || other.is_zero() {
            return Ok(SkewPoly::zero(self.ring));
        }
        let mut acc = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        let mut shifted = other.clone();
        for (i, &fi) in self.coeffs.iter().enumerate() {
            if i > 0 {
                shifted = shifted.mul_x_left();
            }
            if fi.is_zero() {
                continue;
            }
            for (j, &s) in shifted.coeffs.iter().enumerate() {
                acc[j] = f.add(acc[j], f.mul(fi, s));
            }
        }
        Ok(SkewPoly::raw(self.ring, acc))
    }

    /// Unique (q, r) with self = q * divisor + r and deg r < deg divisor.
    pub fn right_divmod(&self, divisor: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        self.same_ring(divisor)?;
        let f = self.field();
        let m = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(n) = self.degree().filter(|&n| n >= m) else {
            return Ok((SkewPoly::zero(self.ring), self.clone()));
        };
        // X^d * divisor for d = 0..=n-m
        let mut shifted = Vec::with_capacity(n - m + 1);
        shifted.push(divisor.clone());
        for d in 1..=n - m {
            let next = shifted[d - 1].mul_x_left();
            shifted.push(next);
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Elem::ZERO; n - m + 1];
        for top in (m..=n).rev() {
            let lead = rem[top];
            if lead.is_zero() {
                continue;
            }
            let d = top - m;
            let c = f.div(lead, shifted[d].leading())?;
            quot[d] = c;
            for (j, &s) in shifted[d].coeffs.iter().enumerate() {
                rem[j] = f.add(rem[j], f.mul(c, s));
            }
            debug_assert!(rem[top].is_zero());
        }
        rem.truncate(m);
        Ok((SkewPoly::raw(self.ring, quot), SkewPoly::raw(self.ring, rem)))
    }

    /// self mod* divisor.
    pub fn right_rem(&self, divisor: &SkewPoly) -> Result<SkewPoly> {
        Ok(self.right_divmod(divisor)?.1)
    }

    /// `self` right-divides `f`.
    pub fn is_right_divisor_of(&self, f: &SkewPoly) -> Result<bool> {
        Ok(f.right_rem(self)?.is_zero())
    }

    /// Checks that X^m - 1 generates a two-sided ideal: |theta| divides m,
    /// delta commutes with theta, and X^m commutes with the field generator.
    pub fn check_central(ring: ThetaDerivation, m: usize) -> Result<()> {
        let non_central = |reason: String| Error::NonCentralModulus { m, reason };
        if m == 0 {
            return Err(non_central("m must be positive".into()));
        }
        let order = ring.automorphism().order() as usize;
        if !m.is_multiple_of(order) {
            return Err(non_central(format!(
                "theta has order {order}, which does not divide {m}"
            )));
        }
        if !ring.is_commuting() {
            return Err(non_central("delta does not commute with theta".into()));
        }
        if !ring.is_zero() {
            let g = ring.field().generator();
            let x_m = SkewPoly::monomial(ring, Elem::ONE, m);
            let g_poly = SkewPoly::constant(ring, g);
            if x_m.mul(&g_poly)? != g_poly.mul(&x_m)? {
                return Err(non_central(format!("X^{m} does not commute with the field generator")));
            }
        }
        Ok(())
    }

    /// Reduction into F_q[X; theta, delta] / (X^m - 1).
    pub fn mod_xm_minus_1(&self, m: usize) -> Result<SkewPoly> {
        SkewPoly::check_central(self.ring, m)?;
        self.right_rem(&SkewPoly::x_pow_minus_one(self.ring, m))
    }

    /// g with g * self = 1 modulo X^m - 1, by the left-combination form of the
    /// extended Euclidean algorithm over right division.
    pub fn inverse_mod_xm_minus_1(&self, m: usize) -> Result<SkewPoly> {
        let modulus = SkewPoly::x_pow_minus_one(self.ring, m);
        let h = self.mod_xm_minus_1(m)?;
        // invariant: r_i = u_i * h + v_i * modulus
        let (mut r0, mut r1) = (modulus, h);
        let (mut u0, mut u1) = (SkewPoly::zero(self.ring), SkewPoly::one(self.ring));
        while !r1.is_zero() {
            let (q, r2) = r0.right_divmod(&r1)?;
            let u2 = u0.sub(&q.mul(&u1)?)?;
            r0 = std::mem::replace(&mut r1, r2);
            u0 = std::mem::replace(&mut u1, u2);
        }
        if r0.degree() != Some(0) {
            return Err(Error::NotInvertible(m));
        }
        let c = self.field().inv(r0.leading())?;
        let g = u0.scale_left(c).mod_xm_minus_1(m)?;
        debug_assert_eq!(g.mul(self)?.mod_xm_minus_1(m)?, SkewPoly::one(self.ring));
        Ok(g)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// g* = X^m + sum_{j=1}^{m-1} theta^m(g_j)/theta^m(g_0) X^(m-j) + 1/theta^m(g_0).
    pub fn reciprocal(&self) -> Result<SkewPoly> {
        if !self.ring.is_zero() {
            return Err(Error::DerivationNotZero);
        }
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let m = self.degree().expect("monic implies nonzero");
        let f = self.field();
        let tw = |a: Elem| self.ring.theta_pow(a, m as u64);
        let g0 = tw(self.coeff(0));
        if g0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv_g0 = f.inv(g0)?;
        let mut coeffs = vec![Elem::ZERO; m + 1];
        coeffs[m] = Elem::ONE;
        coeffs[0] = inv_g0;
        for j in 1..m {
            coeffs[m - j] = f.mul(tw(self.coeff(j)), inv_g0);
        }
        Ok(SkewPoly::raw(self.ring, coeffs))
    }

    /// Coefficientwise s-th power.
    pub fn hadamard_power(&self, s: u64) -> SkewPoly {
        let f = self.field();
        SkewPoly::raw(self.ring, self.coeffs.iter().map(|&a| f.pow(a, s)).collect())
    }

    /// Coefficientwise product up to the smaller degree.
    pub fn hadamard_product(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.same_ring(other)?;
        let f = self.field();
        Ok(SkewPoly::raw(
            self.ring,
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.mul(a, b))
                .collect(),
        ))
    }

    /// Least n <= n_max, a multiple of |theta|, with self right-dividing X^n - 1.
    pub fn order(&self, n_max: Option<usize>) -> Result<Option<usize>> {
        if !self.ring.is_zero() {
            return Err(Error::DerivationNotZero);
        }
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        if self.coeff(0).is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let n_max = n_max.unwrap_or(4 * self.field().size() as usize);
        let step = self.ring.automorphism().order() as usize;
        for n in (step..=n_max).step_by(step) {
            if self.is_right_divisor_of(&SkewPoly::x_pow_minus_one(self.ring, n))? {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }
}

fn normalize(coeffs: &mut Vec<Elem>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}
