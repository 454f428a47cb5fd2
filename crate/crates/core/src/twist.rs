//! Inner theta-derivations delta(a) = beta * (theta(a) - a) and the entrywise
//! twists built from them.
//!
//! Every theta-derivation of a finite field has this inner form, so a
//! derivation is stored as the pair (theta, beta). `beta = 0` or an identity
//! theta gives the zero derivation.

use crate::error::{Error, Result};
use crate::field::{Automorphism, Elem, FieldSpec};
use crate::matrix::FMatrix;

#[derive(Clone, Copy, Debug)]
pub struct ThetaDerivation {
    theta: Automorphism,
    beta: Elem,
    commuting: bool,
}

impl PartialEq for ThetaDerivation {
    fn eq(&self, other: &Self) -> bool {
        self.theta == other.theta && self.beta == other.beta
    }
}

impl Eq for ThetaDerivation {}

/// Outcome of the exhaustive delta o theta = theta o delta scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Commutation {
    Commuting,
    /// `witness` satisfies delta(theta(r)) != theta(delta(r)).
    NonCommuting {
        witness: Elem,
    },
}

impl Commutation {
    pub fn holds(self) -> bool {
        self == Commutation::Commuting
    }
}

/// Which entrywise map to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwistKind {
    /// theta^i on every entry.
    Bracket(u32),
    /// The binomial theta/delta mix on every entry.
    Angle(u32),
}

/// Odd binomial coefficients by Lucas: C(n, k) is odd iff k's bits are a
/// subset of n's.
#[inline]
pub fn binomial_is_odd(n: u64, k: u64) -> bool {
    k <= n && (k & !n) == 0
}

impl ThetaDerivation {
    pub fn new(theta: Automorphism, beta: Elem) -> Result<Self> {
        let field = theta.field();
        if !field.contains(beta) {
            return Err(Error::ElementOutOfRange {
                bits: beta.bits(),
                m: field.degree(),
            });
        }
        let mut d = ThetaDerivation {
            theta,
            beta,
            commuting: false,
        };
        d.commuting = d.commutes().holds();
        #[cfg(debug_assertions)]
        if field.degree() <= 8 {
            d.assert_leibniz();
        }
        Ok(d)
    }

    /// The zero derivation over `theta`, i.e. the twisted ring F_q[X; theta].
    pub fn zero(theta: Automorphism) -> Self {
        ThetaDerivation {
            theta,
            beta: Elem::ZERO,
            commuting: true,
        }
    }

    /// Parses the common (field, Frobenius exponent, optional beta) triple.
    pub fn from_parts(field: FieldSpec, theta_k: u32, beta: Option<Elem>) -> Result<Self> {
        let theta = Automorphism::new(field, theta_k)?;
        match beta {
            Some(b) => ThetaDerivation::new(theta, b),
            None => Ok(ThetaDerivation::zero(theta)),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.theta.field()
    }

    pub fn automorphism(&self) -> Automorphism {
        self.theta
    }

    pub fn beta(&self) -> Elem {
        self.beta
    }

    /// delta is identically zero.
    pub fn is_zero(&self) -> bool {
        self.beta.is_zero() || self.theta.is_identity()
    }

    pub fn is_commuting(&self) -> bool {
        self.commuting
    }

    #[inline]
    pub fn theta(&self, a: Elem) -> Elem {
        self.theta.apply(a)
    }

    #[inline]
    pub fn theta_pow(&self, a: Elem, i: u64) -> Elem {
        self.theta.apply_pow(a, i)
    }

    /// beta * (theta(a) + a), characteristic 2.
    #[inline]
    pub fn delta(&self, a: Elem) -> Elem {
        let f = self.field();
        f.mul(self.beta, f.add(self.theta(a), a))
    }

    pub fn delta_iter(&self, a: Elem, k: u64) -> Elem {
        (0..k).fold(a, |x, _| self.delta(x))
    }

    /// Exhaustive scan for delta(theta(r)) != theta(delta(r)).
    pub fn commutes(&self) -> Commutation {
        self.field()
            .elements()
            .find(|&r| self.delta(self.theta(r)) != self.theta(self.delta(r)))
            .map_or(Commutation::Commuting, |witness| Commutation::NonCommuting { witness })
    }

    /// a^<i> = sum_k C(i,k) delta^(i-k)(theta^k(a)); dispatches to the
    /// recurrence when delta and theta commute.
    pub fn hat(&self, a: Elem, i: u32) -> Elem {
        if self.commuting {
            self.hat_recurrence(a, i)
        } else {
            self.hat_binomial(a, i)
        }
    }

    /// The explicit binomial sum with coefficients reduced mod 2.
    pub fn hat_binomial(&self, a: Elem, i: u32) -> Elem {
        let f = self.field();
        let i = i as u64;
        (0..=i)
            .filter(|&k| binomial_is_odd(i, k))
            .map(|k| self.delta_iter(self.theta_pow(a, k), i - k))
            .fold(Elem::ZERO, |acc, t| f.add(acc, t))
    }

    /// x_{i+1} = delta(x_i) + theta(x_i). Equals the binomial sum only when
    /// delta and theta commute.
    pub fn hat_recurrence(&self, a: Elem, i: u32) -> Elem {
        let f = self.field();
        (0..i).fold(a, |x, _| f.add(self.delta(x), self.theta(x)))
    }

    pub fn twist(&self, a: Elem, kind: TwistKind) -> Elem {
        match kind {
            TwistKind::Bracket(i) => self.theta_pow(a, i as u64),
            TwistKind::Angle(i) => self.hat(a, i),
        }
    }

    /// Applies the twist to every entry independently.
    pub fn twist_matrix(&self, a: &FMatrix, kind: TwistKind) -> Result<FMatrix> {
        if a.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(a.map(|e| self.twist(e, kind)))
    }

    #[cfg(debug_assertions)]
    fn assert_leibniz(&self) {
        let f = self.field();
        for a in f.elements() {
            for b in f.elements() {
                debug_assert_eq!(self.delta(f.add(a, b)), f.add(self.delta(a), self.delta(b)));
                debug_assert_eq!(
                    self.delta(f.mul(a, b)),
                    f.add(f.mul(self.delta(a), b), f.mul(self.theta(a), self.delta(b)))
                );
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf16() -> FieldSpec {
        FieldSpec::gf16()
    }

    fn derivation(k: u32, beta: u32) -> ThetaDerivation {
        let f = gf16();
        ThetaDerivation::new(Automorphism::new(f, k).unwrap(), Elem(beta as u16)).unwrap()
    }

    #[test]
    fn delta_examples() {
        let d = derivation(2, 2);
        assert_eq!(d.delta(Elem::ONE), Elem::ZERO);
        // alpha * (alpha^4 + alpha) = alpha * 1 = alpha
        assert_eq!(d.delta(Elem(2)), Elem(2));
        let f = gf16();
        for c in d.automorphism().fixed_field() {
            assert_eq!(d.delta(c), Elem::ZERO);
        }
        assert_eq!(d.delta(f.power(5)), Elem::ZERO);
    }

    #[test]
    fn delta_iter_examples() {
        let d = derivation(1, 1);
        assert_eq!(d.delta_iter(Elem(2), 0), Elem(2));
        assert_eq!(d.delta_iter(Elem(7), 1), d.delta(Elem(7)));
        // delta(alpha) = alpha^2 + alpha, delta^2(alpha) = alpha^4 + alpha = 1
        assert_eq!(d.delta(Elem(2)), Elem(0b110));
        assert_eq!(d.delta_iter(Elem(2), 2), Elem::ONE);
    }

    #[test]
    fn commutation_examples() {
        assert!(derivation(1, 1).commutes().holds());
        match derivation(1, 2).commutes() {
            Commutation::NonCommuting { witness } => {
                let d = derivation(1, 2);
                assert_ne!(d.delta(d.theta(witness)), d.theta(d.delta(witness)));
            }
            Commutation::Commuting => panic!("beta = alpha is not fixed by squaring"),
        }
        let zero = ThetaDerivation::zero(Automorphism::new(gf16(), 1).unwrap());
        assert!(zero.commutes().holds());
        assert!(zero.is_zero());
    }

    #[test]
    fn commutes_iff_beta_fixed() {
        let f = gf16();
        for k in 1..4 {
            let theta = Automorphism::new(f, k).unwrap();
            for beta in f.elements() {
                let d = ThetaDerivation::new(theta, beta).unwrap();
                assert_eq!(d.is_commuting(), theta.fixes(beta), "k={k} beta={beta:?}");
            }
        }
    }

    #[test]
    fn hat_examples() {
        let d = derivation(2, 5);
        let a = Elem(0xb);
        assert_eq!(d.hat(a, 0), a);
        assert_eq!(d.hat(a, 1), gf16().add(d.delta(a), d.theta(a)));
        let zero = ThetaDerivation::zero(Automorphism::new(gf16(), 1).unwrap());
        for i in 0..6 {
            assert_eq!(zero.hat(a, i), zero.theta_pow(a, i as u64));
        }
    }

    #[test]
    fn hat_paths_agree_when_commuting() {
        let f = gf16();
        for k in 0..4 {
            let theta = Automorphism::new(f, k).unwrap();
            for beta in theta.fixed_field() {
                let d = ThetaDerivation::new(theta, beta).unwrap();
                for a in f.elements() {
                    for i in 0..8 {
                        assert_eq!(d.hat_binomial(a, i), d.hat_recurrence(a, i));
                    }
                }
            }
        }
    }

    #[test]
    fn twist_matrix_examples() {
        let f = gf16();
        let d = derivation(2, 6);
        let a = FMatrix::from_bits(f, &[&[1, 2, 3], &[4, 5, 6]]).unwrap();
        assert_eq!(d.twist_matrix(&a, TwistKind::Bracket(0)).unwrap(), a);
        assert_eq!(d.twist_matrix(&a, TwistKind::Angle(0)).unwrap(), a);
        let order = d.automorphism().order();
        assert_eq!(d.twist_matrix(&a, TwistKind::Bracket(order)).unwrap(), a);
        let other = FMatrix::zeros(FieldSpec::gf256(), 1, 1);
        assert_eq!(d.twist_matrix(&other, TwistKind::Angle(1)), Err(Error::FieldMismatch));
    }

    #[test]
    fn non_distributive_counterexample() {
        let f = gf16();
        // theta(a) = a^4, beta = alpha^2 + alpha
        let d = derivation(2, 0b110);
        let a = FMatrix::from_bits(f, &[&[1, 0], &[2, 2]]).unwrap();
        let b = FMatrix::from_bits(f, &[&[0, 1], &[2, 2]]).unwrap();
        let lhs = d.twist_matrix(&a.mul(&b).unwrap(), TwistKind::Angle(1)).unwrap();
        let rhs = d
            .twist_matrix(&a, TwistKind::Angle(1))
            .unwrap()
            .mul(&d.twist_matrix(&b, TwistKind::Angle(1)).unwrap())
            .unwrap();
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn lucas_matches_pascal() {
        let mut row = vec![1u64];
        for n in 0..40u64 {
            for (k, &c) in row.iter().enumerate() {
                assert_eq!(binomial_is_odd(n, k as u64), c % 2 == 1);
            }
            let mut next = vec![1u64; row.len() + 1];
            for k in 1..row.len() {
                next[k] = (row[k - 1] + row[k]) % 2;
            }
            row = next;
        }
    }
}
