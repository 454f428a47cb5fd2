//! Dense matrices over GF(2^m) with exact arithmetic.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};

/// Row-major dense matrix; every entry lives in `field`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:#x}", self[(r, c)])?;
            }
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for FMatrix {
    type Output = Elem;

    fn index(&self, (r, c): (usize, usize)) -> &Elem {
        &self.data[r * self.cols + c]
    }
}

impl FMatrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|e| !field.contains(**e)) {
            return Err(Error::ElementOutOfRange {
                bits: bad.bits(),
                m: field.degree(),
            });
        }
        Ok(FMatrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let n = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        FMatrix::new(field, n, cols, rows.into_iter().flatten().collect())
    }

    /// Convenience for literals: entries given as bitmasks.
    pub fn from_bits(field: FieldSpec, rows: &[&[u32]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&b| field.elem(b)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        FMatrix::from_rows(field, rows)
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        FMatrix {
            field,
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = FMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn diagonal(field: FieldSpec, diag: &[Elem]) -> Self {
        let mut m = FMatrix::zeros(field, diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Row `i` has its one in column `perm[i]`.
    pub fn permutation(field: FieldSpec, perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        let mut m = FMatrix::zeros(field, n, n);
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || seen[p] {
                return Err(Error::NotPermutation);
            }
            seen[p] = true;
            m.set(i, p, Elem::ONE);
        }
        Ok(m)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    /// Applies `f` to every entry.
    pub fn map(&self, f: impl Fn(Elem) -> Elem) -> Self {
        FMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&e| f(e)).collect(),
        }
    }

    pub fn add(&self, other: &FMatrix) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(
                "addition of differently shaped matrices".into(),
            ));
        }
        Ok(FMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| self.field.add(a, b))
                .collect(),
        })
    }

    pub fn mul(&self, other: &FMatrix) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = FMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other[(k, j)]));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Elem]) -> Vec<Elem> {
        let f = self.field;
        let mut out = vec![Elem::ZERO; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self[(k, j)]));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let mut acc = FMatrix::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|r| (0..self.cols).all(|c| self[(r, c)] == if r == c { Elem::ONE } else { Elem::ZERO }))
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)].is_zero()))
    }

    pub fn is_permutation(&self) -> bool {
        self.is_square()
            && self.data.iter().all(|&e| e == Elem::ZERO || e == Elem::ONE)
            && (0..self.rows).all(|r| self.row(r).iter().filter(|e| !e.is_zero()).count() == 1)
            && (0..self.cols).all(|c| (0..self.rows).filter(|&r| !self[(r, c)].is_zero()).count() == 1)
    }

    pub fn transpose(&self) -> Self {
        let mut out = FMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self[(r, c)]);
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                data.push(self[(r, c)]);
            }
        }
        FMatrix {
            field: self.field,
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// Determinant by Gaussian elimination; any nonzero pivot will do.
    pub fn determinant(&self) -> Result<Elem> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        Ok(determinant_in_place(self.field, self.rows, &mut self.data.clone()))
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let f = self.field;
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = FMatrix::identity(f, n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let scale = f.inv(a[(col, col)])?;
            a.scale_row(col, scale);
            inv.scale_row(col, scale);
            for r in 0..n {
                let factor = a[(r, col)];
                if r != col && !factor.is_zero() {
                    a.add_row_multiple(r, col, factor);
                    inv.add_row_multiple(r, col, factor);
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: Elem) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            self.data[idx] = self.field.mul(self.data[idx], s);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: Elem) {
        for c in 0..self.cols {
            let v = self.field.mul(factor, self.data[src * self.cols + c]);
            let idx = dst * self.cols + c;
            self.data[idx] = self.field.add(self.data[idx], v);
        }
    }
}

/// Determinant of an `n`x`n` row-major buffer, destroying it.
pub(crate) fn determinant_in_place(f: FieldSpec, n: usize, a: &mut [Elem]) -> Elem {
    let mut det = Elem::ONE;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
            return Elem::ZERO;
        };
        if pivot != col {
            for c in 0..n {
                a.swap(pivot * n + c, col * n + c);
            }
        }
        let p = a[col * n + col];
        det = f.mul(det, p);
        let p_inv = f.inv(p).expect("pivot is nonzero");
        for r in col + 1..n {
            let factor = a[r * n + col];
            if factor.is_zero() {
                continue;
            }
            let factor = f.mul(factor, p_inv);
            for c in col..n {
                let v = f.mul(factor, a[col * n + c]);
                a[r * n + c] = f.add(a[r * n + c], v);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf16() -> FieldSpec {
        FieldSpec::gf16()
    }

    /// Leibniz-formula oracle for small determinants.
    fn leibniz(m: &FMatrix) -> Elem {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let f = m.field();
        perms(m.rows())
            .into_iter()
            .map(|p| {
                p.iter()
                    .enumerate()
                    .fold(Elem::ONE, |acc, (r, &c)| f.mul(acc, m[(r, c)]))
            })
            .fold(Elem::ZERO, |acc, t| f.add(acc, t))
    }

    #[test]
    fn identity_is_neutral() {
        let f = gf16();
        let a = FMatrix::from_bits(f, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).unwrap();
        let i = FMatrix::identity(f, 3);
        assert_eq!(a.mul(&i).unwrap(), a);
        assert_eq!(i.mul(&a).unwrap(), a);
    }

    #[test]
    fn determinant_matches_leibniz() {
        let f = gf16();
        let mut seed = 7u32;
        for n in 1..=4 {
            for _ in 0..200 {
                let data = (0..n * n)
                    .map(|_| {
                        seed = seed.wrapping_mul(1103515245).wrapping_add(12345);
                        Elem(((seed >> 16) % 16) as u16)
                    })
                    .collect();
                let m = FMatrix::new(f, n, n, data).unwrap();
                assert_eq!(m.determinant().unwrap(), leibniz(&m));
                match m.inverse() {
                    Ok(inv) => assert!(m.mul(&inv).unwrap().is_identity()),
                    Err(e) => {
                        assert_eq!(e, Error::SingularMatrix);
                        assert_eq!(m.determinant().unwrap(), Elem::ZERO);
                    }
                }
            }
        }
    }

    #[test]
    fn errors() {
        let f = gf16();
        let a = FMatrix::zeros(f, 2, 3);
        assert!(matches!(a.mul(&a), Err(Error::DimensionMismatch(_))));
        assert_eq!(a.inverse(), Err(Error::NotSquare));
        assert_eq!(FMatrix::zeros(f, 2, 2).inverse(), Err(Error::SingularMatrix));
        let g = FieldSpec::gf256();
        assert_eq!(
            FMatrix::zeros(g, 2, 2).mul(&FMatrix::zeros(f, 2, 2)),
            Err(Error::FieldMismatch)
        );
        assert!(FMatrix::from_bits(f, &[&[16]]).is_err());
        assert_eq!(FMatrix::permutation(f, &[0, 0]), Err(Error::NotPermutation));
    }

    #[test]
    fn shape_predicates() {
        let f = gf16();
        assert!(FMatrix::identity(f, 3).is_permutation());
        assert!(FMatrix::permutation(f, &[2, 0, 1]).unwrap().is_permutation());
        assert!(FMatrix::diagonal(f, &[Elem(3), Elem(5)]).is_diagonal());
        assert!(!FMatrix::from_bits(f, &[&[1, 1], &[0, 1]]).unwrap().is_diagonal());
        assert!(!FMatrix::diagonal(f, &[Elem(3), Elem(1)]).is_permutation());
    }
}
