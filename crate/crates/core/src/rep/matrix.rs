//! Dense matrices over exact rationals.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = || Error::Json(format!("bad rational `{s}`"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
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

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn checked_mul(&self, other: &RationalMatrix) -> Result<RationalMatrix, Error> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>, Error> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "{}x{} applied to length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        (0..self.rows).map(|r| self.row(r).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<Rational> {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self.get(r, c)).sum())
            .collect()
    }

    /// Nonnegative with every row and column summing to one.
    pub fn is_doubly_stochastic(&self) -> bool {
        self.is_square()
            && self.data.iter().all(|x| !x.is_negative())
            && self.row_sums().iter().all(One::is_one)
            && self.col_sums().iter().all(One::is_one)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Entries rendered as `"p/q"` (integers as `"p"`).
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(ToString::to_string).collect())
            .collect()
    }

    pub fn from_strings(rows: &[Vec<String>]) -> Result<Self, Error> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|s| parse_rational(s)).collect())
                .collect::<Result<_, _>>()?,
        )
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    /// Panics on a dimension mismatch; see [`RationalMatrix::checked_mul`].
    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.checked_mul(rhs).expect("matrix dimensions agree")
    }
}

impl fmt::Display for RationalMatrix {
    /// Right-aligned fraction table.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "{}", line.join("  "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_and_identity() {
        let a = RationalMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(0, 1), rat(-2, 1)],
        ])
        .unwrap();
        let i = RationalMatrix::identity(2);
        assert_eq!(&a * &i, a);
        assert_eq!(&i * &a, a);
        let sq = &a * &a;
        assert_eq!(*sq.get(0, 1), rat(1, 6) - rat(2, 3));
        assert!(a.checked_mul(&RationalMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn stochastic_predicates() {
        let half = RationalMatrix::from_rows(vec![vec![rat(1, 2); 2]; 2]).unwrap();
        assert!(half.is_doubly_stochastic());
        assert!(half.is_symmetric());
        let skew = RationalMatrix::from_rows(vec![
            vec![rat(1, 1), rat(0, 1)],
            vec![rat(1, 1), rat(0, 1)],
        ])
        .unwrap();
        assert!(!skew.is_doubly_stochastic());
    }

    #[test]
    fn string_round_trip() {
        let m = RationalMatrix::from_rows(vec![vec![rat(1, 2), rat(3, 1), rat(-4, 6)]]).unwrap();
        let s = m.to_strings();
        assert_eq!(s, vec![vec!["1/2", "3", "-2/3"]]);
        assert_eq!(RationalMatrix::from_strings(&s).unwrap(), m);
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a").is_err());
    }

    #[test]
    fn display_aligns_columns() {
        let m = RationalMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 1)],
            vec![rat(0, 1), rat(11, 12)],
        ])
        .unwrap();
        assert_eq!(m.to_string(), "  1/2      1\n    0  11/12\n");
    }
}
