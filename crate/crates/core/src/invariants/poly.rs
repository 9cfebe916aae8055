use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{format_rational, parse_rational, rat, RatMatrix, Rational};

/// Polynomial in `s` over `Q`, coefficients in ascending degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPolynomial {
    coeffs: Vec<Rational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        RatPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `s`.
    pub fn s() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `s - a`.
    pub fn linear(a: Rational) -> Self {
        Self::new(vec![-a, rat(1)])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = Rational::one() / d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dj;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Parses coefficient lists such as `["-2", "0", "1"]`.
    pub fn from_coeff_strings<S: AsRef<str>>(parts: &[S]) -> Option<Self> {
        parts
            .iter()
            .map(|p| parse_rational(p.as_ref()).ok())
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }
}

impl Add for &RatPolynomial {
    type Output = RatPolynomial;
    fn add(self, rhs: Self) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        RatPolynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Neg for &RatPolynomial {
    type Output = RatPolynomial;
    fn neg(self) -> RatPolynomial {
        RatPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &RatPolynomial {
    type Output = RatPolynomial;
    fn sub(self, rhs: Self) -> RatPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &RatPolynomial {
    type Output = RatPolynomial;
    fn mul(self, rhs: Self) -> RatPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RatPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPolynomial::new(out)
    }
}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{}", format_rational(&mag))?;
            }
            match i {
                0 => {}
                1 => write!(f, "s")?,
                _ => write!(f, "s^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for RatPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeff_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(d)?;
        Self::from_coeff_strings(&parts)
            .ok_or_else(|| serde::de::Error::custom("invalid rational coefficient"))
    }
}

/// Dense matrix over `Q[s]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RatPolynomial>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, data: vec![RatPolynomial::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = RatPolynomial::one();
        }
        m
    }

    /// `sF - G`.
    pub fn from_pencil(f: &RatMatrix, g: &RatMatrix) -> Self {
        assert_eq!(f.shape(), g.shape(), "pencil matrices must have equal shape");
        let (rows, cols) = f.shape();
        let data = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| RatPolynomial::new(vec![-g[(i, j)].clone(), f[(i, j)].clone()]))
            .collect();
        PolyMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatPolynomial {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: RatPolynomial) {
        self.data[i * self.cols + j] = p;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[target] += c * row[source]`.
    pub fn add_row_multiple(&mut self, target: usize, source: usize, c: &RatPolynomial) {
        for j in 0..self.cols {
            let add = c * self.get(source, j);
            let v = self.get(target, j) + &add;
            self.set(target, j, v);
        }
    }

    /// `col[target] += col[source] * c`.
    pub fn add_col_multiple(&mut self, target: usize, source: usize, c: &RatPolynomial) {
        for i in 0..self.rows {
            let add = self.get(i, source) * c;
            let v = self.get(i, target) + &add;
            self.set(i, target, v);
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &Rational) {
        for j in 0..self.cols {
            let v = self.get(i, j).scale(c);
            self.set(i, j, v);
        }
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = PolyMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + &(a * rhs.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Fraction-free (Bareiss) determinant; every division is exact in `Q[s]`.
    pub fn determinant(&self) -> RatPolynomial {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut prev = RatPolynomial::one();
        let mut sign = rat(1);
        for k in 0..n {
            let Some(piv) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return RatPolynomial::zero();
            };
            if piv != k {
                a.swap_rows(piv, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(a.get(k, k) * a.get(i, j)) - &(a.get(i, k) * a.get(k, j));
                    let v = num.exact_div(&prev).expect("Bareiss division is exact");
                    a.set(i, j, v);
                }
                a.set(i, k, RatPolynomial::zero());
            }
            prev = a.get(k, k).clone();
        }
        if n == 0 {
            return RatPolynomial::one();
        }
        a.get(n - 1, n - 1).scale(&sign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = RatPolynomial::from_ints(&[-1, 1]);
        let b = RatPolynomial::from_ints(&[-2, 1]);
        let p = &a * &b;
        assert_eq!(p, RatPolynomial::from_ints(&[2, -3, 1]));
        assert_eq!(p.exact_div(&a), Some(b.clone()));
        assert_eq!(p.gcd(&a), a);
        assert_eq!((&p - &p).degree(), None);
        assert_eq!(p.derivative(), RatPolynomial::from_ints(&[-3, 2]));
        assert_eq!(p.eval(&rat(3)), rat(2));
    }

    #[test]
    fn division_with_remainder() {
        let (q, r) = RatPolynomial::from_ints(&[1, 0, 1]).div_rem(&RatPolynomial::from_ints(&[0, 2]));
        assert_eq!(q, RatPolynomial::new(vec![rat(0), crate::exact::ratio(1, 2)]));
        assert_eq!(r, RatPolynomial::one());
    }

    #[test]
    fn display() {
        assert_eq!(RatPolynomial::from_ints(&[2, -3, 1]).to_string(), "s^2 - 3s + 2");
        assert_eq!(RatPolynomial::from_ints(&[0, -1]).to_string(), "-s");
        assert_eq!(RatPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn determinants() {
        let f = RatMatrix::identity(2);
        let g = RatMatrix::from_int_rows(&[[1, 0], [0, 2]]);
        let d = PolyMatrix::from_pencil(&f, &g).determinant();
        assert_eq!(d, RatPolynomial::from_ints(&[2, -3, 1]));

        let f = RatMatrix::from_int_rows(&[[1, 0], [0, 0]]);
        let g = RatMatrix::from_int_rows(&[[0, 1], [1, -1]]);
        let d = PolyMatrix::from_pencil(&f, &g).determinant();
        assert_eq!(d.monic(), RatPolynomial::from_ints(&[-1, 1]));
    }

    #[test]
    fn serde_round_trip() {
        let p = RatPolynomial::new(vec![crate::exact::ratio(-1, 3), rat(0), rat(2)]);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"["-1/3","0","2"]"#);
        assert_eq!(serde_json::from_str::<RatPolynomial>(&js).unwrap(), p);
    }
}
