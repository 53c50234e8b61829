//! Exact dense linear algebra over Q and prime fields.
//!
//! Rationals are arbitrary precision. Prime-field entries are stored reduced
//! in `0..p`. Echelon forms pick the first nonzero entry in row-major order as
//! pivot, so `solve` is deterministic.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} too large (must be below 2^31)")]
    PrimeTooLarge(u64),
    #[error("operands live over different fields ({0} vs {1})")]
    MixedFields(Field, Field),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("cannot parse field `{0}` (expected `q` or `p:<prime>`)")]
    BadFieldSpec(String),
}

/// Ground field: Q or F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

/// A field element. Always paired with the `Field` that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    P(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, LinalgError> {
        if p >= 1 << 31 {
            return Err(LinalgError::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// Parses `q` or `p:<prime>`.
    pub fn parse(s: &str) -> Result<Field, LinalgError> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" {
            return Ok(Field::Rational);
        }
        if let Some(rest) = t.strip_prefix("p:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| LinalgError::BadFieldSpec(s.to_string()))?;
            return Field::prime(p);
        }
        Err(LinalgError::BadFieldSpec(s.to_string()))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::zero()),
            Field::Prime(_) => Scalar::P(0),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::P(v.rem_euclid(*p as i64) as u64),
        }
    }

    /// `num/den` in this field; `None` if `den` vanishes in it.
    pub fn from_frac(&self, num: i64, den: i64) -> Option<Scalar> {
        let d = self.from_i64(den);
        if d.is_zero() {
            return None;
        }
        Some(self.mul(&self.from_i64(num), &self.inv(&d)))
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rational, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            (Field::Prime(p), Scalar::P(x), Scalar::P(y)) => Scalar::P((x + y) % p),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Rational, Scalar::Q(x)) => Scalar::Q(-x),
            (Field::Prime(p), Scalar::P(x)) => Scalar::P((p - x) % p),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rational, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            (Field::Prime(p), Scalar::P(x), Scalar::P(y)) => Scalar::P(x * y % p),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        match (self, a) {
            (Field::Rational, Scalar::Q(x)) => Scalar::Q(x.recip()),
            (Field::Prime(p), Scalar::P(x)) => Scalar::P(pow_mod(*x, p - 2, *p)),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    /// `a^e` for a signed exponent; negative powers invert.
    pub fn pow(&self, a: &Scalar, e: i64) -> Scalar {
        let base = if e < 0 { self.inv(a) } else { a.clone() };
        let mut r = self.one();
        for _ in 0..e.unsigned_abs() {
            r = self.mul(&r, &base);
        }
        r
    }

    /// All elements, for a prime field.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some((0..*p).map(Scalar::P).collect()),
        }
    }

    /// A random element. Over Q this draws small integers in `-range..=range`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, range: i64) -> Scalar {
        match self {
            Field::Rational => self.from_i64(rng.gen_range(-range..=range)),
            Field::Prime(p) => Scalar::P(rng.gen_range(0..*p)),
        }
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (Field::Rational, Scalar::Q(_)) => true,
            (Field::Prime(p), Scalar::P(x)) => x < p,
            _ => false,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(x) => x.is_zero(),
            Scalar::P(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(x) => x.is_one(),
            Scalar::P(x) => *x == 1,
        }
    }

    /// Integer value if this is an integer of machine size (F_p elements as `0..p`).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(x) if x.is_integer() => x.to_integer().to_i64(),
            Scalar::Q(_) => None,
            Scalar::P(x) => Some(*x as i64),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Q(x) if x.is_negative())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(x) => write!(f, "{x}"),
            Scalar::P(x) => write!(f, "{x}"),
        }
    }
}

/// Dense row-major matrix over a `Field`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rref: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut m = Matrix::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(*v));
            }
        }
        m
    }

    pub fn from_rows(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "entry count");
        debug_assert!(data.iter().all(|x| field.contains(x)));
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Column matrix from a vector.
    pub fn column(field: Field, v: Vec<Scalar>) -> Matrix {
        let n = v.len();
        Matrix::from_rows(field, n, 1, v)
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        let k = r * self.cols + c;
        self.data[k] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        let k = r * self.cols + c;
        self.data[k] = self.field.add(&self.data[k], v);
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.field, self.rows)
    }

    fn same_field(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.field != other.field {
            Err(LinalgError::MixedFields(self.field, other.field))
        } else {
            Ok(())
        }
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f.add(a, b))
            .collect();
        Ok(Matrix::from_rows(f, self.rows, self.cols, data))
    }

    /// Product; panics on field or shape mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).expect("matrix product")
    }

    /// Sum; panics on field or shape mismatch.
    pub fn add(&self, other: &Matrix) -> Matrix {
        self.try_add(other).expect("matrix sum")
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|a| f.mul(a, s)).collect();
        Matrix::from_rows(f, self.rows, self.cols, data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        assert_eq!(self.field, other.field);
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        assert_eq!(self.field, other.field);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix::from_rows(self.field, self.rows + other.rows, self.cols, data)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, self.cols, other);
        m
    }

    /// Copies `block` into `self` with top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &cols)
    }

    /// Reduced row echelon form. Pivot: first nonzero in row-major order
    /// among the unreduced rows of the current column.
    pub fn echelon(&self) -> Echelon {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            if !inv.is_one() {
                for j in c..m.cols {
                    let v = f.mul(m.get(r, j), &inv);
                    m.set(r, j, v);
                }
            }
            let pivot_row: Vec<Scalar> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for (j, pv) in pivot_row.iter().enumerate().skip(c) {
                    if pv.is_zero() {
                        continue;
                    }
                    let v = f.sub(m.get(i, j), &f.mul(&factor, pv));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { rref: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Columns form a basis of the right kernel.
    pub fn kernel_basis(&self) -> Matrix {
        let Echelon { rref, pivots } = self.echelon();
        let f = self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, f.one());
            for (i, &pc) in pivots.iter().enumerate() {
                let v = f.neg(rref.get(i, fc));
                k.set(pc, j, v);
            }
        }
        k
    }

    /// Solves `self * x = b`, free variables set to zero.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>, LinalgError> {
        self.same_field(b)?;
        if self.rows != b.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "solve: a has {} rows, b has {}",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b);
        let Echelon { rref, pivots } = aug.echelon();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let f = self.field;
        let mut x = Matrix::zeros(f, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, rref.get(i, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, if invertible.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Matrix::identity(self.field, self.rows)).ok()??;
        if self.mul(&x).is_identity() {
            Some(x)
        } else {
            None
        }
    }

    /// Indices of a maximal linearly independent set of columns.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.echelon().pivots
    }

    /// A column basis of the image.
    pub fn image_basis(&self) -> Matrix {
        let p = self.independent_columns();
        self.select_cols(&p)
    }

    pub fn random<R: Rng + ?Sized>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
        let data = (0..rows * cols).map(|_| field.random(rng, 3)).collect();
        Matrix::from_rows(field, rows, cols, data)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &Matrix) -> Matrix {
    m.kernel_basis()
}

pub fn solve(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>, LinalgError> {
    a.solve(b)
}

/// Rank of the horizontal concatenation; rejects mixed fields.
pub fn rank_checked(ms: &[&Matrix]) -> Result<usize, LinalgError> {
    let Some(first) = ms.first() else {
        return Ok(0);
    };
    let mut acc = (*first).clone();
    for m in &ms[1..] {
        acc.same_field(m)?;
        acc = acc.hstack(m);
    }
    Ok(acc.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: Field = Field::Rational;

    #[test]
    fn identity_rank_f5() {
        let f = Field::prime(5).unwrap();
        assert_eq!(rank(&Matrix::identity(f, 3)), 3);
    }

    #[test]
    fn zero_rank() {
        assert_eq!(rank(&Matrix::zeros(Q, 4, 2)), 0);
    }

    #[test]
    fn rank_one_by_determinant() {
        let m = Matrix::from_i64(Q, &[vec![1, 2], vec![2, 4]]);
        // det = 1*4 - 2*2 = 0 and m != 0
        let det = 1 * 4 - 2 * 2;
        assert_eq!(det, 0);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn kernel_edge_cases() {
        assert_eq!(kernel_basis(&Matrix::identity(Q, 4)).cols(), 0);
        assert_eq!(kernel_basis(&Matrix::zeros(Q, 4, 4)).cols(), 4);
    }

    #[test]
    fn kernel_f2_by_enumeration() {
        let f = Field::prime(2).unwrap();
        let m = Matrix::from_i64(f, &[vec![1, 1]]);
        let mut sols = 0;
        for a in 0..2 {
            for b in 0..2 {
                if (a + b) % 2 == 0 {
                    sols += 1;
                }
            }
        }
        let k = kernel_basis(&m);
        assert_eq!(1usize << k.cols(), sols);
        assert_eq!(k.col(0), vec![Scalar::P(1), Scalar::P(1)]);
    }

    #[test]
    fn solve_examples() {
        let f5 = Field::prime(5).unwrap();
        let a = Matrix::from_i64(f5, &[vec![2]]);
        let b = Matrix::from_i64(f5, &[vec![1]]);
        let x = solve(&a, &b).unwrap().unwrap();
        assert_eq!(x, Matrix::from_i64(f5, &[vec![3]]));
        assert_eq!((2 * 3) % 5, 1);

        let b = Matrix::from_i64(Q, &[vec![1, 2], vec![3, 4]]);
        assert_eq!(solve(&Matrix::identity(Q, 2), &b).unwrap().unwrap(), b);
        let b = Matrix::from_i64(Q, &[vec![1], vec![0]]);
        assert!(solve(&Matrix::zeros(Q, 2, 2), &b).unwrap().is_none());
    }

    #[test]
    fn errors() {
        assert_eq!(Field::prime(4), Err(LinalgError::NotPrime(4)));
        let a = Matrix::identity(Q, 2);
        let b = Matrix::identity(Field::prime(3).unwrap(), 2);
        assert!(matches!(a.try_mul(&b), Err(LinalgError::MixedFields(..))));
        assert!(matches!(solve(&a, &b), Err(LinalgError::MixedFields(..))));
        let c = Matrix::zeros(Q, 3, 1);
        assert!(matches!(
            solve(&a, &c),
            Err(LinalgError::DimensionMismatch(_))
        ));
        assert!(rank_checked(&[&a, &b]).is_err());
    }

    #[test]
    fn field_parse() {
        assert_eq!(Field::parse("q").unwrap(), Q);
        assert_eq!(Field::parse("p:7").unwrap(), Field::Prime(7));
        assert!(Field::parse("p:9").is_err());
        assert!(Field::parse("r").is_err());
    }

    fn field_strategy() -> impl Strategy<Value = Field> {
        prop_oneof![
            Just(Q),
            Just(Field::Prime(2)),
            Just(Field::Prime(3)),
            Just(Field::Prime(5)),
            Just(Field::Prime(101)),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_nullity(f in field_strategy(), r in 0usize..6, c in 0usize..6, seed: u64) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = Matrix::random(f, r, c, &mut rng);
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.cols(), c);
            prop_assert!(m.rank() <= r.min(c));
            prop_assert!(m.mul(&k).is_zero());
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_permutation_invariant(f in field_strategy(), seed: u64) {
            use rand::seq::SliceRandom;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = Matrix::random(f, 4, 5, &mut rng);
            let mut rp: Vec<usize> = (0..4).collect();
            let mut cp: Vec<usize> = (0..5).collect();
            rp.shuffle(&mut rng);
            cp.shuffle(&mut rng);
            prop_assert_eq!(m.rank(), m.submatrix(&rp, &cp).rank());
        }

        #[test]
        fn solve_consistent(f in field_strategy(), seed: u64) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = Matrix::random(f, 4, 3, &mut rng);
            let x = Matrix::random(f, 3, 2, &mut rng);
            let b = a.mul(&x);
            let y = a.solve(&b).unwrap().unwrap();
            prop_assert_eq!(a.mul(&y), b);
        }

        #[test]
        fn field_axioms(f in field_strategy(), a in -50i64..50, b in -50i64..50, c in -50i64..50) {
            let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
            prop_assert!(f.add(&a, &f.neg(&a)).is_zero());
            if !a.is_zero() {
                prop_assert!(f.mul(&a, &f.inv(&a)).is_one());
            }
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        }
    }
}
