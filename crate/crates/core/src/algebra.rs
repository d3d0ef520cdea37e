//! Exact linear algebra over prime fields GF(p) and the rationals.
//!
//! Every matroid query in this crate bottoms out in [`ExactMatrix::rank_and_rref`].
//! Pivoting is deterministic (leftmost column, lowest row index) so that
//! certificates derived from these computations are reproducible.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a prime in [2, 2^31]")]
    NotPrime(u64),
    #[error("cannot parse field {0:?} (expected gf2, gf3, gf5, gf(p), gfp or rational)")]
    UnknownField(String),
    #[error("cannot parse scalar {0:?}")]
    BadScalar(String),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("entry {0} is not an element of {1}")]
    ForeignEntry(String, FieldTag),
}

/// The field all arithmetic of a matrix takes place in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldTag {
    Prime(u32),
    Rational,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldTag {
    pub const GF2: FieldTag = FieldTag::Prime(2);
    pub const GF3: FieldTag = FieldTag::Prime(3);
    pub const GF5: FieldTag = FieldTag::Prime(5);

    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        if p > (1u64 << 31) || !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(FieldTag::Prime(p as u32))
    }

    /// The four fields the test-suite sweeps over.
    pub fn standard() -> [FieldTag; 4] {
        [Self::GF2, Self::GF3, Self::GF5, FieldTag::Rational]
    }

    pub fn zero(self) -> Scalar {
        match self {
            FieldTag::Prime(_) => Scalar::Mod(0),
            FieldTag::Rational => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, x: i64) -> Scalar {
        match self {
            FieldTag::Prime(p) => Scalar::Mod(x.rem_euclid(p as i64) as u32),
            FieldTag::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(x))),
        }
    }

    /// Maps a rational number into the field. Fails over GF(p) when p divides the denominator.
    pub fn from_rational(self, q: &BigRational) -> Option<Scalar> {
        match self {
            FieldTag::Rational => Some(Scalar::Rat(q.clone())),
            FieldTag::Prime(p) => {
                let p_big = BigInt::from(p);
                let num = (q.numer() % &p_big + &p_big) % &p_big;
                let den = (q.denom() % &p_big + &p_big) % &p_big;
                let den = den.to_u64()?;
                if den == 0 {
                    return None;
                }
                let num = num.to_u64()?;
                let inv = mod_inverse(den, p as u64);
                Some(Scalar::Mod(((num * inv) % p as u64) as u32))
            }
        }
    }

    pub fn contains(self, s: &Scalar) -> bool {
        match (self, s) {
            (FieldTag::Prime(p), Scalar::Mod(x)) => *x < p,
            (FieldTag::Rational, Scalar::Rat(_)) => true,
            _ => false,
        }
    }

    pub fn add(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldTag::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u64 + *y as u64) % p as u64) as u32)
            }
            (FieldTag::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => mismatch(self),
        }
    }

    pub fn neg(self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldTag::Prime(p), Scalar::Mod(x)) => Scalar::Mod((p - *x) % p),
            (FieldTag::Rational, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => mismatch(self),
        }
    }

    pub fn sub(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldTag::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u64 * *y as u64) % p as u64) as u32)
            }
            (FieldTag::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => mismatch(self),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        match (self, a) {
            (FieldTag::Prime(p), Scalar::Mod(x)) => Scalar::Mod(mod_inverse(*x as u64, p as u64) as u32),
            (FieldTag::Rational, Scalar::Rat(x)) => Scalar::Rat(x.recip()),
            _ => mismatch(self),
        }
    }

    pub fn parse_scalar(self, s: &str) -> Result<Scalar, AlgebraError> {
        let t = s.trim();
        let bad = || AlgebraError::BadScalar(s.to_string());
        let q = match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(t.parse().map_err(|_| bad())?),
        };
        self.from_rational(&q).ok_or_else(bad)
    }

    pub fn name(self) -> String {
        self.to_string()
    }
}

#[cold]
fn mismatch(f: FieldTag) -> ! {
    panic!("scalar from a different field mixed into {f} arithmetic")
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Prime(p) => write!(f, "gf{p}"),
            FieldTag::Rational => write!(f, "rational"),
        }
    }
}

impl FromStr for FieldTag {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "rational" | "q" | "rationals" => return Ok(FieldTag::Rational),
            _ => {}
        }
        let digits = t
            .strip_prefix("gf(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("gf"))
            .ok_or_else(|| AlgebraError::UnknownField(s.to_string()))?;
        let p: u64 = digits.parse().map_err(|_| AlgebraError::UnknownField(s.to_string()))?;
        FieldTag::prime(p)
    }
}

impl Serialize for FieldTag {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldTag {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A field element. Which variant is valid is fixed by the owning matrix's [`FieldTag`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod(u32),
    Rat(BigRational),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod(x) => *x == 0,
            Scalar::Rat(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod(x) => *x == 1,
            Scalar::Rat(q) => q.is_one(),
        }
    }

    /// True for the additive inverse of one (over GF(2) this is one itself).
    pub fn is_minus_one(&self, field: FieldTag) -> bool {
        *self == field.neg(&field.one())
    }

    /// Small integer value when the element is an integer (or a residue).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Mod(x) => Some(*x as i64),
            Scalar::Rat(q) if q.is_integer() => q.numer().to_i64(),
            Scalar::Rat(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod(x) => write!(f, "{x}"),
            Scalar::Rat(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rat(q) => {
                let sign = if q.is_negative() { "-" } else { "" };
                write!(f, "{sign}{}/{}", q.numer().abs(), q.denom())
            }
        }
    }
}

/// A dense matrix over an exact field, with labelled rows and columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    field: FieldTag,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    entries: Vec<Vec<Scalar>>,
}

/// Result of [`ExactMatrix::rank_and_rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    /// Reduced row echelon form; the first `rank` rows are the nonzero ones.
    pub matrix: ExactMatrix,
    pub pivot_cols: Vec<usize>,
}

impl Rref {
    pub fn pivot_labels(&self) -> Vec<String> {
        self.pivot_cols
            .iter()
            .map(|&c| self.matrix.col_labels[c].clone())
            .collect()
    }
}

fn default_labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn check_unique(labels: &[String]) -> Result<(), AlgebraError> {
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(AlgebraError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

impl ExactMatrix {
    pub fn new(
        field: FieldTag,
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        entries: Vec<Vec<Scalar>>,
    ) -> Result<Self, AlgebraError> {
        if entries.len() != row_labels.len() {
            return Err(AlgebraError::Shape(format!(
                "{} rows but {} row labels",
                entries.len(),
                row_labels.len()
            )));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != col_labels.len() {
                return Err(AlgebraError::Shape(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    col_labels.len()
                )));
            }
            if let Some(bad) = row.iter().find(|s| !field.contains(s)) {
                return Err(AlgebraError::ForeignEntry(bad.to_string(), field));
            }
        }
        check_unique(&row_labels)?;
        check_unique(&col_labels)?;
        Ok(ExactMatrix {
            field,
            row_labels,
            col_labels,
            entries,
        })
    }

    pub fn zeros(field: FieldTag, rows: usize, cols: usize) -> Self {
        Self::zeros_labelled(field, default_labels("r", rows), default_labels("c", cols))
    }

    pub fn zeros_labelled(field: FieldTag, row_labels: Vec<String>, col_labels: Vec<String>) -> Self {
        let entries = vec![vec![field.zero(); col_labels.len()]; row_labels.len()];
        ExactMatrix {
            field,
            row_labels,
            col_labels,
            entries,
        }
    }

    pub fn identity(field: FieldTag, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i][i] = field.one();
        }
        m
    }

    /// Integer entries mapped into `field`; rows and columns get default labels.
    pub fn from_i64(field: FieldTag, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_i64_labelled(field, default_labels("r", rows.len()), default_labels("c", cols), rows)
            .expect("rows of equal length")
    }

    pub fn from_i64_labelled(
        field: FieldTag,
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        rows: &[Vec<i64>],
    ) -> Result<Self, AlgebraError> {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::new(field, row_labels, col_labels, entries)
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.entries.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert!(self.field.contains(&value));
        self.entries[r][c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.entries.iter().map(|r| r.as_slice())
    }

    pub fn with_col_labels(mut self, labels: Vec<String>) -> Result<Self, AlgebraError> {
        if labels.len() != self.ncols() {
            return Err(AlgebraError::Shape("column label count".into()));
        }
        check_unique(&labels)?;
        self.col_labels = labels;
        Ok(self)
    }

    pub fn transpose(&self) -> ExactMatrix {
        let entries = (0..self.ncols())
            .map(|c| self.entries.iter().map(|row| row[c].clone()).collect())
            .collect();
        ExactMatrix {
            field: self.field,
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
            entries,
        }
    }

    /// Column submatrix, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> ExactMatrix {
        let entries = self
            .entries
            .iter()
            .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
            .collect();
        ExactMatrix {
            field: self.field,
            row_labels: self.row_labels.clone(),
            col_labels: cols.iter().map(|&c| self.col_labels[c].clone()).collect(),
            entries,
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> ExactMatrix {
        ExactMatrix {
            field: self.field,
            row_labels: rows.iter().map(|&r| self.row_labels[r].clone()).collect(),
            col_labels: self.col_labels.clone(),
            entries: rows.iter().map(|&r| self.entries[r].clone()).collect(),
        }
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.ncols());
        self.entries.iter().map(|row| dot(self.field, row, x)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Scalar::is_zero)
    }

    /// Row reduction with deterministic pivoting: scan columns left to right and
    /// take the lowest-index remaining row with a nonzero entry.
    pub fn rank_and_rref(&self) -> Rref {
        let f = self.field;
        let mut a = self.entries.clone();
        let (rows, cols) = (self.nrows(), self.ncols());
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = f.inv(&a[r][c]);
            for x in a[r].iter_mut() {
                *x = f.mul(x, &inv);
            }
            for i in 0..rows {
                if i != r && !a[i][c].is_zero() {
                    let factor = a[i][c].clone();
                    for j in c..cols {
                        if a[r][j].is_zero() {
                            continue;
                        }
                        let t = f.mul(&factor, &a[r][j]);
                        a[i][j] = f.sub(&a[i][j], &t);
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        Rref {
            rank: r,
            matrix: ExactMatrix {
                field: f,
                row_labels: self.row_labels.clone(),
                col_labels: self.col_labels.clone(),
                entries: a,
            },
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(self.field, self.entries.clone())
    }

    /// Rows form a basis of `{x : self * x = 0}`, one per free column of the rref in
    /// column order.
    pub fn null_space_basis(&self) -> ExactMatrix {
        let f = self.field;
        let rref = self.rank_and_rref();
        let cols = self.ncols();
        let mut is_pivot = vec![false; cols];
        for &c in &rref.pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); cols];
            v[free] = f.one();
            for (i, &pc) in rref.pivot_cols.iter().enumerate() {
                v[pc] = f.neg(rref.matrix.get(i, free));
            }
            basis.push(v);
        }
        ExactMatrix {
            field: f,
            row_labels: default_labels("n", basis.len()),
            col_labels: self.col_labels.clone(),
            entries: basis,
        }
    }

    /// Basis of the space of vectors orthogonal to every row.
    pub fn orthogonal_complement(&self) -> ExactMatrix {
        // y . r = 0 for all rows r  <=>  R y = 0
        self.null_space_basis()
    }

    /// True if the row spaces coincide.
    pub fn same_row_space(&self, other: &ExactMatrix) -> bool {
        if self.ncols() != other.ncols() || self.field != other.field {
            return false;
        }
        let r1 = self.rank();
        let r2 = other.rank();
        let mut stacked = self.entries.clone();
        stacked.extend(other.entries.iter().cloned());
        r1 == r2 && rank_of_rows(self.field, stacked) == r1
    }
}

pub fn dot(f: FieldTag, a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
}

/// Rank of a list of row vectors; consumes them as scratch space.
pub fn rank_of_rows(f: FieldTag, mut a: Vec<Vec<Scalar>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = f.inv(&a[r][c]);
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let factor = f.mul(&a[i][c], &inv);
            for j in c..cols {
                if a[r][j].is_zero() {
                    continue;
                }
                let t = f.mul(&factor, &a[r][j]);
                a[i][j] = f.sub(&a[i][j], &t);
            }
        }
        r += 1;
    }
    r
}
