//! Affine vectors and matrices over exact rationals.
//!
//! State vectors are columns and matrices act on the left: entry `(i, j)` of
//! a matrix is the weight flowing from state `j` into state `i`, so every
//! column of an affine matrix sums to one.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// A vector whose entries sum to one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineVector {
    entries: Vec<Rational>,
}

impl AffineVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        let v = Self::new_unchecked(entries);
        if v.entries.is_empty() {
            return Err(Error::NotAffine {
                what: "vector",
                detail: "no entries".into(),
            });
        }
        let sum = v.sum();
        if !sum.is_one() {
            return Err(Error::NotAffine {
                what: "vector",
                detail: format!("entries sum to {sum}"),
            });
        }
        Ok(v)
    }

    /// Wraps `entries` without checking the sum. [`crate::Afa::validate`]
    /// reports vectors built this way that are not affine.
    pub fn new_unchecked(entries: Vec<Rational>) -> Self {
        Self { entries }
    }

    /// The deterministic state `e_index` of dimension `size`.
    pub fn basis(size: usize, index: usize) -> Self {
        assert!(index < size, "basis index {index} out of range for {size}");
        let mut entries = vec![Rational::zero(); size];
        entries[index] = Rational::one();
        Self { entries }
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sum(&self) -> Rational {
        self.entries.iter().fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn is_affine(&self) -> bool {
        !self.entries.is_empty() && self.sum().is_one()
    }

    /// Sum of absolute values. At least one for any affine vector.
    pub fn l1_norm(&self) -> Rational {
        self.entries
            .iter()
            .fold(Rational::zero(), |acc, x| acc + x.abs())
    }

    /// Kronecker product, row-major: entry `i * other.len() + j` is
    /// `self[i] * other[j]`.
    pub fn tensor(&self, other: &AffineVector) -> AffineVector {
        let mut entries = Vec::with_capacity(self.len() * other.len());
        for x in &self.entries {
            for y in &other.entries {
                entries.push(x * y);
            }
        }
        AffineVector { entries }
    }

    /// Multiplies every entry by `factor`. The result is affine only when
    /// `factor` is one; used to build weighted blocks.
    pub(crate) fn scaled(&self, factor: &Rational) -> AffineVector {
        AffineVector {
            entries: self.entries.iter().map(|x| x * factor).collect(),
        }
    }

    pub(crate) fn concat(&self, other: &AffineVector) -> AffineVector {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        AffineVector { entries }
    }
}

impl fmt::Display for AffineVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// A square matrix whose columns are affine vectors.
///
/// Stored column by column, keeping only nonzero entries sorted by row, so
/// tensor powers of sparse automata stay cheap to build and apply.
#[derive(Clone, Debug)]
pub struct AffineMatrix {
    size: usize,
    columns: Vec<Vec<(usize, Rational)>>,
    integer: OnceLock<IntegerForm>,
}

/// The matrix as `numerators / denominator`, built on first use so that
/// products skip the per-operation reductions of rational arithmetic.
#[derive(Clone, Debug)]
struct IntegerForm {
    denominator: BigInt,
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl PartialEq for AffineMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.columns == other.columns
    }
}

impl Eq for AffineMatrix {}

impl AffineMatrix {
    fn from_parts(size: usize, columns: Vec<Vec<(usize, Rational)>>) -> Self {
        Self {
            size,
            columns,
            integer: OnceLock::new(),
        }
    }

    /// Builds a matrix from row-major rows. Fails unless the grid is square
    /// and every column sums to one.
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let m = Self::new_unchecked(rows)?;
        if let Some((column, sum)) = m.bad_columns().into_iter().next() {
            return Err(Error::NotAffine {
                what: "matrix",
                detail: format!("column {column} sums to {sum}"),
            });
        }
        Ok(m)
    }

    /// Builds a matrix from row-major rows checking only that it is square.
    pub fn new_unchecked(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let size = rows.len();
        let mut columns = vec![Vec::new(); size];
        for row in rows.into_iter().enumerate() {
            let (i, row) = row;
            if row.len() != size {
                return Err(Error::DimensionMismatch {
                    expected: size,
                    found: row.len(),
                });
            }
            for (j, x) in row.into_iter().enumerate() {
                if !x.is_zero() {
                    columns[j].push((i, x));
                }
            }
        }
        Ok(Self::from_parts(size, columns))
    }

    /// Builds a matrix from its columns, each given as `(row, value)` pairs.
    /// Zero values are dropped; rows may come in any order but must be
    /// distinct and in range.
    pub(crate) fn from_sparse_columns(size: usize, mut columns: Vec<Vec<(usize, Rational)>>) -> Self {
        debug_assert_eq!(columns.len(), size);
        for col in &mut columns {
            col.retain(|(_, x)| !x.is_zero());
            col.sort_by_key(|(i, _)| *i);
            debug_assert!(col.windows(2).all(|w| w[0].0 < w[1].0));
            debug_assert!(col.iter().all(|(i, _)| *i < size));
        }
        Self::from_parts(size, columns)
    }

    pub fn identity(size: usize) -> Self {
        Self::from_parts(size, (0..size).map(|j| vec![(j, Rational::one())]).collect())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.columns[col]
            .binary_search_by_key(&row, |(i, _)| *i)
            .map(|k| self.columns[col][k].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    /// Nonzero entries of column `col` as `(row, value)`, sorted by row.
    pub fn column(&self, col: usize) -> &[(usize, Rational)] {
        &self.columns[col]
    }

    pub fn nonzero_count(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        let mut rows = vec![vec![Rational::zero(); self.size]; self.size];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                rows[*i][j] = x.clone();
            }
        }
        rows
    }

    pub fn column_sum(&self, col: usize) -> Rational {
        self.columns[col]
            .iter()
            .fold(Rational::zero(), |acc, (_, x)| acc + x)
    }

    /// Columns whose sum differs from one, with that sum.
    pub fn bad_columns(&self) -> Vec<(usize, Rational)> {
        (0..self.size)
            .map(|j| (j, self.column_sum(j)))
            .filter(|(_, s)| !s.is_one())
            .collect()
    }

    pub fn is_affine(&self) -> bool {
        self.bad_columns().is_empty()
    }

    pub fn max_abs_entry(&self) -> Rational {
        self.columns
            .iter()
            .flatten()
            .map(|(_, x)| x.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(i, x)| (*i, j, x)))
    }

    /// Exact product `self * v`.
    pub fn apply(&self, v: &AffineVector) -> Result<AffineVector> {
        if v.len() != self.size {
            return Err(Error::DimensionMismatch {
                expected: self.size,
                found: v.len(),
            });
        }
        Ok(AffineVector::new_unchecked(self.apply_raw(v.entries())))
    }

    fn integer_form(&self) -> &IntegerForm {
        self.integer.get_or_init(|| {
            let denominator = self
                .columns
                .iter()
                .flatten()
                .fold(BigInt::one(), |l, (_, x)| l.lcm(x.denom()));
            let columns = self
                .columns
                .iter()
                .map(|col| {
                    col.iter()
                        .map(|(i, x)| (*i, x.numer() * (&denominator / x.denom())))
                        .collect()
                })
                .collect();
            IntegerForm { denominator, columns }
        })
    }

    pub(crate) fn apply_raw(&self, v: &[Rational]) -> Vec<Rational> {
        let form = self.integer_form();
        let scale = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let mut out = vec![BigInt::zero(); self.size];
        for (x, col) in v.iter().zip(&form.columns) {
            if x.is_zero() {
                continue;
            }
            let x = x.numer() * (&scale / x.denom());
            for (i, m) in col {
                out[*i] += m * &x;
            }
        }
        let denominator = scale * &form.denominator;
        out.into_iter()
            .map(|n| Rational::new(n, denominator.clone()))
            .collect()
    }

    /// Matrix product `self * rhs`: apply `rhs` first, then `self`.
    pub fn compose(&self, rhs: &AffineMatrix) -> Result<AffineMatrix> {
        if rhs.size != self.size {
            return Err(Error::DimensionMismatch {
                expected: self.size,
                found: rhs.size,
            });
        }
        let columns = rhs
            .columns
            .iter()
            .map(|col| {
                let mut dense = vec![Rational::zero(); self.size];
                for (k, r) in col {
                    for (i, m) in &self.columns[*k] {
                        dense[*i] += m * r;
                    }
                }
                dense
                    .into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .collect()
            })
            .collect();
        Ok(Self::from_parts(self.size, columns))
    }

    /// Kronecker product in row-major block order: entry
    /// `(i1 * n + i2, j1 * n + j2)` is `self[i1][j1] * other[i2][j2]`.
    pub fn tensor(&self, other: &AffineMatrix) -> AffineMatrix {
        let n = other.size;
        let mut columns = Vec::with_capacity(self.size * n);
        for a_col in &self.columns {
            for b_col in &other.columns {
                let mut col = Vec::with_capacity(a_col.len() * b_col.len());
                for (i1, a) in a_col {
                    for (i2, b) in b_col {
                        col.push((i1 * n + i2, a * b));
                    }
                }
                columns.push(col);
            }
        }
        AffineMatrix::from_parts(self.size * n, columns)
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn direct_sum(&self, other: &AffineMatrix) -> AffineMatrix {
        let offset = self.size;
        let mut columns = self.columns.clone();
        columns.extend(
            other
                .columns
                .iter()
                .map(|col| col.iter().map(|(i, x)| (i + offset, x.clone())).collect()),
        );
        AffineMatrix::from_parts(self.size + other.size, columns)
    }
}
