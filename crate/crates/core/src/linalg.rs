//! Exact integer matrix kernels: principal and general submatrices,
//! determinant by fraction-free elimination, permanent by Ryser's formula.
//!
//! The public API is 1-indexed (`entry(1, 1)` is the top-left corner);
//! storage is row-major and 0-indexed.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest universe an [`IndexSet`] can describe.
pub const MAX_UNIVERSE: usize = 64;

/// Dense `n × n` matrix of arbitrary-precision integers.
///
/// `n = 0` is allowed so that principal submatrices on the empty set have a
/// value; parsers and the counting identities require `n ≥ 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquareMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl SquareMatrix {
    pub fn new(n: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {n}x{n} matrix, found {}",
                n * n,
                entries.len()
            )));
        }
        Ok(SquareMatrix { n, entries })
    }

    /// Builds a matrix from rows; every row must have as many entries as
    /// there are rows.
    pub fn from_rows<R, I, T>(rows: R) -> Result<Self>
    where
        R: IntoIterator<Item = I>,
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let rows: Vec<Vec<BigInt>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(Into::into).collect())
            .collect();
        let n = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                r.len()
            )));
        }
        Ok(SquareMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// `f(i, j)` receives 1-indexed coordinates.
    pub fn from_fn<T: Into<BigInt>>(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                entries.push(f(i, j).into());
            }
        }
        SquareMatrix { n, entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| 0)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| i32::from(i == j))
    }

    pub fn all_ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| 1)
    }

    /// Adjacency matrix of the complete digraph without loops.
    pub fn complete_loopless(n: usize) -> Self {
        Self::from_fn(n, |i, j| i32::from(i != j))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// Entry `a_{i,j}`, 1-indexed.
    ///
    /// Panics if `i` or `j` lies outside `1..=n`; see [`Self::try_entry`].
    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        self.try_entry(i, j).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_entry(&self, i: usize, j: usize) -> Result<&BigInt> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(&self.entries[(i - 1) * self.n + (j - 1)])
    }

    pub fn set_entry(&mut self, i: usize, j: usize, value: impl Into<BigInt>) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        self.entries[(i - 1) * self.n + (j - 1)] = value.into();
        Ok(())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            Err(Error::contract(format!(
                "index {i} out of range 1..={}",
                self.n
            )))
        } else {
            Ok(())
        }
    }

    #[inline]
    fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.n + c]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.entry(j, i).clone())
    }

    /// `P·A·Pᵀ` for the permutation matrix of `perm` (1-indexed images):
    /// vertex `i` is relabelled `perm[i-1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "relabelling has {} entries, matrix dimension is {}",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            self.check_index(p)?;
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::contract(format!("relabelling repeats vertex {p}")));
            }
        }
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.entries[(perm[i] - 1) * self.n + (perm[j] - 1)] = self.at(i, j).clone();
            }
        }
        Ok(out)
    }

    /// Copy with every diagonal entry replaced by `value`.
    pub fn with_diagonal(&self, value: &BigInt) -> Self {
        let mut out = self.clone();
        for k in 0..self.n {
            out.entries[k * self.n + k] = value.clone();
        }
        out
    }

    /// `A + diag(x)`.
    pub fn add_diagonal(&self, x: &[BigInt]) -> Result<Self> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "diagonal vector has {} entries, matrix dimension is {}",
                x.len(),
                self.n
            )));
        }
        let mut out = self.clone();
        for (k, xk) in x.iter().enumerate() {
            out.entries[k * self.n + k] += xk;
        }
        Ok(out)
    }

    /// `diag(A·1) - A`: off-diagonal entries negated, diagonal entry `k`
    /// equal to the sum of the off-diagonal entries of row `k`.
    pub fn row_sum_laplacian(&self) -> Self {
        let n = self.n;
        let mut out = self.clone();
        for r in 0..n {
            let row_sum: BigInt = (0..n).map(|c| self.at(r, c)).sum();
            for c in 0..n {
                out.entries[r * n + c] = -self.at(r, c);
            }
            out.entries[r * n + r] = row_sum - self.at(r, r);
        }
        out
    }

    /// `A_S`: rows and columns indexed by `S`, in increasing order.
    pub fn principal_submatrix(&self, s: &IndexSet) -> Result<Self> {
        self.submatrix(s, s)
    }

    /// Rows indexed by `rows`, columns by `cols`, each in increasing order.
    pub fn submatrix(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Self> {
        for set in [rows, cols] {
            if set.universe() != self.n {
                return Err(Error::contract(format!(
                    "index set over [{}] used with a {}x{} matrix",
                    set.universe(),
                    self.n,
                    self.n
                )));
            }
        }
        if rows.len() != cols.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} rows selected but {} columns",
                rows.len(),
                cols.len()
            )));
        }
        Ok(self.submatrix_unchecked(rows.bits(), cols.bits()))
    }

    /// Bitmask form of [`Self::submatrix`]; bit `k` selects index `k + 1`.
    /// Callers guarantee equal cardinality and bits inside `[n]`.
    pub(crate) fn submatrix_unchecked(&self, rows: u64, cols: u64) -> Self {
        let m = rows.count_ones() as usize;
        let mut entries = Vec::with_capacity(m * m);
        for r in BitIter(rows) {
            for c in BitIter(cols) {
                entries.push(self.at(r, c).clone());
            }
        }
        SquareMatrix { n: m, entries }
    }

    /// Exact determinant. `det` of the `0 × 0` matrix is 1.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        let a = |r: usize, c: usize| self.at(r, c);
        match n {
            0 => BigInt::one(),
            1 => a(0, 0).clone(),
            2 => a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0),
            3 => {
                a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
                    - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
                    + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
            }
            _ => match self.to_i128() {
                Some(m) => {
                    bareiss_i128(m, n).unwrap_or_else(|| bareiss_big(self.entries.clone(), n))
                }
                None => bareiss_big(self.entries.clone(), n),
            },
        }
    }

    /// Exact permanent by Ryser's formula over Gray-code ordered column
    /// subsets, `O(2^n · n)` arithmetic operations. `per` of the `0 × 0`
    /// matrix is 1.
    ///
    /// Panics if `n ≥ 64`.
    pub fn per(&self) -> BigInt {
        let n = self.n;
        assert!(n < 64, "permanent of a {n}x{n} matrix is out of reach");
        if n == 0 {
            return BigInt::one();
        }
        match self.to_small_for_ryser() {
            Some(m) => ryser_small(&m, n),
            None => ryser_big(self, n),
        }
    }

    fn to_i128(&self) -> Option<Vec<i128>> {
        self.entries
            .iter()
            .map(|e| e.to_i64().map(i128::from))
            .collect()
    }

    /// Entries as `i64` when every row sum is guaranteed to stay well inside
    /// `i64`.
    fn to_small_for_ryser(&self) -> Option<Vec<i64>> {
        let limit = (i64::MAX / 4) / self.n.max(1) as i64;
        self.entries
            .iter()
            .map(|e| e.to_i64().filter(|v| v.abs() <= limit))
            .collect()
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SquareMatrix({}x{})[", self.n, self.n)?;
        for r in 0..self.n {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.n {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
        }
        write!(f, "]")
    }
}

fn bareiss_big(mut m: Vec<BigInt>, n: usize) -> BigInt {
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !m[r * n + k].is_zero()) {
                Some(r) => {
                    for c in 0..n {
                        m.swap(k * n + c, r * n + c);
                    }
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                m[i * n + j] = v / &prev;
            }
        }
        prev = m[k * n + k].clone();
    }
    let d = m.swap_remove(n * n - 1);
    if negate {
        -d
    } else {
        d
    }
}

/// Bareiss elimination in checked `i128`; `None` on overflow.
fn bareiss_i128(mut m: Vec<i128>, n: usize) -> Option<BigInt> {
    let mut negate = false;
    let mut prev: i128 = 1;
    for k in 0..n - 1 {
        if m[k * n + k] == 0 {
            match (k + 1..n).find(|&r| m[r * n + k] != 0) {
                Some(r) => {
                    for c in 0..n {
                        m.swap(k * n + c, r * n + c);
                    }
                    negate = !negate;
                }
                None => return Some(BigInt::zero()),
            }
        }
        let pivot = m[k * n + k];
        for i in k + 1..n {
            let lead = m[i * n + k];
            for j in k + 1..n {
                let v = m[i * n + j]
                    .checked_mul(pivot)?
                    .checked_sub(lead.checked_mul(m[k * n + j])?)?;
                m[i * n + j] = v / prev;
            }
        }
        prev = pivot;
    }
    let d = BigInt::from(m[n * n - 1]);
    Some(if negate { -d } else { d })
}

fn ryser_small(a: &[i64], n: usize) -> BigInt {
    let mut row_sums = vec![0i64; n];
    let mut total = BigInt::zero();
    let mut acc: i128 = 0;
    let mut gray: u64 = 0;
    for k in 1u64..(1u64 << n) {
        let col = k.trailing_zeros() as usize;
        gray ^= 1 << col;
        if gray & (1 << col) != 0 {
            for (r, s) in row_sums.iter_mut().enumerate() {
                *s += a[r * n + col];
            }
        } else {
            for (r, s) in row_sums.iter_mut().enumerate() {
                *s -= a[r * n + col];
            }
        }
        if row_sums.contains(&0) {
            continue;
        }
        let negative = (n - gray.count_ones() as usize) % 2 == 1;
        let product = row_sums
            .iter()
            .try_fold(1i128, |p, &s| p.checked_mul(i128::from(s)));
        match product {
            Some(p) => {
                let p = if negative { -p } else { p };
                match acc.checked_add(p) {
                    Some(v) => acc = v,
                    None => {
                        total += acc;
                        acc = p;
                    }
                }
            }
            None => {
                let p: BigInt = row_sums.iter().map(|&s| BigInt::from(s)).product();
                if negative {
                    total -= p;
                } else {
                    total += p;
                }
            }
        }
    }
    total + acc
}

fn ryser_big(a: &SquareMatrix, n: usize) -> BigInt {
    let mut row_sums = vec![BigInt::zero(); n];
    let mut total = BigInt::zero();
    let mut gray: u64 = 0;
    for k in 1u64..(1u64 << n) {
        let col = k.trailing_zeros() as usize;
        gray ^= 1 << col;
        let adding = gray & (1 << col) != 0;
        for (r, s) in row_sums.iter_mut().enumerate() {
            if adding {
                *s += a.at(r, col);
            } else {
                *s -= a.at(r, col);
            }
        }
        let p: BigInt = row_sums.iter().product();
        if (n - gray.count_ones() as usize) % 2 == 1 {
            total -= p;
        } else {
            total += p;
        }
    }
    total
}

/// A subset of `[universe] = {1, …, universe}` stored as a bitmask; bit
/// `k` represents element `k + 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexSet {
    bits: u64,
    universe: usize,
}

impl IndexSet {
    pub fn empty(universe: usize) -> Self {
        assert!(
            universe <= MAX_UNIVERSE,
            "universe {universe} exceeds {MAX_UNIVERSE}"
        );
        IndexSet { bits: 0, universe }
    }

    /// `[universe]` itself.
    pub fn full(universe: usize) -> Self {
        assert!(
            universe <= MAX_UNIVERSE,
            "universe {universe} exceeds {MAX_UNIVERSE}"
        );
        IndexSet {
            bits: low_mask(universe),
            universe,
        }
    }

    pub fn from_bits(bits: u64, universe: usize) -> Result<Self> {
        if universe > MAX_UNIVERSE {
            return Err(Error::contract(format!(
                "universe {universe} exceeds {MAX_UNIVERSE}"
            )));
        }
        if bits & !low_mask(universe) != 0 {
            return Err(Error::contract(format!(
                "bitmask {bits:#x} has elements outside [{universe}]"
            )));
        }
        Ok(IndexSet { bits, universe })
    }

    /// From 1-indexed elements; duplicates are ignored.
    pub fn from_indices(indices: &[usize], universe: usize) -> Result<Self> {
        let mut set = Self::from_bits(0, universe)?;
        for &i in indices {
            set = set.with(i)?;
        }
        Ok(set)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i <= self.universe && self.bits & (1 << (i - 1)) != 0
    }

    pub fn with(self, i: usize) -> Result<Self> {
        if i == 0 || i > self.universe {
            return Err(Error::contract(format!(
                "index {i} out of range 1..={}",
                self.universe
            )));
        }
        Ok(IndexSet {
            bits: self.bits | (1 << (i - 1)),
            ..self
        })
    }

    pub fn without(self, i: usize) -> Self {
        if i == 0 || i > self.universe {
            return self;
        }
        IndexSet {
            bits: self.bits & !(1 << (i - 1)),
            ..self
        }
    }

    /// `[universe] ∖ self`.
    pub fn complement(&self) -> Self {
        IndexSet {
            bits: !self.bits & low_mask(self.universe),
            universe: self.universe,
        }
    }

    /// Elements in increasing order, 1-indexed.
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        BitIter(self.bits).map(|k| k + 1)
    }

    /// All subsets of `self`, as index sets over the same universe.
    pub fn subsets(&self) -> impl Iterator<Item = IndexSet> {
        let universe = self.universe;
        Submasks::new(self.bits).map(move |bits| IndexSet { bits, universe })
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub(crate) fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// 0-indexed positions of the set bits, ascending.
pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let k = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(k)
    }
}

/// Every submask of `mask`, starting from the empty set.
struct Submasks {
    mask: u64,
    next: Option<u64>,
}

impl Submasks {
    fn new(mask: u64) -> Self {
        Submasks {
            mask,
            next: Some(0),
        }
    }
}

impl Iterator for Submasks {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some((cur.wrapping_sub(self.mask)) & self.mask)
        };
        Some(cur)
    }
}

/// `(-1)^k · v`.
pub(crate) fn signed(v: BigInt, k: usize) -> BigInt {
    if k % 2 == 1 {
        -v
    } else {
        v
    }
}
