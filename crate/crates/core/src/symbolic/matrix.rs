use super::poly::MultiPoly;
use crate::error::{Error, Result};
use crate::linalg::IndexSet;
use crate::oracles::LexPermutations;

/// Square matrix with polynomial entries; indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> MultiPoly) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { n, entries }
    }

    /// The generic matrix `A` with entry `(i,j)` equal to the variable
    /// `a(i,j)`.
    pub fn generic(n: usize) -> Self {
        Self::from_fn(n, MultiPoly::edge)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn neg(&self) -> Self {
        PolyMatrix {
            n: self.n,
            entries: self.entries.iter().map(|p| -p).collect(),
        }
    }

    /// Rows and columns indexed by `s`, in increasing order.
    pub fn principal(&self, s: &IndexSet) -> Result<Self> {
        if s.universe() != self.n {
            return Err(Error::contract(format!(
                "index set over [{}] used with a {}x{} matrix",
                s.universe(),
                self.n,
                self.n
            )));
        }
        let idx: Vec<usize> = s.iter().collect();
        Ok(Self::from_fn(idx.len(), |i, j| {
            self.entry(idx[i - 1], idx[j - 1]).clone()
        }))
    }

    fn leibniz(&self, signed: bool) -> MultiPoly {
        let mut total = MultiPoly::zero();
        for p in LexPermutations::new(self.n) {
            let mut term = MultiPoly::one();
            for (i, &j) in p.images().iter().enumerate() {
                term = &term * self.entry(i + 1, j);
                if term.is_zero() {
                    break;
                }
            }
            if signed && p.sign() < 0 {
                total -= &term;
            } else {
                total += &term;
            }
        }
        total
    }

    /// Full Leibniz expansion of the determinant.
    pub fn det(&self) -> MultiPoly {
        self.leibniz(true)
    }

    /// Full Leibniz expansion of the permanent.
    pub fn per(&self) -> MultiPoly {
        self.leibniz(false)
    }
}
