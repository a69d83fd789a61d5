//! Sparse multivariate polynomials over edge variables `a(i,j)` and vertex
//! variables `x(i)`, and the symbolic expansions built from them.
//!
//! The expansions here re-derive the counting identities as polynomial
//! identities: the determinant–permanent subset sum collapses to the
//! listing of single-cycle permutations, the row-sum Laplacian minors list
//! rooted trees, and the derivative construction `∂_[n] Σ_j a(n,j)x(j) ·
//! det(diag(Ax) - A·diag(x))_[n-1]` lands on the same cycle listing.

mod matrix;
mod monomial;
mod poly;

pub use matrix::PolyMatrix;
pub use monomial::Monomial;
pub use poly::MultiPoly;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::IndexSet;
use crate::oracles::{EdgeFunctions, LexPermutations, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymbolicCaps {
    /// Largest dimension for Leibniz expansions and plain listings.
    pub matrix: usize,
    /// Largest `n` for the subset-sum cycle identity.
    pub identity: usize,
    /// Largest `n` for the derivative construction.
    pub derivative: usize,
}

impl Default for SymbolicCaps {
    fn default() -> Self {
        SymbolicCaps {
            matrix: 6,
            identity: 5,
            derivative: 5,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Symbolic {
    pub caps: SymbolicCaps,
}

impl Symbolic {
    pub fn new(caps: SymbolicCaps) -> Self {
        Symbolic { caps }
    }

    fn check(what: &'static str, n: usize, min: usize, cap: usize) -> Result<()> {
        if n > cap {
            return Err(Error::CapExceeded { what, n, cap });
        }
        if n < min {
            return Err(Error::UnsupportedDimension(format!(
                "{what} needs n >= {min}, got {n}"
            )));
        }
        Ok(())
    }

    pub fn det(&self, m: &PolyMatrix) -> Result<MultiPoly> {
        Self::check("sym_det", m.dim(), 0, self.caps.matrix)?;
        Ok(m.det())
    }

    pub fn per(&self, m: &PolyMatrix) -> Result<MultiPoly> {
        Self::check("sym_per", m.dim(), 0, self.caps.matrix)?;
        Ok(m.per())
    }

    /// One monomial per single-cycle permutation of `[n]`.
    pub fn hc_listing(&self, n: usize) -> Result<MultiPoly> {
        Self::check("sym_hc_listing", n, 1, self.caps.matrix)?;
        Ok(LexPermutations::new(n)
            .filter(Permutation::is_single_cycle)
            .map(|p| MultiPoly::monomial(Monomial::from_function(p.images())))
            .sum())
    }

    /// One monomial per rooted functional tree on `[n]`, by enumeration of
    /// all functions `[n] → [n]`.
    pub fn tree_listing(&self, n: usize) -> Result<MultiPoly> {
        Self::check("tree_listing", n, 1, self.caps.matrix)?;
        Ok(EdgeFunctions::new(n)
            .filter(|f| f.tree_root().is_some())
            .map(|f| MultiPoly::monomial(Monomial::from_function(f.images())))
            .sum())
    }

    /// `det(-A_S) · per(A_{[n]∖S})` for one subset `S` of `[n]`.
    pub fn hc_identity_term(&self, n: usize, s: &IndexSet) -> Result<MultiPoly> {
        Self::check("sym_hc_identity_term", n, 1, self.caps.identity)?;
        let a = PolyMatrix::generic(n);
        let det = a.principal(s)?.neg().det();
        let per = a.principal(&s.complement())?.per();
        Ok(&det * &per)
    }

    /// `Σ_{S ⊆ [n-1]} det(-A_S) · per(A_{[n]∖S})`, fully expanded.
    pub fn hc_identity_expand(&self, n: usize) -> Result<MultiPoly> {
        Self::check("sym_hc_identity_expand", n, 1, self.caps.identity)?;
        let mut total = MultiPoly::zero();
        for s in IndexSet::full(n).without(n).subsets() {
            total += &self.hc_identity_term(n, &s)?;
        }
        Ok(total)
    }

    /// Coefficient of `M_σ` in each subset term `det(-A_S)·per(A_{[n]∖S})`,
    /// for every `S ⊆ [n-1]`.
    pub fn coeff_profile_terms(
        &self,
        n: usize,
        sigma: &Permutation,
    ) -> Result<Vec<(IndexSet, BigInt)>> {
        Self::check("sym_coeff_profile", n, 1, self.caps.identity)?;
        if sigma.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "permutation on [{}] used with n = {n}",
                sigma.len()
            )));
        }
        let target = Monomial::from_function(sigma.images());
        IndexSet::full(n)
            .without(n)
            .subsets()
            .map(|s| Ok((s, self.hc_identity_term(n, &s)?.coefficient(&target))))
            .collect()
    }

    /// Coefficient of `M_σ` in the expanded cycle identity: 1 when `σ` is a
    /// single cycle, 0 otherwise.
    pub fn coeff_profile(&self, n: usize, sigma: &Permutation) -> Result<BigInt> {
        Ok(self
            .coeff_profile_terms(n, sigma)?
            .into_iter()
            .map(|(_, c)| c)
            .sum())
    }

    /// `Σ_i a(i,i) · det(diag(A·1) - A)_{[n]∖{i}}`, fully expanded.
    pub fn tdmtt(&self, n: usize) -> Result<MultiPoly> {
        Self::check("sym_tdmtt", n, 1, self.caps.matrix)?;
        let laplacian = PolyMatrix::from_fn(n, |k, l| {
            if k == l {
                let row: MultiPoly = (1..=n).map(|j| MultiPoly::edge(k, j)).sum();
                &row - &MultiPoly::edge(k, k)
            } else {
                -MultiPoly::edge(k, l)
            }
        });
        let mut total = MultiPoly::zero();
        for i in 1..=n {
            let minor = laplacian.principal(&IndexSet::full(n).without(i))?;
            total += &(&MultiPoly::edge(i, i) * &minor.det());
        }
        Ok(total)
    }

    /// `∂_[n] Σ_j a(n,j)x(j) · det(diag(A·x) - A·diag(x))_[n-1]`.
    pub fn hc_derivative_form(&self, n: usize) -> Result<MultiPoly> {
        Self::check("sym_hc_derivative_form", n, 1, self.caps.derivative)?;
        let ax = |k: usize, l: usize| &MultiPoly::edge(k, l) * &MultiPoly::vertex(l);
        let full = PolyMatrix::from_fn(n, |k, l| {
            if k == l {
                let row: MultiPoly = (1..=n).map(|j| ax(k, j)).sum();
                &row - &ax(k, k)
            } else {
                -ax(k, l)
            }
        });
        let minor = full.principal(&IndexSet::full(n).without(n))?.det();
        let last_row: MultiPoly = (1..=n).map(|j| ax(n, j)).sum();
        let all: Vec<usize> = (1..=n).collect();
        Ok((&last_row * &minor).partial_derivative(&all))
    }

    /// Both sides of `det(A + diag(x)) = Σ_{S ⊆ [n]} det(A_S) · Π_{i∉S} x(i)`.
    pub fn det_sum_lemma_sides(&self, n: usize) -> Result<(MultiPoly, MultiPoly)> {
        Self::check("sym_det_sum_lemma_check", n, 1, self.caps.matrix)?;
        let a = PolyMatrix::generic(n);
        let perturbed = PolyMatrix::from_fn(n, |i, j| {
            if i == j {
                &MultiPoly::edge(i, i) + &MultiPoly::vertex(i)
            } else {
                MultiPoly::edge(i, j)
            }
        });
        let lhs = perturbed.det();
        let mut rhs = MultiPoly::zero();
        for s in IndexSet::full(n).subsets() {
            let outside: MultiPoly = s
                .complement()
                .iter()
                .fold(MultiPoly::one(), |p, i| &p * &MultiPoly::vertex(i));
            rhs += &(&a.principal(&s)?.det() * &outside);
        }
        Ok((lhs, rhs))
    }

    pub fn det_sum_lemma_check(&self, n: usize) -> Result<bool> {
        let (lhs, rhs) = self.det_sum_lemma_sides(n)?;
        Ok(lhs == rhs)
    }
}

pub fn sym_det(m: &PolyMatrix) -> Result<MultiPoly> {
    Symbolic::default().det(m)
}

pub fn sym_per(m: &PolyMatrix) -> Result<MultiPoly> {
    Symbolic::default().per(m)
}

pub fn sym_hc_listing(n: usize) -> Result<MultiPoly> {
    Symbolic::default().hc_listing(n)
}

pub fn sym_hc_identity_expand(n: usize) -> Result<MultiPoly> {
    Symbolic::default().hc_identity_expand(n)
}

pub fn sym_coeff_profile(n: usize, sigma: &Permutation) -> Result<BigInt> {
    Symbolic::default().coeff_profile(n, sigma)
}

pub fn sym_tdmtt(n: usize) -> Result<MultiPoly> {
    Symbolic::default().tdmtt(n)
}

pub fn sym_hc_derivative_form(n: usize) -> Result<MultiPoly> {
    Symbolic::default().hc_derivative_form(n)
}

pub fn sym_det_sum_lemma_check(n: usize) -> Result<bool> {
    Symbolic::default().det_sum_lemma_check(n)
}
