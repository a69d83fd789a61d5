//! Subset-sum evaluators for the Hamiltonian cycle, Hamiltonian path and
//! rooted tree polynomials.
//!
//! Each evaluator is a sum of determinant–permanent products over index
//! sets. Sums over large subset ranges can be split across a rayon pool;
//! partial sums are combined in chunk order so the result never depends on
//! the thread count.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{low_mask, signed, BitIter, IndexSet, SquareMatrix, MAX_UNIVERSE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    HcIdentity,
    HcBruteforce,
    HpIdentity,
    HpBruteforce,
    TreeTdmtt,
    TreeBruteforce,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::HcIdentity => "hc_identity",
            Method::HcBruteforce => "hc_bruteforce",
            Method::HpIdentity => "hp_identity",
            Method::HpBruteforce => "hp_bruteforce",
            Method::TreeTdmtt => "tree_tdmtt",
            Method::TreeBruteforce => "tree_bruteforce",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub n: usize,
    pub count: BigInt,
    pub method: Method,
    pub elapsed: Duration,
    /// Number of subset (or index-pair) terms summed.
    pub terms_evaluated: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    pub threads: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { threads: 1 }
    }
}

impl EvalOptions {
    pub fn with_threads(threads: usize) -> Self {
        EvalOptions { threads }
    }
}

fn check_dim(a: &SquareMatrix, min: usize, what: &str) -> Result<()> {
    let n = a.dim();
    if n < min || n > MAX_UNIVERSE {
        return Err(Error::UnsupportedDimension(format!(
            "{what} needs {min} <= n <= {MAX_UNIVERSE}, got {n}"
        )));
    }
    Ok(())
}

/// Sums `term(mask)` over `mask in 0..count`.
fn subset_sum<F>(count: u64, opts: &EvalOptions, term: F) -> Result<BigInt>
where
    F: Fn(u64) -> BigInt + Sync,
{
    if opts.threads == 0 {
        return Err(Error::contract("thread count must be at least 1"));
    }
    if opts.threads == 1 || count < 64 {
        return Ok((0..count).map(term).sum());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .map_err(|e| Error::ThreadPool(e.to_string()))?;
    let chunks = (opts.threads as u64 * 16).min(count);
    let partials: Vec<BigInt> = pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let lo = count * c / chunks;
                let hi = count * (c + 1) / chunks;
                (lo..hi).map(&term).sum::<BigInt>()
            })
            .collect()
    });
    Ok(partials.into_iter().sum())
}

/// `det(-A_S) · per(A_{[n]∖S})` for the bitmask `s`.
fn hc_term(a: &SquareMatrix, s: u64) -> BigInt {
    let full = low_mask(a.dim());
    let d = a.submatrix_unchecked(s, s).det();
    if d.is_zero() {
        return d;
    }
    let rest = full & !s;
    signed(d, s.count_ones() as usize) * a.submatrix_unchecked(rest, rest).per()
}

/// Hamiltonian cycle count `Σ_{S ⊆ [n-1]} det(-A_S) · per(A_{[n]∖S})`.
///
/// Vertex `n` is never in `S`. Runs single-threaded.
pub fn hc_count_identity(a: &SquareMatrix) -> Result<CountReport> {
    hc_count_identity_with(a, &EvalOptions::default())
}

pub fn hc_count_identity_with(a: &SquareMatrix, opts: &EvalOptions) -> Result<CountReport> {
    check_dim(a, 1, "hc_count_identity")?;
    let start = Instant::now();
    let terms = 1u64 << (a.dim() - 1);
    let count = subset_sum(terms, opts, |s| hc_term(a, s))?;
    Ok(CountReport {
        n: a.dim(),
        count,
        method: Method::HcIdentity,
        elapsed: start.elapsed(),
        terms_evaluated: terms,
    })
}

/// `Σ_{S ⊆ [n]} det(-A_S) · per(A_{[n]∖S})`, the cycle identity with the
/// restriction on vertex `n` dropped. Identically zero.
pub fn hc_full_range_sum(a: &SquareMatrix) -> Result<BigInt> {
    check_dim(a, 1, "hc_full_range_sum")?;
    Ok((0..1u64 << a.dim()).map(|s| hc_term(a, s)).sum())
}

/// Hamiltonian path count
/// `Σ_{i≠j} Σ_{{i,j} ⊆ T ⊆ [n]} a_jj · det(-A)_{[n]∖T} · per(A)_{T∖{j}, T∖{i}}`.
///
/// Every path from `i` to `j` is weighted by the loop entry `a_jj` at its
/// end vertex; set the diagonal to 1 for plain path counts.
pub fn hp_count_identity(a: &SquareMatrix) -> Result<CountReport> {
    hp_count_identity_with(a, &EvalOptions::default())
}

pub fn hp_count_identity_with(a: &SquareMatrix, opts: &EvalOptions) -> Result<CountReport> {
    check_dim(a, 2, "hp_count_identity")?;
    let n = a.dim();
    let start = Instant::now();
    let full = low_mask(n);
    let count = subset_sum(1u64 << n, opts, |t| {
        let k = t.count_ones() as usize;
        if k < 2 {
            return BigInt::zero();
        }
        let rest = full & !t;
        let d = a.submatrix_unchecked(rest, rest).det();
        if d.is_zero() {
            return d;
        }
        let d = signed(d, n - k);
        let mut sum = BigInt::zero();
        for j in BitIter(t) {
            let loop_weight = a.entry(j + 1, j + 1);
            if loop_weight.is_zero() {
                continue;
            }
            for i in BitIter(t) {
                if i == j {
                    continue;
                }
                let p = a.submatrix_unchecked(t & !(1 << j), t & !(1 << i)).per();
                sum += loop_weight * p;
            }
        }
        d * sum
    })?;
    // ordered pairs inside every T: Σ_k C(n,k)·k·(k-1) = n(n-1)·2^(n-2)
    let terms = (n * (n - 1)) as u64 * (1u64 << (n - 2));
    Ok(CountReport {
        n,
        count,
        method: Method::HpIdentity,
        elapsed: start.elapsed(),
        terms_evaluated: terms,
    })
}

/// The `i = j` terms left out of [`hp_count_identity`]:
/// `Σ_i Σ_{T ∋ i} a_ii · det(-A)_{[n]∖T} · per(A_{T∖{i}})`. Zero for `n ≥ 2`.
pub fn hp_diagonal_pair_sum(a: &SquareMatrix) -> Result<BigInt> {
    check_dim(a, 1, "hp_diagonal_pair_sum")?;
    let n = a.dim();
    let full = low_mask(n);
    let mut total = BigInt::zero();
    for t in 1..=full {
        let rest = full & !t;
        let d = signed(
            a.submatrix_unchecked(rest, rest).det(),
            rest.count_ones() as usize,
        );
        for i in BitIter(t) {
            let inner = t & !(1 << i);
            total += a.entry(i + 1, i + 1) * &d * a.submatrix_unchecked(inner, inner).per();
        }
    }
    Ok(total)
}

/// Weighted rooted-tree count `Σ_i a_ii · det(diag(A·1) - A)_{[n]∖{i}}`.
///
/// Each tree carries the loop weight of its root.
pub fn tree_count_tdmtt(a: &SquareMatrix) -> Result<CountReport> {
    check_dim(a, 1, "tree_count_tdmtt")?;
    let start = Instant::now();
    let n = a.dim();
    let laplacian = a.row_sum_laplacian();
    let count = (1..=n).map(|root| rooted_term(a, &laplacian, root)).sum();
    Ok(CountReport {
        n,
        count,
        method: Method::TreeTdmtt,
        elapsed: start.elapsed(),
        terms_evaluated: n as u64,
    })
}

/// `a_rr · det(diag(A·1) - A)_{[n]∖{r}}`: trees rooted at `root`.
pub fn tree_count_rooted(a: &SquareMatrix, root: usize) -> Result<BigInt> {
    check_dim(a, 1, "tree_count_rooted")?;
    if root == 0 || root > a.dim() {
        return Err(Error::contract(format!(
            "root {root} out of range 1..={}",
            a.dim()
        )));
    }
    Ok(rooted_term(a, &a.row_sum_laplacian(), root))
}

fn rooted_term(a: &SquareMatrix, laplacian: &SquareMatrix, root: usize) -> BigInt {
    let w = a.entry(root, root);
    if w.is_zero() {
        return BigInt::zero();
    }
    let minor = low_mask(a.dim()) & !(1 << (root - 1));
    w * laplacian.submatrix_unchecked(minor, minor).det()
}

/// `Σ_{S ⊆ U} det(A_S) · Π_{i ∈ U∖S} x_i` over subsets of `universe`.
///
/// `x` holds one value per element of `universe`, in increasing order. With
/// `universe = [n]` this equals `det(A + diag(x))`.
pub fn det_sum_expand(a: &SquareMatrix, x: &[BigInt], universe: &IndexSet) -> Result<BigInt> {
    if universe.universe() != a.dim() {
        return Err(Error::contract(format!(
            "universe is a subset of [{}] but the matrix is {}x{}",
            universe.universe(),
            a.dim(),
            a.dim()
        )));
    }
    if x.len() != universe.len() {
        return Err(Error::contract(format!(
            "x has {} entries, universe has {} elements",
            x.len(),
            universe.len()
        )));
    }
    let elements: Vec<usize> = universe.iter().collect();
    let mut total = BigInt::zero();
    for s in universe.subsets() {
        let minor = a.principal_submatrix(&s)?.det();
        if minor.is_zero() {
            continue;
        }
        let outside: BigInt = elements
            .iter()
            .zip(x)
            .filter(|(&e, _)| !s.contains(e))
            .map(|(_, xi)| xi)
            .product();
        total += minor * outside;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles;
    use crate::random::seeded_matrix;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn m(rows: &[&[i64]]) -> SquareMatrix {
        SquareMatrix::from_rows(rows.iter().map(|r| r.iter().copied())).unwrap()
    }

    #[test]
    fn hc_examples() {
        let r = hc_count_identity(&SquareMatrix::all_ones(3)).unwrap();
        assert_eq!(r.count, b(2));
        assert_eq!(r.terms_evaluated, 4);
        assert_eq!(r.method, Method::HcIdentity);
        assert_eq!(hc_count_identity(&m(&[&[5]])).unwrap().count, b(5));
        assert_eq!(
            hc_count_identity(&SquareMatrix::complete_loopless(4))
                .unwrap()
                .count,
            b(6)
        );
        assert!(hc_count_identity(&SquareMatrix::zeros(0)).is_err());
    }

    #[test]
    fn hp_examples() {
        assert_eq!(
            hp_count_identity(&SquareMatrix::all_ones(2)).unwrap().count,
            b(2)
        );
        assert_eq!(
            hp_count_identity(&SquareMatrix::all_ones(3)).unwrap().count,
            b(6)
        );
        assert_eq!(
            hp_count_identity(&SquareMatrix::zeros(3)).unwrap().count,
            b(0)
        );
        assert!(matches!(
            hp_count_identity(&m(&[&[1]])),
            Err(Error::UnsupportedDimension(_))
        ));
    }

    #[test]
    fn hp_terms_counted() {
        // n=3: T={1,2},{1,3},{2,3} give 2 pairs each, T=[3] gives 6
        let r = hp_count_identity(&SquareMatrix::all_ones(3)).unwrap();
        assert_eq!(r.terms_evaluated, 12);
    }

    #[test]
    fn tree_examples() {
        let r = tree_count_tdmtt(&SquareMatrix::all_ones(3)).unwrap();
        assert_eq!(r.count, b(9));
        assert_eq!(r.terms_evaluated, 3);
        assert_eq!(tree_count_tdmtt(&m(&[&[-4]])).unwrap().count, b(-4));
        assert_eq!(
            tree_count_tdmtt(&SquareMatrix::all_ones(4)).unwrap().count,
            b(64)
        );
    }

    #[test]
    fn rooted_examples() {
        assert_eq!(
            tree_count_rooted(&SquareMatrix::all_ones(3), 1).unwrap(),
            b(3)
        );
        for root in 1..=4 {
            assert_eq!(
                tree_count_rooted(&SquareMatrix::all_ones(4), root).unwrap(),
                b(16)
            );
        }
        let a = m(&[&[1, 2, 3], &[4, 0, 6], &[7, 8, 9]]);
        assert_eq!(tree_count_rooted(&a, 2).unwrap(), b(0));
        assert!(matches!(tree_count_rooted(&a, 4), Err(Error::Contract(_))));
        assert!(tree_count_rooted(&a, 0).is_err());
    }

    #[test]
    fn det_sum_examples() {
        let x: Vec<BigInt> = [2, -3, 5].iter().map(|&v| b(v)).collect();
        let full = IndexSet::full(3);
        assert_eq!(
            det_sum_expand(&SquareMatrix::zeros(3), &x, &full).unwrap(),
            b(-30)
        );
        let a = seeded_matrix(7, 3, -9, 9);
        let zero = vec![b(0); 3];
        assert_eq!(det_sum_expand(&a, &zero, &full).unwrap(), a.det());
        assert_eq!(
            det_sum_expand(&a, &x, &full).unwrap(),
            a.add_diagonal(&x).unwrap().det()
        );
        assert!(det_sum_expand(&a, &x[..2], &full).is_err());
        assert!(det_sum_expand(&a, &x, &IndexSet::full(4)).is_err());
    }

    #[test]
    fn det_sum_over_proper_universe() {
        let a = seeded_matrix(11, 5, -9, 9);
        let u = IndexSet::from_indices(&[1, 3, 4], 5).unwrap();
        let x: Vec<BigInt> = [4, -1, 6].iter().map(|&v| b(v)).collect();
        let direct = a
            .principal_submatrix(&u)
            .unwrap()
            .add_diagonal(&x)
            .unwrap()
            .det();
        assert_eq!(det_sum_expand(&a, &x, &u).unwrap(), direct);
    }

    #[test]
    fn parallel_matches_sequential() {
        for seed in 0..3 {
            let a = seeded_matrix(seed, 9, -9, 9);
            let one = hc_count_identity(&a).unwrap().count;
            for threads in [2, 3, 4] {
                let par = hc_count_identity_with(&a, &EvalOptions::with_threads(threads)).unwrap();
                assert_eq!(par.count, one);
                assert_eq!(par.terms_evaluated, 256);
            }
            let hp = hp_count_identity(&a).unwrap().count;
            assert_eq!(
                hp_count_identity_with(&a, &EvalOptions::with_threads(4))
                    .unwrap()
                    .count,
                hp
            );
        }
        assert!(
            hc_count_identity_with(&SquareMatrix::all_ones(3), &EvalOptions::with_threads(0))
                .is_err()
        );
    }

    #[test]
    fn small_oracle_spot_checks() {
        for seed in 0..20 {
            let a = seeded_matrix(seed, 5, -9, 9);
            assert_eq!(
                hc_count_identity(&a).unwrap().count,
                oracles::hc_bruteforce(&a).unwrap()
            );
            assert_eq!(
                hp_count_identity(&a).unwrap().count,
                oracles::hp_bruteforce(&a).unwrap()
            );
            assert_eq!(
                tree_count_tdmtt(&a).unwrap().count,
                oracles::tree_bruteforce(&a).unwrap()
            );
        }
    }

    #[test]
    fn cancellation_sums_vanish() {
        for seed in 0..10 {
            for n in 1..=5 {
                let a = seeded_matrix(seed, n, -9, 9);
                assert!(hc_full_range_sum(&a).unwrap().is_zero());
                if n >= 2 {
                    assert!(hp_diagonal_pair_sum(&a).unwrap().is_zero());
                }
            }
        }
        // n = 1: the only i = j term is a_11 · per(∅) · det(∅)
        assert_eq!(hp_diagonal_pair_sum(&m(&[&[3]])).unwrap(), b(3));
    }
}
