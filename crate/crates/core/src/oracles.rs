//! Brute-force enumerators used as ground truth at small `n`.
//!
//! Nothing here shares code with the elimination, Ryser or subset-sum
//! routines it checks: every oracle walks permutations or functions
//! `[n] → [n]` directly and multiplies out edge monomials. Above the
//! configured cap each oracle refuses with [`Error::CapExceeded`].

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::SquareMatrix;

pub const DEFAULT_PERMUTATION_CAP: usize = 10;
pub const DEFAULT_FUNCTION_CAP: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    /// Largest `n` for `n!` enumerations.
    pub permutations: usize,
    /// Largest `n` for `n^n` enumerations.
    pub functions: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            permutations: DEFAULT_PERMUTATION_CAP,
            functions: DEFAULT_FUNCTION_CAP,
        }
    }
}

/// A permutation of `[n]`, stored as 1-indexed images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (1..=n).collect(),
        }
    }

    pub fn from_images(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v == 0 || v > n {
                return Err(Error::contract(format!("image {v} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::contract(format!("image {v} repeated")));
            }
        }
        Ok(Permutation { image })
    }

    /// Builds a permutation of `[n]` from disjoint cycles; unlisted points
    /// are fixed.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut image: Vec<usize> = (1..=n).collect();
        for cycle in cycles {
            for (k, &v) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                if v == 0 || v > n || next == 0 || next > n {
                    return Err(Error::contract(format!("cycle element outside 1..={n}")));
                }
                image[v - 1] = next;
            }
        }
        Self::from_images(image)
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// `σ(i)`, 1-indexed.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.image.len();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                v = self.image[v] - 1;
            }
        }
        cycles
    }

    /// True iff following `σ` from vertex 1 visits all `n` vertices before
    /// returning.
    pub fn is_single_cycle(&self) -> bool {
        let n = self.image.len();
        if n == 0 {
            return false;
        }
        let mut v = 1;
        let mut steps = 0;
        loop {
            v = self.apply(v);
            steps += 1;
            if v == 1 {
                return steps == n;
            }
        }
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i32 {
        if (self.image.len() - self.cycle_count()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `Π a_{i,σ(i)}`.
    pub fn weight(&self, a: &SquareMatrix) -> BigInt {
        self.image
            .iter()
            .enumerate()
            .map(|(i, &v)| a.entry(i + 1, v))
            .product()
    }
}

/// All permutations of `[n]` in lexicographic order of their image
/// vectors, generated by the iterative successor rule.
pub struct LexPermutations {
    current: Option<Vec<usize>>,
}

impl LexPermutations {
    pub fn new(n: usize) -> Self {
        LexPermutations {
            current: Some((1..=n).collect()),
        }
    }
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.current.take()?;
        let mut succ = cur.clone();
        if next_lex(&mut succ) {
            self.current = Some(succ);
        }
        Some(Permutation { image: cur })
    }
}

/// Advances `v` to its lexicographic successor; false if `v` was the last
/// arrangement.
fn next_lex(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A function `f: [n] → [n]` (1-indexed images). Its graph has out-degree
/// one at every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeFunction {
    image: Vec<usize>,
}

impl EdgeFunction {
    pub fn from_images(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        if let Some(&v) = image.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::contract(format!("image {v} outside 1..={n}")));
        }
        Ok(EdgeFunction { image })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    /// The root if the graph is a rooted functional tree: exactly one fixed
    /// point `r`, and every vertex reaches `r` under iteration.
    pub fn tree_root(&self) -> Option<usize> {
        let n = self.image.len();
        let mut fixed = (1..=n).filter(|&i| self.apply(i) == i);
        let root = fixed.next()?;
        if fixed.next().is_some() {
            return None;
        }
        for start in 1..=n {
            let mut v = start;
            // n steps suffice to reach the root from anywhere on a tree
            for _ in 0..n {
                v = self.apply(v);
            }
            if v != root {
                return None;
            }
        }
        Some(root)
    }

    /// In-degree of each vertex.
    pub fn in_degrees(&self) -> Vec<u32> {
        let mut deg = vec![0; self.image.len()];
        for &v in &self.image {
            deg[v - 1] += 1;
        }
        deg
    }

    /// Edge monomial `Π a_{i,f(i)}` evaluated at `a`.
    pub fn weight(&self, a: &SquareMatrix) -> BigInt {
        self.image
            .iter()
            .enumerate()
            .map(|(i, &v)| a.entry(i + 1, v))
            .product()
    }
}

/// All `n^n` functions `[n] → [n]`, odometer order.
pub struct EdgeFunctions {
    current: Option<Vec<usize>>,
}

impl EdgeFunctions {
    pub fn new(n: usize) -> Self {
        EdgeFunctions {
            current: if n == 0 { None } else { Some(vec![1; n]) },
        }
    }
}

impl Iterator for EdgeFunctions {
    type Item = EdgeFunction;

    fn next(&mut self) -> Option<EdgeFunction> {
        let cur = self.current.take()?;
        let n = cur.len();
        let mut succ = cur.clone();
        let mut k = n;
        while k > 0 {
            k -= 1;
            if succ[k] < n {
                succ[k] += 1;
                self.current = Some(succ);
                break;
            }
            succ[k] = 1;
        }
        Some(EdgeFunction { image: cur })
    }
}

/// Brute-force evaluator with configurable caps.
#[derive(Debug, Clone, Copy, Default)]
pub struct Oracle {
    pub caps: OracleCaps,
}

impl Oracle {
    pub fn new(caps: OracleCaps) -> Self {
        Oracle { caps }
    }

    fn check_perm(&self, what: &'static str, n: usize) -> Result<()> {
        if n > self.caps.permutations {
            Err(Error::CapExceeded {
                what,
                n,
                cap: self.caps.permutations,
            })
        } else {
            Ok(())
        }
    }

    fn check_func(&self, what: &'static str, n: usize) -> Result<()> {
        if n > self.caps.functions {
            Err(Error::CapExceeded {
                what,
                n,
                cap: self.caps.functions,
            })
        } else {
            Ok(())
        }
    }

    /// Sum of edge monomials over single-cycle permutations.
    pub fn hc(&self, a: &SquareMatrix) -> Result<BigInt> {
        let n = a.dim();
        if n == 0 {
            return Err(Error::UnsupportedDimension("cycles need n >= 1".into()));
        }
        self.check_perm("hc_bruteforce", n)?;
        Ok(LexPermutations::new(n)
            .filter(Permutation::is_single_cycle)
            .map(|p| p.weight(a))
            .sum())
    }

    /// Sum over orderings `(v1, …, vn)` of `a_{vn,vn} · Π a_{vk,vk+1}`:
    /// functional paths ending in a loop at the last vertex.
    pub fn hp(&self, a: &SquareMatrix) -> Result<BigInt> {
        let n = a.dim();
        if n < 2 {
            return Err(Error::UnsupportedDimension(format!(
                "paths need n >= 2, got {n}"
            )));
        }
        self.check_perm("hp_bruteforce", n)?;
        let mut total = BigInt::zero();
        for order in LexPermutations::new(n) {
            let v = order.images();
            let last = v[n - 1];
            let mut term = a.entry(last, last).clone();
            for w in v.windows(2) {
                if term.is_zero() {
                    break;
                }
                term *= a.entry(w[0], w[1]);
            }
            total += term;
        }
        Ok(total)
    }

    /// Sum of edge monomials over rooted functional trees.
    pub fn trees(&self, a: &SquareMatrix) -> Result<BigInt> {
        self.trees_filtered(a, None)
    }

    /// Like [`Self::trees`], restricted to trees rooted at `root`.
    pub fn trees_rooted(&self, a: &SquareMatrix, root: usize) -> Result<BigInt> {
        if root == 0 || root > a.dim() {
            return Err(Error::contract(format!(
                "root {root} out of range 1..={}",
                a.dim()
            )));
        }
        self.trees_filtered(a, Some(root))
    }

    fn trees_filtered(&self, a: &SquareMatrix, root: Option<usize>) -> Result<BigInt> {
        let n = a.dim();
        if n == 0 {
            return Err(Error::UnsupportedDimension("trees need n >= 1".into()));
        }
        self.check_func("tree_bruteforce", n)?;
        Ok(EdgeFunctions::new(n)
            .filter(|f| match (f.tree_root(), root) {
                (Some(r), Some(want)) => r == want,
                (Some(_), None) => true,
                (None, _) => false,
            })
            .map(|f| f.weight(a))
            .sum())
    }

    pub fn det(&self, a: &SquareMatrix) -> Result<BigInt> {
        self.check_perm("det_leibniz", a.dim())?;
        Ok(LexPermutations::new(a.dim())
            .map(|p| {
                let w = p.weight(a);
                if p.sign() < 0 {
                    -w
                } else {
                    w
                }
            })
            .sum())
    }

    pub fn per(&self, a: &SquareMatrix) -> Result<BigInt> {
        self.check_perm("per_leibniz", a.dim())?;
        Ok(LexPermutations::new(a.dim()).map(|p| p.weight(a)).sum())
    }
}

pub fn hc_bruteforce(a: &SquareMatrix) -> Result<BigInt> {
    Oracle::default().hc(a)
}

pub fn hp_bruteforce(a: &SquareMatrix) -> Result<BigInt> {
    Oracle::default().hp(a)
}

pub fn tree_bruteforce(a: &SquareMatrix) -> Result<BigInt> {
    Oracle::default().trees(a)
}

pub fn det_leibniz(a: &SquareMatrix) -> Result<BigInt> {
    Oracle::default().det(a)
}

pub fn per_leibniz(a: &SquareMatrix) -> Result<BigInt> {
    Oracle::default().per(a)
}
