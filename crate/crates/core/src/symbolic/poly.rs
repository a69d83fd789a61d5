use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::linalg::SquareMatrix;

/// Sparse polynomial with exact integer coefficients over the edge
/// variables `a(i,j)` and vertex variables `x(i)`.
///
/// Terms are kept in canonical monomial order and zero coefficients are
/// never stored, so structural equality is polynomial equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(1, m)
    }

    /// The variable `a(i,j)`.
    pub fn edge(i: usize, j: usize) -> Self {
        Self::monomial(Monomial::edge(i, j))
    }

    /// The variable `x(i)`.
    pub fn vertex(i: usize) -> Self {
        Self::monomial(Monomial::vertex(i))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// True when every coefficient equals 1.
    pub fn is_listing(&self) -> bool {
        self.terms.values().all(One::is_one)
    }

    pub fn is_vertex_free(&self) -> bool {
        self.terms.keys().all(|m| m.vertex_degree() == 0)
    }

    /// `∂/∂x(i)`; edge variables are constants.
    pub fn derive(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some((e, dm)) = m.derive_vertex(i) {
                out.add_term(dm, c * e);
            }
        }
        out
    }

    /// `∂_S = ∂/∂x(s1) ⋯ ∂/∂x(sk)` for a multiset `S` of vertex indices.
    pub fn partial_derivative(&self, s: &[usize]) -> Self {
        s.iter().fold(self.clone(), |p, &i| p.derive(i))
    }

    /// Applies `a(i,j) ← a(i,j)·x(j)` to every term.
    pub fn mark_in_degrees(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.mark_in_degrees(), c.clone());
        }
        out
    }

    /// Substitutes `a(i,j) = a.entry(i,j)` and `x(i) = x[i-1]`.
    pub fn evaluate(&self, a: &SquareMatrix, x: &[BigInt]) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (&(i, j), &e) in m.edge_exponents() {
                v *= num_traits::pow(a.try_entry(i, j)?.clone(), e as usize);
            }
            for (&i, &e) in m.vertex_exponents() {
                let xi = x.get(i.wrapping_sub(1)).ok_or_else(|| {
                    Error::contract(format!("x({i}) has no value; {} supplied", x.len()))
                })?;
                v *= num_traits::pow(xi.clone(), e as usize);
            }
            total += v;
        }
        Ok(total)
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;

    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;

    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        iter.fold(MultiPoly::zero(), |acc, p| acc + p)
    }
}

impl fmt::Display for MultiPoly {
    /// One term per line in canonical order:
    /// `<coeff> * a(i,j)^e * … * x(i)^e * …`. Constant terms print as the
    /// bare coefficient and the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0\n");
        }
        for (m, c) in &self.terms {
            if m.is_one() {
                writeln!(f, "{c}")?;
            } else {
                writeln!(f, "{c} * {m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*{m}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl FromStr for MultiPoly {
    type Err = Error;

    /// Parses the text form written by `Display`. Repeated monomials are
    /// summed; blank lines are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = MultiPoly::zero();
        for (ln, line) in s.lines().enumerate() {
            let line_no = ln + 1;
            if line.trim().is_empty() {
                continue;
            }
            let mut factors = line.split('*').map(str::trim);
            let coeff_tok = factors.next().unwrap_or("");
            let coeff: BigInt = coeff_tok.parse().map_err(|_| {
                Error::parse(line_no, 1, format!("invalid coefficient {coeff_tok:?}"))
            })?;
            let mut m = Monomial::one();
            for tok in factors {
                let col = line.find(tok).map_or(1, |c| c + 1);
                m = m.mul(&parse_factor(tok).ok_or_else(|| {
                    Error::parse(line_no, col, format!("invalid factor {tok:?}"))
                })?);
            }
            p.add_term(m, coeff);
        }
        Ok(p)
    }
}

/// `a(i,j)^e` or `x(i)^e`; a missing exponent means 1.
fn parse_factor(tok: &str) -> Option<Monomial> {
    let (var, exp) = match tok.split_once('^') {
        Some((v, e)) => (v, e.parse::<u32>().ok()?),
        None => (tok, 1),
    };
    let inner = |prefix: &str| {
        var.strip_prefix(prefix)
            .and_then(|r| r.strip_suffix(')'))
            .map(str::to_owned)
    };
    if let Some(args) = inner("a(") {
        let (i, j) = args.split_once(',')?;
        let i: usize = i.trim().parse().ok()?;
        let j: usize = j.trim().parse().ok()?;
        (i >= 1 && j >= 1).then(|| Monomial::edge_pow(i, j, exp))
    } else if let Some(arg) = inner("x(") {
        let i: usize = arg.trim().parse().ok()?;
        (i >= 1).then(|| Monomial::vertex_pow(i, exp))
    } else {
        None
    }
}
