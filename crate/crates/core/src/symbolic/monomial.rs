use std::collections::BTreeMap;
use std::fmt;

/// Product of edge variables `a(i,j)` and vertex variables `x(i)`, indices
/// 1-based. No stored exponent is zero.
///
/// The derived order compares edge exponents first (pairs sorted by
/// `(i, j)`), then vertex exponents; it is the canonical term order of
/// [`super::MultiPoly`].
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    edges: BTreeMap<(usize, usize), u32>,
    vertices: BTreeMap<usize, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn edge(i: usize, j: usize) -> Self {
        Self::edge_pow(i, j, 1)
    }

    pub fn edge_pow(i: usize, j: usize, e: u32) -> Self {
        let mut m = Self::one();
        if e > 0 {
            m.edges.insert((i, j), e);
        }
        m
    }

    pub fn vertex(i: usize) -> Self {
        Self::vertex_pow(i, 1)
    }

    pub fn vertex_pow(i: usize, e: u32) -> Self {
        let mut m = Self::one();
        if e > 0 {
            m.vertices.insert(i, e);
        }
        m
    }

    /// Edge monomial `Π a(i, f(i))` of a function given by its 1-indexed
    /// images.
    pub fn from_function(image: &[usize]) -> Self {
        let mut m = Self::one();
        for (i, &j) in image.iter().enumerate() {
            *m.edges.entry((i + 1, j)).or_insert(0) += 1;
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.edges.is_empty() && self.vertices.is_empty()
    }

    pub fn edge_exponents(&self) -> &BTreeMap<(usize, usize), u32> {
        &self.edges
    }

    pub fn vertex_exponents(&self) -> &BTreeMap<usize, u32> {
        &self.vertices
    }

    pub fn edge_exponent(&self, i: usize, j: usize) -> u32 {
        self.edges.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn vertex_exponent(&self, i: usize) -> u32 {
        self.vertices.get(&i).copied().unwrap_or(0)
    }

    pub fn edge_degree(&self) -> u32 {
        self.edges.values().sum()
    }

    pub fn vertex_degree(&self) -> u32 {
        self.vertices.values().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (&k, &e) in &other.edges {
            *out.edges.entry(k).or_insert(0) += e;
        }
        for (&k, &e) in &other.vertices {
            *out.vertices.entry(k).or_insert(0) += e;
        }
        out
    }

    /// `∂/∂x(i)`: the power-rule factor and the reduced monomial, or `None`
    /// when `x(i)` does not occur.
    pub fn derive_vertex(&self, i: usize) -> Option<(u32, Monomial)> {
        let e = self.vertex_exponent(i);
        if e == 0 {
            return None;
        }
        let mut out = self.clone();
        if e == 1 {
            out.vertices.remove(&i);
        } else {
            out.vertices.insert(i, e - 1);
        }
        Some((e, out))
    }

    /// Image under `a(i,j) ← a(i,j)·x(j)`. For an edge monomial the vertex
    /// exponents then equal the in-degrees of its graph.
    pub fn mark_in_degrees(&self) -> Monomial {
        let mut out = self.clone();
        for (&(_, j), &e) in &self.edges {
            *out.vertices.entry(j).or_insert(0) += e;
        }
        out
    }

    /// Largest vertex index mentioned by any variable.
    pub fn max_index(&self) -> usize {
        let e = self.edges.keys().map(|&(i, j)| i.max(j)).max().unwrap_or(0);
        let v = self.vertices.keys().copied().max().unwrap_or(0);
        e.max(v)
    }
}

impl fmt::Display for Monomial {
    /// `a(i,j)^e * … * x(i)^e * …`, or `1` for the empty product.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (&(i, j), &e) in &self.edges {
            if !first {
                f.write_str(" * ")?;
            }
            first = false;
            write!(f, "a({i},{j})^{e}")?;
        }
        for (&i, &e) in &self.vertices {
            if !first {
                f.write_str(" * ")?;
            }
            first = false;
            write!(f, "x({i})^{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
