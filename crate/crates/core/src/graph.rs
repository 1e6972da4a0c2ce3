//! Dense simple undirected graphs on at most 64 vertices.
//!
//! Each vertex owns one `u64` row whose bit `v` is set iff the vertex is
//! adjacent to `v`. Rows are kept symmetric with a clear diagonal.

use crate::error::{Error, Result};

/// Hard cap on the order of any graph.
pub const MAX_ORDER: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    rows: Vec<u64>,
}

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates over the set bits of a mask, lowest first.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        Err(Error::SizeCap(n))
    } else {
        Ok(())
    }
}

impl Graph {
    /// The edgeless graph `I_n`.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyResult);
        }
        check_order(n)?;
        Ok(Graph { rows: vec![0; n] })
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        let all = full_mask(n);
        for (u, row) in g.rows.iter_mut().enumerate() {
            *row = all & !bit(u);
        }
        Ok(g)
    }

    /// Builds a graph from an edge list; duplicate pairs collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    /// Wraps adjacency rows, validating symmetry and the empty diagonal.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyResult);
        }
        check_order(n)?;
        let all = full_mask(n);
        for (u, &row) in rows.iter().enumerate() {
            if row & bit(u) != 0 {
                return Err(Error::InvalidEdge(u));
            }
            if row & !all != 0 {
                return Err(Error::InvalidVertex {
                    vertex: (row & !all).trailing_zeros() as usize,
                    order: n,
                });
            }
            for v in bits(row) {
                if rows[v] & bit(u) == 0 {
                    return Err(Error::InvalidParameters(format!(
                        "adjacency rows not symmetric at ({u}, {v})"
                    )));
                }
            }
        }
        Ok(Graph { rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        debug_assert!(Graph::from_rows(rows.clone()).is_ok());
        Graph { rows }
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.order();
        for w in [u, v] {
            if w >= n {
                return Err(Error::InvalidVertex { vertex: w, order: n });
            }
        }
        if u == v {
            return Err(Error::InvalidEdge(u));
        }
        self.rows[u] |= bit(v);
        self.rows[v] |= bit(u);
        Ok(())
    }

    /// Returns a copy with the edge `uv` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        let mut g = self.clone();
        g.insert_edge(u, v)?;
        Ok(g)
    }

    /// Returns a copy with the edge `uv` removed (a no-op if absent).
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Self> {
        let n = self.order();
        for w in [u, v] {
            if w >= n {
                return Err(Error::InvalidVertex { vertex: w, order: n });
            }
        }
        let mut g = self.clone();
        g.rows[u] &= !bit(v);
        g.rows[v] &= !bit(u);
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> u64 {
        self.rows[u]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] & bit(v) != 0
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.rows[u].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|u| self.degree(u)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order() {
            for v in bits(self.rows[u] >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order()).map(|u| self.degree(u)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    /// Vertex masks of the connected components, ordered by lowest vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.order() {
            if seen & bit(s) != 0 {
                continue;
            }
            let mut comp = bit(s);
            let mut frontier = bit(s);
            while frontier != 0 {
                let mut next = 0u64;
                for v in bits(frontier) {
                    next |= self.rows[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Subgraph induced on the vertices of `mask`, relabeled in increasing order.
    pub fn induced(&self, mask: u64) -> Result<Self> {
        let keep: Vec<usize> = bits(mask & full_mask(self.order())).collect();
        if keep.is_empty() {
            return Err(Error::EmptyResult);
        }
        let rows = keep
            .iter()
            .map(|&u| {
                keep.iter()
                    .enumerate()
                    .filter(|&(_, &v)| self.has_edge(u, v))
                    .fold(0u64, |acc, (j, _)| acc | bit(j))
            })
            .collect();
        Ok(Graph { rows })
    }

    /// Applies a relabeling: vertex `u` of `self` becomes vertex `perm[u]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.order();
        debug_assert_eq!(perm.len(), n);
        let mut rows = vec![0u64; n];
        for u in 0..n {
            let mut r = 0u64;
            for v in bits(self.rows[u]) {
                r |= bit(perm[v]);
            }
            rows[perm[u]] = r;
        }
        Graph { rows }
    }

    pub fn complement(&self) -> Self {
        let all = full_mask(self.order());
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(u, &r)| !r & all & !bit(u))
            .collect();
        Graph { rows }
    }

    /// Whether every edge of `self` is an edge of `other` (same order).
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.order() == other.order()
            && self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }
}

/// `G ∨ H`: disjoint union plus every edge between the two blocks.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph> {
    let (a, b) = (g.order(), h.order());
    check_order(a + b)?;
    let left = full_mask(a);
    let right = full_mask(a + b) & !left;
    let mut rows = Vec::with_capacity(a + b);
    rows.extend(g.rows.iter().map(|&r| r | right));
    rows.extend(h.rows.iter().map(|&r| (r << a) | left));
    Ok(Graph { rows })
}

/// `G ∪ H` with the vertices of `H` placed after those of `G`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph> {
    let a = g.order();
    check_order(a + h.order())?;
    let mut rows = g.rows.clone();
    rows.extend(h.rows.iter().map(|&r| r << a));
    Ok(Graph { rows })
}

/// `G^p`: each vertex replaced by `p` independent copies, each edge by `K_{p,p}`.
///
/// Copy `i` of vertex `u` becomes vertex `u * p + i`.
pub fn blow_up(g: &Graph, p: usize) -> Result<Graph> {
    if p < 1 {
        return Err(Error::InvalidParameters("blow-up factor must be >= 1".into()));
    }
    let n = g.order();
    check_order(n * p)?;
    let block = full_mask(p);
    let mut rows = Vec::with_capacity(n * p);
    for u in 0..n {
        let r = bits(g.rows[u]).fold(0u64, |acc, v| acc | (block << (v * p)));
        rows.extend(std::iter::repeat_n(r, p));
    }
    Ok(Graph { rows })
}

/// `G - w`, with surviving vertices keeping their relative order.
pub fn delete_vertex(g: &Graph, w: usize) -> Result<Graph> {
    let n = g.order();
    if w >= n {
        return Err(Error::InvalidVertex { vertex: w, order: n });
    }
    if n == 1 {
        return Err(Error::EmptyResult);
    }
    g.induced(full_mask(n) & !bit(w))
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order(), self.edges())
    }
}
