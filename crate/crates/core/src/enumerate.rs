//! One representative per isomorphism class of small graphs.
//!
//! Classes on `m` vertices are grown from classes on `m − 1` vertices by
//! attaching a new last vertex with every possible neighbourhood and keeping
//! one canonical representative per key. Hereditary filters (forbidden
//! subgraphs, an edge budget) are applied at every level, which is sound
//! because deleting a vertex preserves them; the remaining filters apply to
//! the final level only.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::canon::{canonical_form, canonical_graph, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{bit, Graph};
use crate::structure::{is_free, ForbiddenFamily};

/// Largest order enumerated without an explicit override.
pub const DEFAULT_CAP: usize = 10;
/// Largest order enumerated even with an override.
pub const HARD_CAP: usize = 12;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EnumFilter {
    pub min_degree: Option<usize>,
    pub max_edges: Option<usize>,
    pub family: Option<ForbiddenFamily>,
    pub connected_only: bool,
}

impl EnumFilter {
    pub fn none() -> Self {
        EnumFilter::default()
    }

    pub fn free_of(family: ForbiddenFamily) -> Self {
        EnumFilter { family: Some(family), ..EnumFilter::default() }
    }

    pub fn with_min_degree(mut self, d: usize) -> Self {
        self.min_degree = Some(d);
        self
    }

    pub fn with_max_edges(mut self, m: usize) -> Self {
        self.max_edges = Some(m);
        self
    }

    pub fn connected(mut self) -> Self {
        self.connected_only = true;
        self
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if let Some(d) = self.min_degree {
            if d > n.saturating_sub(1) {
                return Err(Error::InvalidParameters(format!(
                    "min_degree {d} outside [0, {}]",
                    n.saturating_sub(1)
                )));
            }
        }
        if let Some(m) = self.max_edges {
            if m > n * n.saturating_sub(1) / 2 {
                return Err(Error::InvalidParameters(format!("max_edges {m} exceeds C({n}, 2)")));
            }
        }
        Ok(())
    }

    fn passes_hereditary(&self, g: &Graph) -> bool {
        if let Some(m) = self.max_edges {
            if g.edge_count() > m {
                return false;
            }
        }
        match &self.family {
            Some(f) => is_free(g, f),
            None => true,
        }
    }

    fn passes_final(&self, g: &Graph) -> bool {
        if let Some(d) = self.min_degree {
            if g.min_degree() < d {
                return false;
            }
        }
        !self.connected_only || g.is_connected()
    }

    pub fn accepts(&self, g: &Graph) -> bool {
        self.passes_hereditary(g) && self.passes_final(g)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumOptions {
    /// Allow orders above [`DEFAULT_CAP`] (never above [`HARD_CAP`]).
    pub force: bool,
}

/// An isomorphism class: its canonical key and canonically labeled graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphClass {
    pub key: CanonicalForm,
    pub graph: Graph,
}

pub fn check_cap(n: usize, opts: EnumOptions) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameters("order must be at least 1".into()));
    }
    let cap = if opts.force { HARD_CAP } else { DEFAULT_CAP };
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    Ok(())
}

/// All classes on `n` vertices passing `filter`, in ascending key order.
pub fn enumerate_graphs(n: usize, filter: &EnumFilter, opts: EnumOptions) -> Result<Vec<GraphClass>> {
    check_cap(n, opts)?;
    filter.validate(n)?;
    let mut level = vec![Graph::empty(1)?];
    level.retain(|g| filter.passes_hereditary(g));
    for m in 2..=n {
        level = extend_level(&level, m, filter);
    }
    let mut out: Vec<GraphClass> = level
        .into_par_iter()
        .filter(|g| filter.passes_final(g))
        .map(|graph| GraphClass { key: canonical_form(&graph), graph })
        .collect();
    out.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(out)
}

pub fn count_classes(n: usize, filter: &EnumFilter, opts: EnumOptions) -> Result<usize> {
    enumerate_graphs(n, filter, opts).map(|v| v.len())
}

/// Partitions the work by the neighbourhood mask of the new vertex; the
/// per-partition sets merge into a set, so the result is independent of
/// how the partitions are scheduled.
fn extend_level(parents: &[Graph], m: usize, filter: &EnumFilter) -> Vec<Graph> {
    let masks: u64 = 1u64 << (m - 1);
    let found: HashSet<Graph> = (0..masks)
        .into_par_iter()
        .fold(HashSet::new, |mut acc, mask| {
            for parent in parents {
                let mut rows = Vec::with_capacity(m);
                rows.extend(
                    parent
                        .rows()
                        .iter()
                        .enumerate()
                        .map(|(u, &r)| if mask & bit(u) != 0 { r | bit(m - 1) } else { r }),
                );
                rows.push(mask);
                let child = Graph::from_rows_unchecked(rows);
                if filter.passes_hereditary(&child) {
                    acc.insert(canonical_graph(&child));
                }
            }
            acc
        })
        .reduce(HashSet::new, |a, b| {
            let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
            big.extend(small);
            big
        });
    let mut level: Vec<Graph> = found.into_iter().collect();
    level.sort();
    level
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Independent route: every labeled graph, bucketed by canonical key.
    fn labeled_oracle(n: usize) -> BTreeSet<CanonicalForm> {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        (0..1u64 << pairs.len())
            .map(|mask| {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                canonical_form(&Graph::from_edges(n, &edges).unwrap())
            })
            .collect()
    }

    #[test]
    fn class_counts() {
        let none = EnumFilter::none();
        let opts = EnumOptions::default();
        assert_eq!(count_classes(1, &none, opts).unwrap(), 1);
        assert_eq!(count_classes(2, &none, opts).unwrap(), 2);
        assert_eq!(count_classes(3, &none, opts).unwrap(), 4);
        assert_eq!(count_classes(4, &none, opts).unwrap(), 11);
        assert_eq!(count_classes(5, &none, opts).unwrap(), 34);
        assert_eq!(count_classes(6, &none, opts).unwrap(), 156);
        assert_eq!(count_classes(7, &none, opts).unwrap(), 1044);
    }

    #[test]
    fn matches_labeled_oracle() {
        for n in 1..=5 {
            let stream: BTreeSet<CanonicalForm> = enumerate_graphs(n, &EnumFilter::none(), EnumOptions::default())
                .unwrap()
                .into_iter()
                .map(|c| c.key)
                .collect();
            let oracle = labeled_oracle(n);
            assert_eq!(stream, oracle, "n = {n}");
        }
        assert_eq!(labeled_oracle(4).len(), 11);
        assert_eq!(labeled_oracle(5).len(), 34);
    }

    #[test]
    fn family_filter_commutes() {
        let k3 = ForbiddenFamily::clique(3).unwrap();
        let opts = EnumOptions::default();
        for n in 3..=6 {
            let direct: Vec<_> = enumerate_graphs(n, &EnumFilter::free_of(k3.clone()), opts)
                .unwrap()
                .into_iter()
                .map(|c| c.key)
                .collect();
            let filtered: Vec<_> = enumerate_graphs(n, &EnumFilter::none(), opts)
                .unwrap()
                .into_iter()
                .filter(|c| is_free(&c.graph, &k3))
                .map(|c| c.key)
                .collect();
            assert_eq!(direct, filtered);
        }
        // triangle-free graphs on 5 vertices
        assert_eq!(count_classes(5, &EnumFilter::free_of(k3), opts).unwrap(), 14);
    }

    #[test]
    fn other_filters() {
        let opts = EnumOptions::default();
        let f = EnumFilter::none().with_min_degree(2);
        let classes = enumerate_graphs(3, &f, opts).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].key.as_str(), "Bw");
        assert_eq!(count_classes(4, &EnumFilter::none().connected(), opts).unwrap(), 6);
        assert_eq!(count_classes(5, &EnumFilter::none().with_max_edges(2), opts).unwrap(), 4);
        assert!(enumerate_graphs(3, &EnumFilter::none().with_min_degree(3), opts).is_err());
    }

    #[test]
    fn sorted_and_deterministic() {
        let a = enumerate_graphs(6, &EnumFilter::none(), EnumOptions::default()).unwrap();
        let b = enumerate_graphs(6, &EnumFilter::none(), EnumOptions::default()).unwrap();
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0].key < w[1].key));
        for c in &a {
            assert_eq!(canonical_form(&c.graph), c.key);
        }
    }

    #[test]
    fn caps() {
        let none = EnumFilter::none();
        assert!(matches!(
            enumerate_graphs(11, &none, EnumOptions::default()),
            Err(Error::EnumerationCap { n: 11, cap: 10 })
        ));
        assert!(matches!(
            enumerate_graphs(13, &none, EnumOptions { force: true }),
            Err(Error::EnumerationCap { n: 13, cap: 12 })
        ));
        assert!(enumerate_graphs(0, &none, EnumOptions::default()).is_err());
    }
}
