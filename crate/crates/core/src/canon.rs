//! Canonical labeling by partition refinement and individualization.
//!
//! The search tree is the usual one: refine the ordered partition to an
//! equitable one, individualize each vertex of the first non-singleton cell,
//! recurse. Every leaf is a relabeling; the canonical graph is the leaf whose
//! adjacency rows are lexicographically smallest. Automorphisms discovered at
//! equivalent leaves prune both sibling orbits and whole subtrees, which keeps
//! highly symmetric inputs (complete, empty, Turán graphs) cheap.

#![allow(clippy::needless_range_loop)]

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{bit, bits, full_mask, Graph};
use crate::graph6;

/// graph6 key of the canonically relabeled graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    pub fn to_graph(&self) -> Graph {
        graph6::decode(&self.0).expect("canonical keys are valid graph6")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    CanonicalForm(graph6::encode(&canonical_graph(g)))
}

pub fn canonical_graph(g: &Graph) -> Graph {
    g.permuted(&canonical_labeling(g))
}

/// Relabeling `perm` (vertex `u` goes to `perm[u]`) producing the canonical graph.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let n = g.order();
    if n == 1 {
        return vec![0];
    }
    let mut cells = vec![full_mask(n)];
    refine(g, &mut cells);
    let mut search = Search { g, first: None, best: None, autos: Vec::new() };
    let mut path = Vec::with_capacity(n);
    search.descend(cells, &mut path);
    let best = search.best.expect("search visits at least one leaf");
    let mut perm = vec![0; n];
    for (pos, &v) in best.lab.iter().enumerate() {
        perm[v] = pos;
    }
    perm
}

/// Splits cells until every vertex in a cell sees the same number of
/// neighbours in every cell. Fragment order depends only on those counts.
fn refine(g: &Graph, cells: &mut Vec<u64>) {
    let n = g.order();
    let rows = g.rows();
    let mut s = 0;
    let mut groups: Vec<(u32, u64)> = Vec::with_capacity(n);
    while s < cells.len() && cells.len() < n {
        let splitter = cells[s];
        let mut out = Vec::with_capacity(n);
        let mut changed = false;
        for &cell in cells.iter() {
            if cell & (cell - 1) == 0 {
                out.push(cell);
                continue;
            }
            groups.clear();
            for v in bits(cell) {
                let c = (rows[v] & splitter).count_ones();
                match groups.iter_mut().find(|(k, _)| *k == c) {
                    Some((_, m)) => *m |= bit(v),
                    None => groups.push((c, bit(v))),
                }
            }
            if groups.len() == 1 {
                out.push(cell);
            } else {
                groups.sort_unstable_by_key(|&(k, _)| k);
                out.extend(groups.iter().map(|&(_, m)| m));
                changed = true;
            }
        }
        *cells = out;
        s = if changed { 0 } else { s + 1 };
    }
}

struct Leaf {
    cert: Vec<u64>,
    /// position -> vertex
    lab: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search<'_> {
    fn certificate(&self, lab: &[usize]) -> Vec<u64> {
        let n = lab.len();
        let mut pos = vec![0; n];
        for (p, &v) in lab.iter().enumerate() {
            pos[v] = p;
        }
        lab.iter()
            .map(|&v| bits(self.g.neighbors(v)).fold(0u64, |acc, u| acc | bit(pos[u])))
            .collect()
    }

    /// Returns `Some(depth)` when every node deeper than `depth` on the
    /// current path is known to be covered and must be abandoned.
    fn descend(&mut self, cells: Vec<u64>, path: &mut Vec<usize>) -> Option<usize> {
        let n = self.g.order();
        let depth = path.len();
        if cells.len() == n {
            return self.leaf(&cells, path);
        }
        let target_idx = cells
            .iter()
            .position(|c| c & (c - 1) != 0)
            .expect("non-discrete partition has a non-singleton cell");
        let target = cells[target_idx];
        let mut tried: Vec<usize> = Vec::new();
        for v in bits(target) {
            if !tried.is_empty() && self.in_tried_orbit(v, &tried, path) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target_idx]);
            child.push(bit(v));
            child.push(target & !bit(v));
            child.extend_from_slice(&cells[target_idx + 1..]);
            refine(self.g, &mut child);
            path.push(v);
            let jump = self.descend(child, path);
            path.pop();
            tried.push(v);
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[u64], path: &[usize]) -> Option<usize> {
        let lab: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let cert = self.certificate(&lab);
        let Some(first) = &self.first else {
            let leaf = Leaf { cert, lab, path: path.to_vec() };
            self.best = Some(Leaf { cert: leaf.cert.clone(), lab: leaf.lab.clone(), path: leaf.path.clone() });
            self.first = Some(leaf);
            return None;
        };
        if cert == first.cert {
            let gamma = automorphism(&first.lab, &lab);
            let level = common_prefix(&first.path, path);
            self.autos.push(gamma);
            return Some(level);
        }
        let best = self.best.as_ref().expect("best set with first");
        match cert.cmp(&best.cert) {
            Ordering::Equal => {
                let gamma = automorphism(&best.lab, &lab);
                let level = common_prefix(&best.path, path);
                self.autos.push(gamma);
                Some(level)
            }
            Ordering::Less => {
                self.best = Some(Leaf { cert, lab, path: path.to_vec() });
                None
            }
            Ordering::Greater => None,
        }
    }

    /// Whether `v` shares an orbit with an already explored sibling under
    /// the known automorphisms that fix the current path pointwise.
    fn in_tried_orbit(&self, v: usize, tried: &[usize], path: &[usize]) -> bool {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.autos {
            if path.iter().any(|&p| gamma[p] != p) {
                continue;
            }
            any = true;
            for u in 0..n {
                let (a, b) = (find(&mut parent, u), find(&mut parent, gamma[u]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == root)
    }
}

/// The automorphism sending leaf `from` onto leaf `to` position by position.
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut gamma = vec![0; from.len()];
    for (f, t) in from.iter().zip(to) {
        gamma[*f] = *t;
    }
    gamma
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn triangle_key() {
        let k3 = Graph::complete(3).unwrap();
        for p in all_perms(3) {
            assert_eq!(canonical_form(&k3.permuted(&p)).as_str(), "Bw");
        }
    }

    #[test]
    fn c4_labelings_agree() {
        let a = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let b = Graph::from_edges(4, &[(0, 2), (2, 1), (1, 3), (0, 3)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_ne!(canonical_form(&p3), canonical_form(&Graph::complete(3).unwrap()));
    }

    #[test]
    fn invariant_under_every_relabeling() {
        let graphs = [
            FamilySpec::Path(6).generate().unwrap(),
            FamilySpec::Wheel(6).generate().unwrap(),
            FamilySpec::Turan(6, 3).generate().unwrap(),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap(),
            // 3-prism vs K_{3,3}: same degree sequence
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap(),
        ];
        for g in &graphs {
            let key = canonical_form(g);
            for p in all_perms(6) {
                assert_eq!(canonical_form(&g.permuted(&p)), key);
            }
        }
        assert_ne!(canonical_form(&graphs[4]), canonical_form(&FamilySpec::CompleteBipartite(3, 3).generate().unwrap()));
    }

    #[test]
    fn symmetric_large_graphs_are_fast() {
        for n in [30, 63, 64] {
            let k = Graph::complete(n).unwrap();
            assert_eq!(canonical_graph(&k), k);
            let e = Graph::empty(n).unwrap();
            assert_eq!(canonical_graph(&e), e);
        }
        let t = FamilySpec::Turan(40, 4).generate().unwrap();
        let shuffled: Vec<usize> = (0..40).map(|i| (i * 17 + 3) % 40).collect();
        assert_eq!(canonical_form(&t), canonical_form(&t.permuted(&shuffled)));
    }

    #[test]
    fn canonical_graph_is_isomorphic() {
        let g = FamilySpec::Book(2, 3).generate().unwrap();
        let c = canonical_graph(&g);
        let mut a = g.degrees();
        let mut b = c.degrees();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(c.edge_count(), g.edge_count());
    }
}
