//! Colouring, colour-criticality and subgraph containment.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::graph::{bit, bits, full_mask, Graph};
use crate::graph6;

/// Exact chromatic number by DSATUR branch and bound.
pub fn chromatic_number(g: &Graph) -> usize {
    let n = g.order();
    if g.edge_count() == 0 {
        return 1;
    }
    let lower = greedy_clique(g);
    let mut coloring = Dsatur {
        g,
        classes: Vec::with_capacity(n),
        colored: 0,
        best: dsatur_greedy(g),
        lower,
    };
    if coloring.best > lower {
        coloring.branch();
    }
    coloring.best
}

fn greedy_clique(g: &Graph) -> usize {
    let n = g.order();
    let mut best = 1;
    for start in 0..n {
        let mut cand = g.neighbors(start);
        let mut size = 1;
        while cand != 0 {
            let v = bits(cand)
                .max_by_key(|&v| ((g.neighbors(v) & cand).count_ones(), std::cmp::Reverse(v)))
                .expect("nonempty candidate set");
            size += 1;
            cand &= g.neighbors(v);
        }
        best = best.max(size);
    }
    best
}

fn dsatur_greedy(g: &Graph) -> usize {
    let n = g.order();
    let mut classes: Vec<u64> = Vec::new();
    let mut uncolored = full_mask(n);
    while uncolored != 0 {
        let v = pick_vertex(g, &classes, uncolored);
        match classes.iter().position(|&c| c & g.neighbors(v) == 0) {
            Some(c) => classes[c] |= bit(v),
            None => classes.push(bit(v)),
        }
        uncolored &= !bit(v);
    }
    classes.len()
}

/// Uncoloured vertex of maximum saturation, ties by uncoloured degree then index.
fn pick_vertex(g: &Graph, classes: &[u64], uncolored: u64) -> usize {
    bits(uncolored)
        .max_by_key(|&v| {
            let sat = classes.iter().filter(|&&c| c & g.neighbors(v) != 0).count();
            let deg = (g.neighbors(v) & uncolored).count_ones();
            (sat, deg, std::cmp::Reverse(v))
        })
        .expect("nonempty uncoloured set")
}

struct Dsatur<'a> {
    g: &'a Graph,
    classes: Vec<u64>,
    colored: u64,
    best: usize,
    lower: usize,
}

impl Dsatur<'_> {
    fn branch(&mut self) {
        if self.classes.len() >= self.best {
            return;
        }
        let n = self.g.order();
        let uncolored = full_mask(n) & !self.colored;
        if uncolored == 0 {
            self.best = self.best.min(self.classes.len());
            return;
        }
        let v = pick_vertex(self.g, &self.classes, uncolored);
        let nv = self.g.neighbors(v);
        self.colored |= bit(v);
        for c in 0..self.classes.len() {
            if self.classes[c] & nv == 0 {
                self.classes[c] |= bit(v);
                self.branch();
                self.classes[c] &= !bit(v);
                if self.best <= self.lower {
                    self.colored &= !bit(v);
                    return;
                }
            }
        }
        if self.classes.len() + 1 < self.best {
            self.classes.push(bit(v));
            self.branch();
            self.classes.pop();
        }
        self.colored &= !bit(v);
    }
}

/// Whether some edge deletion lowers the chromatic number.
pub fn is_color_critical(g: &Graph) -> Result<bool> {
    if g.edge_count() == 0 {
        return Err(Error::NotApplicable("colour-criticality needs at least one edge".into()));
    }
    let chi = chromatic_number(g);
    for (u, v) in g.edges() {
        if chromatic_number(&g.without_edge(u, v)?) < chi {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn is_r_partite(g: &Graph, r: usize) -> bool {
    r >= 1 && chromatic_number(g) <= r
}

/// Whether `F` embeds into `G` as a (not necessarily induced) subgraph.
pub fn contains_subgraph(g: &Graph, f: &Graph) -> bool {
    let (n, k) = (g.order(), f.order());
    if k > n || f.edge_count() > g.edge_count() || f.max_degree() > g.max_degree() {
        return false;
    }
    let order = embedding_order(f);
    if order.is_empty() {
        return true;
    }
    let gdeg = g.degrees();
    let mut map = vec![usize::MAX; k];
    extend(g, f, &order, &gdeg, 0, 0, &mut map)
}

/// Non-isolated vertices of `F`, each next vertex having the most already
/// placed neighbours, then the highest degree.
fn embedding_order(f: &Graph) -> Vec<usize> {
    let k = f.order();
    let mut placed = 0u64;
    let mut order = Vec::with_capacity(k);
    let mut remaining: u64 = (0..k).filter(|&v| f.degree(v) > 0).fold(0, |m, v| m | bit(v));
    while remaining != 0 {
        let v = bits(remaining)
            .max_by_key(|&v| {
                ((f.neighbors(v) & placed).count_ones(), f.degree(v), std::cmp::Reverse(v))
            })
            .expect("nonempty");
        order.push(v);
        placed |= bit(v);
        remaining &= !bit(v);
    }
    order
}

fn extend(
    g: &Graph,
    f: &Graph,
    order: &[usize],
    gdeg: &[usize],
    depth: usize,
    used: u64,
    map: &mut [usize],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let fv = order[depth];
    let need = f.degree(fv);
    let mut cand = full_mask(g.order()) & !used;
    for fu in bits(f.neighbors(fv)) {
        if map[fu] != usize::MAX {
            cand &= g.neighbors(map[fu]);
        }
    }
    for v in bits(cand) {
        if gdeg[v] < need {
            continue;
        }
        map[fv] = v;
        if extend(g, f, order, gdeg, depth + 1, used | bit(v), map) {
            return true;
        }
    }
    map[fv] = usize::MAX;
    false
}

/// A nonempty family of forbidden graphs, each with at least one edge.
#[derive(Clone, PartialEq, Eq)]
pub struct ForbiddenFamily {
    members: Vec<Graph>,
    chi: usize,
    label: Option<String>,
}

impl ForbiddenFamily {
    pub fn new(members: Vec<Graph>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidParameters("forbidden family is empty".into()));
        }
        if let Some(i) = members.iter().position(|m| m.edge_count() == 0) {
            return Err(Error::InvalidParameters(format!(
                "family member {i} has no edges, every graph would contain it"
            )));
        }
        let chi = members.iter().map(chromatic_number).min().expect("nonempty");
        Ok(ForbiddenFamily { members, chi, label: None })
    }

    pub fn single(member: Graph) -> Result<Self> {
        ForbiddenFamily::new(vec![member])
    }

    pub fn from_specs(specs: &[FamilySpec]) -> Result<Self> {
        let members = specs.iter().map(FamilySpec::generate).collect::<Result<Vec<_>>>()?;
        let labels: Vec<String> = specs.iter().map(ToString::to_string).collect();
        Ok(ForbiddenFamily::new(members)?.with_label(labels.join(",")))
    }

    /// `{K_{r+1}}`
    pub fn clique(size: usize) -> Result<Self> {
        ForbiddenFamily::from_specs(&[FamilySpec::Complete(size)])
    }

    /// Parses a comma-separated list of family specs or graph6 strings.
    pub fn parse(s: &str) -> Result<Self> {
        let mut members = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if item.contains(':') {
                members.push(item.parse::<FamilySpec>()?.generate()?);
            } else {
                members.push(graph6::decode(item)?);
            }
        }
        Ok(ForbiddenFamily::new(members)?.with_label(s.trim().to_string()))
    }

    pub fn with_label(mut self, label: String) -> Self {
        self.label = Some(label);
        self
    }

    pub fn members(&self) -> &[Graph] {
        &self.members
    }

    /// `χ(F)`, the minimum chromatic number over members.
    pub fn chi(&self) -> usize {
        self.chi
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// `π(F) = 1 − 1/(χ(F) − 1)`, defined when `χ(F) ≥ 3`.
    pub fn turan_density(&self) -> Result<f64> {
        if self.chi < 3 {
            return Err(Error::Precondition(format!(
                "turan density formula needs chi(F) >= 3, family has chi = {}",
                self.chi
            )));
        }
        Ok(1.0 - 1.0 / (self.chi - 1) as f64)
    }

    pub fn min_member_order(&self) -> usize {
        self.members.iter().map(Graph::order).min().expect("nonempty")
    }
}

pub fn is_free(g: &Graph, family: &ForbiddenFamily) -> bool {
    family.members.iter().all(|f| !contains_subgraph(g, f))
}

impl fmt::Debug for ForbiddenFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ForbiddenFamily({self})")
    }
}

impl fmt::Display for ForbiddenFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            Some(l) => f.write_str(l),
            None => {
                let keys: Vec<String> = self.members.iter().map(graph6::encode).collect();
                f.write_str(&keys.join(","))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FamilyRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    members: Vec<String>,
    chi: usize,
}

impl Serialize for ForbiddenFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FamilyRepr {
            label: self.label.clone(),
            members: self.members.iter().map(graph6::encode).collect(),
            chi: self.chi,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ForbiddenFamily {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = FamilyRepr::deserialize(d)?;
        let members = repr
            .members
            .iter()
            .map(|m| graph6::decode(m))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let mut fam = ForbiddenFamily::new(members).map_err(D::Error::custom)?;
        if fam.chi != repr.chi {
            return Err(D::Error::custom(format!(
                "stored chi {} disagrees with computed {}",
                repr.chi, fam.chi
            )));
        }
        fam.label = repr.label;
        Ok(fam)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, join};

    fn spec(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&spec("complete:4")), 4);
        assert_eq!(chromatic_number(&spec("cycle:5")), 3);
        assert_eq!(chromatic_number(&spec("turan:7:3")), 3);
        assert_eq!(chromatic_number(&spec("empty:5")), 1);
        assert_eq!(chromatic_number(&spec("wheel:6")), 4);
        assert_eq!(chromatic_number(&spec("wheel:8")), 4);
        assert_eq!(chromatic_number(&spec("cycle:6")), 2);
        assert_eq!(chromatic_number(&spec("turan:40:7")), 7);
    }

    #[test]
    fn mycielski_grotzsch_needs_four() {
        // triangle-free with chi 4: the greedy clique bound is 2, so this exercises the search
        let edges = [
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
            (5, 1), (5, 4), (6, 0), (6, 2), (7, 1), (7, 3), (8, 2), (8, 4), (9, 3), (9, 0),
            (10, 5), (10, 6), (10, 7), (10, 8), (10, 9),
        ];
        let g = Graph::from_edges(11, &edges).unwrap();
        assert!(is_free(&g, &ForbiddenFamily::clique(3).unwrap()));
        assert_eq!(chromatic_number(&g), 4);
    }

    #[test]
    fn criticality_examples() {
        assert!(is_color_critical(&spec("cycle:5")).unwrap());
        assert!(!is_color_critical(&spec("cycle:4")).unwrap());
        let w6 = spec("wheel:6");
        assert!(is_color_critical(&w6).unwrap());
        assert_eq!(chromatic_number(&w6), 4);
        assert!(is_color_critical(&Graph::empty(3).unwrap()).is_err());
    }

    #[test]
    fn book_graphs_are_critical() {
        for r in [2, 3] {
            for k in [1, 2, 3] {
                let b = FamilySpec::Book(r, k).generate().unwrap();
                assert!(is_color_critical(&b).unwrap());
                assert_eq!(chromatic_number(&b), r + 1);
            }
        }
    }

    #[test]
    fn containment_examples() {
        assert!(contains_subgraph(&spec("cycle:4"), &spec("path:4")));
        assert!(!contains_subgraph(&spec("cycle:5"), &spec("complete:3")));
        assert!(contains_subgraph(&spec("path:4"), &spec("matching:2")));
        assert!(!contains_subgraph(&spec("path:3"), &spec("path:4")));
        assert!(contains_subgraph(&spec("complete:4"), &spec("cycle:4")));
        // F with an isolated vertex
        let f = disjoint_union(&Graph::complete(2).unwrap(), &Graph::empty(1).unwrap()).unwrap();
        assert!(contains_subgraph(&spec("path:3"), &f));
        assert!(!contains_subgraph(&Graph::complete(2).unwrap(), &f));
    }

    #[test]
    fn freeness_examples() {
        let k3 = ForbiddenFamily::clique(3).unwrap();
        assert!(is_free(&spec("turan:6:2"), &k3));
        assert!(!is_free(&spec("complete:4"), &k3));
        let g = disjoint_union(&Graph::complete(3).unwrap(), &Graph::empty(2).unwrap()).unwrap();
        assert!(is_free(&g, &ForbiddenFamily::from_specs(&[FamilySpec::Matching(2)]).unwrap()));
    }

    #[test]
    fn r_partite_examples() {
        assert!(is_r_partite(&spec("cycle:4"), 2));
        assert!(!is_r_partite(&spec("cycle:5"), 2));
        assert!(is_r_partite(&spec("turan:8:3"), 3));
    }

    #[test]
    fn family_basics() {
        assert!(ForbiddenFamily::new(vec![]).is_err());
        assert!(ForbiddenFamily::single(Graph::empty(3).unwrap()).is_err());
        let fam = ForbiddenFamily::parse("cycle:5, cycle:6").unwrap();
        assert_eq!(fam.chi(), 2);
        assert!(fam.turan_density().is_err());
        let fam = ForbiddenFamily::parse("Bw").unwrap();
        assert_eq!(fam.chi(), 3);
        assert_eq!(fam.turan_density().unwrap(), 0.5);
        let json = serde_json::to_string(&ForbiddenFamily::clique(4).unwrap()).unwrap();
        let back: ForbiddenFamily = serde_json::from_str(&json).unwrap();
        assert_eq!(back, ForbiddenFamily::clique(4).unwrap());
    }

    #[test]
    fn join_adds_chromatic_numbers() {
        let a = spec("cycle:5");
        let b = spec("path:3");
        assert_eq!(chromatic_number(&join(&a, &b).unwrap()), 5);
    }
}
