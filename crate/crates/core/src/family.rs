//! Named graph families and the `tag:param[:param...]` grammar used to name them.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{disjoint_union, join, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// `K_n`
    Complete(usize),
    /// `I_n`
    Empty(usize),
    /// `P_n`, `n` vertices
    Path(usize),
    /// `C_n`, `n >= 3`
    Cycle(usize),
    /// `K_{1,k}`
    Star(usize),
    /// `M_k`, `k` disjoint edges
    Matching(usize),
    /// `K_{a,b}`
    CompleteBipartite(usize, usize),
    /// `T_{n,r}`
    Turan(usize, usize),
    /// `S_{n,k} = K_k ∨ I_{n-k}`
    Split(usize, usize),
    /// `S⁺_{n,k} = K_k ∨ (K_2 ∪ I_{n-k-2})`
    SplitPlus(usize, usize),
    /// `B_{r,k} = K_r ∨ I_k`
    Book(usize, usize),
    /// `W_{2k+2} = K_1 ∨ C_{2k+1}`, parameterized by its order
    Wheel(usize),
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}

impl FamilySpec {
    pub fn tag(&self) -> &'static str {
        match self {
            FamilySpec::Complete(_) => "complete",
            FamilySpec::Empty(_) => "empty",
            FamilySpec::Path(_) => "path",
            FamilySpec::Cycle(_) => "cycle",
            FamilySpec::Star(_) => "star",
            FamilySpec::Matching(_) => "matching",
            FamilySpec::CompleteBipartite(..) => "bipartite",
            FamilySpec::Turan(..) => "turan",
            FamilySpec::Split(..) => "split",
            FamilySpec::SplitPlus(..) => "splitplus",
            FamilySpec::Book(..) => "book",
            FamilySpec::Wheel(_) => "wheel",
        }
    }

    fn params(&self) -> Vec<usize> {
        match *self {
            FamilySpec::Complete(n)
            | FamilySpec::Empty(n)
            | FamilySpec::Path(n)
            | FamilySpec::Cycle(n)
            | FamilySpec::Star(n)
            | FamilySpec::Matching(n)
            | FamilySpec::Wheel(n) => vec![n],
            FamilySpec::CompleteBipartite(a, b)
            | FamilySpec::Turan(a, b)
            | FamilySpec::Split(a, b)
            | FamilySpec::SplitPlus(a, b)
            | FamilySpec::Book(a, b) => vec![a, b],
        }
    }

    /// Number of vertices of the generated graph.
    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::Complete(n)
            | FamilySpec::Empty(n)
            | FamilySpec::Path(n)
            | FamilySpec::Cycle(n)
            | FamilySpec::Wheel(n)
            | FamilySpec::Turan(n, _)
            | FamilySpec::Split(n, _)
            | FamilySpec::SplitPlus(n, _) => n,
            FamilySpec::Star(k) => k + 1,
            FamilySpec::Matching(k) => 2 * k,
            FamilySpec::CompleteBipartite(a, b) | FamilySpec::Book(a, b) => a + b,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            FamilySpec::Complete(n) | FamilySpec::Empty(n) | FamilySpec::Path(n) => n >= 1,
            FamilySpec::Cycle(n) => n >= 3,
            FamilySpec::Star(k) | FamilySpec::Matching(k) => k >= 1,
            FamilySpec::CompleteBipartite(a, b) => a >= 1 && b >= 1,
            FamilySpec::Turan(n, r) => r >= 1 && r <= n,
            FamilySpec::Split(n, k) => k >= 1 && k < n,
            FamilySpec::SplitPlus(n, k) => n >= k + 2,
            FamilySpec::Book(r, k) => r >= 1 && k >= 1,
            FamilySpec::Wheel(m) => m >= 4 && m % 2 == 0,
        };
        if !ok {
            return Err(bad(format!("{self} violates the parameter constraints of '{}'", self.tag())));
        }
        if self.order() > crate::graph::MAX_ORDER {
            return Err(Error::SizeCap(self.order()));
        }
        Ok(())
    }

    pub fn generate(&self) -> Result<Graph> {
        self.validate()?;
        let g = match *self {
            FamilySpec::Complete(n) => Graph::complete(n)?,
            FamilySpec::Empty(n) => Graph::empty(n)?,
            FamilySpec::Path(n) => {
                let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
                Graph::from_edges(n, &edges)?
            }
            FamilySpec::Cycle(n) => {
                let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
                edges.push((0, n - 1));
                Graph::from_edges(n, &edges)?
            }
            FamilySpec::Star(k) => join(&Graph::complete(1)?, &Graph::empty(k)?)?,
            FamilySpec::Matching(k) => {
                let edges: Vec<_> = (0..k).map(|i| (2 * i, 2 * i + 1)).collect();
                Graph::from_edges(2 * k, &edges)?
            }
            FamilySpec::CompleteBipartite(a, b) => join(&Graph::empty(a)?, &Graph::empty(b)?)?,
            FamilySpec::Turan(n, r) => {
                // vertex v lives in part v mod r, so the n mod r larger parts come first
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in (u + 1)..n {
                        if u % r != v % r {
                            edges.push((u, v));
                        }
                    }
                }
                Graph::from_edges(n, &edges)?
            }
            FamilySpec::Split(n, k) => join(&Graph::complete(k)?, &Graph::empty(n - k)?)?,
            FamilySpec::SplitPlus(n, k) => {
                let inner = if n - k > 2 {
                    disjoint_union(&Graph::complete(2)?, &Graph::empty(n - k - 2)?)?
                } else {
                    Graph::complete(2)?
                };
                if k == 0 {
                    inner
                } else {
                    join(&Graph::complete(k)?, &inner)?
                }
            }
            FamilySpec::Book(r, k) => join(&Graph::complete(r)?, &Graph::empty(k)?)?,
            FamilySpec::Wheel(m) => join(&Graph::complete(1)?, &FamilySpec::Cycle(m - 1).generate()?)?,
        };
        Ok(g)
    }

    /// Part sizes of `T_{n,r}`, larger parts first.
    pub fn turan_parts(n: usize, r: usize) -> Vec<usize> {
        (0..r).map(|i| n / r + usize::from(i < n % r)).collect()
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())?;
        for p in self.params() {
            write!(f, ":{p}")?;
        }
        Ok(())
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.trim().split(':');
        let tag = parts.next().unwrap_or_default().to_ascii_lowercase();
        let params: Vec<usize> = parts
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| bad(format!("parameter '{p}' in '{s}' is not a nonnegative integer")))
            })
            .collect::<Result<_>>()?;
        let arity = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(bad(format!("'{tag}' takes {k} parameter(s), got {}", params.len())))
            }
        };
        let spec = match tag.as_str() {
            "complete" | "k" => {
                arity(1)?;
                FamilySpec::Complete(params[0])
            }
            "empty" | "i" => {
                arity(1)?;
                FamilySpec::Empty(params[0])
            }
            "path" | "p" => {
                arity(1)?;
                FamilySpec::Path(params[0])
            }
            "cycle" | "c" => {
                arity(1)?;
                FamilySpec::Cycle(params[0])
            }
            "star" => {
                arity(1)?;
                FamilySpec::Star(params[0])
            }
            "matching" | "m" => {
                arity(1)?;
                FamilySpec::Matching(params[0])
            }
            "bipartite" | "complete-bipartite" => {
                arity(2)?;
                FamilySpec::CompleteBipartite(params[0], params[1])
            }
            "turan" => {
                arity(2)?;
                FamilySpec::Turan(params[0], params[1])
            }
            "split" => {
                arity(2)?;
                FamilySpec::Split(params[0], params[1])
            }
            "splitplus" | "split-plus" => {
                arity(2)?;
                FamilySpec::SplitPlus(params[0], params[1])
            }
            "book" => {
                arity(2)?;
                FamilySpec::Book(params[0], params[1])
            }
            "wheel" => {
                arity(1)?;
                FamilySpec::Wheel(params[0])
            }
            _ => return Err(bad(format!("unknown family tag '{tag}'"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}
