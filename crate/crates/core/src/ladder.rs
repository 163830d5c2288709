//! Ladder graphs and their cohomology algebras at infinity.
//!
//! A [`Space`] is a connected multigraph. Each node is a stringer
//! `[0,∞) × X` with closed cross-section `X`; each edge is an infinite family
//! of rungs joining two stringers. A single node with no edges is a stringer,
//! two nodes joined by one edge is a ladder `L(X,Y)`. Connected sum at
//! infinity along straight rays merges two nodes by connected sum of their
//! cross-sections.

use std::collections::VecDeque;
use std::fmt;

use crate::algebra::{direct_sum, CoefficientRing, FinModule, GradedRing, Prime};
use crate::catalog::{cohomology_ring, ManifoldExpr};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Node {
    pub manifold: ManifoldExpr,
    /// Compact fillings (`E(k)`, `D(4)`, ...). Never used in computations.
    pub caps: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Space {
    dimension: usize,
    nodes: Vec<Node>,
    edges: Vec<(usize, usize)>,
}

impl Space {
    /// Validates and normalizes a graph. Node labels are normalized; edges
    /// keep the given orientation.
    pub fn new(manifolds: Vec<ManifoldExpr>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let nodes = manifolds
            .into_iter()
            .map(|manifold| Node {
                manifold,
                caps: Vec::new(),
            })
            .collect();
        Self::from_nodes(nodes, edges)
    }

    fn from_nodes(nodes: Vec<Node>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let Some(first) = nodes.first() else {
            return Err(Error::InvalidSpace("a space needs at least one node".into()));
        };
        let dimension = first.manifold.dimension()?;
        if dimension < 2 {
            return Err(Error::InvalidSpace(format!(
                "cross-sections must have dimension at least 2, got {dimension}"
            )));
        }
        let mut normalized = Vec::with_capacity(nodes.len());
        for node in nodes {
            let d = node.manifold.dimension()?;
            if d != dimension {
                return Err(Error::DimensionMismatch {
                    left: dimension,
                    right: d,
                });
            }
            normalized.push(Node {
                manifold: node.manifold.normalize()?,
                caps: node.caps,
            });
        }
        for &(u, v) in &edges {
            if u >= normalized.len() || v >= normalized.len() {
                return Err(Error::UnknownNode(u.max(v)));
            }
            if u == v {
                return Err(Error::InvalidSpace("rungs must join distinct stringers".into()));
            }
        }
        let space = Space {
            dimension,
            nodes: normalized,
            edges,
        };
        if !space.is_connected() {
            return Err(Error::InvalidSpace("ladder graph is not connected".into()));
        }
        Ok(space)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &(a, b) in &self.edges {
                let next = if a == u {
                    b
                } else if b == u {
                    a
                } else {
                    continue;
                };
                if !seen[next] {
                    seen[next] = true;
                    queue.push_back(next);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Cross-section dimension n (the space itself has dimension n + 1).
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> Result<&Node> {
        self.nodes.get(i).ok_or(Error::UnknownNode(i))
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_stringer(&self) -> bool {
        self.nodes.len() == 1 && self.edges.is_empty()
    }

    pub fn is_ladder(&self) -> bool {
        self.nodes.len() == 2 && self.edges.len() == 1
    }

    /// Indices of nodes whose cross-section normalizes to `m`.
    pub fn find_nodes(&self, m: &ManifoldExpr) -> Result<Vec<usize>> {
        let m = m.normalize()?;
        Ok((0..self.nodes.len())
            .filter(|&i| self.nodes[i].manifold == m)
            .collect())
    }

    pub fn add_cap(&mut self, node: usize, cap: impl Into<String>) -> Result<()> {
        self.nodes
            .get_mut(node)
            .ok_or(Error::UnknownNode(node))?
            .caps
            .push(cap.into());
        Ok(())
    }

    pub fn without_caps(&self) -> Space {
        let mut s = self.clone();
        s.nodes.iter_mut().for_each(|n| n.caps.clear());
        s
    }

    /// Moves node `i` to position `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Space> {
        let n = self.nodes.len();
        let mut check = perm.to_vec();
        check.sort_unstable();
        if check != (0..n).collect::<Vec<_>>() {
            return Err(Error::InvalidSpace("not a permutation of the nodes".into()));
        }
        let mut nodes = vec![None; n];
        for (i, node) in self.nodes.iter().enumerate() {
            nodes[perm[i]] = Some(node.clone());
        }
        Ok(Space {
            dimension: self.dimension,
            nodes: nodes.into_iter().map(|x| x.expect("permutation")).collect(),
            edges: self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect(),
        })
    }

    pub fn reverse_edge(&self, e: usize) -> Result<Space> {
        let mut s = self.clone();
        let edge = s
            .edges
            .get_mut(e)
            .ok_or_else(|| Error::InvalidSpace(format!("no edge with index {e}")))?;
        *edge = (edge.1, edge.0);
        Ok(s)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nodes: Vec<String> = self.nodes.iter().map(|n| n.manifold.to_string()).collect();
        write!(f, "[{}]", nodes.join(", "))?;
        for (u, v) in &self.edges {
            write!(f, " {u}-{v}")?;
        }
        Ok(())
    }
}

/// `L(X,Y)`: two stringers joined by one rung family, oriented X → Y.
pub fn make_ladder(x: ManifoldExpr, y: ManifoldExpr) -> Result<Space> {
    Space::new(vec![x, y], vec![(0, 1)])
}

/// `[0,∞) × X`.
pub fn make_stringer(x: ManifoldExpr) -> Result<Space> {
    Space::new(vec![x], Vec::new())
}

/// Height-wise connected sum of node `u` with a stringer on `z`.
pub fn stringer_sum(s: &Space, u: usize, z: ManifoldExpr) -> Result<Space> {
    csi(s, u, &make_stringer(z)?, 0)
}

/// Connected sum at infinity along straight rays in stringers `u` of `a`
/// and `v` of `b`: the two nodes merge into one labeled `X_u # X_v`.
///
/// Node order of the result: `a`'s nodes with `u` replaced by the merged
/// node, then `b`'s nodes other than `v`.
pub fn csi(a: &Space, u: usize, b: &Space, v: usize) -> Result<Space> {
    let xu = a.node(u)?;
    let xv = b.node(v)?;
    if a.dimension != b.dimension {
        return Err(Error::DimensionMismatch {
            left: a.dimension,
            right: b.dimension,
        });
    }
    let merged = Node {
        manifold: ManifoldExpr::conn_sum(xu.manifold.clone(), xv.manifold.clone()),
        caps: xu.caps.iter().chain(&xv.caps).cloned().collect(),
    };
    let mut nodes: Vec<Node> = a.nodes.clone();
    nodes[u] = merged;
    let offset = nodes.len();
    let mut b_index = vec![0usize; b.nodes.len()];
    let mut next = offset;
    for (i, node) in b.nodes.iter().enumerate() {
        if i == v {
            b_index[i] = u;
        } else {
            b_index[i] = next;
            next += 1;
            nodes.push(node.clone());
        }
    }
    let mut edges = a.edges.clone();
    edges.extend(b.edges.iter().map(|&(x, y)| (b_index[x], b_index[y])));
    Space::from_nodes(nodes, edges)
}

/// `M(p_1, ..., p_m)`: for m = 1 the capped ladder `L(L_p, S^3)`, for m = 2
/// `L(L_p, L_q)`, and for larger m the path obtained by summing a further
/// `L(S^3, L_{p_{m}})` at its `S^3` stringer onto the last lens stringer.
pub fn generalized_capped_ladder(primes: &[u64]) -> Result<Space> {
    for &p in primes {
        Prime::new(p)?;
    }
    let lens = |p: u64| ManifoldExpr::Lens(p);
    match primes {
        [] => Err(Error::EmptyPrimeList),
        [p] => {
            let mut s = make_ladder(lens(*p), ManifoldExpr::Sphere(3))?;
            s.add_cap(0, format!("E({p})"))?;
            s.add_cap(1, "D(4)")?;
            Ok(s)
        }
        [p, q] => {
            let mut s = make_ladder(lens(*p), lens(*q))?;
            s.add_cap(0, format!("E({p})"))?;
            s.add_cap(1, format!("E({q})"))?;
            Ok(s)
        }
        [init @ .., last] => {
            let base = generalized_capped_ladder(init)?;
            let mut rung = make_ladder(ManifoldExpr::Sphere(3), lens(*last))?;
            rung.add_cap(0, "D(4)")?;
            rung.add_cap(1, format!("E({last})"))?;
            csi(&base, init.len() - 1, &rung, 0)
        }
    }
}

/// One summand of the end algebra that has no finite description:
/// `R[[τ]]/R[τ]` in degree 1 or `R[[σ]]` in the top degree, per edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolicClass {
    Tau { edge: usize },
    Sigma { edge: usize },
}

/// An element of the end algebra: a finite-part vector (over the generators
/// of [`EndAlgebra::finite_part`]) plus symbolic components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndElement {
    pub degree: usize,
    pub finite: Vec<i64>,
    pub symbolic: Vec<SymbolicClass>,
}

impl EndElement {
    pub fn is_zero(&self) -> bool {
        self.symbolic.is_empty() && self.finite.iter().all(|&c| c == 0)
    }
}

/// Group structure of one degree of the end algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndDegree {
    pub degree: usize,
    pub finite: FinModule,
    /// Number of `R[[τ]]/R[τ]` summands (degree 1 only).
    pub tau_summands: usize,
    /// Number of `R[[σ]]` summands taken modulo `K` (top degree only).
    pub sigma_summands: usize,
}

/// Cohomology algebra at infinity of a [`Space`].
///
/// In degrees `2..n-1` it is the direct sum of the node rings. Degree 1 adds
/// one `R[[τ]]/R[τ]` per edge. Degree n is
/// `(⊕_v H^n(X_v) ⊕ ⊕_e R[[σ_e]]) / ⊕_e K_e`, where `K_e` consists of
/// `(Σβ_i at u, β, -Σβ_i at v)` for polynomials `β` on edge `e = (u, v)`.
/// Products are coordinatewise on the finite part and vanish on symbolic
/// classes; the finite part of degree n injects into the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndAlgebra {
    coefficients: CoefficientRing,
    n: usize,
    edges: Vec<(usize, usize)>,
    node_count: usize,
    finite: GradedRing,
    node_of_generator: Vec<usize>,
}

pub fn end_algebra(s: &Space, r: CoefficientRing) -> Result<EndAlgebra> {
    let mut finite: Option<GradedRing> = None;
    let mut node_of_generator = Vec::new();
    for (i, node) in s.nodes.iter().enumerate() {
        let ring = cohomology_ring(&node.manifold, r)?;
        node_of_generator.extend(std::iter::repeat_n(i, ring.len()));
        finite = Some(match finite {
            None => ring,
            Some(acc) => direct_sum(&acc, &ring)?,
        });
    }
    Ok(EndAlgebra {
        coefficients: r,
        n: s.dimension,
        edges: s.edges.clone(),
        node_count: s.nodes.len(),
        finite: finite.expect("spaces have at least one node"),
        node_of_generator,
    })
}

impl EndAlgebra {
    pub fn coefficients(&self) -> CoefficientRing {
        self.coefficients
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Direct sum of the node rings, node by node in order.
    pub fn finite_part(&self) -> &GradedRing {
        &self.finite
    }

    pub fn node_of(&self, generator: usize) -> usize {
        self.node_of_generator[generator]
    }

    pub fn degree(&self, k: usize) -> Result<EndDegree> {
        if k == 0 || k > self.n {
            return Err(Error::DegreeOutOfRange { degree: k, top: self.n });
        }
        let edges = self.edges.len();
        Ok(EndDegree {
            degree: k,
            finite: self.finite.module(k),
            tau_summands: if k == 1 { edges } else { 0 },
            sigma_summands: if k == self.n { edges } else { 0 },
        })
    }

    /// Top-degree generator of each node's cross-section.
    pub fn top_generators(&self) -> Vec<usize> {
        let top = self.finite.generators_in_degree(self.n);
        (0..self.node_count)
            .map(|v| {
                *top.iter()
                    .find(|&&g| self.node_of_generator[g] == v)
                    .expect("every closed oriented cross-section has a top class")
            })
            .collect()
    }

    pub fn finite_element(&self, degree: usize, finite: Vec<i64>) -> EndElement {
        EndElement {
            degree,
            finite,
            symbolic: Vec::new(),
        }
    }

    pub fn symbolic_element(&self, class: SymbolicClass) -> Result<EndElement> {
        let (degree, edge) = match class {
            SymbolicClass::Tau { edge } => (1, edge),
            SymbolicClass::Sigma { edge } => (self.n, edge),
        };
        if edge >= self.edges.len() {
            return Err(Error::InvalidSpace(format!("no edge with index {edge}")));
        }
        Ok(EndElement {
            degree,
            finite: self.finite.zero_element(),
            symbolic: vec![class],
        })
    }

    /// Cup product. Symbolic classes multiply to zero against everything;
    /// finite parts multiply within each node.
    pub fn multiply(&self, x: &EndElement, y: &EndElement) -> EndElement {
        let degree = x.degree + y.degree;
        if degree > self.n {
            return self.finite_element(degree, self.finite.zero_element());
        }
        self.finite_element(degree, self.finite.mul(&x.finite, &y.finite))
    }

    /// Whether `(top, series)` lies in `⊕_e K_e`, where `top[v]` is the
    /// coefficient of node v's top class and `series[e]` is a truncated
    /// `σ`-series on edge e.
    pub fn in_relations(&self, top: &[i64], series: &[Vec<i64>]) -> bool {
        assert_eq!(top.len(), self.node_count);
        assert_eq!(series.len(), self.edges.len());
        let m = self.coefficients.characteristic() as i64;
        let reduce = |x: i64| if m == 0 { x } else { x.rem_euclid(m) };
        let mut expected = vec![0i64; self.node_count];
        for (&(u, v), beta) in self.edges.iter().zip(series) {
            let total: i64 = beta.iter().sum();
            expected[u] += total;
            expected[v] -= total;
        }
        top.iter()
            .zip(&expected)
            .all(|(&a, &b)| reduce(a) == reduce(b))
    }

    /// The element of `⊕_e K_e` determined by one polynomial per edge.
    pub fn relation(&self, series: &[Vec<i64>]) -> (Vec<i64>, Vec<Vec<i64>>) {
        let mut top = vec![0i64; self.node_count];
        for (&(u, v), beta) in self.edges.iter().zip(series) {
            let total: i64 = beta.iter().sum();
            top[u] += total;
            top[v] -= total;
        }
        (top, series.to_vec())
    }
}

impl fmt::Display for EndAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.coefficients;
        for k in 1..=self.n {
            let d = self.degree(k).map_err(|_| fmt::Error)?;
            write!(f, "H^{k}_inf = ")?;
            if k == self.n && d.sigma_summands > 0 {
                writeln!(f, "({} + {}x{r}[[s]]) / K", d.finite, d.sigma_summands)?;
            } else if d.tau_summands > 0 {
                writeln!(f, "{} + {}x{r}[[t]]/{r}[t]", d.finite, d.tau_summands)?;
            } else {
                writeln!(f, "{}", d.finite)?;
            }
        }
        Ok(())
    }
}
