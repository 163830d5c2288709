//! Brute-force recomputation of end algebras as truncated direct limits.
//!
//! Stage `j` models `H̃^*(W_j)` as the direct sum of the cross-section rings
//! plus, per rung family, a window of `σ`-coordinates (top degree) and
//! `τ`-coordinates (degree 1) with indices in `[j, N)`. The transition map
//! `W_j → W_{j+1}` in the top degree sends `(α, β, γ)` to
//! `(α - β_j, β - β_j σ^j, γ + β_j)`; in degree 1 it forgets `τ_j`; in the
//! middle degrees it is the identity. The direct limit is stage 0 modulo the
//! union of the kernels of the composed maps.

use crate::algebra::linalg::Matrix;
use crate::algebra::{direct_sum, CoefficientRing, FinModule, GradedRing, Prime};
use crate::catalog::{cohomology_ring, ManifoldExpr};
use crate::error::{Error, Result};
use crate::invariants::gamma_dim;
use crate::ladder::{end_algebra, make_ladder, Space};

#[derive(Clone, Debug)]
pub struct TruncatedSystem {
    coefficients: CoefficientRing,
    n: usize,
    depth: usize,
    edges: Vec<(usize, usize)>,
    ring: GradedRing,
    node_of_generator: Vec<usize>,
    node_count: usize,
    /// `maps[j][k - 1]`: degree-k map from stage j to stage j + 1.
    maps: Vec<Vec<Matrix>>,
}

/// Limit of one degree restricted to the cross-section coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitModule {
    pub module: FinModule,
    /// The finite-window kernel did not grow between depth N-1 and N.
    pub stabilized: bool,
}

pub fn build_truncated_system(
    x: ManifoldExpr,
    y: ManifoldExpr,
    r: CoefficientRing,
    depth: usize,
) -> Result<TruncatedSystem> {
    build_truncated_system_for_space(&make_ladder(x, y)?, r, depth)
}

/// Generalizes the two-stringer system to a ladder graph: every edge
/// carries its own windows and acts on its own two endpoints.
pub fn build_truncated_system_for_space(
    s: &Space,
    r: CoefficientRing,
    depth: usize,
) -> Result<TruncatedSystem> {
    if depth == 0 {
        return Err(Error::Unsupported("truncation depth must be at least 1".into()));
    }
    let mut ring: Option<GradedRing> = None;
    let mut node_of_generator = Vec::new();
    for (v, node) in s.nodes().iter().enumerate() {
        let h = cohomology_ring(&node.manifold, r)?;
        node_of_generator.extend(std::iter::repeat_n(v, h.len()));
        ring = Some(match ring {
            None => h,
            Some(acc) => direct_sum(&acc, &h)?,
        });
    }
    let mut sys = TruncatedSystem {
        coefficients: r,
        n: s.dimension(),
        depth,
        edges: s.edges().to_vec(),
        ring: ring.expect("spaces have at least one node"),
        node_of_generator,
        node_count: s.nodes().len(),
        maps: Vec::new(),
    };
    sys.maps = (0..depth)
        .map(|j| (1..=sys.n).map(|k| sys.transition(j, k)).collect())
        .collect();
    Ok(sys)
}

impl TruncatedSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn coefficients(&self) -> CoefficientRing {
        self.coefficients
    }

    fn modulus(&self) -> u64 {
        self.coefficients.characteristic()
    }

    fn finite_generators(&self, k: usize) -> Vec<usize> {
        self.ring.generators_in_degree(k)
    }

    fn has_window(&self, k: usize) -> bool {
        k == 1 || k == self.n
    }

    fn window_len(&self, j: usize) -> usize {
        self.depth.saturating_sub(j)
    }

    /// Number of coordinates of `H̃^k(W_j)` in the truncated model.
    pub fn stage_dim(&self, j: usize, k: usize) -> usize {
        let window = if self.has_window(k) {
            self.edges.len() * self.window_len(j)
        } else {
            0
        };
        self.finite_generators(k).len() + window
    }

    /// Coordinate of window index `i` on edge `e` at stage j.
    fn window_coord(&self, j: usize, k: usize, e: usize, i: usize) -> usize {
        debug_assert!(i >= j && i < self.depth);
        self.finite_generators(k).len() + e * self.window_len(j) + (i - j)
    }

    /// Coordinate of node v's top class in the top degree.
    fn top_coord(&self, v: usize) -> usize {
        self.finite_generators(self.n)
            .iter()
            .position(|&g| self.node_of_generator[g] == v)
            .expect("every cross-section has a top class")
    }

    fn transition(&self, j: usize, k: usize) -> Matrix {
        let mut m = Matrix::zeros(self.stage_dim(j + 1, k), self.stage_dim(j, k), self.modulus());
        let f = self.finite_generators(k).len();
        for c in 0..f {
            m.set(c, c, 1);
        }
        if self.has_window(k) {
            for e in 0..self.edges.len() {
                for i in j + 1..self.depth {
                    m.set(self.window_coord(j + 1, k, e, i), self.window_coord(j, k, e, i), 1);
                }
            }
        }
        if k == self.n {
            // β_j leaves the window: subtract at the edge's first node, add at its second
            for (e, &(u, v)) in self.edges.iter().enumerate() {
                if j < self.depth {
                    let col = self.window_coord(j, k, e, j);
                    m.set(self.top_coord(u), col, -1);
                    m.set(self.top_coord(v), col, 1);
                }
            }
        }
        m
    }

    /// Degree-k map from stage j to stage j + 1.
    pub fn map(&self, j: usize, k: usize) -> &Matrix {
        &self.maps[j][k - 1]
    }

    /// Replaces one transition matrix, e.g. to build negative controls.
    pub fn replace_map(&mut self, j: usize, k: usize, m: Matrix) -> Result<()> {
        let current = self
            .maps
            .get(j)
            .and_then(|row| row.get(k.wrapping_sub(1)))
            .ok_or(Error::DegreeOutOfRange { degree: k, top: self.n })?;
        if (m.rows(), m.cols()) != (current.rows(), current.cols()) || m.modulus() != current.modulus() {
            return Err(Error::Unsupported("replacement map has the wrong shape".into()));
        }
        self.maps[j][k - 1] = m;
        Ok(())
    }

    /// Composite `i*_{depth-1} ∘ ... ∘ i*_0` from stage 0 to stage `depth`.
    pub fn composite(&self, depth: usize, k: usize) -> Matrix {
        let mut acc = Matrix::identity(self.stage_dim(0, k), self.modulus());
        for j in 0..depth.min(self.depth) {
            acc = self.map(j, k).mul(&acc);
        }
        acc
    }

    /// Homology-side `ψ: H_n(W_{j+1}) → H_n(W_j)`,
    /// `(a, b, c) ↦ (a, (c - a)s^j + b, c)`, in the dual bases of the
    /// cohomology coordinates.
    pub fn homology_top_map(&self, j: usize) -> Matrix {
        let k = self.n;
        let mut m = Matrix::zeros(self.stage_dim(j, k), self.stage_dim(j + 1, k), self.modulus());
        for c in 0..self.finite_generators(k).len() {
            m.set(c, c, 1);
        }
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            for i in j + 1..self.depth {
                m.set(self.window_coord(j, k, e, i), self.window_coord(j + 1, k, e, i), 1);
            }
            let sj = self.window_coord(j, k, e, j);
            m.set(sj, self.top_coord(v), 1);
            m.set(sj, self.top_coord(u), -1);
        }
        m
    }

    /// Homology-side `ψ` in degree 1: identity on cross-sections and the
    /// inclusion `t^{j+1}R[t] ⊂ t^j R[t]` on the rung circles.
    pub fn homology_degree_one_map(&self, j: usize) -> Matrix {
        let k = 1;
        let mut m = Matrix::zeros(self.stage_dim(j, k), self.stage_dim(j + 1, k), self.modulus());
        for c in 0..self.finite_generators(k).len() {
            m.set(c, c, 1);
        }
        for e in 0..self.edges.len() {
            for i in j + 1..self.depth {
                m.set(self.window_coord(j, k, e, i), self.window_coord(j + 1, k, e, i), 1);
            }
        }
        m
    }

    fn check_degree(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.n {
            return Err(Error::DegreeOutOfRange { degree: k, top: self.n });
        }
        if !self.coefficients.is_field() && self.has_window(k) {
            return Err(Error::RequiresField(self.coefficients));
        }
        Ok(())
    }

    /// Image of the cross-section coordinates of stage 0 in the limit.
    fn finite_image_rank(&self, depth: usize, k: usize) -> usize {
        let f: Vec<usize> = (0..self.finite_generators(k).len()).collect();
        self.composite(depth, k).select_columns(&f).rank()
    }

    /// Limit of degree k restricted to the cross-section coordinates of
    /// stage 0, i.e. those coordinates modulo the union of the kernels.
    pub fn limit_module(&self, k: usize) -> Result<LimitModule> {
        self.check_degree(k)?;
        match self.coefficients {
            CoefficientRing::Integers => {
                // middle degrees: every map is the identity
                let f = self.finite_generators(k).len();
                let composite = self.composite(self.depth, k);
                let identity = composite == Matrix::identity(f, 0);
                if !identity {
                    return Err(Error::Unsupported(
                        "integral limit only computed where the maps are identities".into(),
                    ));
                }
                Ok(LimitModule {
                    module: self.ring.module(k),
                    stabilized: true,
                })
            }
            CoefficientRing::PrimeField(p) => {
                let now = self.finite_image_rank(self.depth, k);
                let before = self.finite_image_rank(self.depth - 1, k);
                Ok(LimitModule {
                    module: FinModule::vector(p, now),
                    stabilized: now == before,
                })
            }
        }
    }

    /// Products of pairs of stage-0 classes of degree below n, as stage-0
    /// top-degree vectors. Rung classes multiply to zero and cross-section
    /// classes multiply within their own node.
    fn product_vectors(&self) -> Vec<Vec<i64>> {
        let n = self.n;
        let top = self.finite_generators(n);
        let dim = self.stage_dim(0, n);
        let mut out = Vec::new();
        for (a, ga) in self.ring.generators().iter().enumerate() {
            if ga.degree >= n {
                continue;
            }
            for b in self.ring.generators_in_degree(n - ga.degree) {
                let prod = self.ring.mul_generators(a, b);
                let mut v = vec![0i64; dim];
                for (c, &g) in top.iter().enumerate() {
                    v[c] = prod[g];
                }
                if v.iter().any(|&x| x != 0) {
                    out.push(v);
                }
            }
        }
        out
    }

    fn gamma_at(&self, depth: usize, products: &[Vec<i64>]) -> usize {
        if products.is_empty() {
            return 0;
        }
        let dim = self.stage_dim(0, self.n);
        let p = Matrix::from_columns(dim, products, self.modulus());
        self.composite(depth, self.n).mul(&p).rank()
    }

    /// Dimension of the span of products of lower-degree limit classes in
    /// the top-degree limit, with its stabilization flag.
    pub fn limit_gamma_dim(&self) -> Result<(usize, bool)> {
        if !self.coefficients.is_field() {
            return Err(Error::RequiresField(self.coefficients));
        }
        let products = self.product_vectors();
        let now = self.gamma_at(self.depth, &products);
        let before = self.gamma_at(self.depth - 1, &products);
        Ok((now, now == before))
    }

    /// Every stored transition map has full row rank onto its target window.
    pub fn check_surjectivity(&self) -> Result<bool> {
        if !self.coefficients.is_field() {
            return Err(Error::RequiresField(self.coefficients));
        }
        Ok(self
            .maps
            .iter()
            .flatten()
            .all(|m| m.rank() == m.rows()))
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }
}

/// Closed-form and oracle values for one space at one truncation depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub depth: usize,
    /// `(degree, closed-form finite dimension, oracle finite-window dimension)`.
    pub degrees: Vec<(usize, usize, usize)>,
    pub gamma_closed_form: usize,
    pub gamma_oracle: usize,
    pub stabilized: bool,
    pub surjective: bool,
}

impl OracleReport {
    pub fn agrees(&self) -> bool {
        self.gamma_closed_form == self.gamma_oracle
            && self.degrees.iter().all(|&(_, closed, oracle)| closed == oracle)
    }
}

pub fn oracle_check(s: &Space, p: Prime, depth: usize) -> Result<OracleReport> {
    let r = CoefficientRing::PrimeField(p);
    let closed = end_algebra(s, r)?;
    let sys = build_truncated_system_for_space(s, r, depth)?;
    let mut degrees = Vec::new();
    let mut stabilized = true;
    for k in 1..=s.dimension() {
        let limit = sys.limit_module(k)?;
        stabilized &= limit.stabilized;
        degrees.push((k, closed.degree(k)?.finite.rank(), limit.module.rank()));
    }
    let (gamma_oracle, gamma_stable) = sys.limit_gamma_dim()?;
    Ok(OracleReport {
        depth,
        degrees,
        gamma_closed_form: gamma_dim(&closed)?,
        gamma_oracle,
        stabilized: stabilized && gamma_stable,
        surjective: sys.check_surjectivity()?,
    })
}
