use std::collections::BTreeMap;

use endsum_core::algebra::{CoefficientRing, Prime};
use endsum_core::catalog::ManifoldExpr;
use endsum_core::ladder::{
    csi, end_algebra, generalized_capped_ladder, make_ladder, make_stringer, Space,
};
use endsum_core::Error;

use crate::ast::*;
use crate::diagnostic::{Diagnostic, Span};
use crate::printer::{print_directive, print_mfd, print_space_expr};

/// Largest truncation depth the oracle will try.
pub const MAX_DEPTH: usize = 64;

#[derive(Clone, Debug)]
pub struct Scenario {
    /// Named spaces in declaration order.
    pub spaces: Vec<(String, Space)>,
    pub jobs: Vec<Job>,
}

#[derive(Clone, Debug)]
pub struct Job {
    pub line: usize,
    /// Canonical text of the directive.
    pub echo: String,
    pub task: Task,
}

#[derive(Clone, Debug)]
pub struct NamedSpace {
    pub name: String,
    pub space: Space,
}

#[derive(Clone, Debug)]
pub enum Task {
    Invariants {
        space: NamedSpace,
        primes: Vec<u64>,
    },
    Distinguish {
        left: NamedSpace,
        right: NamedSpace,
        primes: Vec<u64>,
    },
    Census {
        space: NamedSpace,
        primes: Vec<u64>,
    },
    OracleCheck {
        space: NamedSpace,
        prime: Prime,
        depth: Option<usize>,
    },
}

impl Task {
    pub fn kind(&self) -> &'static str {
        match self {
            Task::Invariants { .. } => "invariants",
            Task::Distinguish { .. } => "distinguish",
            Task::Census { .. } => "census",
            Task::OracleCheck { .. } => "oracle-check",
        }
    }
}

/// Resolves names, builds every space and checks that each directive can
/// be computed. Stops at the first error.
pub fn elaborate(doc: &Document) -> Result<Scenario, Diagnostic> {
    let mut env = Env::default();
    let mut jobs = Vec::new();
    for item in &doc.items {
        match &item.node {
            Item::Decl { name, expr, caps } => {
                if let Some(line) = env.lines.get(&name.node) {
                    return Err(Diagnostic::new(
                        name.span,
                        format!("space `{}` is already defined on line {line}", name.node),
                    ));
                }
                let mut space = env.space_expr(expr)?;
                if caps.len() > space.nodes().len() {
                    return Err(Diagnostic::new(
                        caps[space.nodes().len()].span,
                        format!(
                            "`{}` has {} node(s) but {} caps",
                            name.node,
                            space.nodes().len(),
                            caps.len()
                        ),
                    ));
                }
                for (i, cap) in caps.iter().enumerate() {
                    let label = match cap.node.arg {
                        Some(n) => format!("{}({n})", cap.node.name),
                        None => cap.node.name.clone(),
                    };
                    space.add_cap(i, label).map_err(at(cap.span))?;
                }
                env.lines.insert(name.node.clone(), name.span.line);
                env.spaces.push((name.node.clone(), space));
            }
            Item::Directive(d) => jobs.push(Job {
                line: item.span.line,
                echo: print_directive(d),
                task: env.directive(d)?,
            }),
        }
    }
    Ok(Scenario {
        spaces: env.spaces,
        jobs,
    })
}

fn at(span: Span) -> impl Fn(Error) -> Diagnostic {
    move |e| Diagnostic::new(span, e.to_string())
}

#[derive(Default)]
struct Env {
    spaces: Vec<(String, Space)>,
    lines: BTreeMap<String, usize>,
}

impl Env {
    fn lookup(&self, name: &Spanned<String>) -> Result<NamedSpace, Diagnostic> {
        self.spaces
            .iter()
            .find(|(n, _)| *n == name.node)
            .map(|(n, s)| NamedSpace {
                name: n.clone(),
                space: s.clone(),
            })
            .ok_or_else(|| Diagnostic::new(name.span, format!("unknown space `{}`", name.node)))
    }

    fn space_expr(&self, expr: &Spanned<SpaceExpr>) -> Result<Space, Diagnostic> {
        let span = expr.span;
        match &expr.node {
            SpaceExpr::Stringer(m) => make_stringer(manifold(m)?).map_err(at(span)),
            SpaceExpr::Ladder(x, y) => {
                let (mx, my) = (manifold(x)?, manifold(y)?);
                make_ladder(mx.clone(), my.clone()).map_err(|e| match e {
                    Error::DimensionMismatch { left, right } => Diagnostic::new(
                        span,
                        format!(
                            "ladder stringers must have equal dimension: {} has dimension {left}, {} has dimension {right}",
                            print_mfd(&x.node),
                            print_mfd(&y.node)
                        ),
                    ),
                    e => at(span)(e),
                })
            }
            SpaceExpr::Csi(a, b) => {
                let (sa, u) = self.node_ref(a)?;
                let (sb, v) = self.node_ref(b)?;
                csi(&sa, u, &sb, v).map_err(|e| match e {
                    Error::DimensionMismatch { left, right } => Diagnostic::new(
                        span,
                        format!(
                            "csi needs equal dimensions: `{}` has {left}-dimensional cross-sections, `{}` has {right}",
                            a.name.node, b.name.node
                        ),
                    ),
                    e => at(span)(e),
                })
            }
            SpaceExpr::Generalized(ps) => {
                let primes = check_primes(ps)?;
                generalized_capped_ladder(&primes).map_err(at(span))
            }
            SpaceExpr::Name(n) => Ok(self
                .lookup(&Spanned::new(n.clone(), span))?
                .space),
        }
    }

    fn node_ref(&self, r: &SpaceRef) -> Result<(Space, usize), Diagnostic> {
        let named = self.lookup(&r.name)?;
        let s = named.space;
        let span = r.node.span;
        let node = match &r.node.node {
            NodeSel::Any => {
                if s.nodes().len() != 1 {
                    return Err(Diagnostic::new(
                        span,
                        format!(
                            "`*` needs a single-node space; `{}` has {} nodes",
                            named.name,
                            s.nodes().len()
                        ),
                    ));
                }
                0
            }
            NodeSel::Index(i) => {
                let i = *i as usize;
                if i >= s.nodes().len() {
                    return Err(Diagnostic::new(
                        span,
                        format!("`{}` has no node #{i}", named.name),
                    ));
                }
                i
            }
            NodeSel::Label(m) => {
                let m = manifold(&Spanned::new(m.clone(), span))?;
                let found = s.find_nodes(&m).map_err(at(span))?;
                match found[..] {
                    [i] => i,
                    [] => {
                        let labels: Vec<String> =
                            s.nodes().iter().map(|n| n.manifold.to_string()).collect();
                        return Err(Diagnostic::new(
                            span,
                            format!(
                                "`{}` has no node labeled {m}; its nodes are {}",
                                named.name,
                                labels.join(", ")
                            ),
                        ));
                    }
                    _ => {
                        let idx: Vec<String> = found.iter().map(|i| format!("#{i}")).collect();
                        return Err(Diagnostic::new(
                            span,
                            format!(
                                "nodes {} of `{}` are all labeled {m}; select one with @#i",
                                idx.join(", "),
                                named.name
                            ),
                        ));
                    }
                }
            }
        };
        Ok((s, node))
    }

    fn directive(&self, d: &Directive) -> Result<Task, Diagnostic> {
        Ok(match d {
            Directive::Invariants { space, primes } => {
                let named = self.lookup(space)?;
                let primes = check_primes(primes)?;
                computable(&named.space, &primes, space.span)?;
                Task::Invariants { space: named, primes }
            }
            Directive::Distinguish { left, right, primes } => {
                let a = self.lookup(left)?;
                let b = self.lookup(right)?;
                let ps = check_primes(primes)?;
                if a.space.dimension() != b.space.dimension() {
                    return Err(Diagnostic::new(
                        right.span,
                        format!(
                            "cannot compare `{}` and `{}`: cross-section dimensions {} and {}",
                            a.name,
                            b.name,
                            a.space.dimension(),
                            b.space.dimension()
                        ),
                    ));
                }
                computable(&a.space, &ps, left.span)?;
                computable(&b.space, &ps, right.span)?;
                Task::Distinguish {
                    left: a,
                    right: b,
                    primes: ps,
                }
            }
            Directive::Census { space, primes } => {
                let named = self.lookup(space)?;
                let ps = check_primes(primes)?;
                computable(&named.space, &ps, space.span)?;
                Task::Census { space: named, primes: ps }
            }
            Directive::OracleCheck { space, prime, depth } => {
                let s = self.space_expr(space)?;
                let p = Prime::new(prime.node).map_err(at(prime.span))?;
                end_algebra(&s, CoefficientRing::PrimeField(p)).map_err(at(space.span))?;
                let depth = match depth {
                    None => None,
                    Some(d) if d.node == 0 || d.node as usize > MAX_DEPTH => {
                        return Err(Diagnostic::new(
                            d.span,
                            format!("depth must be between 1 and {MAX_DEPTH}"),
                        ))
                    }
                    Some(d) => Some(d.node as usize),
                };
                Task::OracleCheck {
                    space: NamedSpace {
                        name: print_space_expr(&space.node),
                        space: s,
                    },
                    prime: p,
                    depth,
                }
            }
        })
    }
}

fn check_primes(ps: &[Spanned<u64>]) -> Result<Vec<u64>, Diagnostic> {
    ps.iter()
        .map(|p| Prime::new(p.node).map(Prime::get).map_err(at(p.span)))
        .collect()
}

/// Summaries need the integral ring and every requested prime field.
fn computable(s: &Space, primes: &[u64], span: Span) -> Result<(), Diagnostic> {
    end_algebra(s, CoefficientRing::Integers).map_err(at(span))?;
    for &p in primes {
        end_algebra(s, CoefficientRing::prime_field(p).map_err(at(span))?).map_err(at(span))?;
    }
    Ok(())
}

pub fn manifold(m: &Spanned<Mfd>) -> Result<ManifoldExpr, Diagnostic> {
    let expr = to_expr(&m.node);
    expr.dimension().map_err(|e| match e {
        Error::DimensionMismatch { left, right } => Diagnostic::new(
            m.span,
            format!("connected sum of manifolds of dimensions {left} and {right} in {}", print_mfd(&m.node)),
        ),
        e => at(m.span)(e),
    })?;
    Ok(expr)
}

fn to_expr(m: &Mfd) -> ManifoldExpr {
    match m {
        Mfd::Sphere(n) => ManifoldExpr::Sphere(*n as usize),
        Mfd::Lens(k) => ManifoldExpr::Lens(*k),
        Mfd::Sigma(g) => ManifoldExpr::Surface(*g),
        Mfd::Torus(k) => ManifoldExpr::Torus(*k as usize),
        Mfd::HomologySphere(p) => ManifoldExpr::HomologySphere3(*p),
        Mfd::Sum(a, b) => ManifoldExpr::conn_sum(to_expr(a), to_expr(b)),
        Mfd::Product(a, b) => ManifoldExpr::product(to_expr(a), to_expr(b)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn run(src: &str) -> Result<Scenario, Diagnostic> {
        elaborate(&parse(src).unwrap())
    }

    fn err(src: &str) -> Diagnostic {
        run(src).unwrap_err()
    }

    #[test]
    fn builds_capped_sums() {
        let sc = run(
            "space Y = ladder(L(3), S(3)) cap E(3) cap D(4)\n\
             space Z = stringer(L(3)) cap E(3)\n\
             space M1 = csi(Y@L(3), Z@*)\n\
             space M2 = csi(Y@S(3), Z@*)\n\
             distinguish M1 M2 primes 3\n",
        )
        .unwrap();
        assert_eq!(sc.spaces.len(), 4);
        let m1 = &sc.spaces[2].1;
        assert_eq!(m1.to_string(), "[L(3) # L(3), S(3)] 0-1");
        assert_eq!(m1.nodes()[0].caps, vec!["E(3)", "E(3)"]);
        assert_eq!(sc.jobs[0].echo, "distinguish M1 M2 primes 3");
        assert_eq!(sc.jobs[0].line, 5);
    }

    #[test]
    fn documented_examples() {
        let sc = run(
            "space Yp = ladder(L(2), S(3)) cap E(2) cap D(4)\n\
             space Zp = stringer(L(2)) cap E(2)\n\
             space M = csi(Yp @ L(2), Zp @ *)\n\
             space M23 = M(2, 3)\n\
             census M23 primes 2,3\n\
             oracle-check ladder(L(2),S(3)) prime 2 depth 8\n",
        )
        .unwrap();
        assert_eq!(sc.spaces[0].1.nodes().len(), 2);
        assert_eq!(sc.spaces[0].1.nodes()[1].caps, vec!["D(4)"]);
        assert_eq!(sc.spaces[2].1.to_string(), "[L(2) # L(2), S(3)] 0-1");
        assert_eq!(sc.jobs.len(), 2);
    }

    #[test]
    fn ladder_dimension_mismatch() {
        let e = err("space Bad = ladder(L(2), Sigma(1))");
        assert_eq!(e.span, Span { line: 1, column: 13 });
        assert!(e.message.contains("L(2) has dimension 3"), "{}", e.message);
        assert!(e.message.contains("Sigma(1) has dimension 2"), "{}", e.message);
    }

    #[test]
    fn name_errors() {
        let e = err("invariants Nope primes 2");
        assert_eq!(e.message, "unknown space `Nope`");
        assert_eq!(e.span, Span { line: 1, column: 12 });
        let e = err("space A = stringer(S(3))\nspace A = stringer(L(2))");
        assert_eq!(e.span.line, 2);
        assert!(e.message.contains("already defined on line 1"));
    }

    #[test]
    fn node_selection_errors() {
        let e = err("space A = ladder(L(2), L(2))\nspace B = stringer(L(2))\nspace C = csi(A@L(2), B@*)");
        assert!(e.message.contains("@#i"), "{}", e.message);
        assert_eq!(e.span, Span { line: 3, column: 17 });
        let e = err("space A = ladder(L(2), S(3))\nspace C = csi(A@*, A@*)");
        assert!(e.message.contains("single-node"));
        let e = err("space A = ladder(L(2), S(3))\nspace C = csi(A@L(5), A@#0)");
        assert!(e.message.contains("no node labeled L(5)"));
        let e = err("space A = ladder(L(2), S(3))\nspace C = csi(A@#2, A@#0)");
        assert!(e.message.contains("no node #2"));
        assert!(run("space A = ladder(L(2), L(2))\nspace C = csi(A@#1, A@#0)").is_ok());
    }

    #[test]
    fn label_selection_normalizes() {
        let sc = run("space A = ladder(L(3) # L(2), S(3))\nspace B = csi(A@L(2) # L(3), A@L(1))").unwrap();
        assert_eq!(sc.spaces[1].1.nodes().len(), 3);
    }

    #[test]
    fn prime_and_cap_errors() {
        let e = err("space A = M(2, 4)");
        assert_eq!(e.span, Span { line: 1, column: 16 });
        assert_eq!(e.message, "4 is not a prime");
        let e = err("space A = stringer(S(3)) cap D(4) cap E(2)");
        assert_eq!(e.span, Span { line: 1, column: 39 });
        let e = err("space A = stringer(S(3))\ninvariants A primes 2, 9");
        assert_eq!(e.span, Span { line: 2, column: 24 });
    }

    #[test]
    fn uncomputable_directives() {
        let e = err("space H = ladder(HS(3), S(3))\ninvariants H primes 3");
        assert!(e.message.contains("no cohomology model over Z"), "{}", e.message);
        assert!(run("oracle-check ladder(HS(3), S(3)) prime 3").is_ok());
        let e = err("oracle-check ladder(HS(3), S(3)) prime 2");
        assert!(e.message.contains("Z_2"), "{}", e.message);
        let e = err("space A = stringer(S(3))\nspace B = stringer(S(4))\ndistinguish A B primes 2");
        assert!(e.message.contains("dimensions 3 and 4"));
        let e = err("oracle-check ladder(L(2), S(3)) prime 2 depth 0");
        assert!(e.message.contains("between 1 and 64"));
    }

    #[test]
    fn invalid_manifolds() {
        assert!(err("space A = stringer(L(0))").message.contains("L(0)"));
        assert!(err("space A = stringer(S(3) # S(4))").message.contains("dimensions 3 and 4"));
        assert!(run("space A = stringer(S(1))").is_err());
    }
}
