use std::fmt::Write;

use crate::ast::*;

pub fn print_document(doc: &Document) -> String {
    let mut out = String::new();
    for item in &doc.items {
        out.push_str(&print_item(&item.node));
        out.push('\n');
    }
    out
}

pub fn print_item(item: &Item) -> String {
    match item {
        Item::Decl { name, expr, caps } => {
            let mut s = format!("space {} = {}", name.node, print_space_expr(&expr.node));
            for cap in caps {
                write!(s, " cap {}", print_cap(&cap.node)).unwrap();
            }
            s
        }
        Item::Directive(d) => print_directive(d),
    }
}

pub fn print_directive(d: &Directive) -> String {
    match d {
        Directive::Invariants { space, primes } => {
            format!("invariants {} primes {}", space.node, print_ints(primes))
        }
        Directive::Distinguish { left, right, primes } => format!(
            "distinguish {} {} primes {}",
            left.node,
            right.node,
            print_ints(primes)
        ),
        Directive::Census { space, primes } => {
            format!("census {} primes {}", space.node, print_ints(primes))
        }
        Directive::OracleCheck { space, prime, depth } => {
            let mut s = format!("oracle-check {} prime {}", print_space_expr(&space.node), prime.node);
            if let Some(d) = depth {
                write!(s, " depth {}", d.node).unwrap();
            }
            s
        }
    }
}

fn print_ints(xs: &[Spanned<u64>]) -> String {
    xs.iter().map(|x| x.node.to_string()).collect::<Vec<_>>().join(", ")
}

fn print_cap(c: &Cap) -> String {
    match c.arg {
        Some(n) => format!("{}({n})", c.name),
        None => c.name.clone(),
    }
}

pub fn print_space_expr(e: &SpaceExpr) -> String {
    match e {
        SpaceExpr::Stringer(m) => format!("stringer({})", print_mfd(&m.node)),
        SpaceExpr::Ladder(x, y) => format!("ladder({}, {})", print_mfd(&x.node), print_mfd(&y.node)),
        SpaceExpr::Csi(a, b) => format!("csi({}, {})", print_ref(a), print_ref(b)),
        SpaceExpr::Generalized(ps) => format!("M({})", print_ints(ps)),
        SpaceExpr::Name(n) => n.clone(),
    }
}

fn print_ref(r: &SpaceRef) -> String {
    let sel = match &r.node.node {
        NodeSel::Any => "*".to_string(),
        NodeSel::Index(i) => format!("#{i}"),
        NodeSel::Label(m) => print_mfd(m),
    };
    format!("{}@{sel}", r.name.node)
}

/// Prints with the fewest parentheses that reparse to the same tree:
/// both operators associate to the left and `x` binds tighter than `#`.
pub fn print_mfd(m: &Mfd) -> String {
    match m {
        Mfd::Sphere(n) => format!("S({n})"),
        Mfd::Lens(k) => format!("L({k})"),
        Mfd::Sigma(g) => format!("Sigma({g})"),
        Mfd::Torus(k) => format!("T({k})"),
        Mfd::HomologySphere(p) => format!("HS({p})"),
        Mfd::Sum(a, b) => {
            let right = match **b {
                Mfd::Sum(..) => format!("({})", print_mfd(b)),
                _ => print_mfd(b),
            };
            format!("{} # {right}", print_mfd(a))
        }
        Mfd::Product(a, b) => {
            let left = match **a {
                Mfd::Sum(..) => format!("({})", print_mfd(a)),
                _ => print_mfd(a),
            };
            let right = match **b {
                Mfd::Sum(..) | Mfd::Product(..) => format!("({})", print_mfd(b)),
                _ => print_mfd(b),
            };
            format!("{left} x {right}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    #[test]
    fn canonical_text() {
        let src = "space  A=ladder(L(2)#L(2),S(3))cap E(2)   cap D(4)\n\
                   oracle-check csi(A@#0 , A@ L(2)#L(2)) prime 2\n";
        let doc = parse(src).unwrap();
        assert_eq!(
            print_document(&doc),
            "space A = ladder(L(2) # L(2), S(3)) cap E(2) cap D(4)\n\
             oracle-check csi(A@#0, A@L(2) # L(2)) prime 2\n"
        );
    }

    #[test]
    fn parentheses_only_where_needed() {
        let l = |k| Box::new(Mfd::Lens(k));
        assert_eq!(print_mfd(&Mfd::Sum(Box::new(Mfd::Sum(l(1), l(2))), l(3))), "L(1) # L(2) # L(3)");
        assert_eq!(print_mfd(&Mfd::Sum(l(1), Box::new(Mfd::Sum(l(2), l(3))))), "L(1) # (L(2) # L(3))");
        assert_eq!(
            print_mfd(&Mfd::Product(Box::new(Mfd::Sum(l(1), l(2))), l(3))),
            "(L(1) # L(2)) x L(3)"
        );
    }
}
