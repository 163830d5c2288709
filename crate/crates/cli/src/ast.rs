use crate::diagnostic::Span;

/// A value with its source position. Equality ignores the position, so
/// documents compare structurally.
#[derive(Clone, Debug)]
pub struct Spanned<T> {
    pub node: T,
    pub span: Span,
}

impl<T> Spanned<T> {
    pub fn new(node: T, span: Span) -> Self {
        Spanned { node, span }
    }
}

impl<T: PartialEq> PartialEq for Spanned<T> {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}

impl<T: Eq> Eq for Spanned<T> {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mfd {
    Sphere(u64),
    Lens(u64),
    Sigma(u64),
    Torus(u64),
    HomologySphere(u64),
    Sum(Box<Mfd>, Box<Mfd>),
    Product(Box<Mfd>, Box<Mfd>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeSel {
    Label(Mfd),
    Index(u64),
    Any,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceRef {
    pub name: Spanned<String>,
    pub node: Spanned<NodeSel>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceExpr {
    Stringer(Spanned<Mfd>),
    Ladder(Spanned<Mfd>, Spanned<Mfd>),
    Csi(SpaceRef, SpaceRef),
    Generalized(Vec<Spanned<u64>>),
    Name(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cap {
    pub name: String,
    pub arg: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Directive {
    Invariants {
        space: Spanned<String>,
        primes: Vec<Spanned<u64>>,
    },
    Distinguish {
        left: Spanned<String>,
        right: Spanned<String>,
        primes: Vec<Spanned<u64>>,
    },
    Census {
        space: Spanned<String>,
        primes: Vec<Spanned<u64>>,
    },
    OracleCheck {
        space: Spanned<SpaceExpr>,
        prime: Spanned<u64>,
        depth: Option<Spanned<u64>>,
    },
}

impl Directive {
    pub fn kind(&self) -> &'static str {
        match self {
            Directive::Invariants { .. } => "invariants",
            Directive::Distinguish { .. } => "distinguish",
            Directive::Census { .. } => "census",
            Directive::OracleCheck { .. } => "oracle-check",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Decl {
        name: Spanned<String>,
        expr: Spanned<SpaceExpr>,
        caps: Vec<Spanned<Cap>>,
    },
    Directive(Directive),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub items: Vec<Spanned<Item>>,
}

/// Words that cannot name a space. `M` can: it is the generalized ladder
/// constructor only when followed by `(`.
pub const RESERVED: &[&str] = &[
    "space",
    "cap",
    "invariants",
    "distinguish",
    "census",
    "oracle-check",
    "primes",
    "prime",
    "depth",
    "stringer",
    "ladder",
    "csi",
    "S",
    "L",
    "Sigma",
    "T",
    "HS",
    "x",
];
