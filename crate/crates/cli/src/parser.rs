use crate::ast::*;
use crate::diagnostic::{Diagnostic, Span};
use crate::lexer::{tokenize, Tok, Token};

pub fn parse(src: &str) -> Result<Document, Diagnostic> {
    let tokens = tokenize(src)?;
    Parser { tokens, pos: 0 }.document()
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, Diagnostic>;

const ITEM_START: &[&str] = &["space", "invariants", "distinguish", "census", "oracle-check"];
const SPACE_EXPR: &[&str] = &["stringer", "ladder", "csi", "M", "a space name"];
const MFD_START: &[&str] = &["S", "L", "Sigma", "T", "HS", "`(`"];

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn span(&self) -> Span {
        self.peek().span
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> PResult<T> {
        Err(Diagnostic::expected(self.span(), &self.peek().tok.describe(), expected))
    }

    fn at_word(&self, word: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == word)
    }

    fn word(&mut self, word: &str) -> PResult<Span> {
        if self.at_word(word) {
            Ok(self.advance().span)
        } else {
            self.fail(&[&format!("`{word}`")])
        }
    }

    fn punct(&mut self, tok: Tok) -> PResult<Span> {
        if self.peek().tok == tok {
            Ok(self.advance().span)
        } else {
            self.fail(&[&tok.describe()])
        }
    }

    fn int(&mut self) -> PResult<Spanned<u64>> {
        match self.peek().tok {
            Tok::Int(n) => {
                let span = self.advance().span;
                Ok(Spanned::new(n, span))
            }
            _ => self.fail(&["an integer"]),
        }
    }

    fn name(&mut self) -> PResult<Spanned<String>> {
        match &self.peek().tok {
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                let s = s.clone();
                let span = self.advance().span;
                Ok(Spanned::new(s, span))
            }
            Tok::Ident(s) => Err(Diagnostic::expected(
                self.span(),
                &format!("reserved word `{s}`"),
                &["a space name"],
            )),
            _ => self.fail(&["a space name"]),
        }
    }

    fn document(mut self) -> PResult<Document> {
        let mut items = Vec::new();
        while self.peek().tok != Tok::Eof {
            items.push(self.item()?);
        }
        Ok(Document { items })
    }

    fn item(&mut self) -> PResult<Spanned<Item>> {
        let span = self.span();
        let word = match &self.peek().tok {
            Tok::Ident(s) => s.clone(),
            _ => return self.fail(ITEM_START),
        };
        let item = match word.as_str() {
            "space" => self.decl()?,
            "invariants" => {
                self.advance();
                let space = self.name()?;
                let primes = self.primes_clause()?;
                Item::Directive(Directive::Invariants { space, primes })
            }
            "distinguish" => {
                self.advance();
                let left = self.name()?;
                let right = self.name()?;
                let primes = self.primes_clause()?;
                Item::Directive(Directive::Distinguish { left, right, primes })
            }
            "census" => {
                self.advance();
                let space = self.name()?;
                let primes = self.primes_clause()?;
                Item::Directive(Directive::Census { space, primes })
            }
            "oracle-check" => {
                self.advance();
                let space = self.space_expr()?;
                self.word("prime")?;
                let prime = self.int()?;
                let depth = if self.at_word("depth") {
                    self.advance();
                    Some(self.int()?)
                } else {
                    None
                };
                Item::Directive(Directive::OracleCheck { space, prime, depth })
            }
            _ => return self.fail(ITEM_START),
        };
        Ok(Spanned::new(item, span))
    }

    fn decl(&mut self) -> PResult<Item> {
        self.word("space")?;
        let name = self.name()?;
        self.punct(Tok::Equals)?;
        let expr = self.space_expr()?;
        let mut caps = Vec::new();
        while self.at_word("cap") {
            self.advance();
            caps.push(self.cap()?);
        }
        Ok(Item::Decl { name, expr, caps })
    }

    fn cap(&mut self) -> PResult<Spanned<Cap>> {
        let span = self.span();
        let name = match &self.peek().tok {
            Tok::Ident(s) if s != "cap" && !ITEM_START.contains(&s.as_str()) => s.clone(),
            _ => return self.fail(&["a cap name"]),
        };
        self.advance();
        let arg = if self.peek().tok == Tok::LParen {
            self.advance();
            let n = self.int()?.node;
            self.punct(Tok::RParen)?;
            Some(n)
        } else {
            None
        };
        Ok(Spanned::new(Cap { name, arg }, span))
    }

    fn primes_clause(&mut self) -> PResult<Vec<Spanned<u64>>> {
        self.word("primes")?;
        self.int_list()
    }

    fn int_list(&mut self) -> PResult<Vec<Spanned<u64>>> {
        let mut out = vec![self.int()?];
        while self.peek().tok == Tok::Comma {
            self.advance();
            out.push(self.int()?);
        }
        Ok(out)
    }

    fn space_expr(&mut self) -> PResult<Spanned<SpaceExpr>> {
        let span = self.span();
        let word = match &self.peek().tok {
            Tok::Ident(s) => s.clone(),
            _ => return self.fail(SPACE_EXPR),
        };
        let expr = match word.as_str() {
            "stringer" => {
                self.advance();
                self.punct(Tok::LParen)?;
                let m = self.mfd()?;
                self.punct(Tok::RParen)?;
                SpaceExpr::Stringer(m)
            }
            "ladder" => {
                self.advance();
                self.punct(Tok::LParen)?;
                let x = self.mfd()?;
                self.punct(Tok::Comma)?;
                let y = self.mfd()?;
                self.punct(Tok::RParen)?;
                SpaceExpr::Ladder(x, y)
            }
            "csi" => {
                self.advance();
                self.punct(Tok::LParen)?;
                let a = self.space_ref()?;
                self.punct(Tok::Comma)?;
                let b = self.space_ref()?;
                self.punct(Tok::RParen)?;
                SpaceExpr::Csi(a, b)
            }
            "M" if *self.peek_at(1) == Tok::LParen => {
                self.advance();
                self.advance();
                let primes = self.int_list()?;
                self.punct(Tok::RParen)?;
                SpaceExpr::Generalized(primes)
            }
            w if !RESERVED.contains(&w) => {
                self.advance();
                SpaceExpr::Name(word)
            }
            _ => return self.fail(SPACE_EXPR),
        };
        Ok(Spanned::new(expr, span))
    }

    fn space_ref(&mut self) -> PResult<SpaceRef> {
        let name = self.name()?;
        self.punct(Tok::At)?;
        let span = self.span();
        let node = match self.peek().tok {
            Tok::Star => {
                self.advance();
                NodeSel::Any
            }
            Tok::Hash => {
                self.advance();
                NodeSel::Index(self.int()?.node)
            }
            Tok::Ident(_) | Tok::LParen => NodeSel::Label(self.mfd()?.node),
            _ => return self.fail(&["a manifold pattern", "`*`", "`#`"]),
        };
        Ok(SpaceRef {
            name,
            node: Spanned::new(node, span),
        })
    }

    /// `sum := prod ('#' prod)*`, `prod := atom ('x' atom)*`.
    fn mfd(&mut self) -> PResult<Spanned<Mfd>> {
        let span = self.span();
        let mut m = self.mfd_product()?;
        while self.peek().tok == Tok::Hash {
            self.advance();
            let rhs = self.mfd_product()?;
            m = Mfd::Sum(Box::new(m), Box::new(rhs));
        }
        Ok(Spanned::new(m, span))
    }

    fn mfd_product(&mut self) -> PResult<Mfd> {
        let mut m = self.mfd_atom()?;
        while self.at_word("x") {
            self.advance();
            let rhs = self.mfd_atom()?;
            m = Mfd::Product(Box::new(m), Box::new(rhs));
        }
        Ok(m)
    }

    fn mfd_atom(&mut self) -> PResult<Mfd> {
        if self.peek().tok == Tok::LParen {
            self.advance();
            let m = self.mfd()?.node;
            self.punct(Tok::RParen)?;
            return Ok(m);
        }
        let ctor: fn(u64) -> Mfd = match &self.peek().tok {
            Tok::Ident(s) => match s.as_str() {
                "S" => Mfd::Sphere,
                "L" => Mfd::Lens,
                "Sigma" => Mfd::Sigma,
                "T" => Mfd::Torus,
                "HS" => Mfd::HomologySphere,
                _ => return self.fail(MFD_START),
            },
            _ => return self.fail(MFD_START),
        };
        self.advance();
        self.punct(Tok::LParen)?;
        let n = self.int()?.node;
        self.punct(Tok::RParen)?;
        Ok(ctor(n))
    }
}
