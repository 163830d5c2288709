use crate::diagnostic::{Diagnostic, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(u64),
    LParen,
    RParen,
    Comma,
    Equals,
    At,
    Hash,
    Star,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Equals => "`=`".into(),
            Tok::At => "`@`".into(),
            Tok::Hash => "`#`".into(),
            Tok::Star => "`*`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

/// Splits scenario text into tokens. `//` starts a comment running to the
/// end of the line; `×` is accepted as a spelling of the product `x`.
pub fn tokenize(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let span = Span { line, column };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '=' => Some(Tok::Equals),
            '@' => Some(Tok::At),
            '#' => Some(Tok::Hash),
            '*' => Some(Tok::Star),
            '×' => Some(Tok::Ident("x".into())),
            _ => None,
        };
        if let Some(tok) = single {
            bump(&mut chars);
            out.push(Token { tok, span });
            continue;
        }
        if c == '/' {
            bump(&mut chars);
            if chars.peek() != Some(&'/') {
                return Err(Diagnostic::new(span, "stray `/`; comments start with `//`"));
            }
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump(&mut chars);
            }
            continue;
        }
        if c.is_ascii_digit() {
            let mut text = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                text.push(d);
                bump(&mut chars);
            }
            let n = text
                .parse()
                .map_err(|_| Diagnostic::new(span, format!("integer `{text}` is too large")))?;
            out.push(Token { tok: Tok::Int(n), span });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut text = String::new();
            while let Some(&d) = chars
                .peek()
                .filter(|d| d.is_ascii_alphanumeric() || **d == '_' || **d == '-')
            {
                text.push(d);
                bump(&mut chars);
            }
            out.push(Token { tok: Tok::Ident(text), span });
            continue;
        }
        return Err(Diagnostic::new(span, format!("unexpected character `{c}`")));
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span { line, column },
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(src: &str) -> Vec<Tok> {
        tokenize(src).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn basic_tokens() {
        assert_eq!(
            toks("space Y = ladder(L(2), S(3)) // trailing\ncensus Y primes 2"),
            vec![
                Tok::Ident("space".into()),
                Tok::Ident("Y".into()),
                Tok::Equals,
                Tok::Ident("ladder".into()),
                Tok::LParen,
                Tok::Ident("L".into()),
                Tok::LParen,
                Tok::Int(2),
                Tok::RParen,
                Tok::Comma,
                Tok::Ident("S".into()),
                Tok::LParen,
                Tok::Int(3),
                Tok::RParen,
                Tok::RParen,
                Tok::Ident("census".into()),
                Tok::Ident("Y".into()),
                Tok::Ident("primes".into()),
                Tok::Int(2),
                Tok::Eof,
            ]
        );
    }

    #[test]
    fn spans_are_one_based() {
        let t = tokenize("a\n  bc").unwrap();
        assert_eq!(t[1].span, Span { line: 2, column: 3 });
        assert_eq!(t[2].span, Span { line: 2, column: 5 });
    }

    #[test]
    fn hyphenated_identifiers() {
        assert_eq!(toks("oracle-check")[0], Tok::Ident("oracle-check".into()));
    }

    #[test]
    fn bad_characters() {
        let e = tokenize("space $").unwrap_err();
        assert_eq!(e.span, Span { line: 1, column: 7 });
        assert!(tokenize("a / b").is_err());
    }
}
