//! Recursive-descent parser for set-valued expressions.
//!
//! ```text
//! expr     = term { ("|" | "∪") term } ;
//! term     = factor { ("&" | "∩") factor } ;
//! factor   = ("!" factor) | postfix ;
//! postfix  = atom { "'" } ;
//! atom     = "0" | "∅" | variable | "(" expr ")" ;
//! variable = "X" digit { digit } ;
//! ```
//!
//! Whitespace between tokens is ignored. Positions in errors are 0-based
//! character columns.

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::mask::Arity;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Empty,
    Var(u64),
    Union,
    Inter,
    Not,
    Prime,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Empty => "empty set".into(),
            Tok::Var(i) => format!("X{i}"),
            Tok::Union => "'|'".into(),
            Tok::Inter => "'&'".into(),
            Tok::Not => "'!'".into(),
            Tok::Prime => "\"'\"".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Spanned {
    tok: Tok,
    pos: usize,
}

fn syntax(pos: usize, expected: &[&str], found: String) -> Error {
    Error::Syntax {
        pos,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found,
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0' | '∅' => Tok::Empty,
            '|' | '∪' => Tok::Union,
            '&' | '∩' => Tok::Inter,
            '!' => Tok::Not,
            '\'' => Tok::Prime,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            'X' => {
                let start = i + 1;
                let mut end = start;
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                if end == start {
                    let found = chars
                        .get(start)
                        .map(|c| format!("'{c}'"))
                        .unwrap_or_else(|| "end of input".into());
                    return Err(syntax(start, &["digit"], found));
                }
                // saturate on absurdly long indices; the range check rejects them
                let index = chars[start..end].iter().fold(0u64, |acc, d| {
                    acc.saturating_mul(10)
                        .saturating_add(d.to_digit(10).unwrap() as u64)
                });
                i = end;
                out.push(Spanned {
                    tok: Tok::Var(index),
                    pos,
                });
                continue;
            }
            other => {
                return Err(syntax(
                    pos,
                    &["'0'", "'∅'", "variable", "'('", "'!'"],
                    format!("'{other}'"),
                ))
            }
        };
        i += 1;
        out.push(Spanned { tok, pos });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        pos: chars.len(),
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    at: usize,
    arity: Arity,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> &Spanned {
        let t = &self.toks[self.at];
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut left = self.term()?;
        while self.peek().tok == Tok::Union {
            self.bump();
            let right = self.term()?;
            left = Expr::union(left, right);
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut left = self.factor()?;
        while self.peek().tok == Tok::Inter {
            self.bump();
            let right = self.factor()?;
            left = Expr::inter(left, right);
        }
        Ok(left)
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.peek().tok == Tok::Not {
            self.bump();
            return Ok(Expr::compl(self.factor()?));
        }
        let mut e = self.atom()?;
        while self.peek().tok == Tok::Prime {
            self.bump();
            e = Expr::compl(e);
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr> {
        let n = self.arity.get();
        let Spanned { tok, pos } = self.bump();
        let pos = *pos;
        match tok.clone() {
            Tok::Empty => Ok(Expr::Empty),
            Tok::Var(index) => {
                if index == 0 || index > n as u64 {
                    Err(Error::IndexOutOfRange { index, n, pos })
                } else {
                    Ok(Expr::Var(index as usize))
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(syntax(
                        close.pos,
                        &["'|'", "'&'", "')'"],
                        close.tok.describe(),
                    ));
                }
                Ok(inner)
            }
            other => Err(syntax(
                pos,
                &["'0'", "'∅'", "variable", "'('", "'!'"],
                other.describe(),
            )),
        }
    }
}

/// Parses `text` as an expression over `n` variables.
pub fn parse(text: &str, n: Arity) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        arity: n,
    };
    let e = p.expr()?;
    let tail = p.peek();
    if tail.tok != Tok::Eof {
        return Err(syntax(
            tail.pos,
            &["'|'", "'&'", "end of input"],
            tail.tok.describe(),
        ));
    }
    Ok(e)
}

/// Parses with an arity given as a plain integer, checked against the default cap.
pub fn parse_n(text: &str, n: usize) -> Result<Expr> {
    parse(text, Arity::new(n)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Result<Expr> {
        parse_n(text, n)
    }

    #[test]
    fn simple_union() {
        assert_eq!(
            p("X1 | X2", 3).unwrap(),
            Expr::union(Expr::var(1), Expr::var(2))
        );
    }

    #[test]
    fn three_pair_intersections_left_associated() {
        let e = p("(X1 & X2) | (X1 & X3) | (X2 & X3)", 3).unwrap();
        let want = Expr::union(
            Expr::union(
                Expr::inter(Expr::var(1), Expr::var(2)),
                Expr::inter(Expr::var(1), Expr::var(3)),
            ),
            Expr::inter(Expr::var(2), Expr::var(3)),
        );
        assert_eq!(e, want);
    }

    #[test]
    fn empty_literals() {
        assert_eq!(p("0", 2).unwrap(), Expr::Empty);
        assert_eq!(p(" ∅ ", 2).unwrap(), Expr::Empty);
    }

    #[test]
    fn index_out_of_range() {
        assert!(matches!(
            p("X4", 3),
            Err(Error::IndexOutOfRange {
                index: 4,
                n: 3,
                pos: 0
            })
        ));
        assert!(matches!(
            p("X0", 3),
            Err(Error::IndexOutOfRange { index: 0, .. })
        ));
        assert!(matches!(
            p("X1 | X99999999999999999999999", 3),
            Err(Error::IndexOutOfRange { pos: 5, .. })
        ));
    }

    #[test]
    fn arity_error() {
        assert!(matches!(p("X1", 0), Err(Error::Arity { .. })));
        assert!(matches!(p("X1", 21), Err(Error::Arity { .. })));
    }

    #[test]
    fn precedence_and_associativity() {
        let e = p("X1 | X2 & !X3", 3).unwrap();
        assert_eq!(
            e,
            Expr::union(
                Expr::var(1),
                Expr::inter(Expr::var(2), Expr::compl(Expr::var(3)))
            )
        );
        let e = p("X1 & X2 & X3", 3).unwrap();
        assert_eq!(
            e,
            Expr::inter(Expr::inter(Expr::var(1), Expr::var(2)), Expr::var(3))
        );
    }

    #[test]
    fn unicode_and_postfix_complement() {
        let a = p("(X1 ∪ X2)' ∩ X3''", 3).unwrap();
        let b = p("!(X1 | X2) & !!X3", 3).unwrap();
        assert_eq!(a, b);
        // postfix binds tighter than prefix
        assert_eq!(
            p("!X1'", 1).unwrap(),
            Expr::compl(Expr::compl(Expr::var(1)))
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        match p("X1 | ", 2) {
            Err(Error::Syntax { pos, found, .. }) => {
                assert_eq!(pos, 5);
                assert_eq!(found, "end of input");
            }
            other => panic!("unexpected {other:?}"),
        }
        match p("(X1 | X2", 2) {
            Err(Error::Syntax { pos, expected, .. }) => {
                assert_eq!(pos, 8);
                assert!(expected.contains(&"')'".to_string()));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(p("X1 X2", 2), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(p("X", 2), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(p("X1 + X2", 2), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(p("", 2), Err(Error::Syntax { pos: 0, .. })));
    }
}
