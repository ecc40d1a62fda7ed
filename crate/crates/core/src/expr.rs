//! Set-valued expression trees and their canonical text form.

use std::fmt;

use crate::error::{Error, Result};
use crate::mask::Arity;

/// A set-valued expression in the variables `X1..Xn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Empty,
    /// 1-based variable index.
    Var(usize),
    Union(Box<Expr>, Box<Expr>),
    Inter(Box<Expr>, Box<Expr>),
    Compl(Box<Expr>),
}

impl Expr {
    pub fn var(i: usize) -> Self {
        Expr::Var(i)
    }

    pub fn union(left: Expr, right: Expr) -> Self {
        Expr::Union(Box::new(left), Box::new(right))
    }

    pub fn inter(left: Expr, right: Expr) -> Self {
        Expr::Inter(Box::new(left), Box::new(right))
    }

    pub fn compl(inner: Expr) -> Self {
        Expr::Compl(Box::new(inner))
    }

    /// Left-associated union of `parts`; `Empty` when `parts` is empty.
    pub fn union_all<I: IntoIterator<Item = Expr>>(parts: I) -> Self {
        parts.into_iter().reduce(Expr::union).unwrap_or(Expr::Empty)
    }

    /// Left-associated intersection of `parts`; `Empty` when `parts` is empty.
    pub fn inter_all<I: IntoIterator<Item = Expr>>(parts: I) -> Self {
        parts.into_iter().reduce(Expr::inter).unwrap_or(Expr::Empty)
    }

    /// Largest variable index, or 0 if the expression has no variables.
    pub fn max_var(&self) -> usize {
        match self {
            Expr::Empty => 0,
            Expr::Var(i) => *i,
            Expr::Union(l, r) | Expr::Inter(l, r) => l.max_var().max(r.max_var()),
            Expr::Compl(e) => e.max_var(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Empty | Expr::Var(_) => 0,
            Expr::Union(l, r) | Expr::Inter(l, r) => 1 + l.depth().max(r.depth()),
            Expr::Compl(e) => 1 + e.depth(),
        }
    }

    /// Checks that every variable lies in `1..=n`.
    pub fn check_arity(&self, n: Arity) -> Result<()> {
        match self {
            Expr::Empty => Ok(()),
            Expr::Var(i) if (1..=n.get()).contains(i) => Ok(()),
            Expr::Var(i) => Err(Error::IndexOutOfRange {
                index: *i as u64,
                n: n.get(),
                pos: 0,
            }),
            Expr::Union(l, r) | Expr::Inter(l, r) => {
                l.check_arity(n)?;
                r.check_arity(n)
            }
            Expr::Compl(e) => e.check_arity(n),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Union(..) => 1,
            Expr::Inter(..) => 2,
            Expr::Empty | Expr::Var(_) | Expr::Compl(_) => 3,
        }
    }
}

/// Canonical ASCII rendering with minimal parentheses.
pub fn print(e: &Expr) -> String {
    e.to_string()
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min_prec: u8) -> fmt::Result {
    if e.precedence() < min_prec {
        f.write_str("(")?;
        write_bare(f, e)?;
        f.write_str(")")
    } else {
        write_bare(f, e)
    }
}

fn write_bare(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match e {
        Expr::Empty => f.write_str("0"),
        Expr::Var(i) => write!(f, "X{i}"),
        // binary operators are left-associative: a right operand of equal
        // precedence needs parentheses
        Expr::Union(l, r) => {
            write_at(f, l, 1)?;
            f.write_str(" | ")?;
            write_at(f, r, 2)
        }
        Expr::Inter(l, r) => {
            write_at(f, l, 2)?;
            f.write_str(" & ")?;
            write_at(f, r, 3)
        }
        Expr::Compl(inner) => {
            f.write_str("!")?;
            write_at(f, inner, 3)
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bare(f, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_with_minimal_parentheses() {
        assert_eq!(print(&Expr::union(Expr::var(1), Expr::var(2))), "X1 | X2");
        assert_eq!(
            print(&Expr::compl(Expr::union(Expr::var(1), Expr::var(2)))),
            "!(X1 | X2)"
        );
        assert_eq!(
            print(&Expr::inter(Expr::var(1), Expr::compl(Expr::var(2)))),
            "X1 & !X2"
        );
        assert_eq!(print(&Expr::Empty), "0");
    }

    #[test]
    fn right_nested_operands_keep_parentheses() {
        let e = Expr::union(Expr::var(1), Expr::union(Expr::var(2), Expr::var(3)));
        assert_eq!(print(&e), "X1 | (X2 | X3)");
        let e = Expr::inter(Expr::union(Expr::var(1), Expr::var(2)), Expr::var(3));
        assert_eq!(print(&e), "(X1 | X2) & X3");
        let e = Expr::compl(Expr::compl(Expr::var(1)));
        assert_eq!(print(&e), "!!X1");
    }

    #[test]
    fn arity_check() {
        let e = Expr::union(Expr::var(1), Expr::var(4));
        assert!(e.check_arity(Arity::new(4).unwrap()).is_ok());
        assert!(matches!(
            e.check_arity(Arity::new(3).unwrap()),
            Err(Error::IndexOutOfRange { index: 4, n: 3, .. })
        ));
        assert_eq!(e.max_var(), 4);
        assert_eq!(e.depth(), 1);
    }
}
