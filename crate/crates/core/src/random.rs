//! Seedable random expression generation for property checks.

use rand::Rng;

use crate::expr::Expr;
use crate::mask::Arity;

/// A random expression over `n` variables with depth at most `max_depth`.
///
/// Leaves are variables most of the time and `Empty` occasionally; interior
/// nodes pick union, intersection and complement with equal weight.
pub fn random_expr<R: Rng + ?Sized>(n: Arity, max_depth: usize, rng: &mut R) -> Expr {
    if max_depth == 0 || rng.gen_ratio(1, 4) {
        return if rng.gen_ratio(1, 10) {
            Expr::Empty
        } else {
            Expr::Var(rng.gen_range(1..=n.get()))
        };
    }
    match rng.gen_range(0..3) {
        0 => Expr::union(
            random_expr(n, max_depth - 1, rng),
            random_expr(n, max_depth - 1, rng),
        ),
        1 => Expr::inter(
            random_expr(n, max_depth - 1, rng),
            random_expr(n, max_depth - 1, rng),
        ),
        _ => Expr::compl(random_expr(n, max_depth - 1, rng)),
    }
}
