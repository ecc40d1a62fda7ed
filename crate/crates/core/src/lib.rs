//! Characteristic sets of set-valued expressions and the inclusion-exclusion
//! identities they admit.
//!
//! The pipeline is [`parse`] → [`charset`] → [`decide_iel`] → [`IdentityReport`].
//! The [`eval`] module evaluates expressions and characteristic sets on
//! concrete set sequences and serves as the reference for everything else.

pub mod analyzer;
pub mod binomial;
pub mod charset;
pub mod error;
pub mod eval;
pub mod expr;
pub mod mask;
pub mod parser;
pub mod random;
pub mod render;

pub use analyzer::{
    coefficients, decide_iel, family_at_least, family_even, family_odd, CardinalitySet,
    CoeffVector, IelDecision,
};
pub use binomial::{binom, forward_transform, inverse_transform};
pub use charset::{charset, equivalent, CharSet, CharsetCompiler, Representation};
pub use error::{Error, Result};
pub use eval::{
    check_identity, eval_charset, eval_expr, i_vector, indicator_sequence, sigma_vector,
    ElementSet, SetSequence, StatVector,
};
pub use expr::{print, Expr};
pub use mask::{Arity, SubsetMask, DEFAULT_MAX_ARITY};
pub use parser::parse;
pub use render::{render_json, render_latex, render_text, IdentityReport};

/// Parsed expression together with its characteristic set and decision.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub expr: Expr,
    pub charset: CharSet,
    pub decision: IelDecision,
}

impl Analysis {
    pub fn report(&self) -> IdentityReport {
        IdentityReport::new(self.expr.to_string(), &self.charset, &self.decision)
    }
}

/// Runs parse, charset compilation and the level check on `text`.
pub fn analyze(text: &str, n: Arity) -> Result<Analysis> {
    let expr = parse(text, n)?;
    let charset = charset(&expr, n)?;
    let decision = decide_iel(&charset);
    Ok(Analysis {
        expr,
        charset,
        decision,
    })
}
