//! Text, LaTeX and JSON renderings of a decided identity.

use serde::{Deserialize, Serialize};

use crate::analyzer::IelDecision;
use crate::charset::CharSet;
use crate::error::{Error, Result};
use crate::eval::indicator_sequence;
use crate::mask::{Arity, SubsetMask};

/// Everything known about one expression at a fixed arity.
///
/// `coefficients` is empty and the witnesses are set exactly when `iel` is
/// false. Field order is the JSON key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityReport {
    pub n: usize,
    pub expression: String,
    pub characteristic_set: Vec<Vec<usize>>,
    pub iel: bool,
    pub cardinalities: Vec<usize>,
    pub coefficients: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_in: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_out: Option<Vec<usize>>,
}

impl IdentityReport {
    pub fn new(expression: impl Into<String>, s: &CharSet, decision: &IelDecision) -> Self {
        let mut cardinalities: Vec<usize> = s
            .level_counts()
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(k, _)| k)
            .collect();
        cardinalities.sort_unstable();
        let (coefficients, witness_in, witness_out) = match decision {
            IelDecision::IsLike { coeffs, .. } => (coeffs.as_slice().to_vec(), None, None),
            IelDecision::NotLike {
                witness_in,
                witness_out,
            } => (
                Vec::new(),
                Some(witness_in.indices()),
                Some(witness_out.indices()),
            ),
        };
        IdentityReport {
            n: s.arity().get(),
            expression: expression.into(),
            characteristic_set: s.serialize(),
            iel: decision.is_like(),
            cardinalities,
            coefficients,
            witness_in,
            witness_out,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: IdentityReport = serde_json::from_str(text)?;
        r.validate()?;
        Ok(r)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::Report(msg.to_string()));
        if self.iel {
            if self.coefficients.len() != self.n {
                return bad("coefficients must have one entry per variable");
            }
            if self.witness_in.is_some() || self.witness_out.is_some() {
                return bad("witnesses are only present when iel is false");
            }
        } else {
            if !self.coefficients.is_empty() {
                return bad("coefficients are only present when iel is true");
            }
            if self.witness_in.is_none() || self.witness_out.is_none() {
                return bad("witnesses are required when iel is false");
            }
        }
        Ok(())
    }

    fn witness_masks(&self) -> Option<(SubsetMask, SubsetMask)> {
        let w_in = SubsetMask::from_indices(self.witness_in.clone()?).ok()?;
        let w_out = SubsetMask::from_indices(self.witness_out.clone()?).ok()?;
        Some((w_in, w_out))
    }
}

#[derive(Clone, Copy)]
enum Style {
    Text,
    Latex,
}

/// Right-hand side `Σ c_k·i_{n,k}(A)` with zero terms dropped; `0` if all vanish.
fn combination(n: usize, coeffs: &[i64], style: Style) -> String {
    let mut out = String::new();
    for (idx, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let k = idx + 1;
        let term = match style {
            Style::Text => format!("i_{{{n},{k}}}(A)"),
            Style::Latex => format!("i_{{{n},{k}}}(\\mathcal{{A}})"),
        };
        let sign = if c < 0 { "-" } else { "+" };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let mag = c.unsigned_abs();
        if mag != 1 {
            match style {
                Style::Text => out.push_str(&format!("{mag}*")),
                Style::Latex => out.push_str(&format!("{mag}\\,")),
            }
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `Σ c_k·i_{n,k}(A)` in plain text.
pub fn combination_text(n: usize, coeffs: &[i64]) -> String {
    combination(n, coeffs, Style::Text)
}

/// `Σ c_k·i_{n,k}(\mathcal{A})` in LaTeX.
pub fn combination_latex(n: usize, coeffs: &[i64]) -> String {
    combination(n, coeffs, Style::Latex)
}

fn indicator_text(n: usize, m: SubsetMask) -> String {
    Arity::with_max(n, n)
        .and_then(|a| indicator_sequence(m, a))
        .map(|s| s.to_string())
        .unwrap_or_else(|_| "?".into())
}

fn latex_set(indices: &[usize]) -> String {
    let parts: Vec<String> = indices.iter().map(usize::to_string).collect();
    format!("\\{{{}\\}}", parts.join(","))
}

pub fn render_text(r: &IdentityReport) -> String {
    if r.iel {
        return format!("|E(A)| = {}", combination_text(r.n, &r.coefficients));
    }
    let Some((w_in, w_out)) = r.witness_masks() else {
        return "not inclusion-exclusion-like".into();
    };
    format!(
        "not inclusion-exclusion-like: {w_in} ∈ S but {w_out} ∉ S, both of size {}\n\
         indicator sequences {} and {} have equal i-vectors but |E(A)| = 1 vs 0",
        w_in.len(),
        indicator_text(r.n, w_in),
        indicator_text(r.n, w_out),
    )
}

pub fn render_latex(r: &IdentityReport) -> String {
    if r.iel {
        return format!(
            "|E(\\mathcal{{A}})| = {}",
            combination_latex(r.n, &r.coefficients)
        );
    }
    match (&r.witness_in, &r.witness_out) {
        (Some(w_in), Some(w_out)) => format!(
            "{} \\in \\mathcal{{S}},\\quad {} \\notin \\mathcal{{S}},\\quad |{}| = |{}| = {}",
            latex_set(w_in),
            latex_set(w_out),
            latex_set(w_in),
            latex_set(w_out),
            w_in.len()
        ),
        _ => "\\text{not inclusion-exclusion-like}".into(),
    }
}

pub fn render_json(r: &IdentityReport) -> String {
    serde_json::to_string(r).expect("report fields serialize")
}
