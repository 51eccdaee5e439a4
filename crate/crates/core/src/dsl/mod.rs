//! Sweedler-notation expressions compiled to tensor networks.
//!
//! Surface syntax: juxtaposition or `*` for products, `t(k)` for coproduct
//! legs, `a(0)`/`a(1)` for coaction legs, `x .> y` and `y <. x` for the hit
//! actions, `f(x)` for pairings, `act(x, a)` for module actions and `@`
//! between tensor positions. Hit operators bind tighter than products. A
//! parenthesis right after a term (no space) is a pairing or a leg, so
//! `t (x)` is a product while `t(x)` pairs.

mod ast;
mod eval;
mod parse;

pub use ast::{Constant, Expr, MapName};
pub use eval::{
    check_identity, compile, evaluate, evaluate_reversed, AlgebraSide, CompiledExpr, ContractionPlan, Env,
    Signature, Space, Verdict,
};
pub use parse::{parse, parse_identity, parse_identity_file};

use alloc::string::String;
use core::fmt;

use crate::tensor::TensorError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DslError {
    Syntax { line: usize, col: usize, message: String },
    /// Operands of the wrong spaces, e.g. pairing two elements of `H`.
    TagMismatch(String),
    Unbound(String),
    Legs(String),
    SignatureMismatch(String),
    Tensor(TensorError),
}

impl DslError {
    pub(crate) fn on_line(self, line: usize) -> Self {
        match self {
            DslError::Syntax { col, message, .. } => DslError::Syntax { line, col, message },
            e => e,
        }
    }
}

impl From<TensorError> for DslError {
    fn from(e: TensorError) -> Self {
        DslError::Tensor(e)
    }
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DslError::Syntax { line, col, message } => write!(f, "{line}:{col}: {message}"),
            DslError::TagMismatch(s) => write!(f, "tag mismatch: {s}"),
            DslError::Unbound(s) => write!(f, "unbound: {s}"),
            DslError::Legs(s) => write!(f, "Sweedler legs: {s}"),
            DslError::SignatureMismatch(s) => write!(f, "signature mismatch: {s}"),
            DslError::Tensor(e) => write!(f, "{e:?}"),
        }
    }
}
