//! Corpus files, command-line plumbing and the regression suite on top of
//! `qgdual-core`.

pub mod corpus;
pub mod golden;
pub mod schema;
pub mod suite;
