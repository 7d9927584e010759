//! Exact algebraic concordance invariants of directed Seifert matrices and
//! Seifert couples.

pub mod arf;
pub mod cli;
pub mod diagrams;
pub mod error;
pub mod families;
pub mod exact;
pub mod linalg;
pub mod poly;
pub mod invariants;
pub mod isometric;
pub mod seifert;
pub mod witt;

pub use error::{Condition, Error, Result};
