//! knotcord: exact knot-concordance invariants from Seifert matrices.
//!
//! The crate computes Alexander polynomials, knot determinants, and
//! certified Levine-Tristram signatures in exact arithmetic, turns them
//! into four-genus and cobordism-distance bounds, and mechanizes two
//! constructions: the surgery bound d(K, K^r) <= 2g - 1 on the Seifert
//! form of K # -K^r, and the search for companion knots A, B whose
//! signature values force g4(nK(A,B)) = n.

pub mod cli;
pub mod cyclotomic;
pub mod expr;
pub mod factor;
pub mod invariants;
pub mod linalg;
pub mod obstructions;
pub mod parse;
pub mod poly;
pub mod report;
pub mod seifert;
pub mod selection;
pub mod surgery;
pub mod verify;

#[doc(hidden)]
pub mod sample;

pub use expr::KnotExpr;
pub use invariants::{RationalAngle, SignatureProfile};
pub use poly::LaurentPoly;
pub use seifert::{GenusData, SeifertMatrix};

/// Command-line entry point; returns the process exit code.
pub fn run_cli() -> i32 {
    cli::run()
}
