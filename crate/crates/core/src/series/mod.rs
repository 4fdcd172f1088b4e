//! Truncated-series checks of the generating-function identities, and exact
//! formal checks of the residue cancellation and the parity identities.

pub mod appendix;
pub mod checks;
pub mod formal;
pub mod trunc;

pub use appendix::{appendix_identity, inductive_step, verify_parity_identities, Parity, StepReport};
pub use checks::{
    a_f_series, lemma53_sides, verify_eq517, verify_lemma52, verify_lemma53, AfSeries, Eq517Point, Eq517Report,
    Lemma52Report, Lemma53Report,
};
pub use formal::{FormalExpr, Monomial};
pub use trunc::{Scalar, TruncSeries};
