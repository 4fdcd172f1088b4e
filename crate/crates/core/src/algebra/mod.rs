//! Prime fields, polynomials over them, enumeration, and exact Q(√q) scalars.

mod enumerate;
mod extfield;
mod factor;
mod field;
mod poly;
mod qsqrt;

pub use enumerate::{
    ensemble, ensemble_range, ensemble_size, monic_count, monic_from_index, monic_polys,
    monic_range, monic_up_to, MonicIter,
};
pub use extfield::ExtField;
pub use factor::{
    euler_phi, factor, irreducible_count, irreducible_count_f64, irreducibles_up_to,
    is_irreducible, is_squarefree, squarefree_decomposition, Factorization,
};
pub use field::{is_prime, FieldParams};
pub use poly::Poly;
pub use qsqrt::{rational_text, QSqrt, QSqrtJson};
