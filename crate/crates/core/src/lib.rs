//! Exact-arithmetic engine for Weil-bundle geometry.
//!
//! Everything is computed over arbitrary-precision rationals in a single
//! global chart on ℝⁿ, with smooth functions modelled by polynomials:
//!
//! - [`weil`]: Weil algebras (finite-dimensional local algebras), element
//!   arithmetic, augmentation, height, algebra homomorphisms.
//! - [`poly`]: polynomials over ℚ and over a Weil algebra, points of the
//!   bundle M^A, prolongation of functions / maps / vector fields, the
//!   extension of a vector field to A-valued functions, Lie brackets.
//! - [`poisson`]: Poisson structures with polynomial coefficients, the
//!   bracket {,}, Hamiltonian fields, and the lifted bracket {,}_A on M^A.
//! - [`cochain`]: the three cochain complexes (base / mixed / weil), their
//!   coboundary operators, cochain prolongation, closedness checks.
//! - [`homology`]: degree-truncated realizations of the complexes, exact
//!   kernel/rank computation, center (H⁰) and H¹ reports.
//! - [`textform`]: text grammars for rationals, polynomials and algebra
//!   elements; [`spec_io`]: JSON file formats; [`verify`]: seeded
//!   verification suites shared by the CLI and the acceptance tests.

pub mod cochain;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod poisson;
pub mod poly;
pub mod rat;
pub mod spec_io;
pub mod textform;
pub mod verify;
pub mod weil;

pub use error::Error;
pub use rat::Rat;
