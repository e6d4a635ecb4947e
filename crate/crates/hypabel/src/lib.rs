//! Radon and Abel transforms on the hyperbolic spaces X(p+1, q+1) over the
//! real numbers, the complex numbers and the quaternions.
//!
//! The space is the quadric { [z, z] = -1 } inside F^{p+q+2}, where
//! `[x, y] = sum_{i<=p+1} conj(x_i) y_i - sum_{i>p+1} conj(x_i) y_i` and
//! F is R, C or H (of real dimension d = 1, 2, 4). The crate computes, for
//! rapidly decreasing test functions on that quadric:
//!
//! * the horocycle Radon transform `Rf(s)` as a flat integral over the
//!   nilpotent orbit through `a_s * x0`,
//! * the normalized Abel transform `Af(s) = exp(rho_1 * s) * Rf(s)`,
//! * for p < q, an equivalent reduced integral with the boundary weight
//!   `(1 + 2zv - z^2)^{(dq-dp)/2 - 1}`, `z = exp(-s)`, plus the Taylor
//!   coefficients of the boundary expansion of `F(z) = exp(ds) Rf(s)`,
//! * radial Laplacian images `Delta f`, shifted powers `D f`, and the
//!   matching constant-coefficient operator `L(d^2/ds^2)` on the Abel side,
//! * decay certificates: exponent fits, weighted-tail monotonicity checks
//!   against a declared quadrature noise floor, support radii and limits
//!   at infinity.
//!
//! Everything is deterministic: identical inputs produce bit-identical
//! outputs regardless of thread count (fixed-size work chunks, compensated
//! summation in a fixed order).
//!
//! # Layout
//!
//! | module | contents |
//! |--------|----------|
//! | [`params`] | space parameters, exact half-integer arithmetic, discrete series enumeration, operator `D` |
//! | [`geometry`] | ambient vectors, Hermitian form, nilpotent orbit points, matrix oracle |
//! | [`probes`] | test functions with decay/invariance metadata and radial profiles |
//! | [`quadrature`] | Gauss-Legendre / Gauss-Jacobi axes, box, halfline and sphere engines |
//! | [`fd`] | finite-difference weights on arbitrary nodes |
//! | [`jet`] | truncated Taylor arithmetic backing the radial operators |
//! | [`transforms`] | Radon and Abel transforms, boundary function, Taylor coefficients, grids |
//! | [`laplacian`] | radial Laplacian and iterated shifted operators via series jets |
//! | [`analysis`] | exponent fitting, rapid-decay certification, support and limit estimates |
//! | [`verify`] | named verification suites producing structured reports |
//! | [`cli`] | config files, CSV/JSON emission, subcommand drivers |
//!
//! # Quick start
//!
//! ```
//! use hypabel::params::{Field, SpaceParams, Variant};
//! use hypabel::probes::GaussianRadial;
//! use hypabel::quadrature::QuadratureSpec;
//! use hypabel::transforms;
//!
//! let sp = SpaceParams::new(Field::Real, 0, 4, Variant::Projective).unwrap();
//! let f = GaussianRadial::new(1.0);
//! let spec = QuadratureSpec::default();
//! let (rf, err) = transforms::radon_reduced(&f, &sp, 1.0, &spec).unwrap();
//! assert!(rf > 0.0 && err < 1e-8 * rf);
//! ```
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --release --example space_parameters
//! cargo run --release --example quadrature_rules
//! cargo run --release --example radon_cross_check
//! cargo run --release --example lemma_symmetries
//! cargo run --release --example transform_grid
//! cargo run --release --example exchange_residual
//! cargo run --release --example decay_pipeline
//! cargo run --release --example support_radius
//! cargo run --release --example nonprojective_parity
//! ```
//!
//! The same functionality is scriptable through the thin `hypabel` binary
//! (`params`, `transform`, `verify`, `sweep`; exit codes 0 = pass,
//! 1 = numerical failure, 2 = usage error).

pub mod analysis;
pub mod cli;
pub mod fd;
pub mod geometry;
pub mod jet;
pub mod laplacian;
pub mod params;
pub mod probes;
pub mod quadrature;
pub mod transforms;
pub mod verify;
