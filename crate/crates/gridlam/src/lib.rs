//! Optimal straight-line drawings of complete multipartite graphs on bounded
//! integer grids, and an integer variant of the algebraic connectivity.
//!
//! A drawing of `K_{n_1,...,n_r}` on the grid `P = {-M,...,M}^d` is a coloring
//! of the grid points with `r` colors, color `i` used `n_i` times. Its energy
//!
//! ```text
//! lambda(v) = sum of squared edge lengths / sum of squared vertex norms
//! ```
//!
//! is sandwiched between the algebraic connectivity `lambda_2(G)` and the
//! largest Laplacian eigenvalue `lambda_N(G)`. This crate computes, constructs
//! and verifies drawings that minimize or maximize `lambda(v)`:
//!
//! - [`minimize`]: concentric-ring and zero-sum constructions, exact search,
//!   and counting of optimal drawings,
//! - [`maximize`]: simulated annealing, exact search, and the weighted
//!   centroidal-Voronoi characterization of maximizers,
//! - [`int_connectivity`]: the integer algebraic connectivity `lambda_2^I(G)`
//!   of arbitrary small graphs on the symmetric 1-D grid, minimum-p-sums, and
//!   the product / hypercube constructions and counterexamples,
//! - [`spectral`]: Laplacian spectra (closed form for complete multipartite
//!   graphs plus a Jacobi eigensolver used as a cross-check),
//! - [`oracle`]: exhaustive enumerators used as ground truth in tests.
//!
//! All lambda values are exact rationals; floating point only appears in the
//! eigensolver and in human-readable output.
//!
//! Start with the runnable examples (`cargo run --release --example ...`):
//! `min_drawings`, `max_drawings`, `spectra`, `integer_connectivity`,
//! `products_and_hypercubes`, `drawing_counts`, `figure_gallery`.
//! The `gridlam` binary exposes the same operations as subcommands.

pub mod cache;
pub mod cli;
pub mod figures;
pub mod graphs;
pub mod grid;
pub mod int_connectivity;
pub mod lambda;
pub mod maximize;
pub mod minimize;
pub mod oracle;
pub mod spectral;
pub mod svg;
pub mod verify;

pub use graphs::{Graph, PartitionSpec};
pub use grid::{GridPoint, GridSpec};
pub use lambda::{Coloring, Lambda};
