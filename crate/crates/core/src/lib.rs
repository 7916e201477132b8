//! Exact moments of the squared unimodular random matrix.
//!
//! Let `U` be an `N x N` matrix whose entries are independent and uniform on
//! the complex unit circle, and let `rho = U U* / N^2`. The mean normalized
//! trace `E[tr rho^k]` equals `N^{-2k-1} Q_k(N)` for an integer polynomial
//! `Q_k` of degree `k + 1`. Expanding the trace as a sum over maps from the
//! vertices of a `2k`-cycle into `[N]` and grouping the maps by the partition
//! of vertices they induce gives
//!
//! ```text
//! Q_k(N) = sum_j F(2k, j) (N)_j
//! ```
//!
//! where `(N)_j` is the falling factorial and `F(2k, j)` counts the partitions
//! of the alternating red/blue cycle into `j` blocks whose quotient graph is
//! *balanced*: for every ordered pair of blocks `(u, v)`, the red edges
//! `u -> v` are as many as the blue edges `v -> u`.
//!
//! The crate is split along those lines:
//!
//! * [`graph`] holds colored digraphs, set partitions, quotients, the balance
//!   predicate and brute-force traffic oracles for small graphs.
//! * [`enumerator`] counts `F(2k, j)` with a pruned, parallel search over
//!   restricted growth strings.
//! * [`basis`] converts between falling-factorial and monomial coefficients,
//!   builds the moment polynomials and evaluates the Borel-triangle formula
//!   that the counts refute from `k = 6` on.
//! * [`montecarlo`] samples unimodular matrices and checks the exact moments
//!   statistically.
//! * [`output`] renders command results as JSON or CSV for the command-line
//!   tool.
//!
//! ```
//! use unimodular_moments::{basis::MomentPolynomial, enumerator::{count_ddcg_partitions, CountOptions}};
//!
//! let row = count_ddcg_partitions(2, &CountOptions::default()).unwrap();
//! assert_eq!(row.counts(), &[1, 5, 2]);
//!
//! // Q_2(N) = 2N^3 - N^2
//! let poly = MomentPolynomial::from_row(&row);
//! assert_eq!(poly.evaluate(3), 45.into());
//! ```

pub mod basis;
pub mod enumerator;
mod error;
pub mod golden;
pub mod graph;
pub mod montecarlo;
pub mod output;
mod pool;

pub use pool::effective_workers;

pub use error::{Error, Result};
