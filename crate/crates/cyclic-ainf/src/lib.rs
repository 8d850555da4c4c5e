//! Exact-arithmetic toolkit for cyclic diagonals of the A∞ operad.
//!
//! - [`tree`]: planar trees as oriented cells of the associahedra
//! - [`tensor`]: the tensor-square operad and its chains
//! - [`linalg`]: sparse elimination over ℚ
//! - [`diagonal`]: cyclic diagonals and freedom counts
//! - [`homotopy`]: cyclic homotopies between diagonals
//! - [`algebra`]: cyclic A∞-algebras and their tensor products
//! - [`ribbon`]: ribbon graphs, orientations, and the graph diagonal
//! - [`kontsevich`]: Kontsevich classes and the tensor formula
//!
//! ```bash
//! cargo run --example associahedra
//! cargo run --example build_diagonal
//! cargo run --example tensor_formula
//! ```

pub mod algebra;
pub mod chain;
pub mod diagonal;
pub mod error;
pub mod fixtures;
pub mod homotopy;
pub mod io;
pub mod kontsevich;
pub mod linalg;
pub mod rational;
pub mod ribbon;
pub mod selftest;
pub mod tensor;
pub mod tree;

pub use chain::Chain;
pub use error::{Error, Result};
pub use rational::Q;
pub use tree::PlanarTree;
