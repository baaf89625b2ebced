//! Exact linear algebra over `F_2`, `Z` and `Q`.

mod gf2;
mod intmat;
mod rational;
mod sparse;

pub use gf2::{gf2_rank, is_basis, mask_rank, Gf2Matrix, Gf2Vector};
pub use intmat::{smith_normal_form, IntMatrix, SmithForm};
pub use rational::{rational_rank, solve_rational, ImageReducer, RationalVector};
pub use sparse::SparseIntMatrix;

pub(crate) use rational::{nullspace, primitive_integer};
