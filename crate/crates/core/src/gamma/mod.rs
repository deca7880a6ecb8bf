//! Divided powers `Γ^d` of free modules and algebras of finite rank.

pub mod basis;
pub mod element;
pub mod product;
pub mod sym;

pub use basis::{gamma_basis, gamma_dim, MultiIndex};
pub use element::GammaElement;
pub use product::{external_product, gamma_of_vector, internal_product, GammaMultTable};
pub use sym::{from_sym_tensor, shuffle_product, slotwise_product, to_sym_tensor, SymTensor};
