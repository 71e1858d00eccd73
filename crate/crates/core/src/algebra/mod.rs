//! The supernatural matrix algebra `M_𝔫(F)` as `𝔫`-recurrent matrices, its
//! natural module `F^𝔫`, and the algebra `T(F)` of finite plus recurrent
//! matrices.

mod element;
mod mixed;
mod vector;

pub(crate) use element::splice_product;
pub use element::{unit_mul, CoreElement};
pub use mixed::MixedElement;
pub use vector::{act, transitive_witness, ModuleVector};
