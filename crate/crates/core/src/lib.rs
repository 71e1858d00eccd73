//! Exact computer algebra for supernatural matrix algebras `M_𝔫(F)`, the
//! Leavitt algebras `L_F(1,m)` and deep matrix algebras.
//!
//! Elements are realized as recurrent block matrices `a ⊕ a ⊕ ⋯` over exact
//! fields (rationals or `F_p`), kept in a canonical minimal-level form so that
//! equality is structural.

pub mod algebra;
pub mod chain;
pub mod deep;
pub mod error;
pub mod field;
pub mod frontend;
pub mod gradings;
pub mod leavitt;
pub mod linalg;
pub mod presentations;
pub mod representations;
pub mod snum;
pub mod sparse;

pub use algebra::{CoreElement, MixedElement, ModuleVector};
pub use chain::{AdicWord, DivisorChain, RepeatPolicy};
pub use error::{Error, Result};
pub use field::{FieldDescriptor, Scalar};
pub use snum::SupernaturalNumber;
