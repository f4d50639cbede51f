//! Keeps the guide honest: every chapter of `book/` is included as a doc
//! comment here, so `cargo test --doc -p uqec-book` compiles and runs each
//! Rust snippet in the book. mdbook cannot run snippets against crate
//! dependencies on its own; one module per chapter also makes a failing
//! snippet easy to locate.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/states-and-operators.md")]
pub mod states_and_operators {}

#[doc = include_str!("../../../book/src/codes.md")]
pub mod codes {}

#[doc = include_str!("../../../book/src/errors-and-degeneracy.md")]
pub mod errors_and_degeneracy {}

#[doc = include_str!("../../../book/src/complete-unitary.md")]
pub mod complete_unitary {}

#[doc = include_str!("../../../book/src/channels.md")]
pub mod channels {}

#[doc = include_str!("../../../book/src/tomography.md")]
pub mod tomography {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
