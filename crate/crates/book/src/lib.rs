//! Each chapter of `book/src` is included here so `cargo test` runs its
//! snippets against the current library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/rings.md")]
pub mod rings {}

#[doc = include_str!("../../../book/src/chevalley.md")]
pub mod chevalley {}

#[doc = include_str!("../../../book/src/diagnostics.md")]
pub mod diagnostics {}

#[doc = include_str!("../../../book/src/conjugacy.md")]
pub mod conjugacy {}

#[doc = include_str!("../../../book/src/quadric.md")]
pub mod quadric {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
