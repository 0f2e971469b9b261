// Each chapter of the guide is attached to an empty module so that its Rust
// listings run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}
#[doc = include_str!("../../../book/src/system-model.md")]
mod system_model {}
#[doc = include_str!("../../../book/src/constellation.md")]
mod constellation {}
#[doc = include_str!("../../../book/src/integer-forcing.md")]
mod integer_forcing {}
#[doc = include_str!("../../../book/src/lattice-tools.md")]
mod lattice_tools {}
#[doc = include_str!("../../../book/src/nvs.md")]
mod nvs {}
#[doc = include_str!("../../../book/src/bounds.md")]
mod bounds {}
#[doc = include_str!("../../../book/src/simulation.md")]
mod simulation {}
