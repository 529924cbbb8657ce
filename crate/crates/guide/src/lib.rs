//! The book's chapters, mounted as doc comments so `cargo test --doc`
//! compiles and runs every code block in `book/src/`. One module per
//! chapter keeps test failures attributable to the chapter they came
//! from. The book itself renders with `mdbook build book`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/points.md")]
pub mod points {}

#[doc = include_str!("../../../book/src/cylinders.md")]
pub mod cylinders {}

#[doc = include_str!("../../../book/src/ultrametric.md")]
pub mod ultrametric {}

#[doc = include_str!("../../../book/src/deletion.md")]
pub mod deletion {}

#[doc = include_str!("../../../book/src/bisection.md")]
pub mod bisection {}

#[doc = include_str!("../../../book/src/cardinality.md")]
pub mod cardinality {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
