// Every chapter of the guide becomes the doc comment of an empty module, so
// `cargo test --doc -p afa-book` runs each listing as a doc-test.

#[doc = include_str!("src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("src/automata.md")]
pub mod automata {}
#[doc = include_str!("src/constructions.md")]
pub mod constructions {}
#[doc = include_str!("src/composite.md")]
pub mod composite {}
#[doc = include_str!("src/normal-forms.md")]
pub mod normal_forms {}
#[doc = include_str!("src/analysis.md")]
pub mod analysis {}
#[doc = include_str!("src/file-format.md")]
pub mod file_format {}
#[doc = include_str!("src/cli.md")]
pub mod cli {}
