//! The guide in `book/` compiled as doc-tests, so its listings track the API.

#[doc = include_str!("../../../book/src/intro.md")]
pub mod intro {}

#[doc = include_str!("../../../book/src/quotients.md")]
pub mod quotients {}

#[doc = include_str!("../../../book/src/counting.md")]
pub mod counting {}

#[doc = include_str!("../../../book/src/bases.md")]
pub mod bases {}

#[doc = include_str!("../../../book/src/conjecture.md")]
pub mod conjecture {}

#[doc = include_str!("../../../book/src/montecarlo.md")]
pub mod montecarlo {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
