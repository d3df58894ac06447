//! Exact computations with rank-metric codes, k-good random matrices and
//! dense sets in affine matrix geometries over finite fields.
//!
//! The guide in `book/` walks through the modules; its snippets are compiled
//! as doc-tests of this crate.

pub mod battery;
pub mod codes;
pub mod counting;
pub mod distributions;
pub mod error;
pub mod geometry;
pub mod gf;
pub mod homweight;
pub mod matrix;
pub mod oracle;
pub mod randomcoding;
pub mod search;

// Runs the guide's code blocks as doc-tests.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $file:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            mod $name {}
        };
    }
    chapter!(introduction, "introduction.md");
    chapter!(fields, "fields.md");
    chapter!(counting, "counting.md");
    chapter!(codes, "codes.md");
    chapter!(distributions, "distributions.md");
    chapter!(homweight, "homweight.md");
    chapter!(geometry, "geometry.md");
    chapter!(search, "search.md");
    chapter!(randomcoding, "randomcoding.md");
    chapter!(cli, "cli.md");

    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
