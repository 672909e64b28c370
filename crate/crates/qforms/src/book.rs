//! Keeps the guide in sync with the crate: every Rust code block in the
//! book chapters compiles and runs as a doc-test.

macro_rules! chapter {
    ($name:ident, $path:literal) => {
        #[doc = include_str!($path)]
        pub struct $name;
    };
}

chapter!(Overview, "../../../book/src/overview.md");
chapter!(Scalars, "../../../book/src/scalars.md");
chapter!(Calculi, "../../../book/src/calculi.md");
chapter!(Braiding, "../../../book/src/braiding.md");
chapter!(Biinvariants, "../../../book/src/biinvariants.md");
chapter!(Ideals, "../../../book/src/ideals.md");
chapter!(Cli, "../../../book/src/cli.md");
