//! The book's Rust listings, compiled and run as doctests.
//!
//! Each chapter gets its own module so a failure points at its source file.

#[cfg(doctest)]
mod chapters {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/gates-and-schedules.md")]
    mod gates_and_schedules {}
    #[doc = include_str!("../../../book/src/spectral.md")]
    mod spectral {}
    #[doc = include_str!("../../../book/src/covering-arc.md")]
    mod covering_arc {}
    #[doc = include_str!("../../../book/src/single-qubit.md")]
    mod single_qubit {}
    #[doc = include_str!("../../../book/src/n-qubit.md")]
    mod n_qubit {}
    #[doc = include_str!("../../../book/src/cost-functionals.md")]
    mod cost_functionals {}
    #[doc = include_str!("../../../book/src/speed-limits.md")]
    mod speed_limits {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
