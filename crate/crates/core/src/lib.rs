//! Storage operators for Church numerals.
//!
//! * [`term`] and [`reduce`]: λ-terms in Krivine's notation, head and normal
//!   reduction with exact step counts.
//! * [`builtins`]: numerals, the combinators and the operators `T1`, `T2`.
//! * [`formula`]: second-order formulas with `⊥`-variables and the `*`,
//!   `⊥` and forgetful translations.
//! * [`typing`]: derivations, the checker, the file format and a library of
//!   ready-made derivations.
//! * [`machine`]: symbolic execution of `(T)νf` with certificates, and
//!   behavioural checks on concrete inputs.
//!
//! ```
//! use storop::machine::{certify, Mode};
//! use storop::term::parse_term;
//!
//! let t2 = parse_term("@T2").unwrap();
//! let cert = certify(&t2, 3, 10_000, Mode::Strict).unwrap();
//! assert_eq!(storop::builtins::numeral_of(&storop::reduce::normalize(&cert.tau, 1000).result), Some(3));
//! ```

pub mod builtins;
pub mod formula;
pub mod machine;
pub mod matching;
pub mod reduce;
pub mod term;
pub mod typing;

// Chapters of the guide in book/, run by `cargo test --doc`.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/terms.md")]
    mod terms {}
    #[doc = include_str!("../../../book/src/formulas.md")]
    mod formulas {}
    #[doc = include_str!("../../../book/src/typing.md")]
    mod typing {}
    #[doc = include_str!("../../../book/src/machine.md")]
    mod machine {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
