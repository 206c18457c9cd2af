pub mod category;
pub mod center;
pub mod cylinder;
pub mod error;
pub mod field;
pub mod group;
pub mod hopf;
pub mod hopfmod;
pub mod linalg;
pub mod progressive;
pub mod vectg;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/categories.md")]
    mod categories {}
    #[doc = include_str!("../../../book/src/progressive.md")]
    mod progressive {}
    #[doc = include_str!("../../../book/src/monad.md")]
    mod monad {}
    #[doc = include_str!("../../../book/src/cylinder.md")]
    mod cylinder {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
