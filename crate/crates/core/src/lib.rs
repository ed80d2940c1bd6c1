//! Exact computer algebra for pairs in involution of finite-dimensional Hopf
//! algebras, Drinfeld and anti-Drinfeld doubles, and a small decorated
//! diagram category whose Drinfeld centre carries a non-induced pivotal
//! structure.

pub mod bundled;
pub mod exalg;
pub mod heap;
pub mod hopf;
pub mod io;
pub mod doubles;
pub mod freecat;
pub mod cli;
