//! Dessins d'enfant and the algebraic and statistical structures built on
//! them.

pub mod acceptance;
pub mod bc;
pub mod belyi;
pub mod dessin;
pub mod double;
pub mod enumerate;
pub mod error;
pub mod hopf;
pub mod oracle;
pub mod perm;
pub mod poly;
pub mod qsm;
pub mod ring;
pub mod rota_baxter;

pub use dessin::{fibered_product, BipartiteGraph, Dessin, FiberedProduct, RamificationData};
pub use error::{Error, Result};
pub use ring::{Ring, Q};
