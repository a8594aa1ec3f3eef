//! Diagrams and oracle tables shipped with the crate.

use crate::error::Result;
use crate::oracle::{DeclarativeOracle, TorusDiagram, TorusOracle};

/// Meridian and longitude on the torus meeting once.
pub const T_ML: &str = include_str!("../fixtures/t_ml.json");
/// Two meridians meeting in a canceling pair; `z` and `w` share the annulus.
pub const T_MM: &str = include_str!("../fixtures/t_mm.json");
/// As [`T_MM`] with `w` moved into the first bigon.
pub const T_MM_W_IN_B1: &str = include_str!("../fixtures/t_mm_w_in_b1.json");
/// Table for a triple diagram with one index-one triangle family.
pub const TRIPLE: &str = include_str!("../fixtures/triple.json");
/// Table version of [`T_ML`].
pub const EX1: &str = include_str!("../fixtures/ex1.json");
/// Table version of [`T_MM`].
pub const EX2: &str = include_str!("../fixtures/ex2.json");
/// [`TRIPLE`] with one end of the triangle family removed.
pub const CORRUPTED: &str = include_str!("../fixtures/corrupted.json");

pub fn t_ml() -> Result<TorusOracle> {
    Ok(TorusOracle::new(TorusDiagram::from_json(T_ML)?))
}

pub fn t_mm() -> Result<TorusOracle> {
    Ok(TorusOracle::new(TorusDiagram::from_json(T_MM)?))
}

pub fn t_mm_w_in_b1() -> Result<TorusOracle> {
    Ok(TorusOracle::new(TorusDiagram::from_json(T_MM_W_IN_B1)?))
}

pub fn triple() -> Result<DeclarativeOracle> {
    DeclarativeOracle::from_json(TRIPLE)
}

pub fn ex1() -> Result<DeclarativeOracle> {
    DeclarativeOracle::from_json(EX1)
}

pub fn ex2() -> Result<DeclarativeOracle> {
    DeclarativeOracle::from_json(EX2)
}

pub fn corrupted() -> Result<DeclarativeOracle> {
    DeclarativeOracle::from_json(CORRUPTED)
}
