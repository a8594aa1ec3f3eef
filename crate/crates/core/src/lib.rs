//! Symbol homology for decorated Whitney-polygon moduli spaces over GF(2).
//!
//! The crate builds the semialgebra of decorated moduli symbols with its sum
//! `⊞`, product `⊠` and differential, evaluates symbols to maps between Floer
//! chain complexes, and computes homology of finite truncations. Counts of
//! holomorphic polygons come from an [`Oracle`]: either a combinatorial
//! genus-one backend or a declarative table.

pub mod differential;
pub mod error;
pub mod evaluation;
pub mod fixtures;
pub mod homology;
pub mod laws;
pub mod linalg;
pub mod morphisms;
pub mod oracle;
pub mod poly;
pub mod semialgebra;
pub mod types;
pub mod verify;

pub use differential::BoundaryTerm;
pub use error::{Error, Result};
pub use evaluation::{mor_comp, mor_sum, Complex, Flavor, FloerComplex, MorElement, MorMap};
pub use homology::{FiniteComplex, MatrixModel, ModelReport, RecoveryReport, RelationReport, Variant};
pub use morphisms::{PItem, PropertyPolynomial, Transport};
pub use oracle::{
    check_oracle, CheckReport, CountRecord, DeclarativeOracle, EndRecord, Oracle, PointedQuery, TorusDiagram,
    TorusOracle,
};
pub use poly::{Mat, Poly2};
pub use semialgebra::{Coeff, Element, Engine, Monomial, Word};
pub use types::{
    canonical_boundary, classify, labels, multiplicity_profiles, vertices_of, BoundaryCondition, Deco, Filtration,
    Kind, Label, MultiplicityProfile, Point, Pointing, PolygonSymbol, PreGenerator, Vertex,
};
pub use verify::{Check, Report};
