//! Graph products of groups: normal forms, the hyperplane calculus of the
//! quasi-median Cayley graph, Davis complex balls, and the decomposition of
//! conjugating isomorphisms into partial conjugations and a local part.

pub mod automorphisms;
pub mod checks;
pub mod davis;
pub mod error;
pub mod graph;
pub mod io;
pub mod groups;
pub mod qm;
pub mod words;

pub use error::{Error, Result};
pub use graph::{Girth, GraphClassification, SilWitness, SimplicialGraph, Vertex, VertexSet};
pub use groups::{FiniteTable, GroupElement, GroupIso, IsoMap, VertexGroup};
pub use words::{GraphProduct, NormalForm, Word};
pub use qm::{Hyperplane, ParabolicCoset, QmBall, QmEdge, SectorLabel, TransversalityGraph};
pub use automorphisms::{
    Automorphism, ConjugatingData, DecompositionResult, FromImages, Generator, LocalAutomorphism,
    PartialConjugation, RelationFailure, VertexImage,
};
pub use davis::{AxisSegment, CrossingReport, DavisBall, DavisCube, DavisEdge, DavisVertex};
pub use checks::{CheckReport, Suite, VerifyConfig};
