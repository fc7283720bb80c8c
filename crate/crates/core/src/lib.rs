pub mod catalog;
pub mod diagram;
pub mod duality;
pub mod error;
pub mod evaluate;
pub mod groups;
pub mod io;
pub mod scheme;
pub mod translation;

pub use diagram::{Dart, Diagram, DiagramBuilder, Edge, End, FaceStructure, MapDart};
pub use duality::{CoeffTensor, DualTerm, DualityReport};
pub use error::{Error, Result};
pub use evaluate::{EvalOptions, ScaffoldTensor};
pub use groups::{AbelianGroup, Character, GroupElement};
pub use num_complex::Complex64;
pub use scheme::{BMElement, Basis, CMatrix, EigenData, ParameterTensor, Scheme};
pub use translation::TranslationScheme;
