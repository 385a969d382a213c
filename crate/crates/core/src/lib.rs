pub mod canonical;
pub mod error;
pub mod field;
pub mod hilbert;
pub mod homological;
pub mod ideal;
pub mod matrix;
pub mod module;
pub mod monomial;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod sbasis;
pub mod submodule;
pub mod ulrich;

pub use error::{AlgebraError, Result};
pub use field::{PrimeField, DEFAULT_PRIME};
pub use matrix::{Matrix, Vector};
pub use monomial::{Monomial, MAX_VARS};
pub use parse::{parse_poly, PolyParseError};
pub use poly::Poly;
pub use ring::AmbientRing;
pub use submodule::SubmoduleBasis;
pub use module::{FreeResolution, ModuleData};
pub use homological::{LinkageReport, Subquotient};
pub use ideal::IdealData;
pub use hilbert::{HilbertSamuelTable, MinimalMultiplicity, RegularityReport};
pub use ulrich::{FreenessMode, FreenessVerdict, HomProbe, HypothesisCheck, UlrichIdealReport, UlrichModuleReport, UlrichSyzygy};
