//! Ergotropic gap of tripartite `d×d×d` quantum states and the
//! separable-state bounds that turn it into an entanglement witness.
//!
//! Each party carries the local Hamiltonian `Σ_j jE|j⟩⟨j|` and the global
//! Hamiltonian is their non-interacting sum. The ergotropic gap is the work
//! that global unitaries can extract beyond what local unitaries can:
//!
//! ```text
//! Δ_EG = Σ_X Tr(ρ_X^p H_X) − Tr(ρ^p H_ABC)
//! ```
//!
//! For separable states `Δ_EG ≤ min{(Y−Z)E, M(d)E}` (see [`bounds`]); a gap
//! above that bound certifies entanglement.
//!
//! ```
//! use ergogap::{gallery, bounds, LadderSpec, Verdict};
//!
//! let rho = gallery::ghz_white_noise(0.6).unwrap();
//! let spec = LadderSpec::unit(2).unwrap();
//! let v = bounds::witness(&rho, &spec, bounds::DEFAULT_DECISION_TOL).unwrap();
//! assert_eq!(v.verdict, Verdict::Entangled);
//! ```

pub mod bounds;
pub mod ergotropy;
pub mod error;
pub mod gallery;
pub mod io;
pub mod ladder;
pub mod linalg;
pub mod oracle;
pub mod state;

pub use bounds::{Verdict, WitnessVerdict};
pub use ergotropy::GapReport;
pub use error::{Error, Result};
pub use gallery::{Family, FamilySpec};
pub use ladder::{LadderSpec, SlotTable};
pub use linalg::{ComplexMatrix, Subsystem};
pub use state::{DensityMatrix, Spectrum};
