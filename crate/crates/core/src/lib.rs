//! Irregular total weightings of forests.
//!
//! A *total weighting* assigns a positive integer label to every vertex and
//! every edge of a graph. The weighted degree of a vertex is its own label plus
//! the labels of its incident edges; a weighting is *irregular* when all
//! weighted degrees are pairwise distinct. The total vertex irregularity
//! strength `tvs(G)` is the least `s` admitting an irregular weighting with
//! labels in `1..=s`.
//!
//! For forests without isolated vertices and with at most one vertex of degree
//! two, `tvs = ceil((n1 + 1) / 2)` where `n1` counts pendant vertices. This
//! crate builds such optimal weightings ([`labeler::construct`]), checks
//! arbitrary weightings ([`verify`]), computes exact values for small forests
//! by exhaustive search ([`exact`]) and generates test instances
//! ([`enumerate`]).

pub mod classify;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod forest;
pub mod labeler;
pub mod verify;

pub use classify::{classify, strength_target, BoundsReport, ClassTable, DegreeCensus};
pub use error::{ClassifyError, ConstructionError, ForestError, ParseError};
pub use forest::{Forest, Format, Mode, ValidationReport, Violation};
pub use labeler::{construct, TotalWeighting};
pub use verify::{audit_construction, verify, weighted_degrees, AuditReport, Certificate};
