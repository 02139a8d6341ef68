//! Betweenness and collinearity structure of planar point sets.
//!
//! [`geom`] holds tolerant predicates and similarities, [`config`] finite
//! configurations with cached incidences, [`iso`] the isomorphism search,
//! [`circles`] two-circle sets with their arcs, covers and invariants, and
//! [`reports`] reproductions of the worked examples.

pub mod circles;
pub mod config;
pub mod error;
pub mod geom;
pub mod iso;
pub mod reports;

pub use config::{FiniteConfig, IdSet, PointId};
pub use error::{Error, Result};
pub use geom::{Point, ScaledIsometry, Tolerance};
