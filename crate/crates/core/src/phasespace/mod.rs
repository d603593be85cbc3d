//! Husimi Q and Wigner functions.
//!
//! Two independent paths are provided. The generic path works on any
//! [`FockState`](crate::FockState): Husimi through the coherent-state overlap
//! and Wigner through overlaps with displaced number states. The closed-form
//! path evaluates the explicit series of each family without building a
//! state vector.

mod displaced;
mod field;
mod grid;
mod husimi;
mod wigner;

pub use displaced::{displaced_number_overlaps, DisplacedNumberBasis};
pub use field::{field_over_grid, FieldKind, FieldLabel, FieldSource, PhaseSpaceField, FIELD_SCHEMA_VERSION};
pub use grid::PhaseSpaceGrid;
pub use husimi::{husimi, husimi_closed_a, husimi_closed_d, husimi_coherent, husimi_pacs_closed, kernel_dim};
pub use wigner::{
    displace_state, wigner, wigner_closed_a, wigner_closed_a_with, wigner_closed_d, wigner_closed_d_with,
    wigner_coherent, wigner_series, WignerSeries, WIGNER_BOUND,
};
