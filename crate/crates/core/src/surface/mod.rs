//! Quasitriangulations of marked surfaces and the algebras built on them.

mod center;
mod expr;
mod fixtures;
mod flip;
mod quasitri;
mod surgery;

pub use center::{center_report, kernel_matches_boundary, CenterReport};
pub use expr::{eval_expression, Expr, GeneratorMap};
pub use fixtures::{fixture, fixture_names};
pub use flip::{exchange_rhs, flip, transfer_on_generator, words_to_element, Flip, FlipKind, Word};
pub use quasitri::{EdgeKind, EdgeSpec, Face, Incidence, MarkedPoint, Quasitriangulation, Slot, UnmarkedComponent};
pub use surgery::{star_roles, surgery_add_point_boundary, surgery_add_point_unmarked, surgery_plug_hole, SurgeryMap};
