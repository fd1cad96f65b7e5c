use super::quasitri::Quasitriangulation;
use crate::error::{Error, Result};

const FIXTURES: &[(&str, &str)] = &[
    ("annulus", include_str!("../../fixtures/annulus.json")),
    ("square", include_str!("../../fixtures/square.json")),
    ("eye", include_str!("../../fixtures/eye.json")),
    ("pentagon", include_str!("../../fixtures/pentagon.json")),
];

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(n, _)| *n).collect()
}

/// Bundled quasitriangulation by name.
pub fn fixture(name: &str) -> Result<Quasitriangulation> {
    let (_, src) = FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))?;
    Quasitriangulation::from_json(src)
}
