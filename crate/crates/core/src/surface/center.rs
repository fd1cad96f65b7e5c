use super::quasitri::Quasitriangulation;
use crate::error::Result;
use crate::qtorus::{hermite_rows, integer_kernel};

/// Kernel of the vertex matrix compared with the marked boundary components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterReport {
    pub nullity: usize,
    pub marked_components: usize,
    /// Hermite basis of `ker P`.
    pub kernel: Vec<Vec<i64>>,
    /// Indicator vectors `k_beta`, one per marked boundary component.
    pub boundary_vectors: Vec<Vec<i64>>,
}

impl CenterReport {
    pub fn matches(&self) -> bool {
        self.nullity == self.marked_components && hermite_rows(&self.kernel) == hermite_rows(&self.boundary_vectors)
    }
}

pub fn center_report(t: &Quasitriangulation) -> Result<CenterReport> {
    let p = t.vertex_matrix()?;
    let kernel = integer_kernel(&p.rows, p.len())?;
    let boundary_vectors = t.boundary_kernel_vectors()?;
    Ok(CenterReport {
        nullity: kernel.len(),
        marked_components: boundary_vectors.len(),
        kernel,
        boundary_vectors,
    })
}

pub fn kernel_matches_boundary(t: &Quasitriangulation) -> Result<bool> {
    Ok(center_report(t)?.matches())
}
