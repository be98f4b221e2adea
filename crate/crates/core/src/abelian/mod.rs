//! Real abelian surfaces: Picard numbers, the real Néron–Severi lattice,
//! concordance, and rational lines on `E × E`.

mod lines;
mod polyhedral;
mod scalar;
mod spec;

pub use lines::{
    class_matrix, exe_lattice, induced_action, induced_matrix, is_ample, line_class, line_class_big,
    line_volumes, matrix_class, minkowski_chain_check, reduce_to_triangle, LineVolumes, MinkowskiChain,
    TriangleReduction,
};
pub use polyhedral::{polyhedral_concordance, PolyhedralDecision};
pub use scalar::{Constant, LabelDecl, RealScalar, ScalarField, UNIT};
pub use spec::{
    concordance, ns_pairing, ns_real_lattice, picard_numbers, AbelianSpecJson, AbelianSurfaceSpec,
    BasisEntryJson, ConcordanceReport, NSRealLattice, ProductJson,
};
