//! Incidence graph, cokernel, living vertices and finiteness, Bestvina-Brady bases,
//! Poincare polynomials and the degree-3 decomposability test.

mod cokernel;
mod holonomy;
mod incidence;
mod living;
mod poincare;

pub use cokernel::{cokernel_rank, CokernelReport};
pub use holonomy::{decomposability_test, DecomposabilityReport};
pub use incidence::IncidenceGraph;
pub use living::{
    bestvina_brady_basis, finiteness_type, living_edges, living_vertices, BestvinaBradyBasis, Elimination, FactorBasis,
    FinitenessReport, FinitenessRoute, LivingReport, VertexStatus,
};
pub use poincare::{
    discriminantal_arrangement, discriminantal_poincare, poincare_deletion_contraction, poincare_polynomial,
    total_space_poincare, Polynomial,
};
