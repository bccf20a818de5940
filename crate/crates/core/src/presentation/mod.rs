//! Sweep presentations of real line arrangements, commuting-pair derivations and
//! injectivity certificates.
mod certificate;
mod derive;
mod relation;
mod sweep;

pub use certificate::{
    injectivity_test, local_orders, projectivized_injectivity, verify_certificate, verify_certificate_for,
    word_problem, InjectivityCertificate, InjectivityOutcome, ProjectivizedReport, Route, RouteRecord, WordVerdict,
};
pub use derive::{
    apply_step, conjugation_free_check, derive_commuting_pairs, replay, ConjugationFreeReport, Derivation,
    DerivationLog, Fact, Knowledge, ProvedFact, Step,
};
pub use relation::{cyclic_key, recognize, CyclicRelation, Factor, Origin, Presentation};
pub use sweep::{randell_presentation, randell_presentation_with, Convention};
