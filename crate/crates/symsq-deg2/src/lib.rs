//! Exact classification of positive degree-two curves in the symmetric
//! square of a smooth curve, driven by finite group actions on coverings.
//!
//! Everything is computed in exact integer arithmetic over explicitly
//! enumerated dihedral and cyclic groups: generating vectors are searched
//! exhaustively, fixed points are counted by two independent routes, and
//! the numerical invariants of the induced pair of curves are derived from
//! those counts. The classification surface is a set of family tables plus
//! search routines that reproduce them from scratch.

pub mod action;
pub mod brill_noether;
pub mod classify;
pub mod error;
pub mod fixtures;
pub mod genvec;
pub mod group;
pub mod invariants;
pub mod report;

pub use action::{
    completion_test, macbeath_nu, nu_oracle, quotient_genus, CompletionOutcome, CurveAction,
};
pub use brill_noether::{
    accola_max_completion_genus, castelnuovo_severi_ok, cxc_bn_check, degree_bound,
    degree_bound_ok, jacobian_dim_check, smooth_degree_bound, BNQuery,
};
pub use classify::{
    d4_families, enumerate_candidates_l_ge4, irreducible_flags, reducible_flags,
    reducible_low_order_diagnostics, reducible_search, search_families, sort_families,
    CandidateTuple, CurveFlag, FamilyRecord, FamilySearch, LowOrderCandidate, LowOrderScan,
    ModuliDimC, SearchBounds, UNEXPECTED_LABEL,
};
pub use error::{Error, Result};
pub use fixtures::{
    dihedral_label, fixture_tables, printed_reference, reference_moduli_c, verify_family,
    verify_printed_row, FieldDiff, PaRelation, PrintedFamilyRow, PrintedRowReport,
    VerificationReport,
};
pub use genvec::{
    branch_tally, rh_genus, search_vectors, signature_candidates,
    signature_candidates_from_base, subgroup_class_representative, BranchTally,
    BranchTallyEntry, EquivalenceKey, GeneratingVector, Signature, VectorSearch,
};
pub use group::{GroupDescriptor, GroupElement, Subgroup};
pub use invariants::{
    graph_intersection, induced_involution_nu, invariants_irreducible, invariants_reducible,
    InducedInvolution, PairCase, PairRecord,
};
pub use report::{
    emit, fixture_file_bytes, random_vector_cross_check, run_classify, FixtureFile, OutputFormat,
    ReportDocument, RunConfig, CSV_HEADER, SCHEMA,
};
