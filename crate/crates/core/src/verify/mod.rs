//! Independent checks: coset enumeration, abelian invariants, presentation
//! matching and per-instance reports.

mod matching;
mod report;
mod smith;
mod todd_coxeter;

pub use matching::{match_presentations, match_presentations_mod_involutions, relabel, Bijection, MAX_MATCH_RANK};
pub use report::{
    verify_instance, EvaluatedCheck, Finite, FiniteChecks, InstanceInfo, RawCheck, Verdict, VerifyBudgets,
    VerifyReport,
};
pub use smith::{abelianization, exponent_matrix, smith_normal_form, AbelianInvariants, IntMatrix, IntScalar};
pub use todd_coxeter::{
    apply_word, group_order, regular_rep, todd_coxeter, word_holds, CosetTable, TableStatus, DEFAULT_MAX_COSETS,
};
