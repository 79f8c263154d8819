//! Maximal abelian subgroups of finite permutation groups, and the number
//! theory that bounds them.

pub mod abelmax;
pub mod catalog;
pub mod numtheory;
pub mod permgroup;
pub mod verify;

pub use abelmax::{
    lemma_check, max_abelian_brute, max_abelian_normal_in_pgroup, max_abelian_order,
    max_abelian_order_with, AbelianWitness, LemmaReport, MaxAbelianResult, SearchOptions,
};
pub use catalog::{build_named, CatalogError, GroupSpec};
pub use numtheory::{FactoredInteger, NumError};
pub use permgroup::{GroupError, PermGroup, Permutation};
pub use verify::{run_suite, Subject, Suite, VerificationReport, VerifyError, VerifyOptions};
