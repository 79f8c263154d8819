//! Checks of the bounds on `|G|` in terms of `m(G)`, over single groups or a
//! whole catalog, collected into reports.

mod report;

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::abelmax::{lemma_check, max_abelian_order_with, SearchOptions};
use crate::catalog::{build_named, build_named_in, CatalogError, GroupSpec};
use crate::numtheory::{g_of, h_of, is_prime, FactoredInteger};
use crate::permgroup::{Fingerprint, GroupError, PermGroup, DEFAULT_ENUM_CAP};

pub use report::{CheckStatus, Summary, Theorem, TheoremCheck, VerificationReport};

/// Sylow subgroups are checked only for groups up to this order (the
/// default enumeration cap).
pub const LEMMA_ORDER_LIMIT: u64 = 200_000;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("unknown suite {0:?}; valid: a, goh, lemma, twoprime, equality, all")]
    UnknownSuite(String),
}

impl VerifyError {
    pub fn is_capacity(&self) -> bool {
        matches!(
            self,
            VerifyError::Group(GroupError::Capacity { .. })
                | VerifyError::Catalog(CatalogError::Group(GroupError::Capacity { .. }))
        )
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub workers: usize,
    pub enum_cap: u64,
    /// Extra directory for relative `file:` specs.
    pub base_dir: Option<PathBuf>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            workers: 1,
            enum_cap: DEFAULT_ENUM_CAP,
            base_dir: None,
        }
    }
}

/// A group with its `m(G)` already computed.
#[derive(Debug, Clone)]
pub struct Subject {
    pub id: String,
    pub group: PermGroup,
    pub m: u64,
}

impl Subject {
    pub fn analyze(id: impl Into<String>, group: PermGroup) -> Result<Self, GroupError> {
        let m = max_abelian_order_with(&group, SearchOptions::default())?.m;
        Ok(Subject {
            id: id.into(),
            group,
            m,
        })
    }

    pub fn order(&self) -> &FactoredInteger {
        self.group.order()
    }
}

/// Builds and analyzes every spec, `workers` groups at a time. Output order
/// follows `specs`.
pub fn analyze_specs(
    specs: &[GroupSpec],
    options: &VerifyOptions,
) -> Result<Vec<Subject>, VerifyError> {
    let one = |spec: &GroupSpec| -> Result<Subject, VerifyError> {
        let group =
            build_named_in(spec, options.base_dir.as_deref())?.with_enum_cap(options.enum_cap);
        Ok(Subject::analyze(spec.id(), group)?)
    };
    if options.workers <= 1 {
        return specs.iter().map(one).collect();
    }
    let slots = Mutex::new((0..specs.len()).map(|_| None).collect::<Vec<_>>());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers)
        .build()
        .expect("thread pool");
    pool.install(|| {
        specs.par_iter().enumerate().for_each(|(i, spec)| {
            let out = one(spec);
            slots.lock().expect("no poisoned workers")[i] = Some(out);
        })
    });
    slots
        .into_inner()
        .expect("no poisoned workers")
        .into_iter()
        .map(|s| s.expect("every spec analyzed"))
        .collect()
}

fn detail<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// `|G|` divides `g(m)`.
pub fn theorem_a_check(subject: &Subject) -> TheoremCheck {
    let g_m = g_of(subject.m);
    let quotient = g_m.checked_div(subject.order());
    let passed = quotient.is_some();
    TheoremCheck::new(
        Theorem::A,
        &subject.id,
        if passed {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        detail([
            ("m", subject.m.to_string()),
            ("order", subject.order().to_string()),
            ("g_m", g_m.to_string()),
            (
                "quotient",
                quotient.map(|q| q.to_string()).unwrap_or_default(),
            ),
        ]),
    )
}

/// Primes dividing `|G|` that exceed `m/2`.
pub fn large_prime_list(subject: &Subject) -> Vec<u64> {
    subject
        .order()
        .primes()
        .filter(|&p| 2 * p > subject.m)
        .collect()
}

/// The groups with two large primes that the classification allows,
/// recognized by order and structure.
fn two_large_prime_name(group: &PermGroup) -> Result<Option<String>, GroupError> {
    let Some(order) = group.order_u64() else {
        return Ok(None);
    };
    if order == 6 {
        return Ok((!group.is_abelian()).then(|| "S3".to_string()));
    }
    let simple = || -> Result<bool, GroupError> { Ok(!group.is_abelian() && group.is_simple()?) };
    match order {
        60 => return Ok(simple()?.then(|| "A5".to_string())),
        175_560 => return Ok(simple()?.then(|| "J1".to_string())),
        50_232_960 => return Ok(simple()?.then(|| "J3".to_string())),
        _ => {}
    }
    // |PSL2(p)| = p(p^2 - 1)/2
    let approx = ((2 * order) as f64).cbrt().round() as u64;
    for p in approx.saturating_sub(1)..=approx + 1 {
        if p > 5
            && is_prime(p)
            && p * (p * p - 1) / 2 == order
            && is_prime(p.div_ceil(2))
            && simple()?
        {
            return Ok(Some(format!("PSL2({p})")));
        }
    }
    Ok(None)
}

/// `|G|` divides `p * g(m)/h(m)` for some prime `p` in `(m/2, m]`, and
/// `|G| <= m * g(m)/h(m)`.
///
/// Groups with two large primes are outside the divisibility claim; S3 and
/// A5 are the named exceptions to the inequality.
pub fn theorem_goh_check(subject: &Subject) -> Result<TheoremCheck, GroupError> {
    let m = subject.m;
    let g_m = g_of(m);
    let h_m = h_of(m);
    let g_over_h = g_m.checked_div(&h_m).expect("h(m) divides g(m)");
    let order = subject.order();
    let chosen = h_m.primes().find(|&p| {
        let bound = g_over_h.mul(&FactoredInteger::from_u64(p).expect("prime"));
        order.divides(&bound)
    });
    let bound = g_over_h.mul(&FactoredInteger::from_u64(m.max(1)).expect("positive"));
    let inequality = order.value() <= bound.value();
    let two_large = large_prime_list(subject).len() >= 2;
    let named = two_large_prime_name(&subject.group)?;

    let (status, note) = match (&named, inequality, two_large, chosen.is_some()) {
        (Some(name), false, _, _) if name == "S3" || name == "A5" => (
            CheckStatus::ExpectedException,
            Some(format!("{name} is a named exception to the inequality")),
        ),
        (_, false, _, _) => (CheckStatus::Fail, Some("inequality fails".to_string())),
        (_, true, true, false) => (
            CheckStatus::ExpectedException,
            Some("two large primes: divisibility not claimed".to_string()),
        ),
        (_, true, _, true) => (CheckStatus::Pass, None),
        (_, true, false, false) => (
            CheckStatus::Fail,
            Some("no prime gives divisibility".into()),
        ),
    };
    let mut check = TheoremCheck::new(
        Theorem::Goh,
        &subject.id,
        status,
        detail([
            ("m", m.to_string()),
            ("order", order.to_string()),
            ("g_m", g_m.to_string()),
            ("h_m", h_m.to_string()),
            ("p", chosen.map(|p| p.to_string()).unwrap_or_default()),
            ("bound", bound.to_string()),
            ("divides", u8::from(chosen.is_some()).to_string()),
            ("inequality_holds", u8::from(inequality).to_string()),
        ]),
    );
    check.note = note;
    Ok(check)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LargePrimeCase {
    None,
    Case1Frobenius,
    Case2S3,
    Case3Agammal,
    Case4AlmostSimple,
    Unclassified,
}

impl fmt::Display for LargePrimeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LargePrimeCase::None => "none",
            LargePrimeCase::Case1Frobenius => "case1_frobenius",
            LargePrimeCase::Case2S3 => "case2_s3",
            LargePrimeCase::Case3Agammal => "case3_agammal",
            LargePrimeCase::Case4AlmostSimple => "case4_almost_simple",
            LargePrimeCase::Unclassified => "unclassified",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LargePrimeReport {
    pub group_id: String,
    pub order: FactoredInteger,
    pub m: u64,
    pub large_primes: Vec<u64>,
    pub case: LargePrimeCase,
}

/// The large primes without classification (`case` is `None`).
pub fn large_primes(subject: &Subject) -> LargePrimeReport {
    LargePrimeReport {
        group_id: subject.id.clone(),
        order: subject.order().clone(),
        m: subject.m,
        large_primes: large_prime_list(subject),
        case: LargePrimeCase::None,
    }
}

/// `|P| = p`, `P` normal, a cyclic complement, and `C_G(P) = P`.
fn is_frobenius_case(group: &PermGroup, p: u64) -> Result<bool, GroupError> {
    let order = group.order_u64().expect("enumerable");
    if !order.is_multiple_of(p) || (order / p).is_multiple_of(p) {
        return Ok(false);
    }
    let sylow = group.sylow_subgroup(p)?;
    if !sylow.is_normal() {
        return Ok(false);
    }
    let complement = order / p;
    let table = group.elements()?;
    let cyclic_complement =
        complement == 1 || (0..table.len() as u32).any(|i| table.order_of(i) as u64 == complement);
    let faithful = group.centralizer(sylow.generators())?.order() == p;
    Ok(cyclic_complement && faithful)
}

/// A minimal normal subgroup that is elementary abelian of order `2^a`, with
/// `p = 2^a - 1`.
fn is_affine_case(group: &PermGroup, p: u64) -> Result<bool, GroupError> {
    let size = p + 1;
    if !size.is_power_of_two() || size < 4 {
        return Ok(false);
    }
    for n in group.minimal_normal_subgroups()? {
        if n.order() == size && n.group().is_abelian() {
            let table = n.group().elements()?;
            let identity = table.identity();
            if (0..table.len() as u32).all(|i| i == identity || table.order_of(i) == 2) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// A unique minimal normal subgroup, nonabelian simple, with trivial
/// centralizer.
fn is_almost_simple(group: &PermGroup) -> Result<bool, GroupError> {
    let minimal = group.minimal_normal_subgroups()?;
    let [socle] = minimal.as_slice() else {
        return Ok(false);
    };
    if socle.group().is_abelian() || !socle.group().is_simple()? {
        return Ok(false);
    }
    Ok(group.centralizer(socle.generators())?.order() == 1)
}

pub fn classify_large_prime_case(subject: &Subject) -> Result<LargePrimeReport, GroupError> {
    let mut report = large_primes(subject);
    if report.large_primes.is_empty() {
        return Ok(report);
    }
    let group = &subject.group;
    report.case = if subject.order().to_u64() == Some(6) && !group.is_abelian() {
        LargePrimeCase::Case2S3
    } else if first_match(&report.large_primes, |p| is_frobenius_case(group, p))? {
        LargePrimeCase::Case1Frobenius
    } else if first_match(&report.large_primes, |p| is_affine_case(group, p))? {
        LargePrimeCase::Case3Agammal
    } else if is_almost_simple(group)? {
        LargePrimeCase::Case4AlmostSimple
    } else {
        LargePrimeCase::Unclassified
    };
    Ok(report)
}

fn first_match(
    primes: &[u64],
    mut test: impl FnMut(u64) -> Result<bool, GroupError>,
) -> Result<bool, GroupError> {
    for &p in primes {
        if test(p)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// One check per subject: flagged (two or more large primes) exactly when
/// the group is one the classification allows.
pub fn two_large_prime_scan(subjects: &[Subject]) -> Result<VerificationReport, GroupError> {
    let mut checks = Vec::new();
    for subject in subjects {
        let report = classify_large_prime_case(subject)?;
        let flagged = report.large_primes.len() >= 2;
        let expected = two_large_prime_name(&subject.group)?;
        let ok = flagged == expected.is_some() && report.large_primes.len() <= 2;
        let primes: Vec<String> = report.large_primes.iter().map(u64::to_string).collect();
        let mut check = TheoremCheck::new(
            Theorem::TwoPrime,
            &subject.id,
            if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            detail([
                ("m", subject.m.to_string()),
                ("order", subject.order().to_string()),
                ("large_prime_count", report.large_primes.len().to_string()),
                ("large_primes", primes.join(" ")),
                ("flagged", u8::from(flagged).to_string()),
                ("expected", u8::from(expected.is_some()).to_string()),
            ]),
        );
        check.note = Some(match expected {
            Some(name) => format!("{}; {name}", report.case),
            None => report.case.to_string(),
        });
        checks.push(check);
    }
    Ok(VerificationReport::new("twoprime", checks))
}

/// Group ids flagged by a two-prime scan.
pub fn flagged_ids(report: &VerificationReport) -> Vec<String> {
    report
        .checks
        .iter()
        .filter(|c| c.theorem == Theorem::TwoPrime && c.detail_value("flagged") == Some("1"))
        .map(|c| c.group_id.clone())
        .collect()
}

fn symmetric_fingerprints() -> Vec<Fingerprint> {
    (2..=5)
        .map(|n| {
            build_named(&GroupSpec::Sym(n))
                .and_then(|g| Ok(g.fingerprint()?))
                .expect("small symmetric groups")
        })
        .collect()
}

/// `|G| = g(m)` exactly for the symmetric groups of degree 2 to 5. The
/// order-64 step the argument also needs is recorded as unverified.
pub fn equality_scan(subjects: &[Subject]) -> Result<VerificationReport, GroupError> {
    let sym = symmetric_fingerprints();
    let mut checks = Vec::new();
    for subject in subjects {
        let g_m = g_of(subject.m);
        let equal = g_m.value() == subject.order().value();
        let expected = sym.contains(&subject.group.fingerprint()?);
        checks.push(TheoremCheck::new(
            Theorem::Equality,
            &subject.id,
            if equal == expected {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            detail([
                ("m", subject.m.to_string()),
                ("order", subject.order().to_string()),
                ("g_m", g_m.to_string()),
                ("equal", u8::from(equal).to_string()),
                ("expected", u8::from(expected).to_string()),
            ]),
        ));
    }
    let mut open = TheoremCheck::new(
        Theorem::Equality,
        "order_64_groups",
        CheckStatus::Unverified,
        detail([("m", "10".to_string()), ("order", "64".to_string())]),
    );
    open.note = Some(
        "needs an abelian subgroup of order >= 16 in each of the 267 groups of order 64"
            .to_string(),
    );
    checks.push(open);
    Ok(VerificationReport::new("equality", checks))
}

/// Small p-groups checked by the lemma suite alongside the Sylow subgroups.
pub fn explicit_pgroups() -> Vec<GroupSpec> {
    [
        "elem_abelian:2:2",
        "dihedral:4",
        "dihedral:8",
        "dihedral:16",
        "elem_abelian:2:4",
        "elem_abelian:3:3",
        "cyclic:8",
    ]
    .iter()
    .map(|s| s.parse().expect("fixed specs"))
    .collect()
}

fn lemma_checks(
    id: &str,
    group: &PermGroup,
    out: &mut Vec<TheoremCheck>,
) -> Result<(), GroupError> {
    let r = lemma_check(group)?;
    let numbers = || {
        detail([
            ("order", group.order().to_string()),
            ("p", r.p.to_string()),
            ("k", r.k.to_string()),
            ("s", r.s.to_string()),
            ("c", r.c.to_string()),
            ("v", r.v.to_string()),
            (
                "self_centralizing",
                u8::from(r.self_centralizing).to_string(),
            ),
        ])
    };
    let status = |ok: bool| {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    };
    out.push(TheoremCheck::new(
        Theorem::Lemma,
        id,
        status(r.bound_holds),
        numbers(),
    ));
    out.push(TheoremCheck::new(
        Theorem::Burnside,
        id,
        status(r.center_bound_holds),
        numbers(),
    ));
    Ok(())
}

/// `k <= s(s+1)/2` and `k - v <= (v - c)(v + c - 1)/2` on every nontrivial Sylow
/// subgroup of each subject of order at most [`LEMMA_ORDER_LIMIT`], and on
/// `extra`.
pub fn lemma_suite(
    subjects: &[Subject],
    extra: &[(String, PermGroup)],
) -> Result<VerificationReport, GroupError> {
    let mut checks = Vec::new();
    for subject in subjects {
        if subject
            .order()
            .to_u64()
            .is_none_or(|n| n > LEMMA_ORDER_LIMIT)
        {
            continue;
        }
        for p in subject.order().primes().collect::<Vec<_>>() {
            let sylow = subject.group.sylow_subgroup(p)?.into_group();
            lemma_checks(&format!("{}/sylow{p}", subject.id), &sylow, &mut checks)?;
        }
    }
    for (id, group) in extra {
        lemma_checks(id, group, &mut checks)?;
    }
    Ok(VerificationReport::new("lemma", checks))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    A,
    Goh,
    Lemma,
    TwoPrime,
    Equality,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::A => "a",
            Suite::Goh => "goh",
            Suite::Lemma => "lemma",
            Suite::TwoPrime => "twoprime",
            Suite::Equality => "equality",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "a" => Suite::A,
            "goh" => Suite::Goh,
            "lemma" => Suite::Lemma,
            "twoprime" => Suite::TwoPrime,
            "equality" => Suite::Equality,
            "all" => Suite::All,
            other => return Err(VerifyError::UnknownSuite(other.to_string())),
        })
    }
}

/// Runs `suite` over already analyzed subjects. The lemma suite also covers
/// [`explicit_pgroups`].
pub fn run_suite(suite: Suite, subjects: &[Subject]) -> Result<VerificationReport, VerifyError> {
    let report = match suite {
        Suite::A => VerificationReport::new("a", subjects.iter().map(theorem_a_check).collect()),
        Suite::Goh => VerificationReport::new(
            "goh",
            subjects
                .iter()
                .map(theorem_goh_check)
                .collect::<Result<_, _>>()?,
        ),
        Suite::Lemma => {
            let extra = explicit_pgroups()
                .iter()
                .map(|spec| Ok((spec.id(), build_named(spec)?)))
                .collect::<Result<Vec<_>, CatalogError>>()?;
            lemma_suite(subjects, &extra)?
        }
        Suite::TwoPrime => two_large_prime_scan(subjects)?,
        Suite::Equality => equality_scan(subjects)?,
        Suite::All => {
            let mut checks = Vec::new();
            for part in [
                Suite::A,
                Suite::Goh,
                Suite::Lemma,
                Suite::TwoPrime,
                Suite::Equality,
            ] {
                checks.extend(run_suite(part, subjects)?.checks);
            }
            VerificationReport::new("all", checks)
        }
    };
    Ok(report)
}
