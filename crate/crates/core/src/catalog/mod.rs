//! Named permutation groups and their spec strings (`sym:5`, `psl2:13`,
//! `file:groups/m11.gens`, ...), generator files, and catalog manifests.

mod genfile;
mod gf2m;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use crate::numtheory::{factor_small, is_prime};
use crate::permgroup::{GroupError, PermGroup, Permutation};

pub use genfile::{parse_cycles, parse_generator_text, GeneratorFile};
pub use gf2m::{Gf2Field, Gf2mElement};

const FAMILIES: &str =
    "sym:N alt:N cyclic:N dihedral:N elem_abelian:P:K psl2:P pgl2:P frobenius:P:C agl1:A agammal1:A agl3_2 file:PATH";

const DEFAULT_MANIFEST: &str = include_str!("../../../../catalog/default.manifest");

const BUILTIN_FILES: [(&str, &str); 2] = [
    (
        "groups/m11.gens",
        include_str!("../../../../groups/m11.gens"),
    ),
    (
        "groups/m12.gens",
        include_str!("../../../../groups/m12.gens"),
    ),
];

/// Largest point count a constructed family may act on.
const MAX_POINTS: u64 = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown group family in {0:?}; valid: {FAMILIES}")]
    UnknownFamily(String),
    #[error("invalid group spec {spec:?}: {reason}")]
    InvalidSpec { spec: String, reason: String },
    #[error("{origin}:{line}: {message}")]
    Parse {
        origin: String,
        line: usize,
        message: String,
    },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{origin}: expected order {expected}, computed {found}")]
    OrderMismatch {
        origin: String,
        expected: String,
        found: String,
    },
    #[error("division by zero in finite field")]
    DivisionByZero,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A constructible group family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Sym(usize),
    Alt(usize),
    Cyclic(usize),
    Dihedral(usize),
    ElemAbelian {
        p: u64,
        k: u32,
    },
    Psl2(u64),
    Pgl2(u64),
    Frobenius {
        p: u64,
        c: u64,
    },
    /// AGL(1, 2^a).
    Agl1(u32),
    /// AGammaL(1, 2^a).
    AGammaL1(u32),
    Agl3Over2,
    File(PathBuf),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Sym(n) => write!(f, "sym:{n}"),
            GroupSpec::Alt(n) => write!(f, "alt:{n}"),
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::ElemAbelian { p, k } => write!(f, "elem_abelian:{p}:{k}"),
            GroupSpec::Psl2(p) => write!(f, "psl2:{p}"),
            GroupSpec::Pgl2(p) => write!(f, "pgl2:{p}"),
            GroupSpec::Frobenius { p, c } => write!(f, "frobenius:{p}:{c}"),
            GroupSpec::Agl1(a) => write!(f, "agl1:{a}"),
            GroupSpec::AGammaL1(a) => write!(f, "agammal1:{a}"),
            GroupSpec::Agl3Over2 => write!(f, "agl3_2"),
            GroupSpec::File(path) => write!(f, "file:{}", path.display()),
        }
    }
}

fn invalid(spec: &str, reason: impl Into<String>) -> CatalogError {
    CatalogError::InvalidSpec {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

impl FromStr for GroupSpec {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(path) = s.strip_prefix("file:") {
            if path.is_empty() {
                return Err(invalid(s, "missing path"));
            }
            return Ok(GroupSpec::File(PathBuf::from(path)));
        }
        let mut parts = s.split(':');
        let family = parts.next().unwrap_or_default();
        let nums: Vec<u64> = parts
            .map(|t| {
                t.parse::<u64>().map_err(|_| {
                    invalid(s, format!("parameter {t:?} is not a nonnegative integer"))
                })
            })
            .collect::<Result<_, _>>()?;
        let arity = |n: usize| {
            if nums.len() == n {
                Ok(())
            } else {
                Err(invalid(
                    s,
                    format!("expected {n} parameter(s), got {}", nums.len()),
                ))
            }
        };
        let spec = match family {
            "sym" => {
                arity(1)?;
                GroupSpec::Sym(nums[0] as usize)
            }
            "alt" => {
                arity(1)?;
                GroupSpec::Alt(nums[0] as usize)
            }
            "cyclic" => {
                arity(1)?;
                GroupSpec::Cyclic(nums[0] as usize)
            }
            "dihedral" => {
                arity(1)?;
                GroupSpec::Dihedral(nums[0] as usize)
            }
            "elem_abelian" => {
                arity(2)?;
                GroupSpec::ElemAbelian {
                    p: nums[0],
                    k: nums[1] as u32,
                }
            }
            "psl2" => {
                arity(1)?;
                GroupSpec::Psl2(nums[0])
            }
            "pgl2" => {
                arity(1)?;
                GroupSpec::Pgl2(nums[0])
            }
            "frobenius" => {
                arity(2)?;
                GroupSpec::Frobenius {
                    p: nums[0],
                    c: nums[1],
                }
            }
            "agl1" => {
                arity(1)?;
                GroupSpec::Agl1(nums[0] as u32)
            }
            "agammal1" => {
                arity(1)?;
                GroupSpec::AGammaL1(nums[0] as u32)
            }
            "agl3_2" => {
                arity(0)?;
                GroupSpec::Agl3Over2
            }
            _ => return Err(CatalogError::UnknownFamily(s.to_string())),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl GroupSpec {
    /// Parameter checks that do not need to build the group.
    pub fn validate(&self) -> Result<(), CatalogError> {
        let s = self.to_string();
        let too_big = |points: u64| {
            if points > MAX_POINTS {
                Err(invalid(&s, format!("{points} points exceeds {MAX_POINTS}")))
            } else {
                Ok(())
            }
        };
        match *self {
            GroupSpec::Sym(n) | GroupSpec::Cyclic(n) => {
                if n == 0 {
                    return Err(invalid(&s, "need at least one point"));
                }
                too_big(n as u64)
            }
            GroupSpec::Alt(n) => {
                if n < 3 {
                    return Err(invalid(&s, "alt needs n >= 3"));
                }
                too_big(n as u64)
            }
            GroupSpec::Dihedral(n) => {
                if n < 3 {
                    return Err(invalid(&s, "dihedral needs n >= 3"));
                }
                too_big(n as u64)
            }
            GroupSpec::ElemAbelian { p, k } => {
                if !is_prime(p) {
                    return Err(invalid(&s, format!("{p} is not prime")));
                }
                if k == 0 {
                    return Err(invalid(&s, "rank must be positive"));
                }
                match p.checked_pow(k) {
                    Some(points) => too_big(points),
                    None => Err(invalid(&s, "too many points")),
                }
            }
            GroupSpec::Psl2(p) | GroupSpec::Pgl2(p) => {
                if !is_prime(p) {
                    return Err(invalid(&s, format!("{p} is not prime")));
                }
                if p < 5 {
                    return Err(invalid(&s, "need a prime p >= 5"));
                }
                too_big(p + 1)
            }
            GroupSpec::Frobenius { p, c } => {
                if !is_prime(p) {
                    return Err(invalid(&s, format!("{p} is not prime")));
                }
                if c == 0 || (p - 1) % c != 0 {
                    return Err(invalid(
                        &s,
                        format!("c = {c} does not divide p - 1 = {}", p - 1),
                    ));
                }
                too_big(p)
            }
            GroupSpec::Agl1(a) | GroupSpec::AGammaL1(a) => {
                if !(2..=5).contains(&a) {
                    return Err(invalid(&s, "field exponent a must be in 2..=5"));
                }
                Ok(())
            }
            GroupSpec::Agl3Over2 | GroupSpec::File(_) => Ok(()),
        }
    }

    /// Stable identifier used in reports.
    pub fn id(&self) -> String {
        self.to_string()
    }
}

fn perm_from_fn(degree: usize, f: impl Fn(usize) -> usize) -> Permutation {
    Permutation::from_images((0..degree).map(|i| f(i) as u32).collect())
        .expect("constructor maps are bijections")
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Least primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = factor_small(p - 1);
    (2..p)
        .find(|&g| {
            factors
                .iter()
                .all(|&(q, _)| mod_pow(g, (p - 1) / q, p) != 1)
        })
        .expect("primes have primitive roots")
}

fn mod_inverse(x: u64, p: u64) -> u64 {
    mod_pow(x, p - 2, p)
}

fn symmetric(n: usize) -> Vec<Permutation> {
    if n == 1 {
        return vec![Permutation::identity(1)];
    }
    let transposition = perm_from_fn(n, |i| match i {
        0 => 1,
        1 => 0,
        _ => i,
    });
    let cycle = perm_from_fn(n, |i| (i + 1) % n);
    vec![transposition, cycle]
}

fn alternating(n: usize) -> Vec<Permutation> {
    (2..n)
        .map(|k| {
            perm_from_fn(n, |i| match i {
                0 => 1,
                1 => k,
                _ if i == k => 0,
                _ => i,
            })
        })
        .collect()
}

/// Points `0..p` are the field, `p` is infinity.
fn projective_line(p: u64, with_pgl: bool) -> Vec<Permutation> {
    let n = p as usize + 1;
    let inf = p as usize;
    let translate = perm_from_fn(n, |x| if x == inf { inf } else { (x + 1) % p as usize });
    let invert = perm_from_fn(n, |x| {
        if x == inf {
            0
        } else if x == 0 {
            inf
        } else {
            // x -> -1/x
            ((p - mod_inverse(x as u64, p)) % p) as usize
        }
    });
    let mut gens = vec![translate, invert];
    if with_pgl {
        let g = primitive_root(p);
        gens.push(perm_from_fn(n, |x| {
            if x == inf {
                inf
            } else {
                (x as u64 * g % p) as usize
            }
        }));
    }
    gens
}

fn affine_gf2(a: u32, semilinear: bool) -> Vec<Permutation> {
    let field = Gf2Field::new(a).expect("validated");
    let n = field.size() as usize;
    let alpha = field.generator();
    let mut gens = vec![
        perm_from_fn(n, |x| x ^ 1),
        perm_from_fn(n, |x| {
            field.mul(alpha, field.element(x as u32)).bits as usize
        }),
    ];
    if semilinear {
        gens.push(perm_from_fn(n, |x| {
            field.frobenius_map(field.element(x as u32)).bits as usize
        }));
    }
    gens
}

/// Affine maps of GF(2)^3 on its 8 vectors: a translation plus the six
/// elementary transvections, which generate GL(3,2).
fn agl3_2() -> Vec<Permutation> {
    let mut gens = vec![perm_from_fn(8, |v| v ^ 1)];
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                gens.push(perm_from_fn(8, |v| v ^ (((v >> j) & 1) << i)));
            }
        }
    }
    gens
}

fn resolve_file(path: &Path, base: Option<&Path>) -> Result<(String, String), CatalogError> {
    let mut candidates = vec![path.to_path_buf()];
    if let Some(base) = base {
        if path.is_relative() {
            candidates.push(base.join(path));
        }
    }
    for candidate in &candidates {
        if candidate.is_file() {
            let text = std::fs::read_to_string(candidate).map_err(|e| CatalogError::Io {
                path: candidate.display().to_string(),
                message: e.to_string(),
            })?;
            return Ok((candidate.display().to_string(), text));
        }
    }
    let normalized = path.to_string_lossy().replace('\\', "/");
    let normalized = normalized.trim_start_matches("./");
    if let Some((name, text)) = BUILTIN_FILES.iter().find(|(name, _)| *name == normalized) {
        return Ok((format!("builtin:{name}"), text.to_string()));
    }
    Err(CatalogError::Io {
        path: path.display().to_string(),
        message: "no such file".into(),
    })
}

/// Loads a generator file; the bundled `groups/m11.gens` and
/// `groups/m12.gens` are used when those relative paths are not on disk.
pub fn load_generator_file(path: impl AsRef<Path>) -> Result<PermGroup, CatalogError> {
    let (origin, text) = resolve_file(path.as_ref(), None)?;
    genfile::build_from_text(&text, &origin)
}

pub fn parse_generator_file_text(text: &str, origin: &str) -> Result<PermGroup, CatalogError> {
    genfile::build_from_text(text, origin)
}

/// Builds the group for `spec` in its natural action.
pub fn build_named(spec: &GroupSpec) -> Result<PermGroup, CatalogError> {
    build_named_in(spec, None)
}

/// As [`build_named`], resolving relative `file:` paths against `base` too.
pub fn build_named_in(spec: &GroupSpec, base: Option<&Path>) -> Result<PermGroup, CatalogError> {
    spec.validate()?;
    let gens = match *spec {
        GroupSpec::Sym(n) => symmetric(n),
        GroupSpec::Alt(n) => alternating(n),
        GroupSpec::Cyclic(n) => vec![perm_from_fn(n, |i| (i + 1) % n)],
        GroupSpec::Dihedral(n) => vec![
            perm_from_fn(n, |i| (i + 1) % n),
            perm_from_fn(n, |i| (n - i) % n),
        ],
        GroupSpec::ElemAbelian { p, k } => {
            let n = p.pow(k) as usize;
            let p = p as usize;
            (0..k)
                .map(|j| {
                    let place = p.pow(j);
                    perm_from_fn(n, move |x| {
                        let digit = (x / place) % p;
                        x - digit * place + ((digit + 1) % p) * place
                    })
                })
                .collect()
        }
        GroupSpec::Psl2(p) => projective_line(p, false),
        GroupSpec::Pgl2(p) => projective_line(p, true),
        GroupSpec::Frobenius { p, c } => {
            let g = mod_pow(primitive_root(p), (p - 1) / c, p);
            let n = p as usize;
            vec![
                perm_from_fn(n, |x| (x + 1) % n),
                perm_from_fn(n, |x| (x as u64 * g % p) as usize),
            ]
        }
        GroupSpec::Agl1(a) => affine_gf2(a, false),
        GroupSpec::AGammaL1(a) => affine_gf2(a, true),
        GroupSpec::Agl3Over2 => agl3_2(),
        GroupSpec::File(ref path) => {
            let (origin, text) = resolve_file(path, base)?;
            return genfile::build_from_text(&text, &origin);
        }
    };
    Ok(PermGroup::new(gens)?)
}

/// One spec per line, `#` comments.
pub fn parse_manifest(text: &str) -> Result<Vec<GroupSpec>, CatalogError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let spec = line
            .parse()
            .map_err(|e: CatalogError| CatalogError::Parse {
                origin: "manifest".into(),
                line: i + 1,
                message: e.to_string(),
            })?;
        out.push(spec);
    }
    Ok(out)
}

pub fn load_manifest(path: impl AsRef<Path>) -> Result<Vec<GroupSpec>, CatalogError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| CatalogError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_manifest(&text)
}

/// The pinned default catalog.
pub fn default_catalog() -> Vec<GroupSpec> {
    parse_manifest(DEFAULT_MANIFEST).expect("bundled manifest parses")
}

pub fn default_manifest_text() -> &'static str {
    DEFAULT_MANIFEST
}
