//! Generator files:
//!
//! ```text
//! # comment
//! degree 11
//! gen (1,2,3,4,5,6,7,8,9,10,11)
//! gen (3,7,11,8)(4,10,5,6)
//! expect_order 7920
//! ```
//!
//! Cycles are 1-indexed in the file and 0-indexed once loaded.

use num_bigint::BigUint;

use super::CatalogError;
use crate::permgroup::{PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorFile {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub expect_order: Option<BigUint>,
}

fn parse_error(origin: &str, line: usize, message: impl Into<String>) -> CatalogError {
    CatalogError::Parse {
        origin: origin.to_string(),
        line,
        message: message.into(),
    }
}

/// Parses `(a,b,c)(d,e)` with 1-indexed points.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, String> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err("missing cycles".into());
    }
    while !rest.is_empty() {
        let body_start = rest
            .strip_prefix('(')
            .ok_or_else(|| format!("expected '(' at {rest:?}"))?;
        let close = body_start
            .find(')')
            .ok_or_else(|| "unclosed cycle".to_string())?;
        let body = body_start[..close].trim();
        if !body.is_empty() {
            let mut cycle = Vec::new();
            for tok in body.split(',') {
                let tok = tok.trim();
                let point: usize = tok.parse().map_err(|_| format!("bad point {tok:?}"))?;
                if point == 0 || point > degree {
                    return Err(format!("point {point} outside 1..={degree}"));
                }
                cycle.push(point - 1);
            }
            cycles.push(cycle);
        }
        rest = body_start[close + 1..].trim_start();
    }
    Permutation::from_cycles(degree, &cycles).map_err(|e| e.to_string())
}

pub fn parse_generator_text(text: &str, origin: &str) -> Result<GeneratorFile, CatalogError> {
    let mut degree: Option<usize> = None;
    let mut generators = Vec::new();
    let mut expect_order = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match (keyword, degree) {
            ("degree", None) => {
                let d: usize = rest
                    .parse()
                    .map_err(|_| parse_error(origin, line_no, format!("bad degree {rest:?}")))?;
                if d == 0 {
                    return Err(parse_error(origin, line_no, "degree must be positive"));
                }
                degree = Some(d);
            }
            ("degree", Some(_)) => {
                return Err(parse_error(origin, line_no, "duplicate degree line"))
            }
            (_, None) => {
                return Err(parse_error(
                    origin,
                    line_no,
                    "first line must be `degree <d>`",
                ))
            }
            ("gen", Some(d)) => {
                let perm =
                    parse_cycles(rest, d).map_err(|msg| parse_error(origin, line_no, msg))?;
                generators.push(perm);
            }
            ("expect_order", Some(_)) => {
                let n: BigUint = rest
                    .parse()
                    .map_err(|_| parse_error(origin, line_no, format!("bad order {rest:?}")))?;
                expect_order = Some(n);
            }
            (other, Some(_)) => {
                return Err(parse_error(
                    origin,
                    line_no,
                    format!("unknown keyword {other:?}"),
                ))
            }
        }
    }
    let degree = degree.ok_or_else(|| parse_error(origin, 0, "missing `degree` line"))?;
    if generators.is_empty() {
        return Err(parse_error(origin, 0, "no `gen` lines"));
    }
    Ok(GeneratorFile {
        degree,
        generators,
        expect_order,
    })
}

pub fn build_from_text(text: &str, origin: &str) -> Result<PermGroup, CatalogError> {
    let file = parse_generator_text(text, origin)?;
    let group = PermGroup::new(file.generators)?;
    if let Some(expected) = file.expect_order {
        if &expected != group.order().value() {
            return Err(CatalogError::OrderMismatch {
                origin: origin.to_string(),
                expected: expected.to_string(),
                found: group.order().to_string(),
            });
        }
    }
    Ok(group)
}
