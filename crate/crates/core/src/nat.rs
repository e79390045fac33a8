//! The path space of the naturals: the `code` family measuring it, the
//! reflexivity witness `r`, transport along a path, and the encode/decode
//! maps between paths and code witnesses.

use std::fmt;

use thiserror::Error;

use crate::engine::{normal_form, EngineConfig, NormalizeError};
use crate::path::Path;
use crate::term::Term;

/// The value of `code(m, n)`: the unit type when the numerals agree, the
/// empty type otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeTag {
    Unit,
    Empty,
}

/// Evidence for `code(m, n)`: the unit witness, or the marker that no
/// witness exists. An inhabited witness is always the star element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeWitness {
    Star,
    Uninhabited,
}

impl CodeWitness {
    pub fn inhabited(&self) -> bool {
        matches!(self, CodeWitness::Star)
    }

    pub fn witness(&self) -> Option<Term> {
        match self {
            CodeWitness::Star => Some(Term::Star),
            CodeWitness::Uninhabited => None,
        }
    }
}

impl fmt::Display for CodeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeWitness::Star => write!(f, "*"),
            CodeWitness::Uninhabited => write!(f, "uninhabited"),
        }
    }
}

/// The four-case recursion measuring the path space:
/// `code(0,0) = unit`, `code(succ m, 0) = code(0, succ n) = empty`,
/// `code(succ m, succ n) = code(m, n)`.
pub fn code(m: u64, n: u64) -> CodeTag {
    match (m, n) {
        (0, 0) => CodeTag::Unit,
        (_, 0) | (0, _) => CodeTag::Empty,
        (m, n) => code(m - 1, n - 1),
    }
}

/// The canonical witness of `code(n, n)`: `r(0) = *`,
/// `r(succ n) = r(n)`, so always the star element.
pub fn rfun(n: u64) -> CodeWitness {
    if n == 0 {
        CodeWitness::Star
    } else {
        rfun(n - 1)
    }
}

#[derive(Debug, Clone, Error)]
pub enum NatError {
    #[error("path endpoint {0} is not a canonical numeral")]
    NotNumeral(Term),
    #[error("witness does not inhabit code({m}, {n})")]
    NotAWitness { m: u64, n: u64 },
    #[error("code({m}, {n}) is uninhabited")]
    UninhabitedPremise { m: u64, n: u64 },
    #[error("path from {m} to {n} did not normalize to reflexivity")]
    NotReflexive { m: u64, n: u64 },
    #[error(transparent)]
    Engine(#[from] NormalizeError),
}

/// Transport a witness of `code(m, a)` along a path from `a` to `b`,
/// yielding a witness of `code(m, b)`. The path is normalized first; a
/// path between numerals built from reflexivity always reaches a
/// reflexivity node, so the transport itself is the identity.
pub fn transport_code(
    m: u64,
    p: &Path,
    w: &CodeWitness,
    cfg: &EngineConfig,
) -> Result<CodeWitness, NatError> {
    let (src, tgt) = p.endpoints().map_err(NormalizeError::from)?;
    let a = src.as_numeral().ok_or_else(|| NatError::NotNumeral(src.clone()))?;
    let b = tgt.as_numeral().ok_or_else(|| NatError::NotNumeral(tgt.clone()))?;
    if code(m, a) != CodeTag::Unit || !w.inhabited() {
        return Err(NatError::NotAWitness { m, n: a });
    }
    let nf = normal_form(p, cfg)?;
    if !matches!(nf, Path::Rho(_)) {
        return Err(NatError::NotReflexive { m: a, n: b });
    }
    Ok(*w)
}

/// `encode(m, n, p)`: transport the canonical witness of `code(m, m)`
/// along `p`.
pub fn encode(m: u64, n: u64, p: &Path, cfg: &EngineConfig) -> Result<CodeWitness, NatError> {
    let _ = n;
    transport_code(m, p, &rfun(m), cfg)
}

/// `decode(m, n, c)`: turn a witness of `code(m, n)` into a path from
/// `m` to `n`. Zero on both sides gives reflexivity; successors wrap the
/// smaller path in the successor congruence. The mixed cases have an
/// empty premise and are errors.
pub fn decode(m: u64, n: u64, c: &CodeWitness) -> Result<Path, NatError> {
    match (m, n) {
        (0, 0) => {
            if c.inhabited() {
                Ok(Path::Rho(Term::Zero))
            } else {
                Err(NatError::NotAWitness { m, n })
            }
        }
        (_, 0) | (0, _) => Err(NatError::UninhabitedPremise { m, n }),
        (m2, n2) => Ok(Path::mu_succ(decode(m2 - 1, n2 - 1, c)?)),
    }
}

/// True iff the path's rw-normal form is a reflexivity node. Intended for
/// paths between numerals generated from reflexivity atoms.
pub fn nat_path_normalizes_to_rho(p: &Path, cfg: &EngineConfig) -> Result<bool, NormalizeError> {
    let nf = normal_form(p, cfg)?;
    Ok(matches!(nf, Path::Rho(_)))
}
