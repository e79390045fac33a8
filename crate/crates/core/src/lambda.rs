//! Certificates of beta-eta equality between terms, built as
//! computational paths.
//!
//! A contraction sequence is folded into a left-nested chain of
//! transitivities; two terms with a common normal form get the
//! certificate `normalize(m)` composed with the inverse of
//! `normalize(n)`, joined at the normal form.

use thiserror::Error;

use crate::path::Path;
use crate::term::{
    alpha_eq, contract_kind_at, find_redexes, RedexKind, RedexLocation, Term,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Reversed,
}

/// One recorded contraction between adjacent terms of a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqStep {
    pub loc: RedexLocation,
    pub kind: RedexKind,
    pub direction: Direction,
}

/// A contraction sequence: `terms[i]` is related to `terms[i+1]` by
/// `steps[i]`, forward or reversed.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionSequence {
    pub terms: Vec<Term>,
    pub steps: Vec<SeqStep>,
}

#[derive(Debug, Clone, Error)]
pub enum SequenceError {
    #[error("a reduction sequence needs at least one term")]
    Empty,
    #[error("sequence has {terms} terms but {steps} steps")]
    LengthMismatch { terms: usize, steps: usize },
    #[error("step {index} does not relate its adjacent terms")]
    IncoherentAt { index: usize },
}

impl ReductionSequence {
    /// A one-term sequence with no steps.
    pub fn trivial(t: Term) -> ReductionSequence {
        ReductionSequence { terms: vec![t], steps: Vec::new() }
    }

    pub fn first(&self) -> &Term {
        &self.terms[0]
    }

    pub fn last(&self) -> &Term {
        self.terms.last().expect("non-empty by construction")
    }

    /// Check every adjacent pair against its recorded step.
    pub fn validate(&self) -> Result<(), SequenceError> {
        if self.terms.is_empty() {
            return Err(SequenceError::Empty);
        }
        if self.terms.len() != self.steps.len() + 1 {
            return Err(SequenceError::LengthMismatch {
                terms: self.terms.len(),
                steps: self.steps.len(),
            });
        }
        for (i, step) in self.steps.iter().enumerate() {
            let ok = match step.direction {
                Direction::Forward => contract_kind_at(&self.terms[i], &step.loc, step.kind)
                    .map(|t| alpha_eq(&t, &self.terms[i + 1]))
                    .unwrap_or(false),
                Direction::Reversed => contract_kind_at(&self.terms[i + 1], &step.loc, step.kind)
                    .map(|t| alpha_eq(&t, &self.terms[i]))
                    .unwrap_or(false),
            };
            if !ok {
                return Err(SequenceError::IncoherentAt { index: i });
            }
        }
        Ok(())
    }
}

fn atomic_path(seq: &ReductionSequence, i: usize) -> Path {
    let step = &seq.steps[i];
    match step.direction {
        Direction::Forward => {
            let term = seq.terms[i].clone();
            match step.kind {
                RedexKind::Beta => Path::Beta { term, loc: step.loc.clone() },
                RedexKind::Eta => Path::Eta { term, loc: step.loc.clone() },
            }
        }
        Direction::Reversed => {
            let term = seq.terms[i + 1].clone();
            let fwd = match step.kind {
                RedexKind::Beta => Path::Beta { term, loc: step.loc.clone() },
                RedexKind::Eta => Path::Eta { term, loc: step.loc.clone() },
            };
            Path::sigma(fwd)
        }
    }
}

/// Fold a sequence into a path: no steps gives reflexivity, one step the
/// atomic path, and `k` steps a left-nested chain of `k - 1`
/// transitivities.
pub fn path_from_sequence(seq: &ReductionSequence) -> Result<Path, SequenceError> {
    seq.validate()?;
    if seq.steps.is_empty() {
        return Ok(Path::Rho(seq.terms[0].clone()));
    }
    let mut acc = atomic_path(seq, 0);
    for i in 1..seq.steps.len() {
        acc = Path::tau(acc, atomic_path(seq, i));
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Error)]
pub enum FindPathError {
    #[error("{side:?} term did not normalize within {fuel} contractions")]
    Diverged { side: Side, fuel: u64 },
}

/// Contract to beta-eta normal form, preferring eta redexes: each step
/// fires the first eta redex in preorder if one exists, otherwise the
/// first beta redex. The full sequence is recorded.
pub fn normalize_sequence(t: &Term, fuel: u64) -> Option<ReductionSequence> {
    let mut seq = ReductionSequence::trivial(t.clone());
    let mut budget = fuel;
    loop {
        let redexes = find_redexes(seq.last());
        let pick = redexes
            .iter()
            .find(|(_, k)| *k == RedexKind::Eta)
            .or_else(|| redexes.first())
            .cloned();
        let Some((loc, kind)) = pick else {
            return Some(seq);
        };
        if budget == 0 {
            return None;
        }
        budget -= 1;
        let next = contract_kind_at(seq.last(), &loc, kind).expect("redex came from search");
        seq.terms.push(next);
        seq.steps.push(SeqStep { loc, kind, direction: Direction::Forward });
    }
}

/// A certificate that `m` and `n` are beta-eta equal: both sides are
/// normalized and the forward chains joined at the common normal form.
/// `None` when the normal forms differ.
pub fn find_path(m: &Term, n: &Term, fuel: u64) -> Result<Option<Path>, FindPathError> {
    let seq_m = normalize_sequence(m, fuel)
        .ok_or(FindPathError::Diverged { side: Side::Left, fuel })?;
    let seq_n = normalize_sequence(n, fuel)
        .ok_or(FindPathError::Diverged { side: Side::Right, fuel })?;
    if !alpha_eq(seq_m.last(), seq_n.last()) {
        return Ok(None);
    }
    let down_m =
        (!seq_m.steps.is_empty()).then(|| path_from_sequence(&seq_m).expect("recorded sequence"));
    let down_n =
        (!seq_n.steps.is_empty()).then(|| path_from_sequence(&seq_n).expect("recorded sequence"));
    Ok(Some(match (down_m, down_n) {
        (Some(pm), Some(pn)) => Path::tau(pm, Path::sigma(pn)),
        (Some(pm), None) => pm,
        (None, Some(pn)) => Path::sigma(pn),
        (None, None) => Path::Rho(m.clone()),
    }))
}
