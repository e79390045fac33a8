//! The rewrite engine over paths: single contraction, normalization with
//! a full trace, rw-equality, and the structural reduction of
//! reflexivity-generated paths.
//!
//! The engine is pure; every step allocates fresh trees. Termination is
//! enforced by fuel, and exhaustion is an error carrying the partial
//! trace, since the rule system is expected to terminate.

use serde::Serialize;
use thiserror::Error;

use crate::path::{CoherenceError, Path, PathError};
use crate::rules::{self, RuleId, ALL_RULES};
use crate::term::alpha_eq;

/// Redex selection strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Scan positions preorder; at each node try the rules in catalog
    /// order.
    #[default]
    LeftmostOutermost,
    /// Scan rules in catalog order; for each rule scan positions
    /// preorder.
    RulePriority,
}

impl Strategy {
    pub fn from_name(s: &str) -> Option<Strategy> {
        match s {
            "lo" | "leftmost-outermost" => Some(Strategy::LeftmostOutermost),
            "priority" | "rule-priority" => Some(Strategy::RulePriority),
            _ => None,
        }
    }
}

/// Engine settings: fuel bound, strategy, and the rule-39 literal mode
/// (printed right-hand side, endpoint check off for that rule).
#[derive(Debug, Clone)]
pub struct EngineConfig {
    pub fuel: u64,
    pub strategy: Strategy,
    pub rule39_literal: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { fuel: 10_000, strategy: Strategy::LeftmostOutermost, rule39_literal: false }
    }
}

impl EngineConfig {
    pub fn with_fuel(mut self, fuel: u64) -> Self {
        self.fuel = fuel;
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }
}

/// One rewrite step: `after` is `before` with the sub-path at `position`
/// replaced by the rule's right-hand side.
#[derive(Debug, Clone, PartialEq)]
pub struct RwStep {
    pub rule: RuleId,
    pub position: Vec<usize>,
    pub before: Path,
    pub after: Path,
}

/// A chained sequence of rewrite steps.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RwTrace {
    pub steps: Vec<RwStep>,
}

impl RwTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Debug, Clone, Error)]
pub enum NormalizeError {
    #[error("fuel exhausted after {fuel} steps")]
    FuelExhausted { fuel: u64, partial: RwTrace },
    #[error(transparent)]
    IllFormed(#[from] PathError),
}

/// Locate the first applicable rule instance under the strategy without
/// assembling a step record.
fn find_contraction(p: &Path, cfg: &EngineConfig) -> Option<(Vec<usize>, RuleId, Path)> {
    match cfg.strategy {
        Strategy::LeftmostOutermost => find_preorder(p, &mut Vec::new(), &mut |sub| {
            ALL_RULES
                .iter()
                .find_map(|&rule| rules::try_apply(rule, sub, cfg.rule39_literal).map(|r| (rule, r)))
        }),
        Strategy::RulePriority => ALL_RULES.iter().find_map(|&rule| {
            find_preorder(p, &mut Vec::new(), &mut |sub| {
                rules::try_apply(rule, sub, cfg.rule39_literal).map(|r| (rule, r))
            })
        }),
    }
}

/// Fire the first applicable rule instance under the strategy. `None`
/// means the path is rw-normal.
pub fn contract_once(p: &Path, cfg: &EngineConfig) -> Option<(Path, RwStep)> {
    let (position, rule, replacement) = find_contraction(p, cfg)?;
    let after = p
        .with_replacement(&position, replacement)
        .expect("replacement position came from traversal");
    let step = RwStep { rule, position, before: p.clone(), after: after.clone() };
    Some((after, step))
}

fn find_preorder<F>(
    p: &Path,
    pos: &mut Vec<usize>,
    try_node: &mut F,
) -> Option<(Vec<usize>, RuleId, Path)>
where
    F: FnMut(&Path) -> Option<(RuleId, Path)>,
{
    if let Some((rule, replacement)) = try_node(p) {
        return Some((pos.clone(), rule, replacement));
    }
    for (i, c) in p.children().into_iter().enumerate() {
        pos.push(i);
        if let Some(hit) = find_preorder(c, pos, try_node) {
            pos.pop();
            return Some(hit);
        }
        pos.pop();
    }
    None
}

/// Reduce to rw-normal form, returning the normal form and the full
/// trace. Endpoints are preserved end to end.
pub fn normalize(p: &Path, cfg: &EngineConfig) -> Result<(Path, RwTrace), NormalizeError> {
    p.check_well_formed()?;
    let mut current = p.clone();
    let mut trace = RwTrace::default();
    loop {
        match contract_once(&current, cfg) {
            None => return Ok((current, trace)),
            Some((next, step)) => {
                if trace.steps.len() as u64 >= cfg.fuel {
                    return Err(NormalizeError::FuelExhausted { fuel: cfg.fuel, partial: trace });
                }
                trace.steps.push(step);
                current = next;
            }
        }
    }
}

/// Reduce to rw-normal form without assembling step records. Same
/// strategy and fuel accounting as [`normalize`]; a fuel error carries an
/// empty partial trace.
pub fn normal_form(p: &Path, cfg: &EngineConfig) -> Result<Path, NormalizeError> {
    p.check_well_formed()?;
    let mut current = p.clone();
    let mut steps = 0u64;
    loop {
        match find_contraction(&current, cfg) {
            None => return Ok(current),
            Some((position, _, replacement)) => {
                if steps >= cfg.fuel {
                    return Err(NormalizeError::FuelExhausted {
                        fuel: cfg.fuel,
                        partial: RwTrace::default(),
                    });
                }
                current = current
                    .with_replacement(&position, replacement)
                    .expect("replacement position came from traversal");
                steps += 1;
            }
        }
    }
}

/// Decide rw-equality: both paths are normalized and the normal forms
/// compared up to alpha-equivalence. The inputs must share endpoints.
pub fn rw_equal(p: &Path, q: &Path, cfg: &EngineConfig) -> Result<bool, RwEqualError> {
    let (ps, pt) = p.endpoints().map_err(NormalizeError::from)?;
    let (qs, qt) = q.endpoints().map_err(NormalizeError::from)?;
    if !alpha_eq(&ps, &qs) {
        return Err(CoherenceError { position: Vec::new(), left: ps, right: qs }.into());
    }
    if !alpha_eq(&pt, &qt) {
        return Err(CoherenceError { position: Vec::new(), left: pt, right: qt }.into());
    }
    let pn = normal_form(p, cfg)?;
    let qn = normal_form(q, cfg)?;
    Ok(pn.alpha_eq(&qn))
}

#[derive(Debug, Clone, Error)]
pub enum RwEqualError {
    #[error(transparent)]
    Endpoints(#[from] CoherenceError),
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
}

// ---------------------------------------------------------------------------
// Structural reduction of reflexivity-generated paths
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Error)]
pub enum RhoReduceError {
    #[error("path at {position:?} is not generated from reflexivity: found {found}")]
    NotRhoGenerated { position: Vec<usize>, found: String },
    #[error("rule {rule:?} failed to fire at {position:?} during structural reduction")]
    Stuck { rule: RuleId, position: Vec<usize> },
    #[error(transparent)]
    IllFormed(#[from] PathError),
}

/// Reduce a path built from reflexivity atoms under symmetry,
/// transitivity, and the congruences down to a single reflexivity node,
/// by structural recursion: children first, then the collapsing rule for
/// the head constructor (`sr`, `trr`, `mxp`, `nxp`, `xxp`).
///
/// This is an independent second route to the normal form; the generic
/// [`normalize`] must agree on the final path.
pub fn reduce_rho_generated(p: &Path) -> Result<RwTrace, RhoReduceError> {
    p.check_well_formed()?;
    let mut current = p.clone();
    let mut trace = RwTrace::default();
    reduce_rec(&mut current, Vec::new(), &mut trace)?;
    Ok(trace)
}

fn reduce_rec(
    current: &mut Path,
    position: Vec<usize>,
    trace: &mut RwTrace,
) -> Result<(), RhoReduceError> {
    let node = current
        .subpath_at(&position)
        .expect("position tracks the tree")
        .clone();
    let child_count = node.children().len();
    let collapse = match node {
        Path::Rho(_) => None,
        Path::Sigma(_) => Some(RuleId::Sr),
        Path::Tau(_, _) => Some(RuleId::Trr),
        Path::Mu { .. } => Some(RuleId::Mxp),
        Path::Nu { .. } => Some(RuleId::Nxp),
        Path::Xi { .. } => Some(RuleId::Xxp),
        other => {
            return Err(RhoReduceError::NotRhoGenerated {
                position,
                found: other.to_string(),
            })
        }
    };
    let Some(rule) = collapse else {
        return Ok(());
    };
    for i in 0..child_count {
        let mut child_pos = position.clone();
        child_pos.push(i);
        reduce_rec(current, child_pos, trace)?;
    }
    fire_at(current, &position, rule, trace)
}

fn fire_at(
    current: &mut Path,
    position: &[usize],
    rule: RuleId,
    trace: &mut RwTrace,
) -> Result<(), RhoReduceError> {
    let sub = current.subpath_at(position).expect("position tracks the tree");
    let replacement = rules::try_apply(rule, sub, false)
        .ok_or(RhoReduceError::Stuck { rule, position: position.to_vec() })?;
    let after = current
        .with_replacement(position, replacement)
        .expect("position tracks the tree");
    trace.steps.push(RwStep {
        rule,
        position: position.to_vec(),
        before: current.clone(),
        after: after.clone(),
    });
    *current = after;
    Ok(())
}

// ---------------------------------------------------------------------------
// Trace export
// ---------------------------------------------------------------------------

/// One exported step: rule label and number, tree position, and the full
/// pre/post paths in the surface grammar.
#[derive(Debug, Clone, Serialize)]
pub struct StepRecord {
    pub index: usize,
    pub rule: String,
    pub number: u8,
    pub position: Vec<usize>,
    pub before: String,
    pub after: String,
}

/// An exported normalization run.
#[derive(Debug, Clone, Serialize)]
pub struct TraceRecord {
    pub input: String,
    pub normal_form: String,
    pub steps: Vec<StepRecord>,
}

impl TraceRecord {
    pub fn new(input: &Path, normal_form: &Path, trace: &RwTrace) -> TraceRecord {
        TraceRecord {
            input: input.to_string(),
            normal_form: normal_form.to_string(),
            steps: trace
                .steps
                .iter()
                .enumerate()
                .map(|(index, s)| StepRecord {
                    index,
                    rule: s.rule.label().to_string(),
                    number: s.rule.number(),
                    position: s.position.clone(),
                    before: s.before.to_string(),
                    after: s.after.to_string(),
                })
                .collect(),
        }
    }

    /// Stable pretty-printed JSON; used byte-for-byte in golden tests.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serialization cannot fail")
    }
}
