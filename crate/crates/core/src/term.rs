//! Lambda terms extended with the naturals, the unit element, and the
//! circle base point.
//!
//! Term equality is alpha-equivalence: two terms that differ only in the
//! names of bound variables compare equal. The named representation is
//! kept at the surface; comparisons walk both trees with a binder
//! correspondence, so no de Bruijn conversion is materialized.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::sexpr::{self, ParseError, Sexpr};

/// A term of the object language.
#[derive(Debug, Clone, Eq)]
pub enum Term {
    Var(String),
    Lam(String, Box<Term>),
    App(Box<Term>, Box<Term>),
    Zero,
    Succ(Box<Term>),
    Star,
    Base,
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn lam(binder: impl Into<String>, body: Term) -> Term {
        Term::Lam(binder.into(), Box::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }

    /// The canonical numeral with exactly `n` successor layers.
    pub fn numeral(n: u64) -> Term {
        let mut t = Term::Zero;
        for _ in 0..n {
            t = Term::succ(t);
        }
        t
    }

    /// `Some(n)` iff the term is a canonical numeral.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0u64;
        let mut cur = self;
        loop {
            match cur {
                Term::Zero => return Some(n),
                Term::Succ(p) => {
                    n += 1;
                    cur = p;
                }
                _ => return None,
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        collect_free(self, &mut bound, &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero | Term::Star | Term::Base => 1,
            Term::Lam(_, b) | Term::Succ(b) => 1 + b.size(),
            Term::App(f, a) => 1 + f.size() + a.size(),
        }
    }
}

fn collect_free(t: &Term, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    match t {
        Term::Var(x) => {
            if !bound.iter().any(|b| b == x) {
                out.insert(x.clone());
            }
        }
        Term::Lam(x, b) => {
            bound.push(x.clone());
            collect_free(b, bound, out);
            bound.pop();
        }
        Term::App(f, a) => {
            collect_free(f, bound, out);
            collect_free(a, bound, out);
        }
        Term::Succ(p) => collect_free(p, bound, out),
        Term::Zero | Term::Star | Term::Base => {}
    }
}

/// Alpha-equivalence.
pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    let mut env = Vec::new();
    alpha_eq_env(a, b, &mut env)
}

/// Alpha-equivalence under an outer binder correspondence. Entries pair a
/// binder of `a`'s scope with the corresponding binder of `b`'s scope,
/// innermost last.
pub fn alpha_eq_env(a: &Term, b: &Term, env: &mut Vec<(String, String)>) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => {
            for (bx, by) in env.iter().rev() {
                let hit_x = bx == x;
                let hit_y = by == y;
                if hit_x || hit_y {
                    return hit_x && hit_y;
                }
            }
            x == y
        }
        (Term::Lam(x, ba), Term::Lam(y, bb)) => {
            env.push((x.clone(), y.clone()));
            let r = alpha_eq_env(ba, bb, env);
            env.pop();
            r
        }
        (Term::App(f1, a1), Term::App(f2, a2)) => {
            alpha_eq_env(f1, f2, env) && alpha_eq_env(a1, a2, env)
        }
        (Term::Succ(p), Term::Succ(q)) => alpha_eq_env(p, q, env),
        (Term::Zero, Term::Zero) | (Term::Star, Term::Star) | (Term::Base, Term::Base) => true,
        _ => false,
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        alpha_eq(self, other)
    }
}

/// A name based on `base` that avoids everything in `avoid`.
fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let mut candidate = format!("{base}'");
    while avoid.contains(&candidate) {
        candidate.push('\'');
    }
    candidate
}

/// Capture-avoiding substitution of `value` for the free occurrences of
/// `var` in `body`. Bound variables are renamed (primed) as needed.
pub fn substitute(body: &Term, var: &str, value: &Term) -> Term {
    match body {
        Term::Var(x) => {
            if x == var {
                value.clone()
            } else {
                body.clone()
            }
        }
        Term::Lam(x, b) => {
            if x == var {
                return body.clone();
            }
            let body_free = b.free_vars();
            if !body_free.contains(var) {
                return body.clone();
            }
            let value_free = value.free_vars();
            if value_free.contains(x) {
                let mut avoid = value_free;
                avoid.extend(body_free);
                avoid.insert(var.to_string());
                let x2 = fresh_name(x, &avoid);
                let renamed = substitute(b, x, &Term::Var(x2.clone()));
                Term::Lam(x2, Box::new(substitute(&renamed, var, value)))
            } else {
                Term::Lam(x.clone(), Box::new(substitute(b, var, value)))
            }
        }
        Term::App(f, a) => Term::app(substitute(f, var, value), substitute(a, var, value)),
        Term::Succ(p) => Term::succ(substitute(p, var, value)),
        Term::Zero | Term::Star | Term::Base => body.clone(),
    }
}

/// Replace every subterm alpha-equal to `needle` by `replacement`,
/// outermost occurrences first.
pub fn replace_subterm(t: &Term, needle: &Term, replacement: &Term) -> Term {
    if alpha_eq(t, needle) {
        return replacement.clone();
    }
    match t {
        Term::Var(_) | Term::Zero | Term::Star | Term::Base => t.clone(),
        Term::Lam(x, b) => Term::Lam(x.clone(), Box::new(replace_subterm(b, needle, replacement))),
        Term::App(f, a) => Term::app(
            replace_subterm(f, needle, replacement),
            replace_subterm(a, needle, replacement),
        ),
        Term::Succ(p) => Term::succ(replace_subterm(p, needle, replacement)),
    }
}

/// A position in a term tree: the child indices from the root.
/// `Lam`/`Succ` have one child (index 0); `App` has the function at 0 and
/// the argument at 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RedexLocation(pub Vec<usize>);

impl RedexLocation {
    pub fn root() -> Self {
        RedexLocation(Vec::new())
    }
}

impl fmt::Display for RedexLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, ix) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{ix}")?;
        }
        write!(f, "]")
    }
}

impl From<Vec<usize>> for RedexLocation {
    fn from(v: Vec<usize>) -> Self {
        RedexLocation(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RedexKind {
    Beta,
    Eta,
}

impl fmt::Display for RedexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RedexKind::Beta => write!(f, "beta"),
            RedexKind::Eta => write!(f, "eta"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("no subterm at location {0}")]
    InvalidLocation(RedexLocation),
    #[error("subterm at location {0} is not a {1}-redex")]
    NotARedex(RedexLocation, RedexKind),
}

pub fn subterm_at<'a>(t: &'a Term, loc: &RedexLocation) -> Option<&'a Term> {
    let mut cur = t;
    for &ix in &loc.0 {
        cur = match (cur, ix) {
            (Term::Lam(_, b), 0) => b,
            (Term::App(f, _), 0) => f,
            (Term::App(_, a), 1) => a,
            (Term::Succ(p), 0) => p,
            _ => return None,
        };
    }
    Some(cur)
}

fn replace_at(t: &Term, loc: &[usize], new: Term) -> Option<Term> {
    let Some((&ix, rest)) = loc.split_first() else {
        return Some(new);
    };
    Some(match (t, ix) {
        (Term::Lam(x, b), 0) => Term::Lam(x.clone(), Box::new(replace_at(b, rest, new)?)),
        (Term::App(f, a), 0) => Term::App(Box::new(replace_at(f, rest, new)?), a.clone()),
        (Term::App(f, a), 1) => Term::App(f.clone(), Box::new(replace_at(a, rest, new)?)),
        (Term::Succ(p), 0) => Term::Succ(Box::new(replace_at(p, rest, new)?)),
        _ => return None,
    })
}

/// The redex kind of a term's root node, if any.
pub fn redex_kind(t: &Term) -> Option<RedexKind> {
    match t {
        Term::App(f, _) if matches!(**f, Term::Lam(_, _)) => Some(RedexKind::Beta),
        Term::Lam(x, b) => match &**b {
            Term::App(m, a) => match &**a {
                Term::Var(y) if y == x && !m.free_vars().contains(x) => Some(RedexKind::Eta),
                _ => None,
            },
            _ => None,
        },
        _ => None,
    }
}

/// All beta and eta redex positions, leftmost-outermost first
/// (preorder: a node precedes its children, children left to right).
pub fn find_redexes(t: &Term) -> Vec<(RedexLocation, RedexKind)> {
    let mut out = Vec::new();
    let mut pos = Vec::new();
    walk_redexes(t, &mut pos, &mut out);
    out
}

fn walk_redexes(t: &Term, pos: &mut Vec<usize>, out: &mut Vec<(RedexLocation, RedexKind)>) {
    if let Some(kind) = redex_kind(t) {
        out.push((RedexLocation(pos.clone()), kind));
    }
    let children: &[&Term] = match t {
        Term::Lam(_, b) => &[b],
        Term::App(f, a) => &[f, a],
        Term::Succ(p) => &[p],
        _ => &[],
    };
    for (i, c) in children.iter().enumerate() {
        pos.push(i);
        walk_redexes(c, pos, out);
        pos.pop();
    }
}

/// Contract the redex at `loc` once.
pub fn contract_at(t: &Term, loc: &RedexLocation) -> Result<Term, TermError> {
    let sub = subterm_at(t, loc).ok_or_else(|| TermError::InvalidLocation(loc.clone()))?;
    let contracted = match redex_kind(sub) {
        Some(RedexKind::Beta) => match sub {
            Term::App(f, a) => match &**f {
                Term::Lam(x, b) => substitute(b, x, a),
                _ => unreachable!(),
            },
            _ => unreachable!(),
        },
        Some(RedexKind::Eta) => match sub {
            Term::Lam(_, b) => match &**b {
                Term::App(m, _) => (**m).clone(),
                _ => unreachable!(),
            },
            _ => unreachable!(),
        },
        None => return Err(TermError::NotARedex(loc.clone(), RedexKind::Beta)),
    };
    replace_at(t, &loc.0, contracted).ok_or_else(|| TermError::InvalidLocation(loc.clone()))
}

/// Contract the redex at `loc`, requiring it to be of the given kind.
pub fn contract_kind_at(t: &Term, loc: &RedexLocation, kind: RedexKind) -> Result<Term, TermError> {
    let sub = subterm_at(t, loc).ok_or_else(|| TermError::InvalidLocation(loc.clone()))?;
    if redex_kind(sub) != Some(kind) {
        return Err(TermError::NotARedex(loc.clone(), kind));
    }
    contract_at(t, loc)
}

// ---------------------------------------------------------------------------
// Grammar: (var x) | (lam x <t>) | (app <t> <t>) | zero | (succ <t>) | star
// | base, with digit sugar for numerals.
// ---------------------------------------------------------------------------

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_numeral() {
            return write!(f, "{n}");
        }
        match self {
            Term::Var(x) => write!(f, "(var {x})"),
            Term::Lam(x, b) => write!(f, "(lam {x} {b})"),
            Term::App(g, a) => write!(f, "(app {g} {a})"),
            Term::Zero => write!(f, "0"),
            Term::Succ(p) => write!(f, "(succ {p})"),
            Term::Star => write!(f, "star"),
            Term::Base => write!(f, "base"),
        }
    }
}

fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

pub(crate) fn ident_from_sexpr(e: &Sexpr, what: &str) -> Result<String, ParseError> {
    match e.as_atom() {
        Some(s) if valid_ident(s) => Ok(s.to_string()),
        _ => Err(e.error(format!("expected {what} identifier"))),
    }
}

pub(crate) fn term_from_sexpr(e: &Sexpr) -> Result<Term, ParseError> {
    match e {
        Sexpr::Atom { text, .. } => match text.as_str() {
            "zero" => Ok(Term::Zero),
            "star" => Ok(Term::Star),
            "base" => Ok(Term::Base),
            t => {
                if let Ok(n) = t.parse::<u64>() {
                    Ok(Term::numeral(n))
                } else {
                    Err(e.error(format!("unknown term atom '{t}'")))
                }
            }
        },
        Sexpr::List { items, .. } => {
            let head = items
                .first()
                .and_then(|h| h.as_atom())
                .ok_or_else(|| e.error("expected term form"))?;
            let arity = |n: usize| -> Result<(), ParseError> {
                if items.len() == n + 1 {
                    Ok(())
                } else {
                    Err(e.error(format!("'{head}' takes {n} argument(s)")))
                }
            };
            match head {
                "var" => {
                    arity(1)?;
                    Ok(Term::Var(ident_from_sexpr(&items[1], "variable")?))
                }
                "lam" => {
                    arity(2)?;
                    let x = ident_from_sexpr(&items[1], "binder")?;
                    Ok(Term::Lam(x, Box::new(term_from_sexpr(&items[2])?)))
                }
                "app" => {
                    arity(2)?;
                    Ok(Term::app(term_from_sexpr(&items[1])?, term_from_sexpr(&items[2])?))
                }
                "succ" => {
                    arity(1)?;
                    Ok(Term::succ(term_from_sexpr(&items[1])?))
                }
                other => Err(e.error(format!("unknown term form '{other}'"))),
            }
        }
        Sexpr::Indices { .. } => Err(e.error("unexpected index list in term position")),
    }
}

/// Parse a term in the published grammar.
pub fn parse_term(input: &str) -> Result<Term, ParseError> {
    term_from_sexpr(&sexpr::parse(input)?)
}

pub(crate) fn location_from_sexpr(e: &Sexpr) -> Result<RedexLocation, ParseError> {
    match e {
        Sexpr::Indices { items, .. } => {
            let mut out = Vec::with_capacity(items.len());
            for item in items {
                let n = item
                    .as_atom()
                    .and_then(|a| a.parse::<usize>().ok())
                    .ok_or_else(|| item.error("expected child index"))?;
                out.push(n);
            }
            Ok(RedexLocation(out))
        }
        _ => Err(e.error("expected location like [0 1]")),
    }
}
