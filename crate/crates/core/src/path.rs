//! Computational paths: proof objects witnessing the equality of two
//! terms. A path has a source and a target endpoint, both terms, and is
//! built from atomic steps (reflexivity, one-step beta/eta contraction,
//! the loop generator) under symmetry, transitivity, the congruences, and
//! subterm substitution.
//!
//! Path equality is alpha-equivalence: embedded terms compare up to
//! bound-variable renaming and `xi` binders are renamed consistently.

use std::fmt;

use thiserror::Error;

use crate::sexpr::{self, ParseError, Sexpr};
use crate::term::{
    alpha_eq, alpha_eq_env, contract_kind_at, ident_from_sexpr, location_from_sexpr, redex_kind,
    replace_subterm, subterm_at, term_from_sexpr, RedexKind, RedexLocation, Term,
};

/// The function position of a `mu` congruence. The built-in successor is
/// separate because `succ` is a term constructor, not a term: its
/// congruence image is `Succ(-)` rather than an application.
#[derive(Debug, Clone, Eq)]
pub enum PathFun {
    Apply(Term),
    Succ,
}

impl PathFun {
    pub fn image(&self, t: &Term) -> Term {
        match self {
            PathFun::Apply(f) => Term::app(f.clone(), t.clone()),
            PathFun::Succ => Term::succ(t.clone()),
        }
    }
}

impl PartialEq for PathFun {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (PathFun::Apply(a), PathFun::Apply(b)) => alpha_eq(a, b),
            (PathFun::Succ, PathFun::Succ) => true,
            _ => false,
        }
    }
}

/// Tags for the opaque congruence markers used by the projection,
/// injection, pairing, and function-fragment rewrite rules. These carry
/// endpoints declared at construction; no endpoint law is imposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpaqueTag {
    Mu1,
    Mu2,
    Mu2Arg,
    Mu3Arg,
    Xi1,
    Xi2,
    XiPair,
    NuApp,
    XiAbs,
}

impl OpaqueTag {
    pub fn arity(self) -> usize {
        match self {
            OpaqueTag::Mu1
            | OpaqueTag::Mu2
            | OpaqueTag::Xi1
            | OpaqueTag::Xi2
            | OpaqueTag::NuApp
            | OpaqueTag::XiAbs => 1,
            OpaqueTag::Mu2Arg | OpaqueTag::XiPair => 2,
            OpaqueTag::Mu3Arg => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            OpaqueTag::Mu1 => "mu1",
            OpaqueTag::Mu2 => "mu2",
            OpaqueTag::Mu2Arg => "mu2arg",
            OpaqueTag::Mu3Arg => "mu3arg",
            OpaqueTag::Xi1 => "xi1",
            OpaqueTag::Xi2 => "xi2",
            OpaqueTag::XiPair => "xipair",
            OpaqueTag::NuApp => "nuapp",
            OpaqueTag::XiAbs => "xiabs",
        }
    }

    pub fn from_label(s: &str) -> Option<OpaqueTag> {
        Some(match s {
            "mu1" => OpaqueTag::Mu1,
            "mu2" => OpaqueTag::Mu2,
            "mu2arg" => OpaqueTag::Mu2Arg,
            "mu3arg" => OpaqueTag::Mu3Arg,
            "xi1" => OpaqueTag::Xi1,
            "xi2" => OpaqueTag::Xi2,
            "xipair" => OpaqueTag::XiPair,
            "nuapp" => OpaqueTag::NuApp,
            "xiabs" => OpaqueTag::XiAbs,
            _ => return None,
        })
    }
}

/// A computational path.
#[derive(Debug, Clone, Eq)]
pub enum Path {
    /// Reflexivity: `t = t`.
    Rho(Term),
    /// One beta contraction of `term` at `loc`.
    Beta { term: Term, loc: RedexLocation },
    /// One eta contraction of `term` at `loc`.
    Eta { term: Term, loc: RedexLocation },
    /// Symmetry.
    Sigma(Box<Path>),
    /// Transitivity; `Tau(p, q)` runs `p` then `q`, so it needs
    /// `target(p) = source(q)`.
    Tau(Box<Path>, Box<Path>),
    /// Congruence on the argument: from `M = M'` conclude `N M = N M'`
    /// (or `succ M = succ M'` for the built-in successor).
    Mu { fun: PathFun, inner: Box<Path> },
    /// Congruence on the function: from `M = M'` conclude `M N = M' N`.
    Nu { inner: Box<Path>, arg: Term },
    /// Congruence under a binder: from `M = M'` conclude
    /// `lam x.M = lam x.M'`.
    Xi { binder: String, inner: Box<Path> },
    /// Subterm substitution, left form: from `x = C[y]` and `y = u`
    /// conclude `x = C[u]`.
    SubL(Box<Path>, Box<Path>),
    /// Subterm substitution, right form: from `x = w` and `C[w] = u`
    /// conclude `C[x] = u`.
    SubR(Box<Path>, Box<Path>),
    /// The free circle generator, `base = base`.
    Loop,
    /// Opaque congruence marker with declared endpoints.
    Opaque { tag: OpaqueTag, args: Vec<Path>, source: Term, target: Term },
}

/// Endpoint incoherence: two terms that were required to agree do not.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("endpoint mismatch at {}: {left} vs {right}", fmt_position(position))]
pub struct CoherenceError {
    /// Tree position of the offending node (empty for the root).
    pub position: Vec<usize>,
    pub left: Term,
    pub right: Term,
}

fn fmt_position(pos: &[usize]) -> String {
    let mut s = String::from("[");
    for (i, ix) in pos.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        s.push_str(&ix.to_string());
    }
    s.push(']');
    s
}

/// A structurally invalid path: an atomic step whose location does not
/// designate a redex of the right kind.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("invalid {kind} step on {term} at {loc}")]
    BadStep { kind: RedexKind, term: Term, loc: RedexLocation },
    #[error(transparent)]
    Incoherent(#[from] CoherenceError),
}

impl Path {
    pub fn rho(t: Term) -> Path {
        Path::Rho(t)
    }

    /// A validated one-step beta contraction.
    pub fn beta(term: Term, loc: RedexLocation) -> Result<Path, PathError> {
        match subterm_at(&term, &loc).and_then(redex_kind) {
            Some(RedexKind::Beta) => Ok(Path::Beta { term, loc }),
            _ => Err(PathError::BadStep { kind: RedexKind::Beta, term, loc }),
        }
    }

    /// A validated one-step eta contraction.
    pub fn eta(term: Term, loc: RedexLocation) -> Result<Path, PathError> {
        match subterm_at(&term, &loc).and_then(redex_kind) {
            Some(RedexKind::Eta) => Ok(Path::Eta { term, loc }),
            _ => Err(PathError::BadStep { kind: RedexKind::Eta, term, loc }),
        }
    }

    pub fn sigma(p: Path) -> Path {
        Path::Sigma(Box::new(p))
    }

    pub fn tau(p: Path, q: Path) -> Path {
        Path::Tau(Box::new(p), Box::new(q))
    }

    pub fn mu(fun: Term, inner: Path) -> Path {
        Path::Mu { fun: PathFun::Apply(fun), inner: Box::new(inner) }
    }

    pub fn mu_succ(inner: Path) -> Path {
        Path::Mu { fun: PathFun::Succ, inner: Box::new(inner) }
    }

    pub fn nu(inner: Path, arg: Term) -> Path {
        Path::Nu { inner: Box::new(inner), arg }
    }

    pub fn xi(binder: impl Into<String>, inner: Path) -> Path {
        Path::Xi { binder: binder.into(), inner: Box::new(inner) }
    }

    pub fn sub_l(r: Path, s: Path) -> Path {
        Path::SubL(Box::new(r), Box::new(s))
    }

    pub fn sub_r(r: Path, s: Path) -> Path {
        Path::SubR(Box::new(r), Box::new(s))
    }

    /// An opaque marker; `args.len()` must match the tag's arity.
    pub fn opaque(tag: OpaqueTag, args: Vec<Path>, source: Term, target: Term) -> Path {
        assert_eq!(args.len(), tag.arity(), "{} takes {} argument(s)", tag.label(), tag.arity());
        Path::Opaque { tag, args, source, target }
    }

    /// An opaque marker whose declared endpoints are inherited from its
    /// first argument.
    pub fn opaque_inherit(tag: OpaqueTag, args: Vec<Path>) -> Path {
        let (source, target) = args[0].endpoints().expect("inherit from well-formed argument");
        Path::opaque(tag, args, source, target)
    }

    /// Source and target endpoints. Errors only on structurally invalid
    /// atomic steps (see [`Path::beta`]); junction coherence is the
    /// business of [`Path::check_well_formed`].
    pub fn endpoints(&self) -> Result<(Term, Term), PathError> {
        Ok(match self {
            Path::Rho(t) => (t.clone(), t.clone()),
            Path::Beta { term, loc } => {
                let tgt = contract_kind_at(term, loc, RedexKind::Beta).map_err(|_| {
                    PathError::BadStep { kind: RedexKind::Beta, term: term.clone(), loc: loc.clone() }
                })?;
                (term.clone(), tgt)
            }
            Path::Eta { term, loc } => {
                let tgt = contract_kind_at(term, loc, RedexKind::Eta).map_err(|_| {
                    PathError::BadStep { kind: RedexKind::Eta, term: term.clone(), loc: loc.clone() }
                })?;
                (term.clone(), tgt)
            }
            Path::Sigma(p) => {
                let (s, t) = p.endpoints()?;
                (t, s)
            }
            Path::Tau(p, q) => {
                let (s, _) = p.endpoints()?;
                let (_, t) = q.endpoints()?;
                (s, t)
            }
            Path::Mu { fun, inner } => {
                let (s, t) = inner.endpoints()?;
                (fun.image(&s), fun.image(&t))
            }
            Path::Nu { inner, arg } => {
                let (s, t) = inner.endpoints()?;
                (Term::app(s, arg.clone()), Term::app(t, arg.clone()))
            }
            Path::Xi { binder, inner } => {
                let (s, t) = inner.endpoints()?;
                (Term::Lam(binder.clone(), Box::new(s)), Term::Lam(binder.clone(), Box::new(t)))
            }
            Path::SubL(r, s) => {
                let (rs, rt) = r.endpoints()?;
                let (ss, st) = s.endpoints()?;
                (rs, replace_subterm(&rt, &ss, &st))
            }
            Path::SubR(r, s) => {
                let (rs, rt) = r.endpoints()?;
                let (ss, st) = s.endpoints()?;
                (replace_subterm(&ss, &rt, &rs), st)
            }
            Path::Loop => (Term::Base, Term::Base),
            Path::Opaque { source, target, .. } => (source.clone(), target.clone()),
        })
    }

    /// The source endpoint. Panics on a structurally invalid atomic step.
    pub fn source(&self) -> Term {
        self.endpoints().expect("well-formed path").0
    }

    /// The target endpoint. Panics on a structurally invalid atomic step.
    pub fn target(&self) -> Term {
        self.endpoints().expect("well-formed path").1
    }

    /// True iff every atomic step is valid and every `tau` junction
    /// agrees up to alpha-equivalence.
    pub fn well_formed(&self) -> bool {
        self.check_well_formed().is_ok()
    }

    /// Like [`Path::well_formed`] but reporting the offending junction.
    pub fn check_well_formed(&self) -> Result<(), PathError> {
        let mut pos = Vec::new();
        self.check_rec(&mut pos)?;
        Ok(())
    }

    fn check_rec(&self, pos: &mut Vec<usize>) -> Result<(Term, Term), PathError> {
        match self {
            Path::Tau(p, q) => {
                pos.push(0);
                let (ps, pt) = p.check_rec(pos)?;
                pos.pop();
                pos.push(1);
                let (qs, qt) = q.check_rec(pos)?;
                pos.pop();
                if !alpha_eq(&pt, &qs) {
                    return Err(CoherenceError { position: pos.clone(), left: pt, right: qs }.into());
                }
                Ok((ps, qt))
            }
            _ => {
                for (i, c) in self.children().iter().enumerate() {
                    pos.push(i);
                    c.check_rec(pos)?;
                    pos.pop();
                }
                self.endpoints()
            }
        }
    }

    /// Composition in application order: `compose(r, s)` runs `s` first,
    /// so it requires `target(s) = source(r)` and yields `Tau(s, r)`.
    pub fn compose(r: &Path, s: &Path) -> Result<Path, CoherenceError> {
        let (_, s_tgt) = s.endpoints().map_err(|_| CoherenceError {
            position: vec![0],
            left: Term::Star,
            right: Term::Star,
        })?;
        let (r_src, _) = r.endpoints().map_err(|_| CoherenceError {
            position: vec![1],
            left: Term::Star,
            right: Term::Star,
        })?;
        if !alpha_eq(&s_tgt, &r_src) {
            return Err(CoherenceError { position: Vec::new(), left: s_tgt, right: r_src });
        }
        Ok(Path::tau(s.clone(), r.clone()))
    }

    /// Symmetry; endpoints swapped.
    pub fn inverse(&self) -> Path {
        Path::sigma(self.clone())
    }

    /// Immediate sub-paths, in position order.
    pub fn children(&self) -> Vec<&Path> {
        match self {
            Path::Rho(_) | Path::Beta { .. } | Path::Eta { .. } | Path::Loop => Vec::new(),
            Path::Sigma(p) | Path::Mu { inner: p, .. } | Path::Nu { inner: p, .. }
            | Path::Xi { inner: p, .. } => vec![p],
            Path::Tau(p, q) | Path::SubL(p, q) | Path::SubR(p, q) => vec![p, q],
            Path::Opaque { args, .. } => args.iter().collect(),
        }
    }

    pub fn subpath_at(&self, pos: &[usize]) -> Option<&Path> {
        let mut cur = self;
        for &ix in pos {
            cur = *cur.children().get(ix)?;
        }
        Some(cur)
    }

    /// A copy of `self` with the subtree at `pos` replaced.
    pub fn with_replacement(&self, pos: &[usize], new: Path) -> Option<Path> {
        let Some((&ix, rest)) = pos.split_first() else {
            return Some(new);
        };
        let mut out = self.clone();
        match &mut out {
            Path::Sigma(p) | Path::Mu { inner: p, .. } | Path::Nu { inner: p, .. }
            | Path::Xi { inner: p, .. } => {
                if ix != 0 {
                    return None;
                }
                **p = p.with_replacement(rest, new)?;
            }
            Path::Tau(p, q) | Path::SubL(p, q) | Path::SubR(p, q) => match ix {
                0 => **p = p.with_replacement(rest, new)?,
                1 => **q = q.with_replacement(rest, new)?,
                _ => return None,
            },
            Path::Opaque { args, .. } => {
                let slot = args.get_mut(ix)?;
                *slot = slot.with_replacement(rest, new)?;
            }
            _ => return None,
        }
        Some(out)
    }

    /// Node count.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Alpha-equivalence of paths: embedded terms compare up to renaming
    /// and `xi` binders extend the correspondence.
    pub fn alpha_eq(&self, other: &Path) -> bool {
        let mut env = Vec::new();
        path_alpha_eq_env(self, other, &mut env)
    }
}

fn path_alpha_eq_env(a: &Path, b: &Path, env: &mut Vec<(String, String)>) -> bool {
    match (a, b) {
        (Path::Rho(t), Path::Rho(u)) => alpha_eq_env(t, u, env),
        (Path::Beta { term: t, loc: l }, Path::Beta { term: u, loc: m })
        | (Path::Eta { term: t, loc: l }, Path::Eta { term: u, loc: m }) => {
            l == m && alpha_eq_env(t, u, env)
        }
        (Path::Sigma(p), Path::Sigma(q)) => path_alpha_eq_env(p, q, env),
        (Path::Tau(p1, q1), Path::Tau(p2, q2))
        | (Path::SubL(p1, q1), Path::SubL(p2, q2))
        | (Path::SubR(p1, q1), Path::SubR(p2, q2)) => {
            path_alpha_eq_env(p1, p2, env) && path_alpha_eq_env(q1, q2, env)
        }
        (Path::Mu { fun: f1, inner: p }, Path::Mu { fun: f2, inner: q }) => {
            let funs = match (f1, f2) {
                (PathFun::Apply(t), PathFun::Apply(u)) => alpha_eq_env(t, u, env),
                (PathFun::Succ, PathFun::Succ) => true,
                _ => false,
            };
            funs && path_alpha_eq_env(p, q, env)
        }
        (Path::Nu { inner: p, arg: t }, Path::Nu { inner: q, arg: u }) => {
            alpha_eq_env(t, u, env) && path_alpha_eq_env(p, q, env)
        }
        (Path::Xi { binder: x, inner: p }, Path::Xi { binder: y, inner: q }) => {
            env.push((x.clone(), y.clone()));
            let r = path_alpha_eq_env(p, q, env);
            env.pop();
            r
        }
        (Path::Loop, Path::Loop) => true,
        (
            Path::Opaque { tag: t1, args: a1, source: s1, target: g1 },
            Path::Opaque { tag: t2, args: a2, source: s2, target: g2 },
        ) => {
            t1 == t2
                && a1.len() == a2.len()
                && alpha_eq_env(s1, s2, env)
                && alpha_eq_env(g1, g2, env)
                && a1.iter().zip(a2).all(|(p, q)| path_alpha_eq_env(p, q, env))
        }
        _ => false,
    }
}

impl PartialEq for Path {
    fn eq(&self, other: &Self) -> bool {
        self.alpha_eq(other)
    }
}

// ---------------------------------------------------------------------------
// Grammar: (rho <t>) | (beta <t> <loc>) | (eta <t> <loc>) | (sigma <p>)
// | (tau <p> <p>) | (mu <p> <t>) | (mu <p> succ) | (nu <p> <t>)
// | (xi x <p>) | (subl <p> <p>) | (subr <p> <p>) | loop
// | (mu1 <p> [<src> <tgt>]) and the other opaque forms. An opaque form
// without explicit endpoints declares its first argument's endpoints.
// ---------------------------------------------------------------------------

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Path::Rho(t) => write!(f, "(rho {t})"),
            Path::Beta { term, loc } => write!(f, "(beta {term} {loc})"),
            Path::Eta { term, loc } => write!(f, "(eta {term} {loc})"),
            Path::Sigma(p) => write!(f, "(sigma {p})"),
            Path::Tau(p, q) => write!(f, "(tau {p} {q})"),
            Path::Mu { fun: PathFun::Apply(t), inner } => write!(f, "(mu {inner} {t})"),
            Path::Mu { fun: PathFun::Succ, inner } => write!(f, "(mu {inner} succ)"),
            Path::Nu { inner, arg } => write!(f, "(nu {inner} {arg})"),
            Path::Xi { binder, inner } => write!(f, "(xi {binder} {inner})"),
            Path::SubL(p, q) => write!(f, "(subl {p} {q})"),
            Path::SubR(p, q) => write!(f, "(subr {p} {q})"),
            Path::Loop => write!(f, "loop"),
            Path::Opaque { tag, args, source, target } => {
                write!(f, "({}", tag.label())?;
                for a in args {
                    write!(f, " {a}")?;
                }
                let inherited = args[0]
                    .endpoints()
                    .map(|(s, t)| alpha_eq(&s, source) && alpha_eq(&t, target))
                    .unwrap_or(false);
                if !inherited {
                    write!(f, " {source} {target}")?;
                }
                write!(f, ")")
            }
        }
    }
}

pub(crate) fn path_from_sexpr(e: &Sexpr) -> Result<Path, ParseError> {
    match e {
        Sexpr::Atom { text, .. } => match text.as_str() {
            "loop" => Ok(Path::Loop),
            t => Err(e.error(format!("unknown path atom '{t}'"))),
        },
        Sexpr::List { items, .. } => {
            let head = items
                .first()
                .and_then(|h| h.as_atom())
                .ok_or_else(|| e.error("expected path form"))?;
            let arity = |n: usize| -> Result<(), ParseError> {
                if items.len() == n + 1 {
                    Ok(())
                } else {
                    Err(e.error(format!("'{head}' takes {n} argument(s)")))
                }
            };
            match head {
                "rho" => {
                    arity(1)?;
                    Ok(Path::Rho(term_from_sexpr(&items[1])?))
                }
                "beta" | "eta" => {
                    arity(2)?;
                    let term = term_from_sexpr(&items[1])?;
                    let loc = location_from_sexpr(&items[2])?;
                    let made = if head == "beta" {
                        Path::beta(term, loc)
                    } else {
                        Path::eta(term, loc)
                    };
                    made.map_err(|err| items[1].error(err.to_string()))
                }
                "sigma" => {
                    arity(1)?;
                    Ok(Path::sigma(path_from_sexpr(&items[1])?))
                }
                "tau" => {
                    arity(2)?;
                    Ok(Path::tau(path_from_sexpr(&items[1])?, path_from_sexpr(&items[2])?))
                }
                "mu" => {
                    arity(2)?;
                    let inner = path_from_sexpr(&items[1])?;
                    if items[2].as_atom() == Some("succ") {
                        Ok(Path::mu_succ(inner))
                    } else {
                        Ok(Path::mu(term_from_sexpr(&items[2])?, inner))
                    }
                }
                "nu" => {
                    arity(2)?;
                    Ok(Path::nu(path_from_sexpr(&items[1])?, term_from_sexpr(&items[2])?))
                }
                "xi" => {
                    arity(2)?;
                    let x = ident_from_sexpr(&items[1], "binder")?;
                    Ok(Path::xi(x, path_from_sexpr(&items[2])?))
                }
                "subl" => {
                    arity(2)?;
                    Ok(Path::sub_l(path_from_sexpr(&items[1])?, path_from_sexpr(&items[2])?))
                }
                "subr" => {
                    arity(2)?;
                    Ok(Path::sub_r(path_from_sexpr(&items[1])?, path_from_sexpr(&items[2])?))
                }
                other => {
                    let Some(tag) = OpaqueTag::from_label(other) else {
                        return Err(e.error(format!("unknown path form '{other}'")));
                    };
                    let n = tag.arity();
                    if items.len() != n + 1 && items.len() != n + 3 {
                        return Err(e.error(format!(
                            "'{other}' takes {n} path argument(s) with optional source/target terms"
                        )));
                    }
                    let mut args = Vec::with_capacity(n);
                    for item in &items[1..=n] {
                        args.push(path_from_sexpr(item)?);
                    }
                    if items.len() == n + 3 {
                        let source = term_from_sexpr(&items[n + 1])?;
                        let target = term_from_sexpr(&items[n + 2])?;
                        Ok(Path::opaque(tag, args, source, target))
                    } else {
                        let (source, target) = args[0]
                            .endpoints()
                            .map_err(|err| items[1].error(err.to_string()))?;
                        Ok(Path::opaque(tag, args, source, target))
                    }
                }
            }
        }
        Sexpr::Indices { .. } => Err(e.error("unexpected index list in path position")),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParsePathError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error(transparent)]
    Incoherent(#[from] CoherenceError),
}

/// Parse a path and check it is well-formed: syntax errors carry a
/// source position, incoherent junctions carry their tree position.
pub fn parse_path(input: &str) -> Result<Path, ParsePathError> {
    let p = path_from_sexpr(&sexpr::parse(input)?)?;
    match p.check_well_formed() {
        Ok(()) => Ok(p),
        Err(PathError::Incoherent(err)) => Err(err.into()),
        Err(PathError::BadStep { kind, term, loc }) => Err(ParseError::new(
            1,
            1,
            format!("invalid {kind} step on {term} at {loc}"),
        )
        .into()),
    }
}

/// Parse a path without the well-formedness check.
pub fn parse_path_unchecked(input: &str) -> Result<Path, ParseError> {
    path_from_sexpr(&sexpr::parse(input)?)
}
