//! The 42-rule catalog of the path rewrite system.
//!
//! Each rule eliminates one redundancy in a proof object: double
//! symmetry, composition with reflexivity, inverse cancellation under a
//! common context, distribution of symmetry over the other constructors,
//! re-association of composition, and the collapse of congruences applied
//! to reflexivity.
//!
//! Rules whose schema mentions a context `C[..]` match the two designated
//! sub-paths against a common one-hole context, computed by simultaneous
//! top-down comparison; the empty context (direct match) is always tried
//! first, then the deepest single divergence point.
//!
//! Every application preserves the endpoints of the rewritten sub-path.
//! For most rules this holds structurally; where it depends on the
//! instance (declared opaque endpoints, subterm-replacement algebra, the
//! synthesized reflexivity in the cancellation rules) the candidate is
//! checked and skipped when it would not preserve endpoints. Rule 39 as
//! traditionally printed returns the matched hole content, which breaks
//! endpoint preservation; the default here returns the trailing path, and
//! the printed behavior sits behind the engine's rule-39 literal switch,
//! which disables that one rule's endpoint check.

use crate::path::{OpaqueTag, Path};
use crate::term::{alpha_eq, Term};

/// Identity of one rewrite rule, named by its traditional label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleId {
    Sr,
    Ss,
    Tr,
    Tsr,
    Trr,
    Tlr,
    Slr,
    Srr,
    Sls,
    Slss,
    Srs,
    Srrr,
    Mx2l1,
    Mx2l2,
    Mx2r1,
    Mx2r2,
    Mx3l,
    Mx3r,
    Mxl,
    Mxr,
    Mx,
    Mxx,
    Xmr,
    Mx1r,
    Stss,
    Ssbl,
    Ssbr,
    Sx,
    Sxss,
    Sm,
    Smss,
    Smsss,
    Tsbll,
    Tsbrl,
    Tsblr,
    Tsbrr,
    Tt,
    Tts,
    Tst,
    Mxp,
    Nxp,
    Xxp,
}

/// All rules in catalog order (rule numbers 1 through 42).
pub const ALL_RULES: [RuleId; 42] = [
    RuleId::Sr,
    RuleId::Ss,
    RuleId::Tr,
    RuleId::Tsr,
    RuleId::Trr,
    RuleId::Tlr,
    RuleId::Slr,
    RuleId::Srr,
    RuleId::Sls,
    RuleId::Slss,
    RuleId::Srs,
    RuleId::Srrr,
    RuleId::Mx2l1,
    RuleId::Mx2l2,
    RuleId::Mx2r1,
    RuleId::Mx2r2,
    RuleId::Mx3l,
    RuleId::Mx3r,
    RuleId::Mxl,
    RuleId::Mxr,
    RuleId::Mx,
    RuleId::Mxx,
    RuleId::Xmr,
    RuleId::Mx1r,
    RuleId::Stss,
    RuleId::Ssbl,
    RuleId::Ssbr,
    RuleId::Sx,
    RuleId::Sxss,
    RuleId::Sm,
    RuleId::Smss,
    RuleId::Smsss,
    RuleId::Tsbll,
    RuleId::Tsbrl,
    RuleId::Tsblr,
    RuleId::Tsbrr,
    RuleId::Tt,
    RuleId::Tts,
    RuleId::Tst,
    RuleId::Mxp,
    RuleId::Nxp,
    RuleId::Xxp,
];

impl RuleId {
    /// Catalog number, 1-based.
    pub fn number(self) -> u8 {
        ALL_RULES.iter().position(|r| *r == self).unwrap() as u8 + 1
    }

    pub fn label(self) -> &'static str {
        match self {
            RuleId::Sr => "sr",
            RuleId::Ss => "ss",
            RuleId::Tr => "tr",
            RuleId::Tsr => "tsr",
            RuleId::Trr => "trr",
            RuleId::Tlr => "tlr",
            RuleId::Slr => "slr",
            RuleId::Srr => "srr",
            RuleId::Sls => "sls",
            RuleId::Slss => "slss",
            RuleId::Srs => "srs",
            RuleId::Srrr => "srrr",
            RuleId::Mx2l1 => "mx2l1",
            RuleId::Mx2l2 => "mx2l2",
            RuleId::Mx2r1 => "mx2r1",
            RuleId::Mx2r2 => "mx2r2",
            RuleId::Mx3l => "mx3l",
            RuleId::Mx3r => "mx3r",
            RuleId::Mxl => "mxl",
            RuleId::Mxr => "mxr",
            RuleId::Mx => "mx",
            RuleId::Mxx => "mxx",
            RuleId::Xmr => "xmr",
            RuleId::Mx1r => "mx1r",
            RuleId::Stss => "stss",
            RuleId::Ssbl => "ssbl",
            RuleId::Ssbr => "ssbr",
            RuleId::Sx => "sx",
            RuleId::Sxss => "sxss",
            RuleId::Sm => "sm",
            RuleId::Smss => "smss",
            RuleId::Smsss => "smsss",
            RuleId::Tsbll => "tsbll",
            RuleId::Tsbrl => "tsbrl",
            RuleId::Tsblr => "tsblr",
            RuleId::Tsbrr => "tsbrr",
            RuleId::Tt => "tt",
            RuleId::Tts => "tts",
            RuleId::Tst => "tst",
            RuleId::Mxp => "mxp",
            RuleId::Nxp => "nxp",
            RuleId::Xxp => "xxp",
        }
    }

    pub fn from_label(s: &str) -> Option<RuleId> {
        ALL_RULES.iter().copied().find(|r| r.label() == s)
    }

    /// `(LHS, RHS)` schema of the rule, in the surface notation.
    pub fn schema(self) -> (&'static str, &'static str) {
        match self {
            RuleId::Sr => ("sigma(rho)", "rho"),
            RuleId::Ss => ("sigma(sigma(r))", "r"),
            RuleId::Tr => ("tau(C[r], C[sigma(r)])", "C[rho]"),
            RuleId::Tsr => ("tau(C[sigma(r)], C[r])", "C[rho]"),
            RuleId::Trr => ("tau(C[r], C[rho])", "C[r]"),
            RuleId::Tlr => ("tau(C[rho], C[r])", "C[r]"),
            RuleId::Slr => ("subl(C[r], C[rho])", "C[r]"),
            RuleId::Srr => ("subr(C[rho], C[r])", "C[r]"),
            RuleId::Sls => ("subl(subl(s, C[r]), C[sigma(r)])", "s"),
            RuleId::Slss => ("subl(subl(s, C[sigma(r)]), C[r])", "s"),
            RuleId::Srs => ("subr(C[s], subr(C[sigma(s)], r))", "r"),
            RuleId::Srrr => ("subr(C[sigma(s)], subr(C[s], r))", "r"),
            RuleId::Mx2l1 => ("mu1(xi1(r))", "r"),
            RuleId::Mx2l2 => ("mu1(xipair(r, s))", "r"),
            RuleId::Mx2r1 => ("mu2(xipair(r, s))", "s"),
            RuleId::Mx2r2 => ("mu2(xi2(s))", "s"),
            RuleId::Mx3l => ("mu3arg(xi1(r), s, u)", "s"),
            RuleId::Mx3r => ("mu3arg(xi2(r), s, u)", "u"),
            RuleId::Mxl => ("nuapp(xiabs(r))", "r"),
            RuleId::Mxr => ("mu2arg(xi2(r), s)", "s"),
            RuleId::Mx => ("xipair(mu1(r), mu2(r))", "r"),
            RuleId::Mxx => ("mu3arg(t, xi1(r), xi2(s))", "t"),
            RuleId::Xmr => ("xiabs(nuapp(r))", "r"),
            RuleId::Mx1r => ("mu2arg(s, xi2(r))", "s"),
            RuleId::Stss => ("sigma(tau(r, s))", "tau(sigma(s), sigma(r))"),
            RuleId::Ssbl => ("sigma(subl(r, s))", "subr(sigma(s), sigma(r))"),
            RuleId::Ssbr => ("sigma(subr(r, s))", "subl(sigma(s), sigma(r))"),
            RuleId::Sx => ("sigma(xi(r))", "xi(sigma(r))"),
            RuleId::Sxss => ("sigma(xipair(s, r))", "xipair(sigma(s), sigma(r))"),
            RuleId::Sm => ("sigma(mu(r))", "mu(sigma(r))"),
            RuleId::Smss => ("sigma(mu2arg(s, r))", "mu2arg(sigma(s), sigma(r))"),
            RuleId::Smsss => ("sigma(mu3arg(r, u, v))", "mu3arg(sigma(r), sigma(u), sigma(v))"),
            RuleId::Tsbll => ("tau(r, subl(rho, s))", "subl(r, s)"),
            RuleId::Tsbrl => ("tau(r, subr(s, rho))", "subl(r, s)"),
            RuleId::Tsblr => ("tau(subl(r, s), t)", "tau(r, subr(s, t))"),
            RuleId::Tsbrr => ("tau(subr(s, t), u)", "subr(s, tau(t, u))"),
            RuleId::Tt => ("tau(tau(t, r), s)", "tau(t, tau(r, s))"),
            RuleId::Tts => ("tau(C[u], tau(C[sigma(u)], v))", "v"),
            RuleId::Tst => ("tau(C[sigma(u)], tau(C[u], v))", "v"),
            RuleId::Mxp => ("mu_f(rho_x)", "rho_f(x)"),
            RuleId::Nxp => ("nu(rho_f)", "rho_f(x)"),
            RuleId::Xxp => ("xi(rho_m)", "rho_lam(x.m)"),
        }
    }
}

/// One catalog entry, as returned by [`rule_catalog`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleEntry {
    pub id: RuleId,
    pub number: u8,
    pub label: &'static str,
    pub lhs: &'static str,
    pub rhs: &'static str,
}

/// The full catalog in rule order.
pub fn rule_catalog() -> Vec<RuleEntry> {
    ALL_RULES
        .iter()
        .map(|&id| {
            let (lhs, rhs) = id.schema();
            RuleEntry { id, number: id.number(), label: id.label(), lhs, rhs }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Context matching
// ---------------------------------------------------------------------------

/// True when the two nodes agree on constructor and non-path payload, so
/// a common context may pass through them.
fn same_shell(a: &Path, b: &Path) -> bool {
    match (a, b) {
        (Path::Sigma(_), Path::Sigma(_))
        | (Path::Tau(_, _), Path::Tau(_, _))
        | (Path::SubL(_, _), Path::SubL(_, _))
        | (Path::SubR(_, _), Path::SubR(_, _)) => true,
        (Path::Mu { fun: f, .. }, Path::Mu { fun: g, .. }) => f == g,
        (Path::Nu { arg: t, .. }, Path::Nu { arg: u, .. }) => alpha_eq(t, u),
        (Path::Xi { binder: x, .. }, Path::Xi { binder: y, .. }) => x == y,
        (
            Path::Opaque { tag: t1, source: s1, target: g1, .. },
            Path::Opaque { tag: t2, source: s2, target: g2, .. },
        ) => t1 == t2 && alpha_eq(s1, s2) && alpha_eq(g1, g2),
        _ => false,
    }
}

/// True when a one-hole context may pass through this node: symmetry and
/// the congruences act pointwise on the hole, so cancellation and unit
/// elimination lift through them. Composition and subterm substitution do
/// not (the other branch contributes to the composite), and neither do
/// the opaque markers (their declared endpoints are independent of the
/// hole, which would make the endpoint check vacuous).
fn context_shell(p: &Path) -> bool {
    matches!(p, Path::Sigma(_) | Path::Mu { .. } | Path::Nu { .. } | Path::Xi { .. })
}

/// The deepest single divergence of two path trees: descends while the
/// shells agree, the shell admits a context, and exactly one child pair
/// differs. Returns the spine to the divergence and the two sub-paths
/// there; `None` when the trees are alpha-equal or the divergence sits at
/// the root (that case is the empty-context candidate).
fn deepest_divergence<'a>(a: &'a Path, b: &'a Path) -> Option<(Vec<usize>, &'a Path, &'a Path)> {
    let mut spine = Vec::new();
    let mut cur_a = a;
    let mut cur_b = b;
    loop {
        let here = |spine: Vec<usize>| {
            if spine.is_empty() {
                None
            } else {
                Some((spine, cur_a, cur_b))
            }
        };
        if !same_shell(cur_a, cur_b) || !context_shell(cur_a) {
            return here(spine);
        }
        let ca = cur_a.children();
        let cb = cur_b.children();
        if ca.len() != cb.len() {
            return here(spine);
        }
        let mut diff = None;
        for (i, (x, y)) in ca.iter().zip(cb.iter()).enumerate() {
            if !x.alpha_eq(y) {
                if diff.is_some() {
                    // more than one differing child: the hole is here
                    return here(spine);
                }
                diff = Some(i);
            }
        }
        // alpha-equal trees have no divergence
        let i = diff?;
        spine.push(i);
        cur_a = ca[i];
        cur_b = cb[i];
    }
}

/// Hole candidates for a context rule over the argument pair `(a, b)`:
/// the empty context first, then the deepest single divergence.
fn hole_candidates<'a>(a: &'a Path, b: &'a Path) -> Vec<(Vec<usize>, &'a Path, &'a Path)> {
    let mut out = vec![(Vec::new(), a, b)];
    if let Some(hit) = deepest_divergence(a, b) {
        out.push(hit);
    }
    out
}

fn is_sigma_of(outer: &Path, inner: &Path) -> bool {
    match outer {
        Path::Sigma(p) => p.alpha_eq(inner),
        _ => false,
    }
}

fn endpoints_preserved(before: &Path, after: &Path) -> bool {
    match (before.endpoints(), after.endpoints()) {
        (Ok((bs, bt)), Ok((as_, at))) => alpha_eq(&bs, &as_) && alpha_eq(&bt, &at),
        _ => false,
    }
}

/// RHS for the inverse-cancellation rules 3 and 4: the first argument
/// with its hole replaced by a reflexivity node. The reflexivity term is
/// not unique for every context shape, so both endpoint terms of the
/// first argument's hole content are tried and the candidate is validated.
fn cancellation_rhs(whole: &Path, first_arg: &Path, spine: &[usize], hole: &Path) -> Option<Path> {
    let (hs, ht) = hole.endpoints().ok()?;
    let mut candidates = vec![hs.clone()];
    if !alpha_eq(&hs, &ht) {
        candidates.push(ht);
    }
    for x in candidates {
        let inner = first_arg.with_replacement(spine, Path::Rho(x))?;
        if endpoints_preserved(whole, &inner) && inner.check_well_formed().is_ok() {
            return Some(inner);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Rule application
// ---------------------------------------------------------------------------

/// Apply `rule` at the root of `p`, returning the rewritten sub-path.
/// `literal39` switches rule 39 to the printed right-hand side with its
/// endpoint check disabled.
pub fn try_apply(rule: RuleId, p: &Path, literal39: bool) -> Option<Path> {
    use OpaqueTag as T;
    match rule {
        // 1. sigma(rho) -> rho
        RuleId::Sr => match p {
            Path::Sigma(inner) => match &**inner {
                Path::Rho(t) => Some(Path::Rho(t.clone())),
                _ => None,
            },
            _ => None,
        },
        // 2. sigma(sigma(r)) -> r
        RuleId::Ss => match p {
            Path::Sigma(inner) => match &**inner {
                Path::Sigma(r) => Some((**r).clone()),
                _ => None,
            },
            _ => None,
        },
        // 3. tau(C[r], C[sigma(r)]) -> C[rho]
        RuleId::Tr => match p {
            Path::Tau(a, b) => hole_candidates(a, b)
                .into_iter()
                .find(|(_, ha, hb)| is_sigma_of(hb, ha))
                .and_then(|(spine, ha, _)| cancellation_rhs(p, a, &spine, ha)),
            _ => None,
        },
        // 4. tau(C[sigma(r)], C[r]) -> C[rho]
        RuleId::Tsr => match p {
            Path::Tau(a, b) => hole_candidates(a, b)
                .into_iter()
                .find(|(_, ha, hb)| is_sigma_of(ha, hb))
                .and_then(|(spine, ha, _)| cancellation_rhs(p, a, &spine, ha)),
            _ => None,
        },
        // 5. tau(C[r], C[rho]) -> C[r]
        RuleId::Trr => match p {
            Path::Tau(a, b) => hole_candidates(a, b)
                .into_iter()
                .find(|(spine, _, hb)| {
                    matches!(hb, Path::Rho(_))
                        && (spine.is_empty() || endpoints_preserved(p, a))
                })
                .map(|_| (**a).clone()),
            _ => None,
        },
        // 6. tau(C[rho], C[r]) -> C[r]
        RuleId::Tlr => match p {
            Path::Tau(a, b) => hole_candidates(a, b)
                .into_iter()
                .find(|(spine, ha, _)| {
                    matches!(ha, Path::Rho(_))
                        && (spine.is_empty() || endpoints_preserved(p, b))
                })
                .map(|_| (**b).clone()),
            _ => None,
        },
        // 7. subl(C[r], C[rho]) -> C[r]
        RuleId::Slr => match p {
            Path::SubL(a, b) => hole_candidates(a, b)
                .into_iter()
                .find(|(spine, _, hb)| {
                    matches!(hb, Path::Rho(_))
                        && (spine.is_empty() || endpoints_preserved(p, a))
                })
                .map(|_| (**a).clone()),
            _ => None,
        },
        // 8. subr(C[rho], C[r]) -> C[r]
        RuleId::Srr => match p {
            Path::SubR(a, b) => hole_candidates(a, b)
                .into_iter()
                .find(|(spine, ha, _)| {
                    matches!(ha, Path::Rho(_))
                        && (spine.is_empty() || endpoints_preserved(p, b))
                })
                .map(|_| (**b).clone()),
            _ => None,
        },
        // 9. subl(subl(s, C[r]), C[sigma(r)]) -> s
        RuleId::Sls => match p {
            Path::SubL(first, b) => match &**first {
                Path::SubL(s, a) => hole_candidates(a, b)
                    .into_iter()
                    .any(|(_, ha, hb)| is_sigma_of(hb, ha))
                    .then(|| (**s).clone())
                    .filter(|rhs| endpoints_preserved(p, rhs)),
                _ => None,
            },
            _ => None,
        },
        // 10. subl(subl(s, C[sigma(r)]), C[r]) -> s
        RuleId::Slss => match p {
            Path::SubL(first, b) => match &**first {
                Path::SubL(s, a) => hole_candidates(a, b)
                    .into_iter()
                    .any(|(_, ha, hb)| is_sigma_of(ha, hb))
                    .then(|| (**s).clone())
                    .filter(|rhs| endpoints_preserved(p, rhs)),
                _ => None,
            },
            _ => None,
        },
        // 11. subr(C[s], subr(C[sigma(s)], r)) -> r
        RuleId::Srs => match p {
            Path::SubR(a, second) => match &**second {
                Path::SubR(b, r) => hole_candidates(a, b)
                    .into_iter()
                    .any(|(_, ha, hb)| is_sigma_of(hb, ha))
                    .then(|| (**r).clone())
                    .filter(|rhs| endpoints_preserved(p, rhs)),
                _ => None,
            },
            _ => None,
        },
        // 12. subr(C[sigma(s)], subr(C[s], r)) -> r
        RuleId::Srrr => match p {
            Path::SubR(a, second) => match &**second {
                Path::SubR(b, r) => hole_candidates(a, b)
                    .into_iter()
                    .any(|(_, ha, hb)| is_sigma_of(ha, hb))
                    .then(|| (**r).clone())
                    .filter(|rhs| endpoints_preserved(p, rhs)),
                _ => None,
            },
            _ => None,
        },
        // 13-24: projection/injection/pairing and function-fragment
        // collapses over the opaque markers.
        RuleId::Mx2l1 => opaque_collapse(p, T::Mu1, T::Xi1, 0),
        RuleId::Mx2l2 => opaque_collapse(p, T::Mu1, T::XiPair, 0),
        RuleId::Mx2r1 => opaque_collapse(p, T::Mu2, T::XiPair, 1),
        RuleId::Mx2r2 => opaque_collapse(p, T::Mu2, T::Xi2, 0),
        RuleId::Mx3l => match p {
            // mu3arg(xi1(r), s, u) -> s
            Path::Opaque { tag: T::Mu3Arg, args, .. } => match &args[0] {
                Path::Opaque { tag: T::Xi1, .. } => {
                    Some(args[1].clone()).filter(|rhs| endpoints_preserved(p, rhs))
                }
                _ => None,
            },
            _ => None,
        },
        RuleId::Mx3r => match p {
            // mu3arg(xi2(r), s, u) -> u
            Path::Opaque { tag: T::Mu3Arg, args, .. } => match &args[0] {
                Path::Opaque { tag: T::Xi2, .. } => {
                    Some(args[2].clone()).filter(|rhs| endpoints_preserved(p, rhs))
                }
                _ => None,
            },
            _ => None,
        },
        RuleId::Mxl => opaque_collapse(p, T::NuApp, T::XiAbs, 0),
        RuleId::Mxr => match p {
            // mu2arg(xi2(r), s) -> s
            Path::Opaque { tag: T::Mu2Arg, args, .. } => match &args[0] {
                Path::Opaque { tag: T::Xi2, .. } => {
                    Some(args[1].clone()).filter(|rhs| endpoints_preserved(p, rhs))
                }
                _ => None,
            },
            _ => None,
        },
        RuleId::Mx => match p {
            // xipair(mu1(r), mu2(r)) -> r
            Path::Opaque { tag: T::XiPair, args, .. } => match (&args[0], &args[1]) {
                (
                    Path::Opaque { tag: T::Mu1, args: a1, .. },
                    Path::Opaque { tag: T::Mu2, args: a2, .. },
                ) if a1[0].alpha_eq(&a2[0]) => {
                    Some(a1[0].clone()).filter(|rhs| endpoints_preserved(p, rhs))
                }
                _ => None,
            },
            _ => None,
        },
        RuleId::Mxx => match p {
            // mu3arg(t, xi1(r), xi2(s)) -> t
            Path::Opaque { tag: T::Mu3Arg, args, .. } => match (&args[1], &args[2]) {
                (Path::Opaque { tag: T::Xi1, .. }, Path::Opaque { tag: T::Xi2, .. }) => {
                    Some(args[0].clone()).filter(|rhs| endpoints_preserved(p, rhs))
                }
                _ => None,
            },
            _ => None,
        },
        RuleId::Xmr => opaque_collapse(p, T::XiAbs, T::NuApp, 0),
        RuleId::Mx1r => match p {
            // mu2arg(s, xi2(r)) -> s
            Path::Opaque { tag: T::Mu2Arg, args, .. } => match &args[1] {
                Path::Opaque { tag: T::Xi2, .. } => {
                    Some(args[0].clone()).filter(|rhs| endpoints_preserved(p, rhs))
                }
                _ => None,
            },
            _ => None,
        },
        // 25. sigma(tau(r, s)) -> tau(sigma(s), sigma(r))
        RuleId::Stss => match p {
            Path::Sigma(inner) => match &**inner {
                Path::Tau(r, s) => {
                    Some(Path::tau(Path::sigma((**s).clone()), Path::sigma((**r).clone())))
                }
                _ => None,
            },
            _ => None,
        },
        // 26. sigma(subl(r, s)) -> subr(sigma(s), sigma(r))
        RuleId::Ssbl => match p {
            Path::Sigma(inner) => match &**inner {
                Path::SubL(r, s) => {
                    Some(Path::sub_r(Path::sigma((**s).clone()), Path::sigma((**r).clone())))
                        .filter(|rhs| endpoints_preserved(p, rhs))
                }
                _ => None,
            },
            _ => None,
        },
        // 27. sigma(subr(r, s)) -> subl(sigma(s), sigma(r))
        RuleId::Ssbr => match p {
            Path::Sigma(inner) => match &**inner {
                Path::SubR(r, s) => {
                    Some(Path::sub_l(Path::sigma((**s).clone()), Path::sigma((**r).clone())))
                        .filter(|rhs| endpoints_preserved(p, rhs))
                }
                _ => None,
            },
            _ => None,
        },
        // 28. sigma(xi(r)) -> xi(sigma(r))
        RuleId::Sx => match p {
            Path::Sigma(inner) => match &**inner {
                Path::Xi { binder, inner: r } => {
                    Some(Path::xi(binder.clone(), Path::sigma((**r).clone())))
                }
                _ => None,
            },
            _ => None,
        },
        // 29. sigma(xipair(s, r)) -> xipair(sigma(s), sigma(r))
        RuleId::Sxss => sigma_over_opaque(p, T::XiPair),
        // 30. sigma(mu(r)) -> mu(sigma(r))
        RuleId::Sm => match p {
            Path::Sigma(inner) => match &**inner {
                Path::Mu { fun, inner: r } => Some(Path::Mu {
                    fun: fun.clone(),
                    inner: Box::new(Path::sigma((**r).clone())),
                }),
                _ => None,
            },
            _ => None,
        },
        // 31. sigma(mu2arg(s, r)) -> mu2arg(sigma(s), sigma(r))
        RuleId::Smss => sigma_over_opaque(p, T::Mu2Arg),
        // 32. sigma(mu3arg(r, u, v)) -> mu3arg(sigma(r), sigma(u), sigma(v))
        RuleId::Smsss => sigma_over_opaque(p, T::Mu3Arg),
        // 33. tau(r, subl(rho, s)) -> subl(r, s)
        RuleId::Tsbll => match p {
            Path::Tau(r, second) => match &**second {
                Path::SubL(inner_rho, s) => match &**inner_rho {
                    Path::Rho(_) => Some(Path::sub_l((**r).clone(), (**s).clone()))
                        .filter(|rhs| endpoints_preserved(p, rhs)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        },
        // 34. tau(r, subr(s, rho)) -> subl(r, s)
        RuleId::Tsbrl => match p {
            Path::Tau(r, second) => match &**second {
                Path::SubR(s, inner_rho) => match &**inner_rho {
                    Path::Rho(_) => Some(Path::sub_l((**r).clone(), (**s).clone()))
                        .filter(|rhs| endpoints_preserved(p, rhs)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        },
        // 35. tau(subl(r, s), t) -> tau(r, subr(s, t))
        RuleId::Tsblr => match p {
            Path::Tau(first, t) => match &**first {
                Path::SubL(r, s) => {
                    let rhs = Path::tau(
                        (**r).clone(),
                        Path::sub_r((**s).clone(), (**t).clone()),
                    );
                    (endpoints_preserved(p, &rhs) && rhs.check_well_formed().is_ok())
                        .then_some(rhs)
                }
                _ => None,
            },
            _ => None,
        },
        // 36. tau(subr(s, t), u) -> subr(s, tau(t, u))
        RuleId::Tsbrr => match p {
            Path::Tau(first, u) => match &**first {
                Path::SubR(s, t) => Some(Path::sub_r(
                    (**s).clone(),
                    Path::tau((**t).clone(), (**u).clone()),
                )),
                _ => None,
            },
            _ => None,
        },
        // 37. tau(tau(t, r), s) -> tau(t, tau(r, s))
        RuleId::Tt => match p {
            Path::Tau(first, s) => match &**first {
                Path::Tau(t, r) => {
                    Some(Path::tau((**t).clone(), Path::tau((**r).clone(), (**s).clone())))
                }
                _ => None,
            },
            _ => None,
        },
        // 38. tau(C[u], tau(C[sigma(u)], v)) -> v
        RuleId::Tts => match p {
            Path::Tau(a, second) => match &**second {
                Path::Tau(b, v) => hole_candidates(a, b)
                    .into_iter()
                    .find(|(spine, ha, hb)| {
                        is_sigma_of(hb, ha)
                            && (spine.is_empty() || endpoints_preserved(p, v))
                    })
                    .map(|_| (**v).clone()),
                _ => None,
            },
            _ => None,
        },
        // 39. tau(C[sigma(u)], tau(C[u], v)): endpoint-correct reading
        // yields v; the literal printed reading yields the matched u.
        RuleId::Tst => match p {
            Path::Tau(a, second) => match &**second {
                Path::Tau(b, v) => {
                    hole_candidates(a, b).into_iter().find_map(|(spine, ha, hb)| {
                        if !is_sigma_of(ha, hb) {
                            return None;
                        }
                        if literal39 {
                            return Some(hb.clone());
                        }
                        (spine.is_empty() || endpoints_preserved(p, v))
                            .then(|| (**v).clone())
                    })
                }
                _ => None,
            },
            _ => None,
        },
        // 40. mu(rho_x) -> rho_{f(x)}
        RuleId::Mxp => match p {
            Path::Mu { fun, inner } => match &**inner {
                Path::Rho(x) => Some(Path::Rho(fun.image(x))),
                _ => None,
            },
            _ => None,
        },
        // 41. nu(rho_f) -> rho_{f(x)}
        RuleId::Nxp => match p {
            Path::Nu { inner, arg } => match &**inner {
                Path::Rho(f) => Some(Path::Rho(Term::app(f.clone(), arg.clone()))),
                _ => None,
            },
            _ => None,
        },
        // 42. xi(rho) -> rho
        RuleId::Xxp => match p {
            Path::Xi { binder, inner } => match &**inner {
                Path::Rho(m) => {
                    Some(Path::Rho(Term::Lam(binder.clone(), Box::new(m.clone()))))
                }
                _ => None,
            },
            _ => None,
        },
    }
}

/// `outer(inner(r)) -> r` over opaque markers, with endpoint check.
fn opaque_collapse(p: &Path, outer: OpaqueTag, inner: OpaqueTag, pick: usize) -> Option<Path> {
    match p {
        Path::Opaque { tag, args, .. } if *tag == outer => match &args[0] {
            Path::Opaque { tag: t2, args: inner_args, .. } if *t2 == inner => {
                Some(inner_args[pick].clone()).filter(|rhs| endpoints_preserved(p, rhs))
            }
            _ => None,
        },
        _ => None,
    }
}

/// `sigma(opaque(args.., S, T)) -> opaque(sigma(args).., T, S)`.
fn sigma_over_opaque(p: &Path, tag: OpaqueTag) -> Option<Path> {
    match p {
        Path::Sigma(inner) => match &**inner {
            Path::Opaque { tag: t, args, source, target } if *t == tag => Some(Path::Opaque {
                tag,
                args: args.iter().cloned().map(Path::sigma).collect(),
                source: target.clone(),
                target: source.clone(),
            }),
            _ => None,
        },
        _ => None,
    }
}
