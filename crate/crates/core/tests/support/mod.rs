//! Seeded generators for the test corpora: random terms, well-formed
//! paths with coherent junctions, reflexivity-generated paths, paths
//! between equal numerals, and loop words at the circle's base point.

#![allow(dead_code)]

use cpath_core::{OpaqueTag, Path, RedexKind, Term};
use rand::rngs::StdRng;
use rand::Rng;

const VARS: [&str; 5] = ["a", "b", "f", "g", "h"];

pub fn gen_term(rng: &mut StdRng, depth: usize) -> Term {
    if depth == 0 || rng.random_range(0..4) == 0 {
        return match rng.random_range(0..4) {
            0 => Term::var(VARS[rng.random_range(0..VARS.len())]),
            1 => Term::numeral(rng.random_range(0..4)),
            2 => Term::Star,
            _ => Term::Base,
        };
    }
    match rng.random_range(0..3) {
        0 => Term::lam(VARS[rng.random_range(0..VARS.len())], gen_term(rng, depth - 1)),
        1 => Term::app(gen_term(rng, depth - 1), gen_term(rng, depth - 1)),
        _ => Term::succ(gen_term(rng, depth - 1)),
    }
}

/// A term guaranteed to contain a redex, with its location and kind.
fn gen_redex_term(rng: &mut StdRng) -> (Term, Vec<usize>, RedexKind) {
    let x = VARS[rng.random_range(0..VARS.len())];
    let (redex, kind) = if rng.random_bool(0.5) {
        let body = if rng.random_bool(0.5) { Term::var(x) } else { gen_term(rng, 1) };
        (Term::app(Term::lam(x, body), gen_term(rng, 1)), RedexKind::Beta)
    } else {
        // lam x. m x with x not free in m
        let m = match rng.random_range(0..3) {
            0 => Term::var(VARS[(VARS.iter().position(|v| *v == x).unwrap() + 1) % VARS.len()]),
            1 => Term::lam("k", Term::var("k")),
            _ => Term::Base,
        };
        (Term::lam(x, Term::app(m, Term::var(x))), RedexKind::Eta)
    };
    // occasionally bury the redex one level down
    match rng.random_range(0..3) {
        0 => (Term::succ(redex), vec![0], kind),
        1 => (Term::lam("q", redex), vec![0], kind),
        _ => (redex, Vec::new(), kind),
    }
}

/// Grammar switches for the path generators.
#[derive(Clone, Copy)]
pub struct GenOptions {
    /// Include subterm-substitution nodes. The printed catalog is not
    /// locally confluent where substitutions mix freely with composition
    /// units (see the strategy-dependence tests), and none of the
    /// derivation-style constructions produce them, so the confluence
    /// corpus runs on the fragment without them.
    pub subs: bool,
}

impl GenOptions {
    pub fn full() -> GenOptions {
        GenOptions { subs: true }
    }

    pub fn derivation_fragment() -> GenOptions {
        GenOptions { subs: false }
    }
}

/// A well-formed path with arbitrary endpoints, at most `budget` nodes.
pub fn gen_path(rng: &mut StdRng, budget: usize) -> Path {
    gen_path_opts(rng, budget, GenOptions::full())
}

pub fn gen_path_opts(rng: &mut StdRng, budget: usize, opts: GenOptions) -> Path {
    if budget > 2 && rng.random_range(0..4) == 0 {
        // constructors with no junction constraint
        return match rng.random_range(0..5) {
            0 if opts.subs => {
                let split = rng.random_range(1..budget - 1);
                Path::sub_r(
                    gen_path_opts(rng, split, opts),
                    gen_path_opts(rng, budget - 1 - split, opts),
                )
            }
            0 | 1 => Path::mu(gen_term(rng, 1), gen_path_opts(rng, budget - 1, opts)),
            2 => Path::nu(gen_path_opts(rng, budget - 1, opts), gen_term(rng, 1)),
            3 => Path::xi("m", gen_path_opts(rng, budget - 1, opts)),
            _ => {
                let (term, loc, kind) = gen_redex_term(rng);
                match kind {
                    RedexKind::Beta => Path::beta(term, loc.into()).unwrap(),
                    RedexKind::Eta => Path::eta(term, loc.into()).unwrap(),
                }
            }
        };
    }
    let t = gen_term(rng, 2);
    gen_path_from_opts(rng, &t, budget, opts)
}

/// A well-formed path whose source is exactly `t`.
pub fn gen_path_from(rng: &mut StdRng, t: &Term, budget: usize) -> Path {
    gen_path_from_opts(rng, t, budget, GenOptions::full())
}

fn gen_path_from_opts(rng: &mut StdRng, t: &Term, budget: usize, opts: GenOptions) -> Path {
    if budget <= 1 {
        return leaf_from(rng, t);
    }
    let choice = if budget >= 3 { rng.random_range(0..10) } else { rng.random_range(0..3) };
    match choice {
        0 | 1 => leaf_from(rng, t),
        2 => Path::sigma(gen_path_to_opts(rng, t, budget - 1, opts)),
        3 | 4 => {
            let split = rng.random_range(1..budget - 1);
            let p = gen_path_from_opts(rng, t, split, opts);
            let q = gen_path_from_opts(rng, &p.target(), budget - 1 - split, opts);
            Path::tau(p, q)
        }
        5 => match t {
            Term::App(f, a) => {
                if rng.random_bool(0.5) {
                    Path::mu((**f).clone(), gen_path_from_opts(rng, a, budget - 1, opts))
                } else {
                    Path::nu(gen_path_from_opts(rng, f, budget - 1, opts), (**a).clone())
                }
            }
            Term::Succ(u) => Path::mu_succ(gen_path_from_opts(rng, u, budget - 1, opts)),
            Term::Lam(x, b) => Path::xi(x.clone(), gen_path_from_opts(rng, b, budget - 1, opts)),
            _ => leaf_from(rng, t),
        },
        6 if opts.subs => {
            let split = rng.random_range(1..budget - 1);
            Path::sub_l(
                gen_path_from_opts(rng, t, split, opts),
                gen_path_opts(rng, budget - 1 - split, opts),
            )
        }
        6 => leaf_from(rng, t),
        7 => {
            let tag = [OpaqueTag::Mu1, OpaqueTag::Mu2, OpaqueTag::Xi1, OpaqueTag::Xi2,
                       OpaqueTag::NuApp, OpaqueTag::XiAbs][rng.random_range(0..6)];
            Path::opaque_inherit(tag, vec![gen_path_from_opts(rng, t, budget - 1, opts)])
        }
        8 => {
            let split = rng.random_range(1..budget - 1);
            let tag = if rng.random_bool(0.5) { OpaqueTag::Mu2Arg } else { OpaqueTag::XiPair };
            Path::opaque_inherit(
                tag,
                vec![
                    gen_path_from_opts(rng, t, split, opts),
                    gen_path_opts(rng, budget - 1 - split, opts),
                ],
            )
        }
        _ => leaf_from(rng, t),
    }
}

fn leaf_from(rng: &mut StdRng, t: &Term) -> Path {
    let redexes = cpath_core::find_redexes(t);
    if !redexes.is_empty() && rng.random_bool(0.4) {
        let (loc, kind) = redexes[rng.random_range(0..redexes.len())].clone();
        return match kind {
            RedexKind::Beta => Path::beta(t.clone(), loc).unwrap(),
            RedexKind::Eta => Path::eta(t.clone(), loc).unwrap(),
        };
    }
    if matches!(t, Term::Base) && rng.random_bool(0.5) {
        return Path::Loop;
    }
    Path::Rho(t.clone())
}

/// A well-formed path whose target is exactly `t`.
pub fn gen_path_to(rng: &mut StdRng, t: &Term, budget: usize) -> Path {
    gen_path_to_opts(rng, t, budget, GenOptions::full())
}

fn gen_path_to_opts(rng: &mut StdRng, t: &Term, budget: usize, opts: GenOptions) -> Path {
    if budget <= 1 {
        return Path::Rho(t.clone());
    }
    let choice = if budget >= 3 { rng.random_range(0..5) } else { rng.random_range(0..2) };
    match choice {
        0 => Path::Rho(t.clone()),
        1 => Path::sigma(gen_path_from_opts(rng, t, budget - 1, opts)),
        2 => {
            let split = rng.random_range(1..budget - 1);
            let q = gen_path_to_opts(rng, t, split, opts);
            let p = gen_path_to_opts(rng, &q.source(), budget - 1 - split, opts);
            Path::tau(p, q)
        }
        3 => match t {
            Term::App(f, a) => {
                if rng.random_bool(0.5) {
                    Path::mu((**f).clone(), gen_path_to_opts(rng, a, budget - 1, opts))
                } else {
                    Path::nu(gen_path_to_opts(rng, f, budget - 1, opts), (**a).clone())
                }
            }
            Term::Succ(u) => Path::mu_succ(gen_path_to_opts(rng, u, budget - 1, opts)),
            Term::Lam(x, b) => Path::xi(x.clone(), gen_path_to_opts(rng, b, budget - 1, opts)),
            _ => Path::Rho(t.clone()),
        },
        4 if opts.subs => {
            let split = rng.random_range(1..budget - 1);
            Path::sub_r(
                gen_path_opts(rng, split, opts),
                gen_path_to_opts(rng, t, budget - 1 - split, opts),
            )
        }
        _ => Path::Rho(t.clone()),
    }
}

/// A term for the reflexivity-generated grammar: a numeral wrapped in a
/// few application/abstraction/successor layers.
fn gen_wrapped_numeral(rng: &mut StdRng, max_num: u64, wraps: usize) -> Term {
    let mut t = Term::numeral(rng.random_range(0..=max_num));
    for _ in 0..wraps {
        t = match rng.random_range(0..4) {
            0 => Term::app(Term::var(VARS[rng.random_range(0..VARS.len())]), t),
            1 => Term::lam(VARS[rng.random_range(0..VARS.len())], t),
            2 => Term::succ(t),
            _ => Term::app(t, Term::numeral(rng.random_range(0..=max_num))),
        };
    }
    t
}

/// A path generated from reflexivity atoms under symmetry, transitivity,
/// and the congruences, with both endpoints equal to `t`.
pub fn gen_rho_generated_at(rng: &mut StdRng, t: &Term, depth: usize) -> Path {
    if depth == 0 || rng.random_range(0..4) == 0 {
        return Path::Rho(t.clone());
    }
    match rng.random_range(0..6) {
        0 => Path::sigma(gen_rho_generated_at(rng, t, depth - 1)),
        1 | 2 => Path::tau(
            gen_rho_generated_at(rng, t, depth - 1),
            gen_rho_generated_at(rng, t, depth - 1),
        ),
        _ => match t {
            Term::App(f, a) => {
                if rng.random_bool(0.5) {
                    Path::mu((**f).clone(), gen_rho_generated_at(rng, a, depth - 1))
                } else {
                    Path::nu(gen_rho_generated_at(rng, f, depth - 1), (**a).clone())
                }
            }
            Term::Succ(u) => Path::mu_succ(gen_rho_generated_at(rng, u, depth - 1)),
            Term::Lam(x, b) => Path::xi(x.clone(), gen_rho_generated_at(rng, b, depth - 1)),
            _ => Path::Rho(t.clone()),
        },
    }
}

/// A reflexivity-generated path over numerals up to `max_num`.
pub fn gen_rho_generated(rng: &mut StdRng, depth: usize, max_num: u64) -> Path {
    let wraps = rng.random_range(0..4);
    let t = gen_wrapped_numeral(rng, max_num, wraps);
    gen_rho_generated_at(rng, &t, depth)
}

/// A path from the numeral `m` to itself, built from reflexivity atoms
/// under symmetry, transitivity, and the successor congruence.
pub fn gen_nat_path(rng: &mut StdRng, m: u64, depth: usize) -> Path {
    if depth == 0 {
        return Path::Rho(Term::numeral(m));
    }
    match rng.random_range(0..5) {
        0 => Path::Rho(Term::numeral(m)),
        1 => Path::sigma(gen_nat_path(rng, m, depth - 1)),
        2 | 3 if m > 0 => Path::mu_succ(gen_nat_path(rng, m - 1, depth - 1)),
        _ => Path::tau(gen_nat_path(rng, m, depth - 1), gen_nat_path(rng, m, depth - 1)),
    }
}

/// A loop word at the base point with at most `letters` generator
/// occurrences.
pub fn gen_loop_word(rng: &mut StdRng, letters: usize) -> Path {
    if letters <= 1 {
        return match rng.random_range(0..4) {
            0 => Path::Rho(Term::Base),
            1 => Path::sigma(Path::Loop),
            2 => Path::sigma(Path::Rho(Term::Base)),
            _ => Path::Loop,
        };
    }
    match rng.random_range(0..4) {
        0 => Path::sigma(gen_loop_word(rng, letters)),
        _ => {
            let split = rng.random_range(1..letters);
            Path::tau(gen_loop_word(rng, split), gen_loop_word(rng, letters - split))
        }
    }
}

/// Signed generator count: the independent winding oracle. Each loop
/// letter counts +1, each under an odd number of symmetries -1.
pub fn signed_count(p: &Path) -> i64 {
    fn go(p: &Path, flipped: bool) -> i64 {
        match p {
            Path::Loop => {
                if flipped {
                    -1
                } else {
                    1
                }
            }
            Path::Rho(_) => 0,
            Path::Sigma(inner) => go(inner, !flipped),
            Path::Tau(a, b) => go(a, flipped) + go(b, flipped),
            other => panic!("not a loop word: {other}"),
        }
    }
    go(p, false)
}

/// Size guard used by the corpus generators.
pub fn assert_size_at_most(p: &Path, max: usize) {
    assert!(p.size() <= max, "generated path of size {} exceeds {max}", p.size());
}
