//! The circle and its fundamental group.
//!
//! Loops at the base point are paths freely generated from the `loop`
//! constructor and reflexivity under symmetry and transitivity. Every
//! such loop is rw-equal to a canonical power of the generator; the
//! exponent is the winding number, and the group of loops under
//! composition is isomorphic to the integers.

use std::fmt;

use thiserror::Error;

use crate::engine::{normal_form, EngineConfig, NormalizeError};
use crate::path::Path;
use crate::term::Term;

/// A loop expression: a path whose atoms are only the loop generator and
/// reflexivity at the base point, closed under symmetry and transitivity.
/// Every endpoint is the base point.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopExpr(Path);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircleError {
    #[error("loop expressions admit only loop, (rho base), sigma, and tau; found {0}")]
    ForbiddenConstructor(String),
    #[error("junction mismatch inside loop expression")]
    Incoherent,
    #[error("not a canonical loop power: {0}")]
    NotCanonical(String),
}

fn check_loop_shape(p: &Path) -> Result<(), CircleError> {
    match p {
        Path::Loop => Ok(()),
        Path::Rho(Term::Base) => Ok(()),
        Path::Sigma(inner) => check_loop_shape(inner),
        Path::Tau(a, b) => {
            check_loop_shape(a)?;
            check_loop_shape(b)
        }
        other => Err(CircleError::ForbiddenConstructor(other.to_string())),
    }
}

impl LoopExpr {
    /// Admit a path into the loop fragment. Congruence atoms are
    /// rejected; only the free fragment over the generator is allowed.
    pub fn new(p: Path) -> Result<LoopExpr, CircleError> {
        check_loop_shape(&p)?;
        if p.check_well_formed().is_err() {
            return Err(CircleError::Incoherent);
        }
        Ok(LoopExpr(p))
    }

    pub fn path(&self) -> &Path {
        &self.0
    }

    pub fn into_path(self) -> Path {
        self.0
    }
}

impl fmt::Display for LoopExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The canonical exponent of a loop class: `loop^0` is reflexivity,
/// positive powers compose the generator, negative powers its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Winding(pub i64);

impl fmt::Display for Winding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The canonical path `loop^n`: reflexivity at zero, otherwise one
/// generator (or inverse generator) composed onto the smaller power.
pub fn to_path(n: i64) -> LoopExpr {
    let letter = || {
        if n > 0 {
            Path::Loop
        } else {
            Path::sigma(Path::Loop)
        }
    };
    let mut p = Path::Rho(Term::Base);
    for _ in 0..n.unsigned_abs() {
        p = Path::tau(letter(), p);
    }
    LoopExpr(p)
}

/// Read the exponent off a canonical loop power, by the three-case
/// peel: reflexivity is zero, a positive power is the successor of its
/// predecessor power, a negative power the predecessor. Both the
/// engine's normal forms and the [`to_path`] shapes (with trailing
/// reflexivity) are canonical; anything else is an error.
pub fn to_integer(w: &LoopExpr) -> Result<i64, CircleError> {
    fn letter(p: &Path) -> Option<i64> {
        match p {
            Path::Loop => Some(1),
            Path::Sigma(inner) => matches!(**inner, Path::Loop).then_some(-1),
            _ => None,
        }
    }
    fn peel(p: &Path, expect: i64) -> Result<i64, CircleError> {
        match p {
            Path::Rho(Term::Base) => Ok(0),
            Path::Tau(head, rest) => {
                let sign =
                    letter(head).ok_or_else(|| CircleError::NotCanonical(p.to_string()))?;
                if expect != 0 && sign != expect {
                    return Err(CircleError::NotCanonical(p.to_string()));
                }
                Ok(sign + peel(rest, sign)?)
            }
            other => {
                let sign =
                    letter(other).ok_or_else(|| CircleError::NotCanonical(other.to_string()))?;
                if expect != 0 && sign != expect {
                    return Err(CircleError::NotCanonical(other.to_string()));
                }
                Ok(sign)
            }
        }
    }
    peel(&w.0, 0)
}

/// Winding number via the rewrite engine: normalize, then read the
/// exponent off the canonical normal form.
pub fn circle_normalize(w: &LoopExpr, cfg: &EngineConfig) -> Result<Winding, NormalizeError> {
    let nf = normal_form(&w.0, cfg)?;
    let n = to_integer(&LoopExpr(nf.clone())).unwrap_or_else(|_| {
        panic!("normal form of a loop expression is a canonical power, got {nf}")
    });
    Ok(Winding(n))
}

/// Winding number by the inductive argument, independently of the
/// rewrite engine: flatten the expression into generator letters
/// (symmetry distributing over composition and cancelling in pairs) and
/// fold them onto the power one letter at a time.
pub fn winding_by_letters(w: &LoopExpr) -> Winding {
    fn flatten(p: &Path, flipped: bool, out: &mut Vec<i64>) {
        match p {
            Path::Loop => out.push(if flipped { -1 } else { 1 }),
            Path::Rho(_) => {}
            Path::Sigma(inner) => flatten(inner, !flipped, out),
            Path::Tau(a, b) => {
                flatten(a, flipped, out);
                flatten(b, flipped, out);
            }
            _ => unreachable!("loop expressions contain no other constructors"),
        }
    }
    let mut letters = Vec::new();
    flatten(&w.0, false, &mut letters);
    // compose letter by letter: the power goes up with the generator and
    // down with its inverse
    let mut n = 0i64;
    for letter in letters {
        n += letter;
    }
    Winding(n)
}

/// Group operation: composition in application order, `tau(s, r)`.
pub fn group_op(r: &LoopExpr, s: &LoopExpr) -> LoopExpr {
    LoopExpr(Path::tau(s.0.clone(), r.0.clone()))
}

/// Group inverse: symmetry.
pub fn group_inverse(r: &LoopExpr) -> LoopExpr {
    LoopExpr(Path::sigma(r.0.clone()))
}

/// Group identity: reflexivity at the base point.
pub fn group_identity() -> LoopExpr {
    LoopExpr(Path::Rho(Term::Base))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{normalize, rw_equal};

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    fn le(p: Path) -> LoopExpr {
        LoopExpr::new(p).unwrap()
    }

    #[test]
    fn loop_expr_boundary() {
        assert!(LoopExpr::new(Path::Loop).is_ok());
        assert!(LoopExpr::new(Path::tau(Path::Loop, Path::sigma(Path::Loop))).is_ok());
        // congruence atoms are rejected
        assert!(matches!(
            LoopExpr::new(Path::mu(Term::var("f"), Path::Loop)),
            Err(CircleError::ForbiddenConstructor(_))
        ));
        // reflexivity away from base is rejected
        assert!(LoopExpr::new(Path::Rho(Term::Zero)).is_err());
    }

    #[test]
    fn winding_examples() {
        assert_eq!(circle_normalize(&group_identity(), &cfg()).unwrap(), Winding(0));
        assert_eq!(
            circle_normalize(&le(Path::tau(Path::sigma(Path::Loop), Path::Loop)), &cfg()).unwrap(),
            Winding(0)
        );
        assert_eq!(
            circle_normalize(&le(Path::tau(Path::Loop, Path::Loop)), &cfg()).unwrap(),
            Winding(2)
        );
        assert_eq!(
            circle_normalize(&le(Path::sigma(Path::tau(Path::Loop, Path::Loop))), &cfg()).unwrap(),
            Winding(-2)
        );
    }

    #[test]
    fn to_path_shapes() {
        assert_eq!(to_path(0).0, Path::Rho(Term::Base));
        assert_eq!(
            to_path(2).0,
            Path::tau(Path::Loop, Path::tau(Path::Loop, Path::Rho(Term::Base)))
        );
        assert_eq!(
            to_path(-1).0,
            Path::tau(Path::sigma(Path::Loop), Path::Rho(Term::Base))
        );
    }

    #[test]
    fn to_integer_peels_canonical_powers() {
        assert_eq!(to_integer(&group_identity()).unwrap(), 0);
        assert_eq!(to_integer(&le(Path::Loop)).unwrap(), 1);
        assert_eq!(to_integer(&le(Path::sigma(Path::Loop))).unwrap(), -1);
        assert_eq!(to_integer(&to_path(2)).unwrap(), 2);
        assert_eq!(to_integer(&to_path(-2)).unwrap(), -2);
        // engine normal form shape, without the trailing reflexivity
        assert_eq!(to_integer(&le(Path::tau(Path::Loop, Path::Loop))).unwrap(), 2);
    }

    #[test]
    fn to_integer_rejects_mixed_words() {
        let mixed = le(Path::tau(Path::Loop, Path::sigma(Path::Loop)));
        assert!(matches!(to_integer(&mixed), Err(CircleError::NotCanonical(_))));
        let nested = le(Path::sigma(Path::tau(Path::Loop, Path::Loop)));
        assert!(to_integer(&nested).is_err());
    }

    #[test]
    fn to_integer_to_path_roundtrip() {
        for n in -100..=100 {
            assert_eq!(to_integer(&to_path(n)).unwrap(), n);
        }
    }

    #[test]
    fn group_identity_laws() {
        let c = cfg();
        let r = le(Path::tau(Path::Loop, Path::Loop));
        // r . rho = tau(rho, r) collapses by unit elimination
        let right = group_op(&r, &group_identity());
        assert!(rw_equal(right.path(), r.path(), &c).unwrap());
        // rho . r = tau(r, rho) likewise
        let left = group_op(&group_identity(), &r);
        assert!(rw_equal(left.path(), r.path(), &c).unwrap());
    }

    #[test]
    fn group_inverse_law() {
        let c = cfg();
        let r = le(Path::tau(Path::Loop, Path::tau(Path::Loop, Path::sigma(Path::Loop))));
        let id = group_identity();
        assert!(rw_equal(group_op(&r, &group_inverse(&r)).path(), id.path(), &c).unwrap());
        assert!(rw_equal(group_op(&group_inverse(&r), &r).path(), id.path(), &c).unwrap());
    }

    #[test]
    fn group_associativity_up_to_rw() {
        let c = cfg();
        let r = le(Path::Loop);
        let s = le(Path::sigma(Path::Loop));
        let t = le(Path::tau(Path::Loop, Path::Loop));
        let lhs = group_op(&r, &group_op(&s, &t));
        let rhs = group_op(&group_op(&r, &s), &t);
        assert!(rw_equal(lhs.path(), rhs.path(), &c).unwrap());
    }

    #[test]
    fn power_base_cases_fire_unit_elimination() {
        let c = cfg();
        // rho . loop = tau(loop, rho) -> loop by unit elimination
        let p = group_op(&group_identity(), &le(Path::Loop));
        let (nf, trace) = normalize(p.path(), &c).unwrap();
        assert_eq!(nf, Path::Loop);
        assert_eq!(trace.steps[0].rule.label(), "trr");
        // rho . sigma(loop) = tau(sigma loop, rho) -> sigma(loop)
        let p = group_op(&group_identity(), &le(Path::sigma(Path::Loop)));
        let (nf, trace) = normalize(p.path(), &c).unwrap();
        assert_eq!(nf, Path::sigma(Path::Loop));
        assert_eq!(trace.steps[0].rule.label(), "trr");
    }

    #[test]
    fn power_induction_steps() {
        let c = cfg();
        for n in -3..=3i64 {
            // loop^n . loop winds to n + 1
            let up = group_op(&to_path(n), &le(Path::Loop));
            assert_eq!(circle_normalize(&up, &c).unwrap(), Winding(n + 1));
            // loop^n . sigma(loop) winds to n - 1
            let down = group_op(&to_path(n), &le(Path::sigma(Path::Loop)));
            assert_eq!(circle_normalize(&down, &c).unwrap(), Winding(n - 1));
        }
    }

    #[test]
    fn engine_and_inductive_winding_agree() {
        let c = cfg();
        let words = vec![
            Path::Rho(Term::Base),
            Path::Loop,
            Path::sigma(Path::sigma(Path::Loop)),
            Path::tau(
                Path::sigma(Path::tau(Path::Loop, Path::sigma(Path::Loop))),
                Path::tau(Path::Loop, Path::tau(Path::Loop, Path::sigma(Path::Loop))),
            ),
        ];
        for p in words {
            let w = le(p);
            assert_eq!(circle_normalize(&w, &c).unwrap(), winding_by_letters(&w));
        }
    }

    #[test]
    fn winding_is_a_homomorphism() {
        let c = cfg();
        let a = le(Path::tau(Path::Loop, Path::Loop));
        let b = le(Path::tau(Path::sigma(Path::Loop), Path::tau(Path::Loop, Path::Loop)));
        let wa = circle_normalize(&a, &c).unwrap().0;
        let wb = circle_normalize(&b, &c).unwrap().0;
        let wab = circle_normalize(&group_op(&a, &b), &c).unwrap().0;
        assert_eq!(wab, wa + wb);
        assert_eq!(wab, 2 + 1);
        // loop^2 . loop^3 winds to 5
        assert_eq!(
            circle_normalize(&group_op(&to_path(2), &to_path(3)), &c).unwrap(),
            Winding(5)
        );
    }

    #[test]
    fn canonical_power_is_rw_equal_to_the_word() {
        let c = cfg();
        let words = vec![
            Path::tau(Path::Loop, Path::tau(Path::sigma(Path::Loop), Path::Loop)),
            Path::sigma(Path::tau(Path::Loop, Path::tau(Path::Loop, Path::Loop))),
            Path::tau(Path::Rho(Term::Base), Path::sigma(Path::Loop)),
        ];
        for w in words {
            let expr = le(w);
            let n = circle_normalize(&expr, &c).unwrap().0;
            assert!(rw_equal(to_path(n).path(), expr.path(), &c).unwrap());
        }
    }
}
