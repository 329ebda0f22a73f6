//! Quantum Minkowski coordinates realized inside a localized matrix quantum
//! group. The coordinate generators obey the shipped `minkowski_x` rules;
//! here they are produced concretely as scaled entries of a 2x2 quantum
//! matrix with an inverted determinant, which is what makes the quadratic
//! interval element invertible later on.

pub mod calculus;
pub mod harmonic;

use crate::rewrite::json::minkowski_x_algebra;
use crate::rewrite::{Algebra, Generator, NcPoly, Rule, RewriteSystem, Word};
use crate::scalar::{parse_scalar, ExactScalar};
use std::sync::OnceLock;

fn sc(text: &str) -> ExactScalar {
    parse_scalar(text).unwrap()
}

fn rule(
    sys_gens: &[&str],
    lhs: &[&str],
    rhs: &[(&str, &[&str])],
) -> Rule {
    let id = |n: &str| sys_gens.iter().position(|g| *g == n).unwrap() as u8;
    Rule {
        lhs: Word::from_letters(lhs.iter().map(|n| id(n)).collect::<Vec<_>>().as_slice()),
        rhs: rhs
            .iter()
            .map(|(c, w)| {
                (
                    sc(c),
                    Word::from_letters(w.iter().map(|n| id(n)).collect::<Vec<_>>().as_slice()),
                )
            })
            .collect(),
    }
}

/// The matrix quantum group on generators a, b, c, d extended by a central
/// inverted determinant pair (det, deti) and a scaling pair (zeta, zetai).
/// Every left-hand side is quadratic and the system is confluent; normal
/// words look like zeta^i (or zetai^i) deti^e (or det^e) b^j c^k a^l (or
/// d^m).
pub fn extension_algebra() -> Algebra {
    static CACHE: OnceLock<Algebra> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            let names = [
                "zeta", "zetai", "deti", "det", "b", "c", "a", "d",
            ];
            let gens = names
                .iter()
                .map(|n| {
                    let grading = match *n {
                        "zeta" => vec![1, 0],
                        "zetai" => vec![-1, 0],
                        "deti" => vec![0, -2],
                        "det" => vec![0, 2],
                        _ => vec![0, 1],
                    };
                    Generator {
                        name: (*n).into(),
                        grading,
                    }
                })
                .collect();

            let mut rules = vec![
                // the 2x2 matrix relations, with a*d and d*a both resolved
                // through the determinant generator
                rule(&names, &["a", "b"], &[("q^-1", &["b", "a"])]),
                rule(&names, &["a", "c"], &[("q^-1", &["c", "a"])]),
                rule(&names, &["c", "b"], &[("1", &["b", "c"])]),
                rule(&names, &["d", "b"], &[("q", &["b", "d"])]),
                rule(&names, &["d", "c"], &[("q", &["c", "d"])]),
                rule(&names, &["d", "a"], &[("1", &["det"]), ("q", &["b", "c"])]),
                rule(
                    &names,
                    &["a", "d"],
                    &[("1", &["det"]), ("q^-1", &["b", "c"])],
                ),
                // determinant inverse
                rule(&names, &["det", "deti"], &[("1", &[])]),
                rule(&names, &["deti", "det"], &[("1", &[])]),
                // scaling element inverse
                rule(&names, &["zeta", "zetai"], &[("1", &[])]),
                rule(&names, &["zetai", "zeta"], &[("1", &[])]),
            ];
            // det and deti are central
            for x in ["b", "c", "a", "d"] {
                rules.push(rule(&names, &[x, "det"], &[("1", &["det", x])]));
                rules.push(rule(&names, &[x, "deti"], &[("1", &["deti", x])]));
            }
            // zeta and zetai commute with everything up to a scale on the
            // off-diagonal letters
            for (x, fwd, bwd) in [
                ("deti", "1", "1"),
                ("det", "1", "1"),
                ("b", "q^-1", "q"),
                ("c", "q", "q^-1"),
                ("a", "1", "1"),
                ("d", "1", "1"),
            ] {
                rules.push(rule(&names, &[x, "zeta"], &[(fwd, &["zeta", x])]));
                rules.push(rule(&names, &[x, "zetai"], &[(bwd, &["zetai", x])]));
            }

            let gens_vec: Vec<Generator> = gens;
            Algebra::new(
                RewriteSystem::new("glq2_extended", gens_vec, rules)
                    .expect("extension presentation is well formed"),
            )
        })
        .clone()
}

/// Shared handle to the plain coordinate algebra.
pub fn x_algebra() -> Algebra {
    static CACHE: OnceLock<Algebra> = OnceLock::new();
    CACHE
        .get_or_init(minkowski_x_algebra)
        .clone()
}

/// Images of the four coordinates inside the extension algebra:
///
///   x11 = zeta a,   x12 = q^{-1/2} zeta b,
///   x21 = q^{1/2} zeta c,   x22 = zeta d.
pub fn coordinate_images() -> [NcPoly; 4] {
    let ext = extension_algebra();
    [
        ext.word(&["zeta", "a"]),
        ext.word(&["zeta", "b"]).scale(&ExactScalar::s_pow(-1)),
        ext.word(&["zeta", "c"]).scale(&ExactScalar::s_pow(1)),
        ext.word(&["zeta", "d"]),
    ]
}

/// Algebra map from the coordinate algebra into the extension, letter by
/// letter. Well defined because every coordinate relation maps to a relation
/// that already holds among the images (checked in tests).
pub fn embed_x(p: &NcPoly) -> NcPoly {
    let ext = extension_algebra();
    let images = coordinate_images();
    let mut acc = ext.zero();
    for (w, c) in p.terms() {
        let mut term = ext.scalar(c.clone());
        for &letter in w.0.iter() {
            term = &term * &images[letter as usize];
        }
        acc = &acc + &term;
    }
    acc
}

/// The quadratic interval x11 x22 - x12 x21 in the coordinate algebra.
pub fn interval(alg: &Algebra) -> NcPoly {
    let p = alg.word(&["x11", "x22"]);
    let n = alg.word(&["x12", "x21"]);
    &p - &n
}
