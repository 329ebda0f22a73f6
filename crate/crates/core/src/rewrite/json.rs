//! Presentations as JSON documents, so rule tables live in data files that
//! can be inspected and swapped without recompiling.

use serde::{Deserialize, Serialize};

use crate::scalar::parse_scalar;

use super::{Algebra, Generator, RewriteError, RewriteSystem, Rule, Word};

#[derive(Serialize, Deserialize)]
struct PresentationDoc {
    name: String,
    generators: Vec<GeneratorDoc>,
    rules: Vec<RuleDoc>,
}

#[derive(Serialize, Deserialize)]
struct GeneratorDoc {
    name: String,
    grading: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct RuleDoc {
    lhs: Vec<String>,
    rhs: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    coeff: String,
    word: Vec<String>,
}

pub fn algebra_from_json(text: &str) -> Result<Algebra, RewriteError> {
    let doc: PresentationDoc =
        serde_json::from_str(text).map_err(|e| RewriteError::Json(e.to_string()))?;
    let gens: Vec<Generator> = doc
        .generators
        .iter()
        .map(|g| Generator {
            name: g.name.clone(),
            grading: g.grading.clone(),
        })
        .collect();
    let name_to_id = |name: &str| -> Result<super::Letter, RewriteError> {
        gens.iter()
            .position(|g| g.name == name)
            .map(|i| i as super::Letter)
            .ok_or_else(|| RewriteError::UnknownGenerator(name.to_string()))
    };
    let mut rules = Vec::with_capacity(doc.rules.len());
    for r in &doc.rules {
        let lhs_letters: Result<Vec<_>, _> = r.lhs.iter().map(|n| name_to_id(n)).collect();
        let mut rhs = Vec::with_capacity(r.rhs.len());
        for t in &r.rhs {
            let coeff = parse_scalar(&t.coeff)?;
            let letters: Result<Vec<_>, _> = t.word.iter().map(|n| name_to_id(n)).collect();
            rhs.push((coeff, Word::from_letters(&letters?)));
        }
        rules.push(Rule {
            lhs: Word::from_letters(&lhs_letters?),
            rhs,
        });
    }
    Ok(Algebra::new(RewriteSystem::new(doc.name, gens, rules)?))
}

pub fn algebra_to_json(alg: &Algebra) -> String {
    let sys = alg.system();
    let doc = PresentationDoc {
        name: sys.name.clone(),
        generators: sys
            .gens
            .iter()
            .map(|g| GeneratorDoc {
                name: g.name.clone(),
                grading: g.grading.clone(),
            })
            .collect(),
        rules: sys
            .rules
            .iter()
            .map(|r| RuleDoc {
                lhs: r.lhs.0.iter().map(|&g| sys.gen_name(g).to_string()).collect(),
                rhs: r
                    .rhs
                    .iter()
                    .map(|(c, w)| TermDoc {
                        coeff: c.to_string(),
                        word: w.0.iter().map(|&g| sys.gen_name(g).to_string()).collect(),
                    })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("presentation serializes")
}

/// The quantum 2x2 matrix bialgebra in generators A, B, C, D.
pub fn glq2_algebra() -> Algebra {
    algebra_from_json(include_str!("../../data/glq2.json")).expect("shipped presentation loads")
}

/// Coordinate relations of the quantum Minkowski space.
pub fn minkowski_x_algebra() -> Algebra {
    algebra_from_json(include_str!("../../data/minkowski_x.json"))
        .expect("shipped presentation loads")
}

/// Relations among the four partial derivatives dual to the coordinates.
pub fn minkowski_dx_algebra() -> Algebra {
    algebra_from_json(include_str!("../../data/minkowski_dx.json"))
        .expect("shipped presentation loads")
}
