//! Combinatorial presentations of preprojective algebras.

use num_traits::One;
use serde::Serialize;

use crate::derived::{bimodule_resolution, Enveloping};
use crate::error::{Error, Result};
use crate::quiver::{double_quiver, pretty_print, Presentation, Quiver, WeightGrading};
use crate::repthy::{algebra_from_groebner, global_dimension, Dimension, FiniteAlgebra};
use crate::rewrite::{complete_groebner, Element, Word};
use crate::scalar::Rat;

/// A presentation graded by "number of adjoined arrows": arrows of the base
/// algebra have weight 0, adjoined arrows weight 1.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedPresentation {
    pub presentation: Presentation,
    pub base_arrows: Vec<usize>,
    pub new_arrows: Vec<usize>,
}

impl GradedPresentation {
    /// The same algebra with every arrow of weight 1.
    pub fn path_length(&self) -> Presentation {
        self.presentation.with_path_length_grading()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let q = &self.presentation.quiver;
        let names = |ids: &[usize]| -> Vec<String> { ids.iter().map(|&a| q.arrows()[a].name.clone()).collect() };
        serde_json::json!({
            "presentation": pretty_print(&self.presentation),
            "base_arrows": names(&self.base_arrows),
            "new_arrows": names(&self.new_arrows),
            "relations": self
                .presentation
                .relations
                .iter()
                .map(|r| r.display(q).to_string())
                .collect::<Vec<_>>(),
        })
    }
}

fn word(q: &Quiver, g: &WeightGrading, arrows: &[usize]) -> Word {
    Word::from_arrows(q, g, arrows).expect("composable by construction")
}

/// `Π_Q`: the double quiver with, at each vertex `v`, the relation
/// `Σ_{s(a)=v} a ā − Σ_{t(b)=v} b̄ b`.
pub fn classical_preprojective(q: &Quiver) -> Result<GradedPresentation> {
    let dq = double_quiver(q)?;
    let m = q.num_arrows();
    let grading = WeightGrading::from_weights((0..2 * m).map(|a| u64::from(a >= m)).collect());
    let mut relations = Vec::new();
    for v in 0..q.num_vertices() {
        let mut rel = Element::zero();
        for (a, arrow) in q.arrows().iter().enumerate() {
            if arrow.source == v {
                rel.add_term(word(&dq, &grading, &[a, m + a]), Rat::one());
            }
            if arrow.target == v {
                rel.add_term(word(&dq, &grading, &[m + a, a]), -Rat::one());
            }
        }
        if !rel.is_zero() {
            relations.push(rel);
        }
    }
    Ok(GradedPresentation {
        presentation: Presentation {
            name: "preprojective".into(),
            quiver: dq,
            relations,
            grading,
        },
        base_arrows: (0..m).collect(),
        new_arrows: (m..2 * m).collect(),
    })
}

/// Outcome of the minimality check for a relation set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationBetti {
    /// `(source, target)` of every summand of the second bimodule syzygy term.
    pub resolution: Vec<(usize, usize)>,
    pub relations: Vec<(usize, usize)>,
}

/// Finite-dimensional quotient of a base presentation; `maxdeg` bounds the
/// completion.
pub fn base_algebra(p: &Presentation, maxdeg: u64) -> Result<FiniteAlgebra> {
    let state = complete_groebner(p, maxdeg.max(p.max_relation_degree()))?;
    algebra_from_groebner(&state)
}

/// Keller's construction for global dimension 2: one new arrow
/// `ρ_r: t(r) -> s(r)` per relation and the cyclic derivatives of
/// `W = Σ_r r ρ_r` as relations.
pub fn superpotential_preprojective(p: &Presentation, maxdeg: u64) -> Result<GradedPresentation> {
    let alg = base_algebra(p, maxdeg)?;
    match global_dimension(&alg, 4) {
        Dimension::Exactly(2) => {}
        other => return Err(Error::Precondition(format!("global dimension is {other}, not 2"))),
    }
    let betti = relation_betti(p, &alg);
    if betti.resolution != betti.relations {
        return Err(Error::Precondition(format!(
            "relations are not minimal: resolution needs {:?}, presentation has {:?}",
            betti.resolution, betti.relations
        )));
    }
    let m = p.quiver.num_arrows();
    let mut q = p.quiver.clone();
    let mut weights = vec![0u64; m];
    let mut new_arrows = Vec::new();
    for (k, r) in p.relations.iter().enumerate() {
        let (w, _) = r.leading().expect("nonzero relation");
        let id = q.push_arrow(format!("rho{}", k + 1), w.target(), w.source())?;
        weights.push(1);
        new_arrows.push(id);
    }
    let grading = WeightGrading::from_weights(weights);
    // cycles of W as arrow lists, each with its coefficient
    let mut cycles: Vec<(Vec<usize>, Rat)> = Vec::new();
    for (k, r) in p.relations.iter().enumerate() {
        for (w, c) in r.terms() {
            let mut arrows = w.arrows().to_vec();
            arrows.push(new_arrows[k]);
            cycles.push((arrows, c.clone()));
        }
    }
    let mut relations = Vec::new();
    for a in 0..q.num_arrows() {
        let mut rel = Element::zero();
        for (cycle, c) in &cycles {
            for i in 0..cycle.len() {
                if cycle[i] != a {
                    continue;
                }
                let rest: Vec<usize> = cycle[i + 1..].iter().chain(&cycle[..i]).copied().collect();
                let w = if rest.is_empty() {
                    Word::trivial(q.arrows()[a].target)
                } else {
                    word(&q, &grading, &rest)
                };
                rel.add_term(w, c.clone());
            }
        }
        if !rel.is_zero() {
            relations.push(rel);
        }
    }
    Ok(GradedPresentation {
        presentation: Presentation {
            name: format!("pi_{}", p.name),
            quiver: q,
            relations,
            grading,
        },
        base_arrows: (0..m).collect(),
        new_arrows,
    })
}

/// Compares the second term of the minimal bimodule resolution with the
/// endpoints of the relations.
pub fn relation_betti(p: &Presentation, alg: &FiniteAlgebra) -> RelationBetti {
    let env = Enveloping::new(alg);
    let (res, _) = bimodule_resolution(alg, &env, 2);
    let mut resolution: Vec<(usize, usize)> = res.terms.get(2).map_or_else(Vec::new, |t| t.iter().map(|&v| env.split(v)).collect());
    let mut relations: Vec<(usize, usize)> = p
        .relations
        .iter()
        .filter_map(|r| r.leading().map(|(w, _)| (w.source(), w.target())))
        .collect();
    resolution.sort_unstable();
    relations.sort_unstable();
    RelationBetti { resolution, relations }
}
