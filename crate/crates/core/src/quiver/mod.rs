//! Quivers, weight gradings and presentations `kQ/I`.

mod dsl;
mod dynkin;
mod validate;

pub use dsl::{parse_presentation, pretty_print};
pub use dynkin::{classify_dynkin, DynkinType, DynkinVerdict};
pub use validate::{validate_presentation, RelationDiagnostic, ValidationReport};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rewrite::Element;

/// Suffix marking the reversed copy of an arrow in a double quiver.
pub const REVERSED_SUFFIX: char = '‾';

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver. Vertex and arrow order are significant: they seed every
/// tie-break downstream.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>) -> Result<Self> {
        let mut q = Quiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
        };
        for v in vertices {
            q.add_vertex(v)?;
        }
        Ok(q)
    }

    pub fn add_vertex(&mut self, name: String) -> Result<usize> {
        if self.vertex_index(&name).is_some() {
            return Err(Error::Duplicate(name));
        }
        self.vertices.push(name);
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str) -> Result<usize> {
        let s = self
            .vertex_index(source)
            .ok_or_else(|| Error::UnknownVertex(source.to_string()))?;
        let t = self
            .vertex_index(target)
            .ok_or_else(|| Error::UnknownVertex(target.to_string()))?;
        self.push_arrow(name.to_string(), s, t)
    }

    pub fn push_arrow(&mut self, name: String, source: usize, target: usize) -> Result<usize> {
        if self.arrow_index(&name).is_some() {
            return Err(Error::Duplicate(name));
        }
        assert!(source < self.vertices.len() && target < self.vertices.len());
        self.arrows.push(Arrow {
            name,
            source,
            target,
        });
        Ok(self.arrows.len() - 1)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    /// The quiver with every arrow reversed (same names, same order).
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }

    /// Whether the arrows selected by `keep` contain an oriented cycle.
    pub fn has_cycle_among<F: Fn(usize) -> bool>(&self, keep: F) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for (i, a) in self.arrows.iter().enumerate() {
            if keep(i) {
                indeg[a.target] += 1;
            }
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for (i, a) in self.arrows.iter().enumerate() {
                if keep(i) && a.source == v {
                    indeg[a.target] -= 1;
                    if indeg[a.target] == 0 {
                        stack.push(a.target);
                    }
                }
            }
        }
        seen < n
    }

    pub fn is_acyclic(&self) -> bool {
        !self.has_cycle_among(|_| true)
    }
}

/// Reversed-arrow name for `name`.
pub fn reversed_name(name: &str) -> String {
    format!("{name}{REVERSED_SUFFIX}")
}

/// Adds a reversed arrow `a‾: t -> s` for every arrow `a: s -> t`, appended
/// after the original arrows in the original order.
pub fn double_quiver(q: &Quiver) -> Result<Quiver> {
    if let Some(a) = q.arrows.iter().find(|a| a.name.ends_with(REVERSED_SUFFIX)) {
        return Err(Error::ReservedName(a.name.clone()));
    }
    let mut d = q.clone();
    for a in &q.arrows {
        d.push_arrow(reversed_name(&a.name), a.target, a.source)?;
    }
    Ok(d)
}

/// Nonnegative integer weight per arrow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightGrading {
    weights: Vec<u64>,
}

impl WeightGrading {
    /// Path-length grading: every arrow has weight 1.
    pub fn path_length(q: &Quiver) -> Self {
        WeightGrading {
            weights: vec![1; q.num_arrows()],
        }
    }

    pub fn from_weights(weights: Vec<u64>) -> Self {
        WeightGrading { weights }
    }

    pub fn weight(&self, arrow: usize) -> u64 {
        self.weights[arrow]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn max_weight(&self) -> u64 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    pub fn is_path_length(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }
}

/// A quiver with relations and a weight grading.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub name: String,
    pub quiver: Quiver,
    pub relations: Vec<Element>,
    pub grading: WeightGrading,
}

impl Presentation {
    /// The free path algebra: no relations, path-length grading.
    pub fn free(name: &str, quiver: Quiver) -> Self {
        let grading = WeightGrading::path_length(&quiver);
        Presentation {
            name: name.to_string(),
            quiver,
            relations: Vec::new(),
            grading,
        }
    }

    /// Same presentation under another grading.
    pub fn with_grading(&self, grading: WeightGrading) -> Self {
        Presentation {
            name: self.name.clone(),
            quiver: self.quiver.clone(),
            relations: self.relations.iter().map(|r| r.reweigh(&grading)).collect(),
            grading,
        }
    }

    pub fn with_path_length_grading(&self) -> Self {
        self.with_grading(WeightGrading::path_length(&self.quiver))
    }

    /// Largest weight-degree among relation terms.
    pub fn max_relation_degree(&self) -> u64 {
        self.relations
            .iter()
            .filter_map(|r| r.leading().map(|(w, _)| w.weight()))
            .max()
            .unwrap_or(0)
    }

    /// The opposite presentation: arrows reversed, relation words reversed.
    pub fn opposite(&self) -> Presentation {
        let quiver = self.quiver.opposite();
        let relations = self
            .relations
            .iter()
            .map(|r| {
                Element::from_terms(r.terms().map(|(w, c)| {
                    let rev: Vec<usize> = w.arrows().iter().rev().copied().collect();
                    let word = crate::rewrite::Word::from_arrows(&quiver, &self.grading, &rev)
                        .expect("reversed relation word composes");
                    (word, c.clone())
                }))
            })
            .collect();
        Presentation {
            name: format!("{}^op", self.name),
            quiver,
            relations,
            grading: self.grading.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiver(vs: &[&str], arrows: &[(&str, &str, &str)]) -> Quiver {
        let mut q = Quiver::new(vs.iter().map(|s| s.to_string()).collect()).unwrap();
        for (n, s, t) in arrows {
            q.add_arrow(n, s, t).unwrap();
        }
        q
    }

    #[test]
    fn double_of_loop() {
        let q = quiver(&["1"], &[("x", "1", "1")]);
        let d = double_quiver(&q).unwrap();
        assert_eq!(d.num_arrows(), 2);
        assert_eq!(d.arrows()[1].name, "x‾");
        assert_eq!((d.arrows()[1].source, d.arrows()[1].target), (0, 0));
    }

    #[test]
    fn double_of_a2() {
        let q = quiver(&["1", "2"], &[("a", "1", "2")]);
        let d = double_quiver(&q).unwrap();
        assert_eq!(d.arrows()[0].name, "a");
        assert_eq!(d.arrows()[1], Arrow { name: "a‾".into(), source: 1, target: 0 });
    }

    #[test]
    fn double_without_arrows_is_fixed() {
        let q = quiver(&["1", "2", "3"], &[]);
        assert_eq!(double_quiver(&q).unwrap(), q);
    }

    #[test]
    fn double_rejects_reserved_names() {
        let q = quiver(&["1", "2"], &[("a‾", "1", "2")]);
        assert_eq!(double_quiver(&q), Err(Error::ReservedName("a‾".into())));
    }

    #[test]
    fn double_doubles_arrow_count_once() {
        let q = quiver(&["1", "2", "3"], &[("a", "1", "2"), ("b", "3", "2")]);
        let d = double_quiver(&q).unwrap();
        assert_eq!(d.num_arrows(), 2 * q.num_arrows());
        assert!(double_quiver(&d).is_err());
    }

    #[test]
    fn cycle_detection() {
        assert!(quiver(&["1"], &[("x", "1", "1")]).has_cycle_among(|_| true));
        assert!(quiver(&["1", "2"], &[("a", "1", "2")]).is_acyclic());
    }
}
