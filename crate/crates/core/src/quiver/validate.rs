use serde::Serialize;

use super::Presentation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationDiagnostic {
    pub index: usize,
    pub issues: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub pass: bool,
    pub relations: Vec<RelationDiagnostic>,
    pub global: Vec<String>,
}

/// Checks uniformity, weight-homogeneity and admissibility of every relation.
pub fn validate_presentation(p: &Presentation) -> ValidationReport {
    let mut relations = Vec::new();
    for (index, r) in p.relations.iter().enumerate() {
        let mut issues = Vec::new();
        let words: Vec<_> = r.terms().map(|(w, _)| w).collect();
        if words.is_empty() {
            issues.push("zero relation".to_string());
        }
        if let Some(first) = words.first() {
            if words
                .iter()
                .any(|w| w.source() != first.source() || w.target() != first.target())
            {
                issues.push("non-uniform: terms have different endpoints".to_string());
            }
            let degrees: Vec<u64> = words.iter().map(|w| w.weight()).collect();
            if degrees.iter().any(|&d| d != degrees[0]) {
                issues.push(format!("non-homogeneous: weight-degrees {degrees:?}"));
            }
        }
        if words.iter().any(|w| w.len() < 2) {
            issues.push("non-admissible generator: path of length < 2".to_string());
        }
        relations.push(RelationDiagnostic { index, issues });
    }
    let mut global = Vec::new();
    let g = &p.grading;
    if g.weights().len() != p.quiver.num_arrows() {
        global.push("grading does not cover every arrow".to_string());
    } else if p.quiver.has_cycle_among(|a| g.weight(a) == 0) {
        global.push("arrows of weight 0 contain an oriented cycle".to_string());
    }
    let pass = global.is_empty() && relations.iter().all(|d| d.issues.is_empty());
    ValidationReport {
        pass,
        relations,
        global,
    }
}
