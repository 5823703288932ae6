use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::groebner::GroebnerState;
use super::word::Word;
use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// Every normal word of weight-degree at most `maxdeg`, in DFS order.
pub fn normal_words<K: Coeff>(state: &GroebnerState<K>, maxdeg: u64) -> Vec<Word> {
    let p = state.presentation();
    let (q, g) = (&p.quiver, &p.grading);
    let mut out = Vec::new();
    let mut stack: Vec<Word> = (0..q.num_vertices()).map(Word::trivial).collect();
    stack.reverse();
    while let Some(w) = stack.pop() {
        for a in q.arrows_from(w.target()).collect::<Vec<_>>().into_iter().rev() {
            if w.weight() + g.weight(a) > maxdeg {
                continue;
            }
            let next = w.concat(&Word::arrow(q, g, a)).expect("composable");
            if state.extension_is_normal(&next) {
                stack.push(next);
            }
        }
        out.push(w);
    }
    out
}

/// Normal words of weight-degree exactly `degree`, sorted by (source, target, word).
pub fn monomial_basis<K: Coeff>(state: &GroebnerState<K>, degree: u64) -> Result<Vec<Word>> {
    if degree > state.exact_through() {
        return Err(Error::BeyondCertified {
            requested: degree,
            certified: state.exact_through(),
        });
    }
    let mut words: Vec<Word> = normal_words(state, degree)
        .into_iter()
        .filter(|w| w.weight() == degree)
        .collect();
    words.sort_by(|a, b| (a.source(), a.target(), a).cmp(&(b.source(), b.target(), b)));
    Ok(words)
}

/// `dim e_s A_p e_t` for every degree `p` up to `max_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertTable {
    pub max_degree: u64,
    pub vertices: Vec<String>,
    pub grading: Vec<u64>,
    entries: BTreeMap<(u64, usize, usize), u64>,
}

#[derive(Serialize)]
struct Row<'a> {
    degree: u64,
    source: &'a str,
    target: &'a str,
    dim: u64,
}

impl HilbertTable {
    pub fn dim(&self, degree: u64, source: usize, target: usize) -> u64 {
        self.entries.get(&(degree, source, target)).copied().unwrap_or(0)
    }

    /// Total dimension in one degree.
    pub fn total(&self, degree: u64) -> u64 {
        self.entries
            .range((degree, 0, 0)..=(degree, usize::MAX, usize::MAX))
            .map(|(_, d)| d)
            .sum()
    }

    pub fn totals(&self) -> Vec<u64> {
        (0..=self.max_degree).map(|p| self.total(p)).collect()
    }

    /// Nonzero entries as (degree, source, target, dim).
    pub fn entries(&self) -> impl Iterator<Item = (u64, usize, usize, u64)> + '_ {
        self.entries.iter().map(|(&(p, s, t), &d)| (p, s, t, d))
    }

    /// One row per degree and vertex pair, zeros included.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("degree\tsource\ttarget\tdim\n");
        let n = self.vertices.len();
        for p in 0..=self.max_degree {
            for s in 0..n {
                for t in 0..n {
                    let _ = writeln!(
                        out,
                        "{p}\t{}\t{}\t{}",
                        self.vertices[s],
                        self.vertices[t],
                        self.dim(p, s, t)
                    );
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let n = self.vertices.len();
        let mut rows = Vec::new();
        for p in 0..=self.max_degree {
            for s in 0..n {
                for t in 0..n {
                    rows.push(Row {
                        degree: p,
                        source: &self.vertices[s],
                        target: &self.vertices[t],
                        dim: self.dim(p, s, t),
                    });
                }
            }
        }
        serde_json::json!({
            "max_degree": self.max_degree,
            "vertices": self.vertices,
            "grading": self.grading,
            "rows": rows,
            "totals": self.totals(),
        })
    }
}

pub fn graded_dimensions<K: Coeff>(state: &GroebnerState<K>, maxdeg: u64) -> Result<HilbertTable> {
    if maxdeg > state.exact_through() {
        return Err(Error::BeyondCertified {
            requested: maxdeg,
            certified: state.exact_through(),
        });
    }
    let mut entries = BTreeMap::new();
    for w in normal_words(state, maxdeg) {
        *entries.entry((w.weight(), w.source(), w.target())).or_insert(0) += 1;
    }
    let p = state.presentation();
    Ok(HilbertTable {
        max_degree: maxdeg,
        vertices: p.quiver.vertices().to_vec(),
        grading: p.grading.weights().to_vec(),
        entries,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum FinitenessVerdict {
    Finite {
        total_dim: u64,
        top_degree: u64,
    },
    /// The basis is closed and its normal words contain an infinite family.
    NotFiniteCertified {
        layer_dims: Vec<u64>,
        cycle: String,
    },
    UnknownUpTo {
        degree: u64,
    },
}

/// Decides finite-dimensionality when the completed data allows it.
pub fn finiteness_certificate<K: Coeff>(state: &GroebnerState<K>) -> FinitenessVerdict {
    let n = state.exact_through();
    let table = graded_dimensions(state, n).expect("within certified range");
    let layers = table.totals();
    let window = state.presentation().grading.max_weight().max(1);
    // every normal word of degree >= p has a normal prefix of degree in [p, p + window)
    let mut p = 1u64;
    while p + window - 1 <= n {
        if (p..p + window).all(|d| layers[d as usize] == 0) {
            let total_dim = layers[..p as usize].iter().sum();
            let top_degree = (0..p).rev().find(|&d| layers[d as usize] > 0).unwrap_or(0);
            return FinitenessVerdict::Finite {
                total_dim,
                top_degree,
            };
        }
        p += 1;
    }
    if state.is_closed() {
        match find_normal_cycle(state) {
            Some(cycle) => {
                return FinitenessVerdict::NotFiniteCertified {
                    layer_dims: layers,
                    cycle,
                }
            }
            None => {
                let words = all_normal_words(state);
                let total_dim = words.len() as u64;
                let top_degree = words.iter().map(|w| w.weight()).max().unwrap_or(0);
                return FinitenessVerdict::Finite {
                    total_dim,
                    top_degree,
                };
            }
        }
    }
    FinitenessVerdict::UnknownUpTo { degree: n }
}

/// Normal words of a closed basis without a cycle; finite by construction.
fn all_normal_words<K: Coeff>(state: &GroebnerState<K>) -> Vec<Word> {
    let p = state.presentation();
    let (q, g) = (&p.quiver, &p.grading);
    let mut out = Vec::new();
    let mut stack: Vec<Word> = (0..q.num_vertices()).map(Word::trivial).collect();
    while let Some(w) = stack.pop() {
        for a in q.arrows_from(w.target()) {
            let next = w.concat(&Word::arrow(q, g, a)).expect("composable");
            if state.extension_is_normal(&next) {
                stack.push(next);
            }
        }
        out.push(w);
    }
    out
}

/// A cycle in the graph whose nodes are normal words of length `m` (one less
/// than the longest leading word) and whose edges append an arrow.
fn find_normal_cycle<K: Coeff>(state: &GroebnerState<K>) -> Option<String> {
    let p = state.presentation();
    let (q, g) = (&p.quiver, &p.grading);
    let m = state.max_lead_len().saturating_sub(1);
    // normal words of length exactly m
    let mut nodes: Vec<Word> = Vec::new();
    let mut frontier: Vec<Word> = (0..q.num_vertices()).map(Word::trivial).collect();
    for _ in 0..m {
        let mut next = Vec::new();
        for w in &frontier {
            for a in q.arrows_from(w.target()) {
                let x = w.concat(&Word::arrow(q, g, a)).expect("composable");
                if state.extension_is_normal(&x) {
                    next.push(x);
                }
            }
        }
        frontier = next;
    }
    nodes.extend(frontier);
    let index: BTreeMap<Vec<usize>, usize> = nodes
        .iter()
        .enumerate()
        .map(|(i, w)| (key(w), i))
        .collect();
    let succ: Vec<Vec<(usize, usize)>> = nodes
        .iter()
        .map(|w| {
            q.arrows_from(w.target())
                .filter_map(|a| {
                    let x = w.concat(&Word::arrow(q, g, a)).expect("composable");
                    if !state.extension_is_normal(&x) {
                        return None;
                    }
                    let tail = x.slice(q, g, x.len() - m, x.len());
                    index.get(&key(&tail)).map(|&j| (a, j))
                })
                .collect()
        })
        .collect();
    // iterative DFS with colors
    let mut color = vec![0u8; nodes.len()];
    for root in 0..nodes.len() {
        if color[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        let mut via: Vec<usize> = Vec::new();
        color[root] = 1;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < succ[v].len() {
                let (a, w) = succ[v][*i];
                *i += 1;
                if color[w] == 1 {
                    let start = stack.iter().position(|&(x, _)| x == w).expect("on stack");
                    let mut arrows: Vec<usize> = via[start..].to_vec();
                    arrows.push(a);
                    let names: Vec<&str> = arrows.iter().map(|&b| q.arrows()[b].name.as_str()).collect();
                    return Some(names.join("*"));
                }
                if color[w] == 0 {
                    color[w] = 1;
                    via.push(a);
                    stack.push((w, 0));
                }
            } else {
                color[v] = 2;
                stack.pop();
                via.pop();
            }
        }
    }
    None
}

/// Trivial words of length 0 are keyed by their vertex.
fn key(w: &Word) -> Vec<usize> {
    if w.is_trivial() {
        vec![usize::MAX, w.source()]
    } else {
        w.arrows().to_vec()
    }
}
