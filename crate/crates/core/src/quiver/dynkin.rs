//! ADE classification of the underlying graph of a quiver.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Quiver;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DynkinType {
    A,
    D,
    E,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum DynkinVerdict {
    Dynkin { r#type: DynkinType, rank: usize },
    NotDynkin { reason: String },
}

impl DynkinVerdict {
    pub fn is_dynkin(&self) -> bool {
        matches!(self, DynkinVerdict::Dynkin { .. })
    }

    fn not(reason: &str) -> Self {
        DynkinVerdict::NotDynkin {
            reason: reason.to_string(),
        }
    }
}

impl fmt::Display for DynkinVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinVerdict::Dynkin { r#type, rank } => write!(f, "Dynkin({:?}, {rank})", r#type),
            DynkinVerdict::NotDynkin { reason } => write!(f, "NotDynkin(\"{reason}\")"),
        }
    }
}

/// Classifies the underlying undirected graph. Orientation is ignored.
pub fn classify_dynkin(q: &Quiver) -> DynkinVerdict {
    let n = q.num_vertices();
    if n == 0 {
        return DynkinVerdict::not("empty quiver");
    }
    if q.arrows().iter().any(|a| a.source == a.target) {
        return DynkinVerdict::not("loop");
    }
    let mut edges = BTreeSet::new();
    for a in q.arrows() {
        let key = (a.source.min(a.target), a.source.max(a.target));
        if !edges.insert(key) {
            return DynkinVerdict::not("multiple edge");
        }
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    // connectivity
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return DynkinVerdict::not("disconnected");
    }
    if edges.len() != n - 1 {
        return DynkinVerdict::not("cycle");
    }
    if adj.iter().any(|a| a.len() > 3) {
        return DynkinVerdict::not("vertex of degree at least 4");
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() == 3).collect();
    match branch.len() {
        0 => DynkinVerdict::Dynkin {
            r#type: DynkinType::A,
            rank: n,
        },
        1 => {
            let c = branch[0];
            let mut arms: Vec<usize> = adj[c]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (c, start, 1);
                    while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match (arms[0], arms[1], arms[2]) {
                (1, 1, _) => DynkinVerdict::Dynkin {
                    r#type: DynkinType::D,
                    rank: n,
                },
                (1, 2, 2..=4) => DynkinVerdict::Dynkin {
                    r#type: DynkinType::E,
                    rank: n,
                },
                _ => DynkinVerdict::not("tree with arms too long"),
            }
        }
        _ => DynkinVerdict::not("more than one branch vertex"),
    }
}
