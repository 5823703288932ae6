//! Degree-truncated critical-pair completion for quotients of path algebras.
//!
//! All relations are homogeneous for the weight grading, so completion runs
//! degree by degree: every task (a relation to reduce or an overlap of two
//! leading words) is processed in increasing weight-degree, and a state
//! completed through degree `N` gives the exact quotient in every degree up
//! to `N`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::word::{Element, Word};
use crate::error::{Error, Result};
use crate::quiver::{pretty_print, validate_presentation, Presentation};
use crate::scalar::{Coeff, Rat};

/// Hard caps on the completion.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_generators: usize,
    pub max_tasks: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_generators: 50_000,
            max_tasks: 5_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event")]
pub enum LogEntry {
    Added { degree: u64, lead: String },
    Removed { lead: String, by: String },
    ReducedToZero { degree: u64, source: String },
}

#[derive(Clone, Debug)]
enum Task<K: Coeff> {
    Reduce(Element<K>, String),
    Pair { left: usize, right: usize, overlap: usize },
}

/// A completed (through `exact_through`) rewriting system for `kQ/I`.
#[derive(Clone, Debug)]
pub struct GroebnerState<K: Coeff = Rat> {
    presentation: Presentation,
    ctx: K::Ctx,
    exact_through: u64,
    generators: Vec<Element<K>>,
    lead_index: HashMap<Vec<usize>, usize>,
    max_lead_len: usize,
    closed: bool,
    log: Vec<LogEntry>,
}

/// Completion over the rationals.
pub fn complete_groebner(p: &Presentation, maxdeg: u64) -> Result<GroebnerState> {
    GroebnerState::<Rat>::complete(p, maxdeg, (), Budget::default())
}

impl<K: Coeff> GroebnerState<K> {
    pub fn complete(p: &Presentation, maxdeg: u64, ctx: K::Ctx, budget: Budget) -> Result<Self> {
        let report = validate_presentation(p);
        if !report.pass {
            let mut msgs: Vec<String> = report.global.clone();
            for d in &report.relations {
                for i in &d.issues {
                    msgs.push(format!("relation {}: {i}", d.index));
                }
            }
            return Err(Error::InvalidPresentation(msgs.join("; ")));
        }
        if maxdeg < p.max_relation_degree() {
            return Err(Error::Precondition(format!(
                "maxdeg {maxdeg} is below the largest relation degree {}",
                p.max_relation_degree()
            )));
        }
        let mut state = GroebnerState {
            presentation: p.clone(),
            ctx: ctx.clone(),
            exact_through: maxdeg,
            generators: Vec::new(),
            lead_index: HashMap::new(),
            max_lead_len: 0,
            closed: true,
            log: Vec::new(),
        };
        let mut alive: Vec<bool> = Vec::new();
        let mut queue: BTreeMap<(u64, u64), Task<K>> = BTreeMap::new();
        let mut seq = 0u64;
        let mut dropped: Vec<(usize, usize)> = Vec::new();

        for (i, r) in p.relations.iter().enumerate() {
            let r = r
                .map_coeffs(|c| K::embed(c, &ctx))
                .ok_or_else(|| Error::Precondition("coefficient not invertible in the field".into()))?;
            if let Some((w, _)) = r.leading() {
                queue.insert((w.weight(), seq), Task::Reduce(r.clone(), format!("relation {i}")));
                seq += 1;
            }
        }

        let mut processed = 0usize;
        while let Some(((degree, _), task)) = queue.pop_first() {
            processed += 1;
            if processed > budget.max_tasks {
                return Err(Error::Budget(format!("more than {} completion tasks", budget.max_tasks)));
            }
            let (poly, origin) = match task {
                Task::Reduce(f, origin) => (f, origin),
                Task::Pair { left, right, overlap } => {
                    if !alive[left] || !alive[right] {
                        continue;
                    }
                    (state.s_poly(left, right, overlap), format!("overlap {left}/{right}"))
                }
            };
            let reduced = state.reduce(&poly);
            if reduced.is_zero() {
                state.log.push(LogEntry::ReducedToZero { degree, source: origin });
                continue;
            }
            let (_, lc) = reduced.leading().expect("nonzero");
            let h = reduced.scale(&lc.inv());
            let lead = h.leading().expect("nonzero").0.clone();
            let q = &state.presentation.quiver;
            let lead_text = lead.display(q).to_string();

            // generators whose leading word contains the new one are re-queued
            for gi in 0..state.generators.len() {
                if !alive[gi] {
                    continue;
                }
                let glead = state.generators[gi].leading().expect("nonzero").0.clone();
                if glead.find(&lead).is_some() {
                    alive[gi] = false;
                    state.lead_index.remove(glead.arrows());
                    state.log.push(LogEntry::Removed {
                        lead: glead.display(q).to_string(),
                        by: lead_text.clone(),
                    });
                    let g = state.generators[gi].clone();
                    queue.insert((glead.weight(), seq), Task::Reduce(g, format!("re-reduce {gi}")));
                    seq += 1;
                }
            }

            let idx = state.generators.len();
            if idx >= budget.max_generators {
                return Err(Error::Budget(format!("more than {} generators", budget.max_generators)));
            }
            state.log.push(LogEntry::Added { degree, lead: lead_text });
            state.lead_index.insert(lead.arrows().to_vec(), idx);
            state.max_lead_len = state.max_lead_len.max(lead.len());
            state.generators.push(h);
            alive.push(true);

            for other in 0..=idx {
                if !alive[other] {
                    continue;
                }
                let pairs: Vec<(usize, usize)> = if other == idx {
                    vec![(idx, idx)]
                } else {
                    vec![(idx, other), (other, idx)]
                };
                for (l, r) in pairs {
                    for (overlap, deg) in state.overlaps(l, r) {
                        if deg <= maxdeg {
                            queue.insert((deg, seq), Task::Pair { left: l, right: r, overlap });
                            seq += 1;
                        } else {
                            dropped.push((l, r));
                        }
                    }
                }
            }
        }

        state.closed = dropped.iter().all(|&(l, r)| !alive[l] || !alive[r]);
        // compact and tail-reduce
        let gens: Vec<Element<K>> = state
            .generators
            .iter()
            .zip(&alive)
            .filter(|(_, a)| **a)
            .map(|(g, _)| g.clone())
            .collect();
        state.generators = gens;
        state.rebuild_index();
        for i in 0..state.generators.len() {
            let g = state.generators[i].clone();
            let (lw, lc) = g.leading().map(|(w, c)| (w.clone(), c.clone())).expect("nonzero");
            let mut tail = g.clone();
            tail.add_term(lw.clone(), lc.neg());
            let mut new = state.reduce(&tail);
            new.add_term(lw, lc);
            state.generators[i] = new;
        }
        Ok(state)
    }

    fn rebuild_index(&mut self) {
        self.lead_index.clear();
        self.max_lead_len = 0;
        for (i, g) in self.generators.iter().enumerate() {
            let w = g.leading().expect("nonzero").0;
            self.lead_index.insert(w.arrows().to_vec(), i);
            self.max_lead_len = self.max_lead_len.max(w.len());
        }
    }

    /// Proper overlaps `suffix(u) = prefix(v)` with their resulting degree.
    fn overlaps(&self, left: usize, right: usize) -> Vec<(usize, u64)> {
        let u = self.generators[left].leading().expect("nonzero").0;
        let v = self.generators[right].leading().expect("nonzero").0;
        let g = &self.presentation.grading;
        let max = u.len().min(v.len());
        let mut out = Vec::new();
        for k in 1..max {
            if u.arrows()[u.len() - k..] == v.arrows()[..k] {
                let shared: u64 = v.arrows()[..k].iter().map(|&a| g.weight(a)).sum();
                out.push((k, u.weight() + v.weight() - shared));
            }
        }
        out
    }

    fn s_poly(&self, left: usize, right: usize, overlap: usize) -> Element<K> {
        let q = &self.presentation.quiver;
        let g = &self.presentation.grading;
        let u = self.generators[left].leading().expect("nonzero").0;
        let v = self.generators[right].leading().expect("nonzero").0;
        let tail_v = v.slice(q, g, overlap, v.len());
        let head_u = u.slice(q, g, 0, u.len() - overlap);
        let a = self.generators[left].sandwich(&Word::trivial(u.source()), &tail_v);
        let b = self.generators[right].sandwich(&head_u, &Word::trivial(v.target()));
        let minus_one = b.leading().expect("nonzero").1.neg();
        a.add(&b.scale(&minus_one))
    }

    /// Locates a leading word inside `w`: (generator, start position).
    fn find_divisor(&self, w: &Word) -> Option<(usize, usize)> {
        let arrows = w.arrows();
        for start in 0..arrows.len() {
            let max = self.max_lead_len.min(arrows.len() - start);
            for len in 1..=max {
                if let Some(&gi) = self.lead_index.get(&arrows[start..start + len]) {
                    return Some((gi, start));
                }
            }
        }
        None
    }

    /// Full reduction modulo the current generators.
    fn reduce(&self, f: &Element<K>) -> Element<K> {
        let q = &self.presentation.quiver;
        let g = &self.presentation.grading;
        let mut f = f.clone();
        let mut rem = Element::zero();
        while let Some((w, c)) = f.leading().map(|(w, c)| (w.clone(), c.clone())) {
            match self.find_divisor(&w) {
                Some((gi, pos)) => {
                    let gen = &self.generators[gi];
                    let glen = gen.leading().expect("nonzero").0.len();
                    let left = w.slice(q, g, 0, pos);
                    let right = w.slice(q, g, pos + glen, w.len());
                    let sub = gen.sandwich(&left, &right).scale(&c.neg());
                    f = f.add(&sub);
                }
                None => {
                    f.add_term(w.clone(), c.neg());
                    rem.add_term(w, c);
                }
            }
        }
        rem
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn ctx(&self) -> &K::Ctx {
        &self.ctx
    }

    pub fn exact_through(&self) -> u64 {
        self.exact_through
    }

    pub fn generators(&self) -> &[Element<K>] {
        &self.generators
    }

    pub fn log(&self) -> &[LogEntry] {
        &self.log
    }

    /// True when no overlap among the final generators was left unprocessed,
    /// i.e. the generators form a Gröbner basis of the whole ideal.
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn max_lead_len(&self) -> usize {
        self.max_lead_len
    }

    pub fn leading_words(&self) -> Vec<&Word> {
        self.generators
            .iter()
            .map(|g| g.leading().expect("nonzero").0)
            .collect()
    }

    /// Whether a word avoids every leading word.
    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_divisor(w).is_none()
    }

    /// Whether `w` is normal given that `w` without its last arrow is normal.
    pub(crate) fn extension_is_normal(&self, w: &Word) -> bool {
        let arrows = w.arrows();
        let n = arrows.len();
        (1..=self.max_lead_len.min(n)).all(|len| !self.lead_index.contains_key(&arrows[n - len..]))
    }

    /// Unique reduced representative of `x`.
    pub fn normal_form(&self, x: &Element<K>) -> Result<Element<K>> {
        if let Some((w, _)) = x.leading() {
            let top = x.terms().map(|(w, _)| w.weight()).max().unwrap_or(0).max(w.weight());
            if top > self.exact_through {
                return Err(Error::BeyondCertified {
                    requested: top,
                    certified: self.exact_through,
                });
            }
        }
        Ok(self.reduce(x))
    }

    /// Replayable record: the presentation, the options and the completion log.
    pub fn to_log_json(&self) -> serde_json::Value {
        let q = &self.presentation.quiver;
        serde_json::json!({
            "schema": "cyquiver.groebner-log/v1",
            "presentation": pretty_print(&self.presentation),
            "maxdeg": self.exact_through,
            "closed": self.closed,
            "generators": self.generators.iter().map(|g| g.display(q).to_string()).collect::<Vec<_>>(),
            "log": self.log,
        })
    }
}

/// Re-runs a logged completion and checks that generators and log agree.
pub fn replay_log(log: &serde_json::Value) -> Result<bool> {
    let text = log["presentation"]
        .as_str()
        .ok_or_else(|| Error::Precondition("log lacks a presentation".into()))?;
    let maxdeg = log["maxdeg"]
        .as_u64()
        .ok_or_else(|| Error::Precondition("log lacks maxdeg".into()))?;
    let p = crate::quiver::parse_presentation(text)?;
    let state = complete_groebner(&p, maxdeg)?;
    Ok(state.to_log_json() == *log)
}
