//! Path words and linear combinations of them.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{Quiver, WeightGrading};
use crate::scalar::{Coeff, Rat};

/// A path in a quiver, read first-then: `arrows[0]` is traversed first.
///
/// The derived ordering is the monomial order used everywhere: weight-degree,
/// then length, then left-lexicographic on arrow input order. The trailing
/// vertex fields only separate trivial paths.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Word {
    weight: u64,
    len: usize,
    arrows: Vec<usize>,
    source: usize,
    target: usize,
}

impl Word {
    pub fn trivial(vertex: usize) -> Self {
        Word {
            weight: 0,
            len: 0,
            arrows: Vec::new(),
            source: vertex,
            target: vertex,
        }
    }

    pub fn arrow(q: &Quiver, g: &WeightGrading, a: usize) -> Self {
        let arr = &q.arrows()[a];
        Word {
            weight: g.weight(a),
            len: 1,
            arrows: vec![a],
            source: arr.source,
            target: arr.target,
        }
    }

    /// Builds a non-trivial path, checking composability.
    pub fn from_arrows(q: &Quiver, g: &WeightGrading, arrows: &[usize]) -> Result<Self> {
        let first = arrows
            .first()
            .ok_or_else(|| Error::InvalidPresentation("empty arrow sequence".into()))?;
        let mut w = Word::arrow(q, g, *first);
        for &a in &arrows[1..] {
            let next = Word::arrow(q, g, a);
            w = w.concat(&next).ok_or_else(|| {
                Error::NotComposable(
                    q.arrows()[w.arrows[w.len - 1]].name.clone(),
                    q.arrows()[a].name.clone(),
                )
            })?;
        }
        Ok(w)
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }
    pub fn len(&self) -> usize {
        self.len
    }
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
    pub fn is_trivial(&self) -> bool {
        self.len == 0
    }
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }
    pub fn source(&self) -> usize {
        self.source
    }
    pub fn target(&self) -> usize {
        self.target
    }

    /// `self` followed by `other`, if the endpoints match.
    pub fn concat(&self, other: &Word) -> Option<Word> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Word {
            weight: self.weight + other.weight,
            len: self.len + other.len,
            arrows,
            source: self.source,
            target: other.target,
        })
    }

    /// The subword `arrows[from..to]`; empty ranges give the trivial path at
    /// the appropriate vertex.
    pub fn slice(&self, q: &Quiver, g: &WeightGrading, from: usize, to: usize) -> Word {
        if from == to {
            let v = if from == 0 {
                self.source
            } else {
                q.arrows()[self.arrows[from - 1]].target
            };
            return Word::trivial(v);
        }
        let arrows = self.arrows[from..to].to_vec();
        Word {
            weight: arrows.iter().map(|&a| g.weight(a)).sum(),
            len: arrows.len(),
            source: q.arrows()[arrows[0]].source,
            target: q.arrows()[arrows[arrows.len() - 1]].target,
            arrows,
        }
    }

    /// Recomputes the weight under another grading.
    pub fn reweigh(&self, g: &WeightGrading) -> Word {
        let mut w = self.clone();
        w.weight = self.arrows.iter().map(|&a| g.weight(a)).sum();
        w
    }

    /// Position of the first occurrence of `pattern` as a contiguous subword.
    pub fn find(&self, pattern: &Word) -> Option<usize> {
        if pattern.len == 0 || pattern.len > self.len {
            return None;
        }
        self.arrows
            .windows(pattern.len)
            .position(|win| win == pattern.arrows.as_slice())
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> WordDisplay<'a> {
        WordDisplay { word: self, quiver: q }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    quiver: &'a Quiver,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_trivial() {
            return write!(f, "e_{}", self.quiver.vertices()[self.word.source]);
        }
        let names: Vec<&str> = self
            .word
            .arrows
            .iter()
            .map(|&a| self.quiver.arrows()[a].name.as_str())
            .collect();
        write!(f, "{}", names.join("*"))
    }
}

/// A finite linear combination of path words with nonzero coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct Element<K: Coeff = Rat> {
    terms: BTreeMap<Word, K>,
}

impl<K: Coeff> Default for Element<K> {
    fn default() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Coeff> Element<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(w: Word, c: K) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, K)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&w) {
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(w, s);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Option<&K> {
        self.terms.get(w)
    }

    /// Largest term under the monomial order.
    pub fn leading(&self) -> Option<(&Word, &K)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|(w, x)| (w.clone(), x.mul(c)))
                .collect(),
        }
    }

    /// Left-multiplies by `left` and right-multiplies by `right`; terms that
    /// do not compose are dropped (they vanish in the path algebra).
    pub fn sandwich(&self, left: &Word, right: &Word) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            if let Some(lw) = left.concat(w) {
                if let Some(full) = lw.concat(right) {
                    out.add_term(full, c.clone());
                }
            }
        }
        out
    }

    /// Product in the path algebra.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if let Some(uv) = u.concat(v) {
                    out.add_term(uv, a.mul(b));
                }
            }
        }
        out
    }

    pub fn reweigh(&self, g: &WeightGrading) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.reweigh(g), c.clone())))
    }

    pub fn map_coeffs<L: Coeff, F: Fn(&K) -> Option<L>>(&self, f: F) -> Option<Element<L>> {
        let mut out = Element::<L>::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Some(out)
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> ElementDisplay<'a, K> {
        ElementDisplay { elem: self, quiver: q }
    }
}

pub struct ElementDisplay<'a, K: Coeff> {
    elem: &'a Element<K>,
    quiver: &'a Quiver,
}

impl<K: Coeff> fmt::Display for ElementDisplay<'_, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elem.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.elem.terms.iter().rev().enumerate() {
            let text = c.to_text();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag != "1" {
                write!(f, "{mag}*")?;
            }
            write!(f, "{}", w.display(self.quiver))?;
        }
        Ok(())
    }
}
