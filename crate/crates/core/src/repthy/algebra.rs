use std::collections::HashMap;

use num_traits::One;

use super::module::{Ends, Module};
use crate::error::{Error, Result};
use crate::linalg::{axpy, SMat, SparseVec};
use crate::quiver::{Quiver, WeightGrading};
use crate::rewrite::{finiteness_certificate, normal_words, Element, FinitenessVerdict, GroebnerState, Word};
use crate::scalar::Rat;

/// One basis vector of a projective obtained from an earlier one by an arrow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub vertex: usize,
    pub index: usize,
    pub from_vertex: usize,
    pub from_index: usize,
    pub arrow: usize,
}

/// An indecomposable projective `e_v A` with a monomial basis: the generator
/// sits at local index 0 of vertex `v` and every other basis vector is an
/// earlier one times an arrow, exactly.
#[derive(Clone, Debug)]
pub struct Projective {
    pub vertex: usize,
    pub module: Module,
    pub steps: Vec<Step>,
}

impl Projective {
    /// Images of every basis vector under the map `e_v A -> target` sending
    /// the generator to `m`.
    pub fn propagate(&self, target: &Module, m: &SparseVec) -> Vec<Vec<SparseVec>> {
        let mut out: Vec<Vec<SparseVec>> = self
            .module
            .dims()
            .iter()
            .map(|&d| vec![Vec::new(); d])
            .collect();
        out[self.vertex][0] = m.clone();
        for s in &self.steps {
            let prev = out[s.from_vertex][s.from_index].clone();
            out[s.vertex][s.index] = target.act(s.arrow, &prev);
        }
        out
    }

    /// Arrow sequence leading from the generator to each basis vector.
    pub fn labels(&self) -> Vec<Vec<Vec<usize>>> {
        let mut out: Vec<Vec<Vec<usize>>> = self
            .module
            .dims()
            .iter()
            .map(|&d| vec![Vec::new(); d])
            .collect();
        for s in &self.steps {
            let mut l = out[s.from_vertex][s.from_index].clone();
            l.push(s.arrow);
            out[s.vertex][s.index] = l;
        }
        out
    }
}

/// A basic algebra given by its quiver and its indecomposable projectives.
pub trait BasicAlgebra: Sync {
    fn num_vertices(&self) -> usize;
    fn ends(&self) -> &Ends;
    fn arrow_weight(&self, a: usize) -> u64;
    fn projective(&self, v: usize) -> &Projective;

    fn simple(&self, v: usize) -> Module {
        Module::simple(self.ends().clone(), self.num_vertices(), v)
    }

    fn zero_module(&self) -> Module {
        Module::zero(self.ends().clone(), self.num_vertices())
    }
}

pub fn ends_of(q: &Quiver) -> Ends {
    q.arrows().iter().map(|a| (a.source, a.target)).collect::<Vec<_>>().into()
}

/// A finite-dimensional quotient of a path algebra with its structure constants.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    quiver: Quiver,
    grading: WeightGrading,
    ends: Ends,
    basis: Vec<Word>,
    index: HashMap<Word, usize>,
    mult: Vec<Vec<SparseVec>>,
    arrow_basis: Vec<usize>,
    /// `pair_basis[s][t]`: basis words from `s` to `t`, in basis order.
    pair_basis: Vec<Vec<Vec<usize>>>,
    local: Vec<usize>,
    projectives: Vec<Projective>,
}

/// Builds `A/A_{>maxdeg}` (or `A` itself when it vanishes above `maxdeg`).
pub fn truncated_algebra(state: &GroebnerState, maxdeg: u64) -> Result<FiniteAlgebra> {
    if maxdeg > state.exact_through() {
        return Err(Error::BeyondCertified {
            requested: maxdeg,
            certified: state.exact_through(),
        });
    }
    let p = state.presentation();
    let mut basis = normal_words(state, maxdeg);
    basis.sort();
    let index: HashMap<Word, usize> = basis.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let mult = basis
        .iter()
        .map(|x| {
            basis
                .iter()
                .map(|y| match x.concat(y) {
                    Some(w) if w.weight() <= maxdeg => {
                        let nf = state
                            .normal_form(&Element::monomial(w, Rat::one()))
                            .expect("within certified range");
                        let mut v: SparseVec = nf.terms().map(|(w, c)| (index[w], c.clone())).collect();
                        v.sort_by_key(|(i, _)| *i);
                        v
                    }
                    _ => Vec::new(),
                })
                .collect()
        })
        .collect();
    Ok(FiniteAlgebra::from_table(p.quiver.clone(), p.grading.clone(), basis, mult))
}

/// The algebra of a presentation certified finite dimensional.
pub fn algebra_from_groebner(state: &GroebnerState) -> Result<FiniteAlgebra> {
    match finiteness_certificate(state) {
        FinitenessVerdict::Finite { top_degree, .. } => {
            truncated_algebra(state, top_degree.min(state.exact_through()))
        }
        _ => Err(Error::NotFinite),
    }
}

impl FiniteAlgebra {
    /// Assembles an algebra from a basis of words closed under prefixes and
    /// suffixes, and its multiplication table.
    pub fn from_table(
        quiver: Quiver,
        grading: WeightGrading,
        basis: Vec<Word>,
        mult: Vec<Vec<SparseVec>>,
    ) -> Self {
        let n = quiver.num_vertices();
        let ends = ends_of(&quiver);
        let index: HashMap<Word, usize> = basis.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut pair_basis = vec![vec![Vec::new(); n]; n];
        let mut local = vec![0; basis.len()];
        for (i, w) in basis.iter().enumerate() {
            let list: &mut Vec<usize> = &mut pair_basis[w.source()][w.target()];
            local[i] = list.len();
            list.push(i);
        }
        let arrow_basis: Vec<usize> = (0..quiver.num_arrows())
            .map(|a| index[&Word::arrow(&quiver, &grading, a)])
            .collect();
        let mut alg = FiniteAlgebra {
            quiver,
            grading,
            ends,
            basis,
            index,
            mult,
            arrow_basis,
            pair_basis,
            local,
            projectives: Vec::new(),
        };
        alg.projectives = (0..n).map(|v| alg.build_projective(v)).collect();
        alg
    }

    fn build_projective(&self, v: usize) -> Projective {
        let n = self.num_vertices();
        let dims: Vec<usize> = (0..n).map(|w| self.pair_basis[v][w].len()).collect();
        let maps = self
            .ends
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let cols = self.pair_basis[v][s]
                    .iter()
                    .map(|&b| self.to_local(&self.mult[b][self.arrow_basis[a]]))
                    .collect();
                SMat::from_cols(dims[t], cols)
            })
            .collect();
        let module = Module::new(self.ends.clone(), dims, maps);
        let mut words: Vec<usize> = (0..n).flat_map(|w| self.pair_basis[v][w].clone()).collect();
        words.sort_by_key(|&b| self.basis[b].len());
        let steps = words
            .into_iter()
            .filter(|&b| !self.basis[b].is_empty())
            .map(|b| {
                let w = &self.basis[b];
                let prefix = w.slice(&self.quiver, &self.grading, 0, w.len() - 1);
                let parent = self.index[&prefix];
                Step {
                    vertex: w.target(),
                    index: self.local[b],
                    from_vertex: prefix.target(),
                    from_index: self.local[parent],
                    arrow: w.arrows()[w.len() - 1],
                }
            })
            .collect();
        Projective { vertex: v, module, steps }
    }

    /// Re-indexes a combination of basis words (all with the same endpoints)
    /// by local position.
    fn to_local(&self, x: &SparseVec) -> SparseVec {
        let mut v: SparseVec = x.iter().map(|(b, c)| (self.local[*b], c.clone())).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn grading(&self) -> &WeightGrading {
        &self.grading
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    pub fn basis_index(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.index[&Word::trivial(v)]
    }

    pub fn arrow_element(&self, a: usize) -> usize {
        self.arrow_basis[a]
    }

    /// Product of two basis elements.
    pub fn mul_basis(&self, x: usize, y: usize) -> &SparseVec {
        &self.mult[x][y]
    }

    /// Product of two elements given in the global basis.
    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let p = &self.mult[*i][*j];
                if !p.is_empty() {
                    acc = axpy(&acc, &(a * b), p);
                }
            }
        }
        acc
    }

    /// Basis words from `s` to `t`.
    pub fn pair_basis(&self, s: usize, t: usize) -> &[usize] {
        &self.pair_basis[s][t]
    }

    /// Position of a basis word inside `pair_basis(source, target)`.
    pub fn local_index(&self, b: usize) -> usize {
        self.local[b]
    }

    /// Global-basis element from local coordinates in `e_s A e_t`.
    pub fn from_local(&self, s: usize, t: usize, x: &SparseVec) -> SparseVec {
        let mut v: SparseVec = x
            .iter()
            .map(|(i, c)| (self.pair_basis[s][t][*i], c.clone()))
            .collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    /// Local coordinates in `e_s A e_t` of an element of that corner.
    pub fn to_corner(&self, x: &SparseVec) -> SparseVec {
        self.to_local(x)
    }

    pub fn degree(&self, b: usize) -> u64 {
        self.basis[b].weight()
    }

    pub fn source(&self, b: usize) -> usize {
        self.basis[b].source()
    }

    pub fn target(&self, b: usize) -> usize {
        self.basis[b].target()
    }

    /// Same algebra with every basis word regraded.
    pub fn with_grading(&self, grading: WeightGrading) -> FiniteAlgebra {
        let basis: Vec<Word> = self.basis.iter().map(|w| w.reweigh(&grading)).collect();
        FiniteAlgebra::from_table(self.quiver.clone(), grading, basis, self.mult.clone())
    }

    /// The opposite algebra on the opposite quiver, with reversed words.
    pub fn opposite(&self) -> FiniteAlgebra {
        let q = self.quiver.opposite();
        let basis: Vec<Word> = self
            .basis
            .iter()
            .map(|w| {
                if w.is_trivial() {
                    w.clone()
                } else {
                    let rev: Vec<usize> = w.arrows().iter().rev().copied().collect();
                    Word::from_arrows(&q, &self.grading, &rev).expect("reversed word composes")
                }
            })
            .collect();
        let n = basis.len();
        let mult = (0..n)
            .map(|x| (0..n).map(|y| self.mult[y][x].clone()).collect())
            .collect();
        FiniteAlgebra::from_table(q, self.grading.clone(), basis, mult)
    }

    /// `I_v = D(A e_v)`: at `w`, the dual of `e_w A e_v`; an arrow `a: w -> w'`
    /// sends the dual basis vector of `z` to the functional `y -> coeff of z in a*y`.
    pub fn injective(&self, v: usize) -> Module {
        let n = self.num_vertices();
        let dims: Vec<usize> = (0..n).map(|w| self.pair_basis[w][v].len()).collect();
        let maps = self
            .ends
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut cols: Vec<SparseVec> = vec![Vec::new(); dims[s]];
                for (yi, &y) in self.pair_basis[t][v].iter().enumerate() {
                    for (z, c) in &self.mult[self.arrow_basis[a]][y] {
                        cols[self.local[*z]].push((yi, c.clone()));
                    }
                }
                for c in &mut cols {
                    c.sort_by_key(|(i, _)| *i);
                }
                SMat::from_cols(dims[t], cols)
            })
            .collect();
        Module::new(self.ends.clone(), dims, maps)
    }

    /// The regular right module as a direct sum of the projectives.
    pub fn regular(&self) -> Module {
        let mut m = self.zero_module();
        for v in 0..self.num_vertices() {
            m = m.direct_sum(&self.projectives[v].module);
        }
        m
    }

    /// Associativity and unit checks over all basis triples.
    pub fn check_structure(&self) -> bool {
        let n = self.dim();
        let unit_ok = (0..n).all(|b| {
            let s = self.idempotent(self.source(b));
            let t = self.idempotent(self.target(b));
            self.mult[s][b] == vec![(b, Rat::one())] && self.mult[b][t] == vec![(b, Rat::one())]
        });
        let assoc_ok = (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    let left = self.mul(&self.mult[x][y], &vec![(z, Rat::one())]);
                    let right = self.mul(&vec![(x, Rat::one())], &self.mult[y][z]);
                    left == right
                })
            })
        });
        unit_ok && assoc_ok
    }
}

impl BasicAlgebra for FiniteAlgebra {
    fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    fn ends(&self) -> &Ends {
        &self.ends
    }

    fn arrow_weight(&self, a: usize) -> u64 {
        self.grading.weight(a)
    }

    fn projective(&self, v: usize) -> &Projective {
        &self.projectives[v]
    }
}
