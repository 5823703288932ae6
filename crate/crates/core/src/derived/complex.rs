//! Bounded complexes of projective right modules, with differentials given
//! by matrices of algebra elements.
//!
//! A map `e_v A -> e_u A` is left multiplication by an element of
//! `e_u A e_v`, so composing entries is multiplying them in algebra order.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use super::dualizing::DualizingComplex;
use super::enveloping::{dual_bimodule, row, Enveloping};
use crate::linalg::{axpy, coordinates_in, scale, SMat, SparseVec};
use crate::repthy::{kernel, minimal_resolution, quotient, BasicAlgebra, FiniteAlgebra, Module, ModuleMap, ProjSum};
use crate::scalar::{fmt_rat, Rat};

/// Column `c` of a differential: `(row, entry)` pairs sorted by row.
pub type Column = Vec<(usize, SparseVec)>;

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveComplex {
    /// Cohomological degree of `terms[0]`.
    pub lo: i64,
    /// Vertices of the indecomposable summands in each degree.
    pub terms: Vec<Vec<usize>>,
    /// `diffs[n][c]`: the column of summand `c` of `terms[n]`; there are
    /// `terms.len() - 1` differentials.
    pub diffs: Vec<Vec<Column>>,
}

fn unit_vec(b: usize) -> SparseVec {
    vec![(b, Rat::one())]
}

impl ProjectiveComplex {
    pub fn zero() -> Self {
        ProjectiveComplex {
            lo: 0,
            terms: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// `⊕ e_v A` concentrated in one degree.
    pub fn stalk(vertices: Vec<usize>, degree: i64) -> Self {
        ProjectiveComplex {
            lo: degree,
            terms: vec![vertices],
            diffs: Vec::new(),
        }
    }

    /// The regular module `A = ⊕_v e_v A` in degree 0.
    pub fn regular(alg: &FiniteAlgebra) -> Self {
        Self::stalk((0..alg.num_vertices()).collect(), 0)
    }

    /// Minimal projective resolution of `m`, with `P_k` in degree `-k`.
    pub fn resolution(alg: &FiniteAlgebra, m: &Module, max_len: usize) -> Self {
        let (res, sums) = minimal_resolution(alg, m, max_len);
        let len = res.terms.len();
        let mut terms: Vec<Vec<usize>> = res.terms.iter().rev().cloned().collect();
        let mut diffs = Vec::with_capacity(len.saturating_sub(1));
        for k in (0..len.saturating_sub(1)).rev() {
            let cols = res.diffs[k]
                .iter()
                .zip(&res.terms[k + 1])
                .map(|(x, &vj)| {
                    res.terms[k]
                        .iter()
                        .enumerate()
                        .filter_map(|(m, &vm)| {
                            let b = sums[k].block(m, vj, x);
                            (!b.is_empty()).then(|| (m, alg.from_local(vm, vj, &b)))
                        })
                        .collect()
                })
                .collect();
            diffs.push(cols);
        }
        if terms.is_empty() {
            terms.push(Vec::new());
        }
        ProjectiveComplex {
            lo: -(len.max(1) as i64 - 1),
            terms,
            diffs,
        }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn term(&self, degree: i64) -> &[usize] {
        let k = degree - self.lo;
        if k < 0 || k >= self.terms.len() as i64 {
            &[]
        } else {
            &self.terms[k as usize]
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.is_empty())
    }

    /// Number of summands in each degree, as `(degree, count)`.
    pub fn widths(&self) -> Vec<(i64, usize)> {
        self.terms
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_empty())
            .map(|(k, t)| (self.lo + k as i64, t.len()))
            .collect()
    }

    /// Composability of every entry and `d ∘ d = 0`.
    pub fn check(&self, alg: &FiniteAlgebra) -> bool {
        let composable = self.diffs.iter().enumerate().all(|(n, d)| {
            d.iter().enumerate().all(|(c, col)| {
                col.iter().all(|(r, y)| {
                    y.iter().all(|(b, _)| {
                        alg.source(*b) == self.terms[n + 1][*r] && alg.target(*b) == self.terms[n][c]
                    })
                })
            })
        });
        let squares_vanish = self.diffs.windows(2).all(|w| {
            w[0].iter().all(|col| {
                let mut acc: BTreeMap<usize, SparseVec> = BTreeMap::new();
                for (r, y) in col {
                    for (s, z) in &w[1][*r] {
                        let e = acc.entry(*s).or_default();
                        *e = axpy(e, &Rat::one(), &alg.mul(z, y));
                    }
                }
                acc.values().all(|v| v.is_empty())
            })
        });
        composable && squares_vanish
    }

    /// `C ⊗_A Θ[d]`. A summand `e_v A` of `C^n` and a summand `A e_p ⊗ e_q A`
    /// of `Θ^k` give one copy of `e_q A` in degree `n + k - d` for every basis
    /// word `w` of `e_v A e_p`.
    pub fn tensor_dualizing(&self, alg: &FiniteAlgebra, theta: &DualizingComplex, d: i64) -> Self {
        if self.is_zero() || theta.is_empty() {
            return Self::zero();
        }
        let width = self.terms.len() + theta.len() - 1;
        let lo = self.lo - d;
        let mut terms: Vec<Vec<usize>> = vec![Vec::new(); width];
        let mut index: HashMap<(usize, usize, usize, usize, usize), usize> = HashMap::new();
        for (n, t) in self.terms.iter().enumerate() {
            for (j, &v) in t.iter().enumerate() {
                for (k, tk) in theta.terms.iter().enumerate() {
                    for (i, &(p, q)) in tk.iter().enumerate() {
                        for &w in alg.pair_basis(v, p) {
                            let slot = &mut terms[n + k];
                            index.insert((n, j, k, i, w), slot.len());
                            slot.push(q);
                        }
                    }
                }
            }
        }
        let mut diffs: Vec<Vec<BTreeMap<usize, SparseVec>>> =
            terms.iter().take(width - 1).map(|t| vec![BTreeMap::new(); t.len()]).collect();
        for (n, t) in self.terms.iter().enumerate() {
            let sign = if (self.lo + n as i64).rem_euclid(2) == 0 { Rat::one() } else { -Rat::one() };
            for (j, &v) in t.iter().enumerate() {
                for (k, tk) in theta.terms.iter().enumerate() {
                    for (i, &(p, q)) in tk.iter().enumerate() {
                        for &w in alg.pair_basis(v, p) {
                            if n + k + 1 == width {
                                continue;
                            }
                            let src = index[&(n, j, k, i, w)];
                            let col = &mut diffs[n + k][src];
                            if let Some(dc) = self.diffs.get(n) {
                                for (r, y) in &dc[j] {
                                    for (w2, c) in alg.mul(y, &unit_vec(w)) {
                                        let tgt = index[&(n + 1, *r, k, i, w2)];
                                        let e = col.entry(tgt).or_default();
                                        *e = axpy(e, &c, &unit_vec(alg.idempotent(q)));
                                    }
                                }
                            }
                            if let Some(dt) = theta.diffs.get(k) {
                                for entry in &dt[i] {
                                    let c0 = &sign * &entry.coeff;
                                    for (w2, c) in alg.mul(&unit_vec(w), &unit_vec(entry.left)) {
                                        let tgt = index[&(n, j, k + 1, entry.target, w2)];
                                        let e = col.entry(tgt).or_default();
                                        *e = axpy(e, &(&c0 * &c), &unit_vec(entry.right));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        let diffs = diffs
            .into_iter()
            .map(|d| {
                d.into_iter()
                    .map(|col| col.into_iter().filter(|(_, e)| !e.is_empty()).collect())
                    .collect()
            })
            .collect();
        ProjectiveComplex { lo, terms, diffs }
    }

    /// Cancels contractible summands `e_v A -u-> e_v A` with `u` invertible,
    /// taking pivots in basis order, then trims zero terms at both ends.
    pub fn minimize(&self, alg: &FiniteAlgebra) -> Self {
        let len = self.terms.len();
        let mut alive: Vec<Vec<bool>> = self.terms.iter().map(|t| vec![true; t.len()]).collect();
        let mut cols: Vec<Vec<BTreeMap<usize, SparseVec>>> = self
            .diffs
            .iter()
            .map(|d| d.iter().map(|c| c.iter().cloned().collect()).collect())
            .collect();
        let mut rows: Vec<Vec<BTreeSet<usize>>> = (0..len.saturating_sub(1))
            .map(|n| {
                let mut r = vec![BTreeSet::new(); self.terms[n + 1].len()];
                for (c, col) in cols[n].iter().enumerate() {
                    for &i in col.keys() {
                        r[i].insert(c);
                    }
                }
                r
            })
            .collect();
        for n in 0..len.saturating_sub(1) {
            while let Some((c, r)) = find_pivot(alg, &self.terms[n], &self.terms[n + 1], &alive[n], &cols[n]) {
                let uinv = invert_unit(alg, &cols[n][c][&r]);
                let pivot_col: Vec<(usize, SparseVec)> = cols[n][c]
                    .iter()
                    .filter(|(i, _)| **i != r)
                    .map(|(i, e)| (*i, alg.mul(e, &uinv)))
                    .collect();
                let others: Vec<usize> = rows[n][r].iter().copied().filter(|&j| j != c).collect();
                for j in others {
                    let y = cols[n][j][&r].clone();
                    for (i, x) in &pivot_col {
                        let delta = alg.mul(x, &y);
                        let e = cols[n][j].entry(*i).or_default();
                        *e = axpy(e, &-Rat::one(), &delta);
                        if e.is_empty() {
                            cols[n][j].remove(i);
                            rows[n][*i].remove(&j);
                        } else {
                            rows[n][*i].insert(j);
                        }
                    }
                }
                // drop source summand c and target summand r everywhere
                for i in cols[n][c].keys().copied().collect::<Vec<_>>() {
                    rows[n][i].remove(&c);
                }
                cols[n][c].clear();
                for j in std::mem::take(&mut rows[n][r]) {
                    cols[n][j].remove(&r);
                }
                if n > 0 {
                    for j in std::mem::take(&mut rows[n - 1][c]) {
                        cols[n - 1][j].remove(&c);
                    }
                }
                if n + 1 < cols.len() {
                    for i in std::mem::take(&mut cols[n + 1][r]).into_keys() {
                        rows[n + 1][i].remove(&r);
                    }
                }
                alive[n][c] = false;
                alive[n + 1][r] = false;
            }
        }
        let renumber: Vec<Vec<Option<usize>>> = alive
            .iter()
            .map(|a| {
                let mut k = 0;
                a.iter()
                    .map(|&x| {
                        x.then(|| {
                            k += 1;
                            k - 1
                        })
                    })
                    .collect()
            })
            .collect();
        let terms: Vec<Vec<usize>> = self
            .terms
            .iter()
            .zip(&alive)
            .map(|(t, a)| t.iter().zip(a).filter(|(_, &x)| x).map(|(v, _)| *v).collect())
            .collect();
        let diffs: Vec<Vec<Column>> = cols
            .into_iter()
            .enumerate()
            .map(|(n, d)| {
                d.into_iter()
                    .enumerate()
                    .filter(|(c, _)| alive[n][*c])
                    .map(|(_, col)| {
                        col.into_iter()
                            .map(|(i, e)| (renumber[n + 1][i].expect("live row"), e))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        ProjectiveComplex {
            lo: self.lo,
            terms,
            diffs,
        }
        .trimmed()
    }

    /// Drops empty terms at both ends.
    pub fn trimmed(mut self) -> Self {
        while self.terms.last().is_some_and(|t| t.is_empty()) {
            self.terms.pop();
            self.diffs.pop();
        }
        while self.terms.first().is_some_and(|t| t.is_empty()) {
            self.terms.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        if self.terms.is_empty() {
            return Self::zero();
        }
        self
    }

    /// Matrix of the differential out of degree `n` evaluated at vertex `x`.
    fn matrix_at(&self, alg: &FiniteAlgebra, n: usize, x: usize) -> SMat {
        let tgt = &self.terms[n + 1];
        let mut offset = vec![0];
        for &u in tgt {
            offset.push(offset.last().unwrap() + alg.pair_basis(u, x).len());
        }
        let mut cols = Vec::new();
        for (c, &v) in self.terms[n].iter().enumerate() {
            for &z in alg.pair_basis(v, x) {
                let mut col = Vec::new();
                for (r, y) in &self.diffs[n][c] {
                    let img = alg.to_corner(&alg.mul(y, &unit_vec(z)));
                    col.extend(img.into_iter().map(|(i, a)| (offset[*r] + i, a)));
                }
                cols.push(col);
            }
        }
        SMat::from_cols(*offset.last().unwrap(), cols)
    }

    /// Dimension vectors of the cohomology, as `(degree, dims)` for every
    /// degree with nonzero cohomology.
    pub fn cohomology_dims(&self, alg: &FiniteAlgebra) -> Vec<(i64, Vec<usize>)> {
        let nv = alg.num_vertices();
        let len = self.terms.len();
        let ranks: Vec<Vec<usize>> = (0..len.saturating_sub(1))
            .map(|n| (0..nv).map(|x| self.matrix_at(alg, n, x).rank()).collect())
            .collect();
        let mut out = Vec::new();
        for n in 0..len {
            let dims: Vec<usize> = (0..nv)
                .map(|x| {
                    let total: usize = self.terms[n].iter().map(|&v| alg.pair_basis(v, x).len()).sum();
                    let outgoing = ranks.get(n).map_or(0, |r| r[x]);
                    let incoming = if n == 0 { 0 } else { ranks[n - 1][x] };
                    total - outgoing - incoming
                })
                .collect();
            if dims.iter().any(|&d| d > 0) {
                out.push((self.lo + n as i64, dims));
            }
        }
        out
    }

    /// True when all cohomology sits in degree 0.
    pub fn concentrated_in_zero(&self, alg: &FiniteAlgebra) -> bool {
        self.cohomology_dims(alg).iter().all(|(deg, _)| *deg == 0)
    }

    fn proj_sum(&self, alg: &FiniteAlgebra, degree: i64) -> ProjSum {
        ProjSum::new(alg, self.term(degree).to_vec())
    }

    /// The differential out of `degree` as a module map between the sums.
    fn module_map(&self, alg: &FiniteAlgebra, degree: i64, src: &ProjSum, tgt: &ProjSum) -> ModuleMap {
        let k = degree - self.lo;
        let images: Vec<SparseVec> = src
            .summands
            .iter()
            .enumerate()
            .map(|(c, &v)| {
                if k < 0 || k as usize >= self.diffs.len() {
                    return Vec::new();
                }
                let mut acc = Vec::new();
                for (r, y) in &self.diffs[k as usize][c] {
                    let local: SparseVec = alg
                        .to_corner(y)
                        .into_iter()
                        .map(|(i, a)| (tgt.offsets[*r][v] + i, a))
                        .collect();
                    acc = axpy(&acc, &Rat::one(), &local);
                }
                acc
            })
            .collect();
        src.map_to(alg, &tgt.module, &images)
    }

    /// The cohomology module in the given degree.
    pub fn cohomology(&self, alg: &FiniteAlgebra, degree: i64) -> Module {
        let prev = self.proj_sum(alg, degree - 1);
        let mid = self.proj_sum(alg, degree);
        let next = self.proj_sum(alg, degree + 1);
        let out = self.module_map(alg, degree, &mid, &next);
        let inc = self.module_map(alg, degree - 1, &prev, &mid);
        let (ker, incl) = kernel(&mid.module, &out);
        let span: Vec<Vec<SparseVec>> = (0..alg.num_vertices())
            .map(|x| coordinates_in(&incl.maps[x].cols, mid.module.dim(x), &inc.maps[x].cols))
            .collect();
        quotient(&ker, &span).0
    }

    /// Terms as multiplicity vectors and differentials as element matrices.
    pub fn to_json(&self, alg: &FiniteAlgebra) -> serde_json::Value {
        let q = alg.quiver();
        let nv = alg.num_vertices();
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .enumerate()
            .map(|(k, t)| {
                let mut mult = vec![0usize; nv];
                for &v in t {
                    mult[v] += 1;
                }
                serde_json::json!({
                    "degree": self.lo + k as i64,
                    "summands": t.iter().map(|&v| q.vertices()[v].clone()).collect::<Vec<_>>(),
                    "multiplicities": mult,
                })
            })
            .collect();
        let diffs: Vec<serde_json::Value> = self
            .diffs
            .iter()
            .enumerate()
            .map(|(k, d)| {
                let entries: Vec<DiffEntry> = d
                    .iter()
                    .enumerate()
                    .flat_map(|(c, col)| {
                        col.iter().map(move |(r, y)| DiffEntry {
                            row: *r,
                            col: c,
                            element: element_string(alg, y),
                        })
                    })
                    .collect();
                serde_json::json!({ "from_degree": self.lo + k as i64, "entries": entries })
            })
            .collect();
        serde_json::json!({ "terms": terms, "differentials": diffs })
    }
}

#[derive(Serialize)]
struct DiffEntry {
    row: usize,
    col: usize,
    element: String,
}

pub(crate) fn element_string(alg: &FiniteAlgebra, y: &SparseVec) -> String {
    if y.is_empty() {
        return "0".into();
    }
    let q = alg.quiver();
    y.iter()
        .map(|(b, c)| {
            let w = &alg.basis()[*b];
            let word = if w.is_trivial() {
                format!("e_{}", q.vertices()[w.source()])
            } else {
                w.display(q).to_string()
            };
            if c.is_one() {
                word
            } else {
                format!("{}*{}", fmt_rat(c), word)
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn find_pivot(
    alg: &FiniteAlgebra,
    src: &[usize],
    tgt: &[usize],
    alive: &[bool],
    cols: &[BTreeMap<usize, SparseVec>],
) -> Option<(usize, usize)> {
    cols.iter().enumerate().filter(|(c, _)| alive[*c]).find_map(|(c, col)| {
        col.iter()
            .find(|(r, e)| tgt[**r] == src[c] && is_unit(alg, src[c], e))
            .map(|(r, _)| (c, *r))
    })
}

/// An element of `e_v A e_v` is invertible iff its `e_v` coefficient is nonzero.
fn is_unit(alg: &FiniteAlgebra, v: usize, e: &SparseVec) -> bool {
    let id = alg.idempotent(v);
    e.iter().any(|(b, c)| *b == id && !c.is_zero())
}

/// `(a e + x)^{-1} = a^{-1} Σ (-x/a)^k` for radical `x`.
fn invert_unit(alg: &FiniteAlgebra, u: &SparseVec) -> SparseVec {
    let v = alg.source(u[0].0);
    let id = alg.idempotent(v);
    let a = u.iter().find(|(b, _)| *b == id).expect("unit").1.clone();
    let ainv = Rat::one() / &a;
    let x: SparseVec = u.iter().filter(|(b, _)| *b != id).cloned().collect();
    let step = scale(&x, &-ainv.clone());
    let mut term = unit_vec(id);
    let mut sum = term.clone();
    loop {
        term = alg.mul(&term, &step);
        if term.is_empty() {
            break;
        }
        sum = axpy(&sum, &Rat::one(), &term);
    }
    scale(&sum, &ainv)
}

/// `S_d^{-1}` on a complex: tensor with `Θ[d]` and minimize.
pub fn inverse_serre(alg: &FiniteAlgebra, theta: &DualizingComplex, d: i64, c: &ProjectiveComplex) -> ProjectiveComplex {
    c.tensor_dualizing(alg, theta, d).minimize(alg)
}

/// The iterates `S_d^{-p} C` for `p = 1..=p_max`.
pub fn inverse_serre_iterate(
    alg: &FiniteAlgebra,
    theta: &DualizingComplex,
    d: i64,
    start: &ProjectiveComplex,
    p_max: usize,
) -> Vec<ProjectiveComplex> {
    let mut out: Vec<ProjectiveComplex> = Vec::with_capacity(p_max);
    for _ in 0..p_max {
        let prev = out.last().unwrap_or(start);
        let next = inverse_serre(alg, theta, d, prev);
        out.push(next);
    }
    out
}

/// `ν(e_i A) = e_i D(A)`, read off the dual bimodule.
pub fn nakayama_stalk(alg: &FiniteAlgebra, env: &Enveloping, i: usize) -> Module {
    row(alg, env, &dual_bimodule(alg, env), i)
}
