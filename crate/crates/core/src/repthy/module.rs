//! Right modules as quiver representations and their maps.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::linalg::{unit, Echelon, SMat, SparseVec};
use crate::scalar::{fmt_rat, rat, Rat};

/// `(source, target)` of every arrow.
pub type Ends = Arc<[(usize, usize)]>;

/// A representation: arrow `a: s -> t` acts `M_s -> M_t`, so the path `a*b`
/// acts by `B * A`.
#[derive(Clone, Debug, PartialEq)]
pub struct Module {
    ends: Ends,
    dims: Vec<usize>,
    maps: Vec<SMat>,
}

impl Module {
    pub fn new(ends: Ends, dims: Vec<usize>, maps: Vec<SMat>) -> Self {
        assert_eq!(ends.len(), maps.len(), "one matrix per arrow");
        for (&(s, t), m) in ends.iter().zip(&maps) {
            assert_eq!((m.nrows, m.ncols), (dims[t], dims[s]), "matrix shape");
        }
        Module { ends, dims, maps }
    }

    pub fn zero(ends: Ends, num_vertices: usize) -> Self {
        let dims = vec![0; num_vertices];
        let maps = ends.iter().map(|_| SMat::zeros(0, 0)).collect();
        Module { ends, dims, maps }
    }

    pub fn simple(ends: Ends, num_vertices: usize, v: usize) -> Self {
        let mut dims = vec![0; num_vertices];
        dims[v] = 1;
        let maps = ends
            .iter()
            .map(|&(s, t)| SMat::zeros(dims[t], dims[s]))
            .collect();
        Module { ends, dims, maps }
    }

    pub fn ends(&self) -> &Ends {
        &self.ends
    }

    pub fn num_vertices(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, a: usize) -> &SMat {
        &self.maps[a]
    }

    pub fn maps(&self) -> &[SMat] {
        &self.maps
    }

    /// `v * a` for `v` in the space at the source of `a`.
    pub fn act(&self, a: usize, v: &SparseVec) -> SparseVec {
        self.maps[a].apply(v)
    }

    pub fn act_path(&self, arrows: &[usize], v: &SparseVec) -> SparseVec {
        arrows.iter().fold(v.clone(), |acc, &a| self.act(a, &acc))
    }

    pub fn direct_sum(&self, other: &Module) -> Module {
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .ends
            .iter()
            .enumerate()
            .map(|(a, &(s, _))| {
                let mut cols = self.maps[a].cols.clone();
                let shift = self.dims[self.ends[a].1];
                cols.extend(
                    other.maps[a]
                        .cols
                        .iter()
                        .map(|c| c.iter().map(|(i, v)| (i + shift, v.clone())).collect()),
                );
                debug_assert_eq!(cols.len(), self.dims[s] + other.dims[s]);
                SMat::from_cols(dims[self.ends[a].1], cols)
            })
            .collect();
        Module {
            ends: self.ends.clone(),
            dims,
            maps,
        }
    }

    /// Vector-space dual over the opposite quiver, whose arrow `a` runs
    /// `t -> s`.
    pub fn dual(&self, opposite_ends: Ends) -> Module {
        let maps = self.maps.iter().map(|m| m.transpose()).collect();
        Module::new(opposite_ends, self.dims.clone(), maps)
    }

    /// The same representation over a quiver with other arrow labels.
    pub fn with_ends(&self, ends: Ends) -> Module {
        Module::new(ends, self.dims.clone(), self.maps.clone())
    }

    /// Matrix of a path whose first arrow starts at `start`.
    pub fn path_matrix(&self, arrows: &[usize], start: usize) -> SMat {
        let cols = (0..self.dims[start])
            .map(|j| self.act_path(arrows, &unit(j)))
            .collect();
        let end = arrows.last().map_or(start, |&a| self.ends[a].1);
        SMat::from_cols(self.dims[end], cols)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mats: Vec<serde_json::Value> = self
            .maps
            .iter()
            .map(|m| {
                json!(m
                    .to_dense()
                    .iter()
                    .map(|r| r.iter().map(fmt_rat).collect::<Vec<_>>())
                    .collect::<Vec<_>>())
            })
            .collect();
        json!({ "dims": self.dims, "maps": mats })
    }
}

/// A module homomorphism: one matrix per vertex (target dim x source dim).
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap {
    pub maps: Vec<SMat>,
}

impl ModuleMap {
    pub fn zero(src: &Module, tgt: &Module) -> Self {
        ModuleMap {
            maps: (0..src.num_vertices())
                .map(|v| SMat::zeros(tgt.dim(v), src.dim(v)))
                .collect(),
        }
    }

    pub fn identity(m: &Module) -> Self {
        ModuleMap {
            maps: m.dims().iter().map(|&d| SMat::identity(d)).collect(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scaled(&self, c: &Rat) -> ModuleMap {
        ModuleMap {
            maps: self.maps.iter().map(|m| m.scaled(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(|m| m.is_zero())
    }

    /// Flattened coefficients, for span computations over Hom spaces.
    pub fn flatten(&self) -> SparseVec {
        let mut out = Vec::new();
        let mut offset = 0;
        for m in &self.maps {
            for (j, col) in m.cols.iter().enumerate() {
                for (i, v) in col {
                    out.push((offset + j * m.nrows + i, v.clone()));
                }
            }
            offset += m.nrows * m.ncols;
        }
        out.sort_by_key(|(i, _)| *i);
        out
    }

    pub fn flatten_len(&self) -> usize {
        self.maps.iter().map(|m| m.nrows * m.ncols).sum()
    }

    pub fn commutes(&self, src: &Module, tgt: &Module) -> bool {
        src.ends().iter().enumerate().all(|(a, &(s, t))| {
            tgt.map(a).mul(&self.maps[s]) == self.maps[t].mul(src.map(a))
        })
    }

    pub fn is_iso(&self) -> bool {
        self.maps
            .iter()
            .all(|m| m.nrows == m.ncols && m.rank() == m.nrows)
    }
}

/// Submodule spanned by the given per-vertex vectors, assumed closed under
/// the arrows; returned with its inclusion.
pub fn submodule(m: &Module, basis: Vec<Vec<SparseVec>>) -> (Module, ModuleMap) {
    let mut echs: Vec<Echelon> = Vec::with_capacity(basis.len());
    for (v, vecs) in basis.iter().enumerate() {
        let mut e = Echelon::new(m.dim(v), true);
        for (k, b) in vecs.iter().enumerate() {
            let dep = e.insert_tagged(b.clone(), unit(k));
            assert!(dep.is_none(), "submodule basis is dependent");
        }
        echs.push(e);
    }
    let dims: Vec<usize> = basis.iter().map(|b| b.len()).collect();
    let maps = m
        .ends()
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let cols = basis[s]
                .iter()
                .map(|b| {
                    echs[t]
                        .coordinates(&m.act(a, b))
                        .expect("subspace is not closed under the arrows")
                })
                .collect();
            SMat::from_cols(dims[t], cols)
        })
        .collect();
    let sub = Module::new(m.ends().clone(), dims.clone(), maps);
    let incl = ModuleMap {
        maps: basis
            .into_iter()
            .enumerate()
            .map(|(v, b)| SMat::from_cols(m.dim(v), b))
            .collect(),
    };
    (sub, incl)
}

/// Quotient by the submodule spanned by the given per-vertex vectors (any
/// spanning set), with the projection. The quotient basis is the set of
/// standard vectors not hit by a pivot.
pub fn quotient(m: &Module, span: &[Vec<SparseVec>]) -> (Module, ModuleMap) {
    let echs: Vec<Echelon> = span
        .iter()
        .enumerate()
        .map(|(v, vecs)| {
            let mut e = Echelon::new(m.dim(v), false);
            for x in vecs {
                e.insert(x.clone());
            }
            e
        })
        .collect();
    let comps: Vec<Vec<usize>> = echs.iter().map(|e| e.complement()).collect();
    let pos: Vec<Vec<usize>> = comps
        .iter()
        .enumerate()
        .map(|(v, c)| {
            let mut p = vec![usize::MAX; m.dim(v)];
            for (k, &i) in c.iter().enumerate() {
                p[i] = k;
            }
            p
        })
        .collect();
    let project = |v: usize, x: &SparseVec| -> SparseVec {
        echs[v]
            .reduce(x)
            .into_iter()
            .map(|(i, c)| (pos[v][i], c))
            .collect()
    };
    let dims: Vec<usize> = comps.iter().map(|c| c.len()).collect();
    let maps = m
        .ends()
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let cols = comps[s].iter().map(|&i| project(t, &m.act(a, &unit(i)))).collect();
            SMat::from_cols(dims[t], cols)
        })
        .collect();
    let q = Module::new(m.ends().clone(), dims.clone(), maps);
    let proj = ModuleMap {
        maps: (0..m.num_vertices())
            .map(|v| {
                let cols = (0..m.dim(v)).map(|i| project(v, &unit(i))).collect();
                SMat::from_cols(dims[v], cols)
            })
            .collect(),
    };
    (q, proj)
}

pub fn kernel(src: &Module, f: &ModuleMap) -> (Module, ModuleMap) {
    let basis = f.maps.iter().map(|m| m.kernel()).collect();
    submodule(src, basis)
}

pub fn cokernel(tgt: &Module, f: &ModuleMap) -> (Module, ModuleMap) {
    let span: Vec<Vec<SparseVec>> = f.maps.iter().map(|m| m.cols.clone()).collect();
    quotient(tgt, &span)
}

/// Image of `f` as a submodule of the target.
pub fn image(tgt: &Module, f: &ModuleMap) -> (Module, ModuleMap) {
    let basis = f
        .maps
        .iter()
        .map(|m| {
            let mut e = Echelon::new(m.nrows, false);
            m.cols.iter().filter(|c| e.insert((*c).clone())).cloned().collect()
        })
        .collect();
    submodule(tgt, basis)
}

/// Radical: at each vertex, the sum of the images of incoming arrows.
pub fn radical_span(m: &Module) -> Vec<Vec<SparseVec>> {
    let mut span = vec![Vec::new(); m.num_vertices()];
    for (a, &(_, t)) in m.ends().iter().enumerate() {
        span[t].extend(m.map(a).cols.iter().filter(|c| !c.is_empty()).cloned());
    }
    span
}

pub fn radical(m: &Module) -> (Module, ModuleMap) {
    let span = radical_span(m);
    let basis = span
        .into_iter()
        .enumerate()
        .map(|(v, vecs)| {
            let mut e = Echelon::new(m.dim(v), false);
            vecs.into_iter().filter(|x| e.insert(x.clone())).collect()
        })
        .collect();
    submodule(m, basis)
}

/// Standard basis vectors lifting a basis of the top, vertex by vertex.
pub fn top_lifts(m: &Module) -> Vec<(usize, SparseVec)> {
    let span = radical_span(m);
    let mut out = Vec::new();
    for (v, vecs) in span.into_iter().enumerate() {
        let mut e = Echelon::new(m.dim(v), false);
        for x in vecs {
            e.insert(x);
        }
        out.extend(e.complement().into_iter().map(|i| (v, unit(i))));
    }
    out
}

pub fn top_dims(m: &Module) -> Vec<usize> {
    let mut dims = vec![0; m.num_vertices()];
    for (v, _) in top_lifts(m) {
        dims[v] += 1;
    }
    dims
}

/// Socle: vectors killed by every outgoing arrow.
pub fn socle(m: &Module) -> (Module, ModuleMap) {
    let basis = (0..m.num_vertices())
        .map(|v| {
            let outgoing: Vec<&SMat> = m
                .ends()
                .iter()
                .enumerate()
                .filter(|(_, &(s, _))| s == v)
                .map(|(a, _)| m.map(a))
                .collect();
            crate::linalg::common_kernel(&outgoing, m.dim(v))
        })
        .collect();
    submodule(m, basis)
}

/// Basis of the space of intertwiners `M -> N`.
pub fn hom_space(m: &Module, n: &Module) -> Vec<ModuleMap> {
    let nv = m.num_vertices();
    let mut var_offset = vec![0; nv + 1];
    for v in 0..nv {
        var_offset[v + 1] = var_offset[v] + n.dim(v) * m.dim(v);
    }
    let nvars = var_offset[nv];
    if nvars == 0 {
        return Vec::new();
    }
    let var = |v: usize, i: usize, j: usize| var_offset[v] + i * m.dim(v) + j;
    let mut cols: Vec<SparseVec> = vec![Vec::new(); nvars];
    let mut row = 0;
    for (a, &(s, t)) in m.ends().iter().enumerate() {
        // rows (i, j): i over N_t, j over M_s; equation (N_a X_s - X_t M_a)[i][j] = 0
        let eq = |i: usize, j: usize| row + i * m.dim(s) + j;
        let na = n.map(a);
        for k in 0..n.dim(s) {
            for (i, c) in &na.cols[k] {
                for j in 0..m.dim(s) {
                    cols[var(s, k, j)].push((eq(*i, j), c.clone()));
                }
            }
        }
        let ma = m.map(a);
        for j in 0..m.dim(s) {
            for (k, c) in &ma.cols[j] {
                for i in 0..n.dim(t) {
                    cols[var(t, i, *k)].push((eq(i, j), -c.clone()));
                }
            }
        }
        row += n.dim(t) * m.dim(s);
    }
    for c in &mut cols {
        *c = crate::linalg::collect_vec(std::mem::take(c));
    }
    let kernel = SMat::from_cols(row, cols).kernel();
    kernel
        .into_iter()
        .map(|x| {
            let mut maps: Vec<Vec<SparseVec>> =
                (0..nv).map(|v| vec![Vec::new(); m.dim(v)]).collect();
            for (idx, c) in x {
                let v = (0..nv).find(|&v| idx < var_offset[v + 1]).expect("in range");
                let local = idx - var_offset[v];
                let (i, j) = (local / m.dim(v), local % m.dim(v));
                maps[v][j].push((i, c));
            }
            ModuleMap {
                maps: maps
                    .into_iter()
                    .enumerate()
                    .map(|(v, mut cs)| {
                        for c in &mut cs {
                            c.sort_by_key(|(i, _)| *i);
                        }
                        SMat::from_cols(n.dim(v), cs)
                    })
                    .collect(),
            }
        })
        .collect()
}

/// Deterministic pseudo-random combination of maps with small integer weights.
pub fn random_combination(basis: &[ModuleMap], seed: u64) -> Option<ModuleMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut it = basis.iter();
    let first = it.next()?;
    let mut acc = first.scaled(&rat(rng.gen_range(1..=97)));
    for b in it {
        acc = acc.add(&b.scaled(&rat(rng.gen_range(1..=97))));
    }
    Some(acc)
}

/// Searches for an isomorphism among random combinations of Hom basis
/// elements. A `None` is not a proof of non-isomorphism unless the
/// dimension vectors differ.
pub fn find_isomorphism(m: &Module, n: &Module) -> Option<ModuleMap> {
    if m.dims() != n.dims() {
        return None;
    }
    if m.is_zero() {
        return Some(ModuleMap::zero(m, n));
    }
    let basis = hom_space(m, n);
    (0..4u64).find_map(|seed| random_combination(&basis, seed).filter(|f| f.is_iso()))
}

pub fn is_isomorphic(m: &Module, n: &Module) -> bool {
    find_isomorphism(m, n).is_some()
}
