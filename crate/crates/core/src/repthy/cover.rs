//! Graded modules as representations of a covering quiver.
//!
//! A vertex `(v, g)` carries the degree-`g` part at `v`; an arrow `a` of
//! weight `w` lifts to `(a, g): (s, g) -> (t, g + w)`. Only degrees inside a
//! window `lo..=hi` are kept, so projectives are truncated at `hi`.

use std::sync::Arc;

use super::algebra::{BasicAlgebra, Projective, Step};
use super::module::{Ends, Module};
use crate::linalg::{SMat, SparseVec};

#[derive(Clone, Debug)]
pub struct GradedCover {
    base_vertices: usize,
    lo: i64,
    hi: i64,
    ends: Ends,
    weights: Vec<u64>,
    base_arrow: Vec<usize>,
    projectives: Vec<Projective>,
}

/// Degree of every basis vector of a projective, from its step tree.
pub fn projective_degrees<A: BasicAlgebra + ?Sized>(alg: &A, v: usize) -> Vec<Vec<u64>> {
    let p = alg.projective(v);
    let mut deg: Vec<Vec<u64>> = p.module.dims().iter().map(|&d| vec![0; d]).collect();
    for s in &p.steps {
        deg[s.vertex][s.index] = deg[s.from_vertex][s.from_index] + alg.arrow_weight(s.arrow);
    }
    deg
}

impl GradedCover {
    pub fn new<A: BasicAlgebra + ?Sized>(base: &A, lo: i64, hi: i64) -> Self {
        assert!(lo <= hi);
        let n = base.num_vertices();
        let width = (hi - lo + 1) as usize;
        let mut ends = Vec::new();
        let mut weights = Vec::new();
        let mut base_arrow = Vec::new();
        for g in 0..width {
            for (a, &(s, t)) in base.ends().iter().enumerate() {
                let w = base.arrow_weight(a) as usize;
                if g + w < width {
                    ends.push((g * n + s, (g + w) * n + t));
                    weights.push(w as u64);
                    base_arrow.push(a);
                }
            }
        }
        let mut cover = GradedCover {
            base_vertices: n,
            lo,
            hi,
            ends: Arc::from(ends),
            weights,
            base_arrow,
            projectives: Vec::new(),
        };
        let arrow_at: std::collections::HashMap<(usize, usize), usize> = cover
            .base_arrow
            .iter()
            .enumerate()
            .map(|(ca, &a)| ((a, cover.ends[ca].0 / n), ca))
            .collect();
        let degs: Vec<Vec<Vec<u64>>> = (0..n).map(|v| projective_degrees(base, v)).collect();
        let mut projectives = Vec::with_capacity(width * n);
        for g in 0..width {
            for v in 0..n {
                projectives.push(cover.lift_projective(base, v, g, &degs[v], &arrow_at));
            }
        }
        cover.projectives = projectives;
        cover
    }

    fn lift_projective<A: BasicAlgebra + ?Sized>(
        &self,
        base: &A,
        v: usize,
        g: usize,
        deg: &[Vec<u64>],
        arrow_at: &std::collections::HashMap<(usize, usize), usize>,
    ) -> Projective {
        let n = self.base_vertices;
        let width = (self.hi - self.lo + 1) as usize;
        let p = base.projective(v);
        // position of each kept base vector inside its cover vertex
        let mut pos: Vec<Vec<Option<usize>>> = p.module.dims().iter().map(|&d| vec![None; d]).collect();
        let mut dims = vec![0usize; width * n];
        for w in 0..n {
            for i in 0..p.module.dim(w) {
                let d = g + deg[w][i] as usize;
                if d < width {
                    let cv = d * n + w;
                    pos[w][i] = Some(dims[cv]);
                    dims[cv] += 1;
                }
            }
        }
        let maps = self
            .ends
            .iter()
            .enumerate()
            .map(|(ca, &(cs, ct))| {
                let a = self.base_arrow[ca];
                let (s, gs) = (cs % n, cs / n);
                let mut cols = Vec::with_capacity(dims[cs]);
                if dims[cs] > 0 {
                    let m = p.module.map(a);
                    for i in 0..p.module.dim(s) {
                        if pos[s][i].is_some() && g + deg[s][i] as usize == gs {
                            let col = m.cols[i]
                                .iter()
                                .filter_map(|(r, c)| pos[ct % n][*r].map(|k| (k, c.clone())))
                                .collect();
                            cols.push(col);
                        }
                    }
                }
                SMat::from_cols(dims[ct], cols)
            })
            .collect();
        let module = Module::new(self.ends.clone(), dims, maps);
        let steps = p
            .steps
            .iter()
            .filter_map(|s| {
                let k = pos[s.vertex][s.index]?;
                let from = pos[s.from_vertex][s.from_index].expect("prefixes have smaller degree");
                let from_deg = g + deg[s.from_vertex][s.from_index] as usize;
                Some(Step {
                    vertex: (g + deg[s.vertex][s.index] as usize) * n + s.vertex,
                    index: k,
                    from_vertex: from_deg * n + s.from_vertex,
                    from_index: from,
                    arrow: arrow_at[&(s.arrow, from_deg)],
                })
            })
            .collect();
        Projective {
            vertex: g * n + v,
            module,
            steps,
        }
    }

    pub fn base_vertices(&self) -> usize {
        self.base_vertices
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn vertex(&self, v: usize, degree: i64) -> usize {
        assert!(degree >= self.lo && degree <= self.hi, "degree outside the window");
        (degree - self.lo) as usize * self.base_vertices + v
    }

    /// `(base vertex, degree)` of a cover vertex.
    pub fn split(&self, cv: usize) -> (usize, i64) {
        (cv % self.base_vertices, (cv / self.base_vertices) as i64 + self.lo)
    }

    pub fn base_arrow(&self, ca: usize) -> usize {
        self.base_arrow[ca]
    }

    /// Forgets the grading: sums the degree pieces at each base vertex.
    pub fn flatten<A: BasicAlgebra + ?Sized>(&self, base: &A, m: &Module) -> Module {
        let n = self.base_vertices;
        let mut offset = vec![0usize; m.num_vertices()];
        let mut dims = vec![0usize; n];
        for cv in 0..m.num_vertices() {
            offset[cv] = dims[cv % n];
            dims[cv % n] += m.dim(cv);
        }
        let mut cols: Vec<Vec<crate::linalg::SparseVec>> = base
            .ends()
            .iter()
            .map(|&(s, _)| vec![Vec::new(); dims[s]])
            .collect();
        for (ca, &(cs, ct)) in self.ends.iter().enumerate() {
            let a = self.base_arrow[ca];
            for (j, col) in m.map(ca).cols.iter().enumerate() {
                cols[a][offset[cs] + j].extend(col.iter().map(|(i, c)| (offset[ct] + i, c.clone())));
            }
        }
        let maps = base
            .ends()
            .iter()
            .enumerate()
            .map(|(a, &(_, t))| {
                let cs = std::mem::take(&mut cols[a])
                    .into_iter()
                    .map(|mut c| {
                        c.sort_by_key(|(i, _)| *i);
                        c
                    })
                    .collect();
                SMat::from_cols(dims[t], cs)
            })
            .collect();
        Module::new(base.ends().clone(), dims, maps)
    }

    /// Dimensions of a graded module indexed by `(base vertex, degree)`.
    pub fn graded_dims(&self, m: &Module) -> Vec<(usize, i64, usize)> {
        (0..m.num_vertices())
            .filter(|&cv| m.dim(cv) > 0)
            .map(|cv| {
                let (v, g) = self.split(cv);
                (v, g, m.dim(cv))
            })
            .collect()
    }

    /// Shifts a graded module by `k` degrees (degree `g` moves to `g + k`);
    /// pieces leaving the window must be zero.
    pub fn shift(&self, m: &Module, k: i64) -> Module {
        let total = m.num_vertices();
        let map_v = |cv: usize| -> Option<usize> {
            let (v, g) = self.split(cv);
            let ng = g + k;
            (ng >= self.lo && ng <= self.hi).then(|| self.vertex(v, ng))
        };
        let mut dims = vec![0; total];
        for cv in 0..total {
            if m.dim(cv) > 0 {
                dims[map_v(cv).expect("shift leaves the window")] = m.dim(cv);
            }
        }
        let index: std::collections::HashMap<(usize, usize), usize> = self
            .ends
            .iter()
            .enumerate()
            .map(|(ca, &(s, _))| ((s, self.base_arrow[ca]), ca))
            .collect();
        let mut maps: Vec<SMat> = self.ends.iter().map(|&(s, t)| SMat::zeros(dims[t], dims[s])).collect();
        for (ca, &(cs, _)) in self.ends.iter().enumerate() {
            if m.dim(cs) == 0 {
                continue;
            }
            let ns = map_v(cs).expect("nonzero piece");
            if let Some(&nca) = index.get(&(ns, self.base_arrow[ca])) {
                maps[nca] = m.map(ca).clone();
            } else {
                assert!(m.map(ca).is_zero(), "shift leaves the window");
            }
        }
        Module::new(self.ends.clone(), dims, maps)
    }
}

/// `Ext^i(M, N)` for a graded `M` and an ungraded `N`, with a truncation
/// certificate.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GradedExt {
    pub dims: Vec<usize>,
    /// Every generator of the computed resolution sits at least `margin`
    /// degrees below the top of the window.
    pub sound: bool,
    pub max_generator_degree: i64,
    pub margin: u64,
    pub window_top: i64,
}

impl GradedCover {
    /// `N` placed in every degree of the window; Hom from a cover projective
    /// `(v, g)` into it is `N_v`, so Hom complexes compute ungraded Ext.
    pub fn lift_ungraded(&self, n: &Module) -> Module {
        let nb = self.base_vertices;
        let total = self.num_vertices();
        let dims: Vec<usize> = (0..total).map(|cv| n.dim(cv % nb)).collect();
        let maps = self
            .base_arrow
            .iter()
            .map(|&a| n.map(a).clone())
            .collect();
        Module::new(self.ends.clone(), dims, maps)
    }

    pub fn ext(&self, m: &Module, n: &Module, max_i: usize, margin: u64) -> GradedExt {
        let (res, sums) = super::resolution::minimal_resolution(self, m, max_i + 1);
        let lifted = self.lift_ungraded(n);
        let dims = super::resolution::ext_dims_from(self, &res, &sums, &lifted, max_i);
        let max_generator_degree = res
            .terms
            .iter()
            .flatten()
            .map(|&cv| self.split(cv).1)
            .max()
            .unwrap_or(self.lo);
        GradedExt {
            dims,
            sound: max_generator_degree + margin as i64 <= self.hi,
            max_generator_degree,
            margin,
            window_top: self.hi,
        }
    }
}

impl BasicAlgebra for GradedCover {
    fn num_vertices(&self) -> usize {
        self.base_vertices * (self.hi - self.lo + 1) as usize
    }

    fn ends(&self) -> &Ends {
        &self.ends
    }

    fn arrow_weight(&self, a: usize) -> u64 {
        self.weights[a]
    }

    fn projective(&self, v: usize) -> &Projective {
        &self.projectives[v]
    }
}

impl GradedCover {
    /// Lifts a base module whose basis vector `i` at `v` has degree
    /// `degrees[v][i]`; every arrow must map degree `g` into degree `g + w`.
    /// Also returns the cover position `(cover vertex, index)` of each vector.
    pub fn lift_graded(&self, m: &Module, degrees: &[Vec<i64>]) -> (Module, Vec<Vec<(usize, usize)>>) {
        let total = self.num_vertices();
        let mut dims = vec![0usize; total];
        let pos: Vec<Vec<(usize, usize)>> = (0..m.num_vertices())
            .map(|v| {
                degrees[v]
                    .iter()
                    .map(|&g| {
                        let cv = self.vertex(v, g);
                        dims[cv] += 1;
                        (cv, dims[cv] - 1)
                    })
                    .collect()
            })
            .collect();
        let mut cols: Vec<Vec<SparseVec>> = self.ends.iter().map(|&(s, _)| vec![Vec::new(); dims[s]]).collect();
        let index: std::collections::HashMap<(usize, usize), usize> = self
            .ends
            .iter()
            .enumerate()
            .map(|(ca, &(s, _))| ((s, self.base_arrow[ca]), ca))
            .collect();
        for (a, &(s, t)) in m.ends().iter().enumerate() {
            for (i, col) in m.map(a).cols.iter().enumerate() {
                if col.is_empty() {
                    continue;
                }
                let (cs, k) = pos[s][i];
                let ca = *index.get(&(cs, a)).expect("image leaves the window");
                for (r, c) in col {
                    let (ct, kr) = pos[t][*r];
                    assert_eq!(ct, self.ends[ca].1, "arrow action is not homogeneous");
                    cols[ca][k].push((kr, c.clone()));
                }
            }
        }
        let maps = cols
            .into_iter()
            .enumerate()
            .map(|(ca, cs)| {
                let cs = cs
                    .into_iter()
                    .map(|mut c| {
                        c.sort_by_key(|(i, _)| *i);
                        c
                    })
                    .collect();
                SMat::from_cols(dims[self.ends[ca].1], cs)
            })
            .collect();
        (Module::new(self.ends.clone(), dims, maps), pos)
    }

    /// Lifts a homogeneous degree-0 map between two lifted modules.
    pub fn lift_map(
        &self,
        f: &super::module::ModuleMap,
        src_pos: &[Vec<(usize, usize)>],
        tgt_pos: &[Vec<(usize, usize)>],
        src: &Module,
        tgt: &Module,
    ) -> super::module::ModuleMap {
        let mut cols: Vec<Vec<SparseVec>> = (0..self.num_vertices()).map(|cv| vec![Vec::new(); src.dim(cv)]).collect();
        for (v, m) in f.maps.iter().enumerate() {
            for (i, col) in m.cols.iter().enumerate() {
                let (cs, k) = src_pos[v][i];
                for (r, c) in col {
                    let (ct, kr) = tgt_pos[v][*r];
                    assert_eq!(ct, cs, "map is not homogeneous of degree 0");
                    cols[cs][k].push((kr, c.clone()));
                }
            }
        }
        super::module::ModuleMap {
            maps: cols
                .into_iter()
                .enumerate()
                .map(|(cv, cs)| {
                    let cs = cs
                        .into_iter()
                        .map(|mut c| {
                            c.sort_by_key(|(i, _)| *i);
                            c
                        })
                        .collect();
                    SMat::from_cols(tgt.dim(cv), cs)
                })
                .collect(),
        }
    }

    /// Largest degree reached by the cover projective at `(v, degree)` if it
    /// were not truncated.
    pub fn projective_top<A: BasicAlgebra + ?Sized>(base: &A, v: usize, degree: i64) -> i64 {
        degree + projective_degrees(base, v).iter().flatten().copied().max().unwrap_or(0) as i64
    }
}
