//! `Π(A) = T_A Ext^d_{A^e}(A, A^e)`, degree by degree.

use serde::Serialize;

use crate::derived::{ext_bimodule, regular_bimodule, Enveloping};
use crate::error::Result;
use crate::linalg::{collect_vec, SMat, SparseVec};
use crate::repthy::{quotient, BasicAlgebra, FiniteAlgebra, Module};
use crate::rewrite::HilbertTable;

/// `M ⊗_A N` for bimodules: at `(i, j)` the space `⊕_k M(i,k) ⊗ N(k,j)`
/// modulo `m b ⊗ n − m ⊗ b n` for every arrow `b`.
pub fn tensor_bimodules(alg: &FiniteAlgebra, env: &Enveloping, m: &Module, n: &Module) -> Module {
    let nv = alg.num_vertices();
    let q = alg.quiver();
    // offsets[(i,j)][k]: start of the block M(i,k) ⊗ N(k,j)
    let mut offsets = vec![vec![0usize; nv + 1]; nv * nv];
    for i in 0..nv {
        for j in 0..nv {
            let o = &mut offsets[env.vertex(i, j)];
            for k in 0..nv {
                o[k + 1] = o[k] + m.dim(env.vertex(i, k)) * n.dim(env.vertex(k, j));
            }
        }
    }
    let dims: Vec<usize> = offsets.iter().map(|o| o[nv]).collect();
    let idx = |i: usize, j: usize, k: usize, a: usize, b: usize| -> usize {
        offsets[env.vertex(i, j)][k] + a * n.dim(env.vertex(k, j)) + b
    };
    let mut maps = Vec::with_capacity(env.ends().len());
    // right arrows act on the N factor
    for i in 0..nv {
        for (bi, arrow) in q.arrows().iter().enumerate() {
            let (y, y2) = (arrow.source, arrow.target);
            let mut cols = Vec::with_capacity(dims[env.vertex(i, y)]);
            for k in 0..nv {
                let nmap = n.map(env.right_arrow(k, bi));
                for a in 0..m.dim(env.vertex(i, k)) {
                    for b in 0..n.dim(env.vertex(k, y)) {
                        cols.push(nmap.cols[b].iter().map(|(r, c)| (idx(i, y2, k, a, *r), c.clone())).collect());
                    }
                }
            }
            maps.push(SMat::from_cols(dims[env.vertex(i, y2)], cols));
        }
    }
    // left arrows act on the M factor
    for (ai, arrow) in q.arrows().iter().enumerate() {
        let (x, x2) = (arrow.source, arrow.target);
        for j in 0..nv {
            let mut cols = Vec::with_capacity(dims[env.vertex(x2, j)]);
            for k in 0..nv {
                let mmap = m.map(env.left_arrow(ai, k));
                for a in 0..m.dim(env.vertex(x2, k)) {
                    for b in 0..n.dim(env.vertex(k, j)) {
                        let mut col: SparseVec = mmap.cols[a].iter().map(|(r, c)| (idx(x, j, k, *r, b), c.clone())).collect();
                        col.sort_by_key(|(r, _)| *r);
                        cols.push(col);
                    }
                }
            }
            maps.push(SMat::from_cols(dims[env.vertex(x, j)], cols));
        }
    }
    let big = Module::new(env.ends().clone(), dims, maps);
    // balancing relations
    let mut span: Vec<Vec<SparseVec>> = vec![Vec::new(); nv * nv];
    for i in 0..nv {
        for j in 0..nv {
            for (bi, arrow) in q.arrows().iter().enumerate() {
                let (k, k2) = (arrow.source, arrow.target);
                let mb = m.map(env.right_arrow(i, bi));
                let bn = n.map(env.left_arrow(bi, j));
                for a in 0..m.dim(env.vertex(i, k)) {
                    for b in 0..n.dim(env.vertex(k2, j)) {
                        let mut v: SparseVec = mb.cols[a].iter().map(|(r, c)| (idx(i, j, k2, *r, b), c.clone())).collect();
                        v.extend(bn.cols[b].iter().map(|(r, c)| (idx(i, j, k, a, *r), -c.clone())));
                        span[env.vertex(i, j)].push(collect_vec(v));
                    }
                }
            }
        }
    }
    quotient(&big, &span).0
}

/// Per-degree, per-pair dimensions of `Π(A)` through `maxdeg`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorPreprojective {
    pub d: usize,
    /// `dims[p][i][j] = dim e_i Π_p e_j`.
    pub dims: Vec<Vec<Vec<usize>>>,
}

impl TensorPreprojective {
    pub fn totals(&self) -> Vec<usize> {
        self.dims.iter().map(|m| m.iter().flatten().sum()).collect()
    }

    /// Entries of a Hilbert table that disagree, as `(degree, source, target,
    /// ours, theirs)`, through `maxdeg`.
    pub fn compare(&self, table: &HilbertTable, maxdeg: usize) -> Vec<(usize, usize, usize, usize, u64)> {
        let mut out = Vec::new();
        for (p, m) in self.dims.iter().enumerate().take(maxdeg + 1) {
            for (i, row) in m.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    let y = table.dim(p as u64, i, j);
                    if x as u64 != y {
                        out.push((p, i, j, x, y));
                    }
                }
            }
        }
        out
    }
}

fn pair_dims(env: &Enveloping, m: &Module) -> Vec<Vec<usize>> {
    let n = env.base_vertices();
    (0..n).map(|i| (0..n).map(|j| m.dim(env.vertex(i, j))).collect()).collect()
}

/// The tensor powers `E^{⊗p}` of `E = Ext^d_{A^e}(A, A^e)` for `p <= maxdeg`.
pub fn tensor_preprojective(alg: &FiniteAlgebra, d: usize, maxdeg: usize) -> Result<TensorPreprojective> {
    let env = Enveloping::new(alg);
    let e = ext_bimodule(alg, &env, d)?;
    let mut power = regular_bimodule(alg, &env);
    let mut dims = vec![pair_dims(&env, &power)];
    for _ in 0..maxdeg {
        power = if power.is_zero() { power } else { tensor_bimodules(alg, &env, &power, &e) };
        dims.push(pair_dims(&env, &power));
    }
    Ok(TensorPreprojective { d, dims })
}
