//! Bimodule resolutions and the inverse dualizing complex
//! `Θ = RHom_{A^e}(A, A^e)`.

use super::enveloping::{regular_bimodule, Enveloping};
use crate::error::{Error, Result};
use crate::linalg::{collect_vec, SparseVec};
use crate::repthy::{cokernel, minimal_resolution, FiniteAlgebra, Module, ModuleMap, ProjSum, ResolutionRecord};
use crate::scalar::Rat;

/// Minimal projective resolution of `A` over `A^e` with terms `P_0 .. P_max_len`.
pub fn bimodule_resolution(alg: &FiniteAlgebra, env: &Enveloping, max_len: usize) -> (ResolutionRecord, Vec<ProjSum>) {
    minimal_resolution(env, &regular_bimodule(alg, env), max_len)
}

/// One term `c · λ ⊗ μ` of a differential of `Θ`: the generator of the source
/// summand goes to `c · λ g μ`, where `g` generates summand `target`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaEntry {
    pub target: usize,
    pub coeff: Rat,
    pub left: usize,
    pub right: usize,
}

/// `Θ^k = ⊕ A e_p ⊗ e_q A`, one summand per summand `P(q, p)` of the
/// resolution term `P_k`.
#[derive(Clone, Debug)]
pub struct DualizingComplex {
    /// `terms[k][m] = (p, q)`.
    pub terms: Vec<Vec<(usize, usize)>>,
    /// `diffs[k][m]`: image of generator `m` of `Θ^k` in `Θ^{k+1}`.
    pub diffs: Vec<Vec<Vec<ThetaEntry>>>,
    /// The resolution terminated, so `Θ` has no further terms.
    pub complete: bool,
}

impl DualizingComplex {
    pub fn new(alg: &FiniteAlgebra, env: &Enveloping, max_len: usize) -> Self {
        let (res, sums) = bimodule_resolution(alg, env, max_len);
        Self::from_resolution(alg, env, &res, &sums)
    }

    pub fn from_resolution(alg: &FiniteAlgebra, env: &Enveloping, res: &ResolutionRecord, sums: &[ProjSum]) -> Self {
        let terms: Vec<Vec<(usize, usize)>> = res
            .terms
            .iter()
            .map(|t| {
                t.iter()
                    .map(|&v| {
                        let (s, t) = env.split(v);
                        (t, s)
                    })
                    .collect()
            })
            .collect();
        let mut diffs = Vec::with_capacity(res.diffs.len());
        for (k, images) in res.diffs.iter().enumerate() {
            let mut out: Vec<Vec<ThetaEntry>> = vec![Vec::new(); res.terms[k].len()];
            for (j, x) in images.iter().enumerate() {
                let w = res.terms[k + 1][j];
                let (sj, tj) = env.split(w);
                for (m, &vm) in res.terms[k].iter().enumerate() {
                    let (sm, tm) = env.split(vm);
                    let block = sums[k].block(m, w, x);
                    let rs = alg.pair_basis(tm, tj);
                    let ls = alg.pair_basis(sj, sm);
                    for (idx, c) in block {
                        let (l, r) = (ls[idx / rs.len()], rs[idx % rs.len()]);
                        out[m].push(ThetaEntry {
                            target: j,
                            coeff: c,
                            left: r,
                            right: l,
                        });
                    }
                }
            }
            diffs.push(out);
        }
        DualizingComplex {
            terms,
            diffs,
            complete: res.complete,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Summand vertices of `Θ^k` as vertices of `A^e`.
    fn summands(&self, env: &Enveloping, k: usize) -> Vec<usize> {
        self.terms
            .get(k)
            .map_or_else(Vec::new, |t| t.iter().map(|&(p, q)| env.vertex(p, q)).collect())
    }

    /// `Θ^{k-1} -> Θ^k` as a map of `A^e`-modules, with the target sum.
    pub fn differential_into(&self, alg: &FiniteAlgebra, env: &Enveloping, k: usize) -> (ProjSum, ProjSum, ModuleMap) {
        let tgt = ProjSum::new(env, self.summands(env, k));
        let src = ProjSum::new(env, if k == 0 { Vec::new() } else { self.summands(env, k - 1) });
        let images: Vec<SparseVec> = match k.checked_sub(1).and_then(|i| self.diffs.get(i)) {
            Some(d) => d
                .iter()
                .zip(&src.summands)
                .map(|(entries, &w)| {
                    collect_vec(entries.iter().map(|e| {
                        (
                            tgt.offsets[e.target][w] + Enveloping::pair_index(alg, e.left, e.right),
                            e.coeff.clone(),
                        )
                    }))
                })
                .collect(),
            None => vec![Vec::new(); src.summands.len()],
        };
        let f = src.map_to(env, &tgt.module, &images);
        (src, tgt, f)
    }
}

/// `Ext^d_{A^e}(A, A^e)` as an `A^e`-module; requires `gldim A <= d`.
pub fn ext_bimodule(alg: &FiniteAlgebra, env: &Enveloping, d: usize) -> Result<Module> {
    let theta = DualizingComplex::new(alg, env, d + 1);
    if !theta.complete || theta.len() > d + 1 {
        return Err(Error::Precondition(format!("global dimension exceeds {d}")));
    }
    Ok(top_cokernel(alg, env, &theta, d))
}

pub(crate) fn top_cokernel(alg: &FiniteAlgebra, env: &Enveloping, theta: &DualizingComplex, d: usize) -> Module {
    let (_, tgt, f) = theta.differential_into(alg, env, d);
    cokernel(&tgt.module, &f).0
}
