use serde::Serialize;

use super::algebra::BasicAlgebra;
use super::module::{kernel, top_lifts, Module, ModuleMap};
use crate::linalg::{axpy, SMat, SparseVec};

/// A direct sum of indecomposable projectives, one per listed vertex.
#[derive(Clone, Debug)]
pub struct ProjSum {
    pub summands: Vec<usize>,
    pub module: Module,
    /// `offsets[j][w]`: first index of summand `j` inside the space at `w`.
    pub offsets: Vec<Vec<usize>>,
}

impl ProjSum {
    pub fn new<A: BasicAlgebra + ?Sized>(alg: &A, summands: Vec<usize>) -> Self {
        let n = alg.num_vertices();
        let mut module = alg.zero_module();
        let mut offsets = Vec::with_capacity(summands.len());
        for &v in &summands {
            offsets.push(module.dims().to_vec());
            module = module.direct_sum(&alg.projective(v).module);
        }
        debug_assert!(offsets.iter().all(|o| o.len() == n));
        ProjSum {
            summands,
            module,
            offsets,
        }
    }

    /// The block of `x` (a vector at vertex `w`) belonging to summand `j`.
    pub fn block(&self, j: usize, w: usize, x: &SparseVec) -> SparseVec {
        let lo = self.offsets[j][w];
        let hi = lo + self.module_dim_of(j, w);
        x.iter()
            .filter(|(i, _)| *i >= lo && *i < hi)
            .map(|(i, c)| (i - lo, c.clone()))
            .collect()
    }

    fn module_dim_of(&self, j: usize, w: usize) -> usize {
        let next = self.offsets.get(j + 1).map_or(self.module.dim(w), |o| o[w]);
        next - self.offsets[j][w]
    }

    /// Position of the generator of summand `j` in the space at its vertex.
    pub fn generator(&self, j: usize) -> usize {
        self.offsets[j][self.summands[j]]
    }

    /// The map sending the generator of summand `j` to `images[j]`.
    pub fn map_to<A: BasicAlgebra + ?Sized>(
        &self,
        alg: &A,
        target: &Module,
        images: &[SparseVec],
    ) -> ModuleMap {
        let n = alg.num_vertices();
        let mut cols: Vec<Vec<SparseVec>> = (0..n).map(|w| Vec::with_capacity(self.module.dim(w))).collect();
        for (j, &v) in self.summands.iter().enumerate() {
            let img = alg.projective(v).propagate(target, &images[j]);
            for (w, vecs) in img.into_iter().enumerate() {
                cols[w].extend(vecs);
            }
        }
        ModuleMap {
            maps: cols
                .into_iter()
                .enumerate()
                .map(|(w, c)| SMat::from_cols(target.dim(w), c))
                .collect(),
        }
    }
}

/// Minimal projective cover `P(M) -> M`.
pub fn projective_cover<A: BasicAlgebra + ?Sized>(alg: &A, m: &Module) -> (ProjSum, ModuleMap) {
    let lifts = top_lifts(m);
    let ps = ProjSum::new(alg, lifts.iter().map(|(v, _)| *v).collect());
    let images: Vec<SparseVec> = lifts.into_iter().map(|(_, x)| x).collect();
    let pi = ps.map_to(alg, m, &images);
    (ps, pi)
}

/// `Ω(M)`: the kernel of the projective cover, with its inclusion.
pub fn syzygy<A: BasicAlgebra + ?Sized>(alg: &A, m: &Module) -> (Module, ModuleMap) {
    let (ps, pi) = projective_cover(alg, m);
    kernel(&ps.module, &pi)
}

pub fn syzygy_power<A: BasicAlgebra + ?Sized>(alg: &A, m: &Module, n: usize) -> Module {
    (0..n).fold(m.clone(), |acc, _| syzygy(alg, &acc).0)
}

/// Minimal projective resolution, stored as generator images.
#[derive(Clone, Debug, Serialize)]
pub struct ResolutionRecord {
    /// Vertices of the summands of each term `P_n`.
    pub terms: Vec<Vec<usize>>,
    /// `diffs[n][j]`: image of generator `j` of `P_{n+1}` in `P_n`, as a
    /// vector at that generator's vertex.
    #[serde(skip)]
    pub diffs: Vec<Vec<SparseVec>>,
    /// True when the last computed syzygy vanished.
    pub complete: bool,
}

impl ResolutionRecord {
    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    pub fn betti(&self) -> Vec<Vec<usize>> {
        self.terms
            .iter()
            .map(|t| {
                let n = t.iter().copied().max().map_or(0, |m| m + 1);
                let mut b = vec![0; n];
                for &v in t {
                    b[v] += 1;
                }
                b
            })
            .collect()
    }

    /// A replayable trace: terms plus differential entries as text.
    pub fn to_json(&self) -> serde_json::Value {
        let diffs: Vec<Vec<Vec<(usize, String)>>> = self
            .diffs
            .iter()
            .map(|d| {
                d.iter()
                    .map(|x| x.iter().map(|(i, c)| (*i, crate::scalar::fmt_rat(c))).collect())
                    .collect()
            })
            .collect();
        serde_json::json!({ "terms": self.terms, "diffs": diffs, "complete": self.complete })
    }
}

/// Minimal resolution with terms `P_0 .. P_max_len` (fewer if it terminates).
pub fn minimal_resolution<A: BasicAlgebra + ?Sized>(
    alg: &A,
    m: &Module,
    max_len: usize,
) -> (ResolutionRecord, Vec<ProjSum>) {
    let mut terms = Vec::new();
    let mut sums = Vec::new();
    let mut diffs = Vec::new();
    let mut current = m.clone();
    let mut incl: Option<ModuleMap> = None;
    let mut complete = false;
    for n in 0..=max_len {
        if current.is_zero() {
            complete = true;
            break;
        }
        let lifts = top_lifts(&current);
        let ps = ProjSum::new(alg, lifts.iter().map(|(v, _)| *v).collect());
        let images: Vec<SparseVec> = lifts.into_iter().map(|(_, x)| x).collect();
        let pi = ps.map_to(alg, &current, &images);
        if let Some(inc) = &incl {
            diffs.push(
                images
                    .iter()
                    .zip(&ps.summands)
                    .map(|(x, &v)| inc.maps[v].apply(x))
                    .collect(),
            );
        }
        let (k, inc) = kernel(&ps.module, &pi);
        terms.push(ps.summands.clone());
        sums.push(ps);
        current = k;
        incl = Some(inc);
        if n == max_len && current.is_zero() {
            complete = true;
        }
    }
    (
        ResolutionRecord {
            terms,
            diffs,
            complete,
        },
        sums,
    )
}

/// Matrix of `Hom(P_n, N) -> Hom(P_{n+1}, N)`; columns indexed by the basis
/// of `⊕_j N_{v_j}` over summands of `P_n`.
fn hom_differential<A: BasicAlgebra + ?Sized>(
    alg: &A,
    res: &ResolutionRecord,
    sums: &[ProjSum],
    n: usize,
    target: &Module,
) -> SMat {
    let src_terms = &res.terms[n];
    let tgt_terms: &[usize] = res.terms.get(n + 1).map_or(&[], |t| t.as_slice());
    let mut row_offset = vec![0];
    for &v in tgt_terms {
        row_offset.push(row_offset.last().unwrap() + target.dim(v));
    }
    let nrows = *row_offset.last().unwrap();
    let mut cols = Vec::new();
    for (j, &v) in src_terms.iter().enumerate() {
        for k in 0..target.dim(v) {
            let images = alg.projective(v).propagate(target, &crate::linalg::unit(k));
            let mut col: SparseVec = Vec::new();
            for (jj, &w) in tgt_terms.iter().enumerate() {
                let x = sums[n].block(j, w, &res.diffs[n][jj]);
                let mut val: SparseVec = Vec::new();
                for (idx, c) in &x {
                    val = axpy(&val, c, &images[w][*idx]);
                }
                col.extend(val.into_iter().map(|(i, c)| (i + row_offset[jj], c)));
            }
            cols.push(col);
        }
    }
    SMat::from_cols(nrows, cols)
}

/// `dim Ext^i(M, N)` for `i = 0..=max_i` from a minimal resolution of `M`.
pub fn ext_dims<A: BasicAlgebra + ?Sized>(alg: &A, m: &Module, n: &Module, max_i: usize) -> Vec<usize> {
    let (res, sums) = minimal_resolution(alg, m, max_i + 1);
    ext_dims_from(alg, &res, &sums, n, max_i)
}

pub fn ext_dims_from<A: BasicAlgebra + ?Sized>(
    alg: &A,
    res: &ResolutionRecord,
    sums: &[ProjSum],
    n: &Module,
    max_i: usize,
) -> Vec<usize> {
    let len = res.terms.len();
    let ranks: Vec<usize> = (0..len).map(|k| hom_differential(alg, res, sums, k, n).rank()).collect();
    (0..=max_i)
        .map(|i| {
            if i >= len {
                return 0;
            }
            let hom: usize = res.terms[i].iter().map(|&v| n.dim(v)).sum();
            let out = ranks[i];
            let inc = if i == 0 { 0 } else { ranks[i - 1] };
            hom - out - inc
        })
        .collect()
}

/// Projective dimension, or `None` if the resolution reaches `cap` terms.
pub fn projective_dimension<A: BasicAlgebra + ?Sized>(alg: &A, m: &Module, cap: usize) -> Option<usize> {
    if m.is_zero() {
        return Some(0);
    }
    let (res, _) = minimal_resolution(alg, m, cap);
    res.complete.then(|| res.length())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value")]
pub enum Dimension {
    Exactly(usize),
    AtLeast(usize),
}

impl std::fmt::Display for Dimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dimension::Exactly(n) => write!(f, "{n}"),
            Dimension::AtLeast(n) => write!(f, "AtLeast({n})"),
        }
    }
}

fn max_dimension<I: IntoIterator<Item = Option<usize>>>(dims: I, cap: usize) -> Dimension {
    let mut best = 0;
    for d in dims {
        match d {
            Some(d) => best = best.max(d),
            None => return Dimension::AtLeast(cap),
        }
    }
    Dimension::Exactly(best)
}

/// Maximum projective dimension of the simples.
pub fn global_dimension<A: BasicAlgebra + ?Sized>(alg: &A, cap: usize) -> Dimension {
    max_dimension(
        (0..alg.num_vertices()).map(|v| projective_dimension(alg, &alg.simple(v), cap)),
        cap,
    )
}

pub fn max_projective_dimension<A: BasicAlgebra + ?Sized>(alg: &A, modules: &[Module], cap: usize) -> Dimension {
    max_dimension(modules.iter().map(|m| projective_dimension(alg, m, cap)), cap)
}
