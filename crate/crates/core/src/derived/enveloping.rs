//! The enveloping algebra `A^e = A^op ⊗ A` and bimodules as its right modules.
//!
//! Vertex `(i, j)` (index `i * n + j`) carries `e_i M e_j`. The right arrow
//! `(i, b)` multiplies by `b` on the right; the left arrow `(a, j)` runs
//! `(t_a, j) -> (s_a, j)` and multiplies by `a` on the left.

use std::sync::Arc;

use num_traits::One;

use crate::linalg::{SMat, SparseVec};
use crate::quiver::{Presentation, Quiver, WeightGrading};
use crate::repthy::{BasicAlgebra, Ends, FiniteAlgebra, Module, Projective, Step};
use crate::rewrite::{Element, Word};
use crate::scalar::Rat;

#[derive(Clone, Debug)]
pub struct Enveloping {
    n: usize,
    num_arrows: usize,
    ends: Ends,
    weights: Vec<u64>,
    projectives: Vec<Projective>,
}

impl Enveloping {
    pub fn new(alg: &FiniteAlgebra) -> Self {
        let n = alg.num_vertices();
        let q = alg.quiver();
        let m = q.num_arrows();
        let mut ends = Vec::with_capacity(2 * n * m);
        let mut weights = Vec::with_capacity(2 * n * m);
        for i in 0..n {
            for b in q.arrows() {
                ends.push((i * n + b.source, i * n + b.target));
            }
            weights.extend(alg.grading().weights());
        }
        for (a, arrow) in q.arrows().iter().enumerate() {
            for j in 0..n {
                ends.push((arrow.target * n + j, arrow.source * n + j));
                weights.push(alg.grading().weight(a));
            }
        }
        let mut env = Enveloping {
            n,
            num_arrows: m,
            ends: Arc::from(ends),
            weights,
            projectives: Vec::new(),
        };
        env.projectives = (0..n * n).map(|v| env.build_projective(alg, v / n, v % n)).collect();
        env
    }

    pub fn base_vertices(&self) -> usize {
        self.n
    }

    pub fn vertex(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }

    pub fn split(&self, v: usize) -> (usize, usize) {
        (v / self.n, v % self.n)
    }

    pub fn right_arrow(&self, i: usize, b: usize) -> usize {
        i * self.num_arrows + b
    }

    pub fn left_arrow(&self, a: usize, j: usize) -> usize {
        self.n * self.num_arrows + a * self.n + j
    }

    /// Local index of `l ⊗ r` inside `P(s, t)` at vertex `(source l, target r)`.
    pub fn pair_index(alg: &FiniteAlgebra, l: usize, r: usize) -> usize {
        alg.local_index(l) * alg.pair_basis(alg.source(r), alg.target(r)).len() + alg.local_index(r)
    }

    /// `P(s, t) = A e_s ⊗ e_t A`, with basis `l ⊗ r`.
    fn build_projective(&self, alg: &FiniteAlgebra, s: usize, t: usize) -> Projective {
        let n = self.n;
        let q = alg.quiver();
        let dims: Vec<usize> = (0..n * n)
            .map(|v| alg.pair_basis(v / n, s).len() * alg.pair_basis(t, v % n).len())
            .collect();
        let mut maps = Vec::with_capacity(self.ends.len());
        for i in 0..n {
            for (b, arrow) in q.arrows().iter().enumerate() {
                let (y, y2) = (arrow.source, arrow.target);
                let rows = dims[i * n + y2];
                let bb = alg.arrow_element(b);
                let mut cols = Vec::with_capacity(dims[i * n + y]);
                for &l in alg.pair_basis(i, s) {
                    for &r in alg.pair_basis(t, y) {
                        let prod = alg.mul_basis(r, bb);
                        let mut col: SparseVec = prod
                            .iter()
                            .map(|(r2, c)| (Self::pair_index(alg, l, *r2), c.clone()))
                            .collect();
                        col.sort_by_key(|(k, _)| *k);
                        cols.push(col);
                    }
                }
                maps.push(SMat::from_cols(rows, cols));
            }
        }
        for (a, arrow) in q.arrows().iter().enumerate() {
            let (x, x2) = (arrow.source, arrow.target);
            let aa = alg.arrow_element(a);
            for j in 0..n {
                let rows = dims[x * n + j];
                let mut cols = Vec::with_capacity(dims[x2 * n + j]);
                for &l in alg.pair_basis(x2, s) {
                    for &r in alg.pair_basis(t, j) {
                        let prod = alg.mul_basis(aa, l);
                        let mut col: SparseVec = prod
                            .iter()
                            .map(|(l2, c)| (Self::pair_index(alg, *l2, r), c.clone()))
                            .collect();
                        col.sort_by_key(|(k, _)| *k);
                        cols.push(col);
                    }
                }
                maps.push(SMat::from_cols(rows, cols));
            }
        }
        let module = Module::new(self.ends.clone(), dims, maps);
        // steps: grow the right factor first, then the left factor
        let mut items: Vec<(usize, usize)> = Vec::new();
        for x in 0..n {
            for &l in alg.pair_basis(x, s) {
                for y in 0..n {
                    for &r in alg.pair_basis(t, y) {
                        items.push((l, r));
                    }
                }
            }
        }
        let len = |b: usize| alg.basis()[b].len();
        items.sort_by_key(|&(l, r)| (len(l) + len(r), len(l)));
        let words = alg.basis();
        let steps = items
            .into_iter()
            .filter(|&(l, r)| len(l) + len(r) > 0)
            .map(|(l, r)| {
                let vertex = alg.source(l) * n + alg.target(r);
                let index = Self::pair_index(alg, l, r);
                if len(r) > 0 {
                    let w = &words[r];
                    let prefix = w.slice(q, alg.grading(), 0, w.len() - 1);
                    let pr = alg.basis_index(&prefix).expect("prefix is a basis word");
                    Step {
                        vertex,
                        index,
                        from_vertex: alg.source(l) * n + prefix.target(),
                        from_index: Self::pair_index(alg, l, pr),
                        arrow: self.right_arrow(alg.source(l), w.arrows()[w.len() - 1]),
                    }
                } else {
                    let w = &words[l];
                    let suffix = w.slice(q, alg.grading(), 1, w.len());
                    let pl = alg.basis_index(&suffix).expect("suffix is a basis word");
                    Step {
                        vertex,
                        index,
                        from_vertex: suffix.source() * n + t,
                        from_index: Self::pair_index(alg, pl, r),
                        arrow: self.left_arrow(w.arrows()[0], t),
                    }
                }
            })
            .collect();
        Projective {
            vertex: s * n + t,
            module,
            steps,
        }
    }
}

impl BasicAlgebra for Enveloping {
    fn num_vertices(&self) -> usize {
        self.n * self.n
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

/// `A` as an `A^e`-module.
pub fn regular_bimodule(alg: &FiniteAlgebra, env: &Enveloping) -> Module {
    let n = alg.num_vertices();
    let q = alg.quiver();
    let dims: Vec<usize> = (0..n * n).map(|v| alg.pair_basis(v / n, v % n).len()).collect();
    let mut maps = Vec::new();
    for i in 0..n {
        for (b, arrow) in q.arrows().iter().enumerate() {
            let bb = alg.arrow_element(b);
            let cols = alg
                .pair_basis(i, arrow.source)
                .iter()
                .map(|&x| alg.to_corner(alg.mul_basis(x, bb)))
                .collect();
            maps.push(SMat::from_cols(dims[i * n + arrow.target], cols));
        }
    }
    for (a, arrow) in q.arrows().iter().enumerate() {
        let aa = alg.arrow_element(a);
        for j in 0..n {
            let cols = alg
                .pair_basis(arrow.target, j)
                .iter()
                .map(|&x| alg.to_corner(alg.mul_basis(aa, x)))
                .collect();
            maps.push(SMat::from_cols(dims[arrow.source * n + j], cols));
        }
    }
    Module::new(env.ends().clone(), dims, maps)
}

/// `D(A)` as an `A^e`-module: `(DA)_{(i,j)} = D(e_j A e_i)`.
pub fn dual_bimodule(alg: &FiniteAlgebra, env: &Enveloping) -> Module {
    let reg = regular_bimodule(alg, env);
    let n = alg.num_vertices();
    let m = alg.quiver().num_arrows();
    let dims: Vec<usize> = (0..n * n).map(|v| reg.dim((v % n) * n + v / n)).collect();
    let mut maps = Vec::with_capacity(2 * n * m);
    // right arrow (i, b) on D(e_y A e_i) -> D(e_{y'} A e_i) is dual to left multiplication by b
    for i in 0..n {
        for b in 0..m {
            maps.push(reg.map(env.left_arrow(b, i)).transpose());
        }
    }
    for a in 0..m {
        for j in 0..n {
            maps.push(reg.map(env.right_arrow(j, a)).transpose());
        }
    }
    Module::new(env.ends().clone(), dims, maps)
}

/// Restriction of a bimodule to the row `e_i M`, as a right module.
pub fn row(alg: &FiniteAlgebra, env: &Enveloping, m: &Module, i: usize) -> Module {
    let n = alg.num_vertices();
    let dims = (0..n).map(|j| m.dim(env.vertex(i, j))).collect();
    let maps = (0..alg.quiver().num_arrows())
        .map(|b| m.map(env.right_arrow(i, b)).clone())
        .collect();
    Module::new(alg.ends().clone(), dims, maps)
}

/// A presentation of `A^op ⊗ A`: both sides' relations and the commutation
/// squares between left and right arrows.
pub fn enveloping_presentation(p: &Presentation) -> Presentation {
    let q = &p.quiver;
    let n = q.num_vertices();
    let names: Vec<String> = (0..n * n)
        .map(|v| format!("({},{})", q.vertices()[v / n], q.vertices()[v % n]))
        .collect();
    let mut eq = Quiver::new(names).expect("distinct pair names");
    let mut weights = Vec::new();
    for i in 0..n {
        for b in q.arrows() {
            eq.push_arrow(format!("{}|{}", q.vertices()[i], b.name), i * n + b.source, i * n + b.target)
                .expect("fresh name");
            weights.push(p.grading.weight(q.arrow_index(&b.name).expect("own arrow")));
        }
    }
    for (a, arrow) in q.arrows().iter().enumerate() {
        for j in 0..n {
            eq.push_arrow(
                format!("{}^op|{}", arrow.name, q.vertices()[j]),
                arrow.target * n + j,
                arrow.source * n + j,
            )
            .expect("fresh name");
            weights.push(p.grading.weight(a));
        }
    }
    let g = WeightGrading::from_weights(weights);
    let m = q.num_arrows();
    let right = |i: usize, b: usize| i * m + b;
    let left = |a: usize, j: usize| n * m + a * n + j;
    let word = |arrows: &[usize]| Word::from_arrows(&eq, &g, arrows).expect("composable");
    let mut relations = Vec::new();
    for r in &p.relations {
        for i in 0..n {
            relations.push(Element::from_terms(
                r.terms().map(|(w, c)| (word(&w.arrows().iter().map(|&b| right(i, b)).collect::<Vec<_>>()), c.clone())),
            ));
        }
        for j in 0..n {
            relations.push(Element::from_terms(r.terms().map(|(w, c)| {
                (word(&w.arrows().iter().rev().map(|&a| left(a, j)).collect::<Vec<_>>()), c.clone())
            })));
        }
    }
    for (a, aa) in q.arrows().iter().enumerate() {
        for (b, bb) in q.arrows().iter().enumerate() {
            // (t_a, s_b) -> (s_a, t_b) in two ways
            let p1 = word(&[left(a, bb.source), right(aa.source, b)]);
            let p2 = word(&[right(aa.target, b), left(a, bb.target)]);
            relations.push(Element::from_terms([(p1, Rat::one()), (p2, -Rat::one())]));
        }
    }
    Presentation {
        name: format!("{}^e", p.name),
        quiver: eq,
        relations,
        grading: g,
    }
}
