use serde::Serialize;

use super::algebra::{BasicAlgebra, FiniteAlgebra};
use super::module::{cokernel, hom_space, socle, Module, ModuleMap};
use super::resolution::{max_projective_dimension, projective_cover, Dimension};
use crate::error::{Error, Result};
use crate::linalg::{axpy, unit, Echelon, SMat, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfinjectivityReport {
    pub selfinjective: bool,
    /// `nakayama[i]` is the vertex of the socle of `P_i`.
    pub nakayama: Option<Vec<usize>>,
    pub witness: Option<String>,
}

/// Socle vertex of each indecomposable projective, if all socles are simple
/// and pairwise distinct.
fn socle_permutation<A: BasicAlgebra + ?Sized>(alg: &A, side: &str) -> std::result::Result<Vec<usize>, String> {
    let n = alg.num_vertices();
    let mut perm = Vec::with_capacity(n);
    for i in 0..n {
        let (soc, _) = socle(&alg.projective(i).module);
        if soc.total_dim() != 1 {
            return Err(format!("{side} P_{} has socle of dimension {}", i + 1, soc.total_dim()));
        }
        let v = soc.dims().iter().position(|&d| d == 1).expect("one-dimensional");
        if let Some(j) = perm.iter().position(|&w| w == v) {
            return Err(format!("{side} P_{} and P_{} share the socle S_{}", j + 1, i + 1, v + 1));
        }
        perm.push(v);
    }
    Ok(perm)
}

/// Selfinjective iff the projectives on both sides have simple, pairwise
/// distinct socles.
pub fn selfinjectivity_report(alg: &FiniteAlgebra) -> SelfinjectivityReport {
    let right = socle_permutation(alg, "right");
    let left = right.as_ref().ok().map(|_| socle_permutation(&alg.opposite(), "left"));
    match (right, left) {
        (Ok(p), Some(Ok(_))) => SelfinjectivityReport {
            selfinjective: true,
            nakayama: Some(p),
            witness: None,
        },
        (Err(w), _) | (Ok(_), Some(Err(w))) => SelfinjectivityReport {
            selfinjective: false,
            nakayama: None,
            witness: Some(w),
        },
        (Ok(_), None) => unreachable!("left side is checked whenever the right side passes"),
    }
}

/// Injective envelope `M -> I(M)`, obtained by dualizing a projective cover
/// over the opposite algebra.
pub fn injective_envelope(alg: &FiniteAlgebra, op: &FiniteAlgebra, m: &Module) -> (Module, ModuleMap) {
    let dm = m.dual(op.ends().clone());
    let (ps, pi) = projective_cover(op, &dm);
    let env = ps.module.dual(alg.ends().clone());
    let iota = ModuleMap {
        maps: pi.maps.iter().map(|x| x.transpose()).collect(),
    };
    (env, iota)
}

/// `Ω^{-1}(M)`, the cokernel of the injective envelope.
pub fn cosyzygy(alg: &FiniteAlgebra, op: &FiniteAlgebra, m: &Module) -> Module {
    let (env, iota) = injective_envelope(alg, op, m);
    cokernel(&env, &iota).0
}

/// `Ω^{-n}(M)`; needs a selfinjective algebra.
pub fn cosyzygy_power(alg: &FiniteAlgebra, m: &Module, n: usize) -> Result<Module> {
    if !selfinjectivity_report(alg).selfinjective {
        return Err(Error::Precondition("cosyzygies need a selfinjective algebra".into()));
    }
    let op = alg.opposite();
    Ok((0..n).fold(m.clone(), |acc, _| cosyzygy(alg, &op, &acc)))
}

#[derive(Clone, Debug)]
pub struct StableHom {
    pub dim: usize,
    /// Homomorphisms whose classes form a basis of the stable Hom space.
    pub representatives: Vec<ModuleMap>,
}

/// `Hom(M, N)` modulo maps factoring through a projective. Every such map
/// factors through the projective cover of `N`.
pub fn stable_hom<A: BasicAlgebra + ?Sized>(alg: &A, m: &Module, n: &Module) -> StableHom {
    let homs = hom_space(m, n);
    if homs.is_empty() {
        return StableHom {
            dim: 0,
            representatives: Vec::new(),
        };
    }
    let (ps, pi) = projective_cover(alg, n);
    let size = homs[0].flatten_len();
    let mut ech = Echelon::new(size, false);
    for g in hom_space(m, &ps.module) {
        ech.insert(pi.compose(&g).flatten());
    }
    let representatives: Vec<ModuleMap> = homs
        .into_iter()
        .filter(|f| ech.insert(f.flatten()))
        .collect();
    StableHom {
        dim: representatives.len(),
        representatives,
    }
}

/// Injective dimension of the regular right module: the projective dimension
/// of its dual over the opposite algebra.
pub fn injective_dimension(alg: &FiniteAlgebra, cap: usize) -> Dimension {
    let op = alg.opposite();
    let duals: Vec<Module> = (0..alg.num_vertices())
        .map(|v| alg.projective(v).module.dual(op.ends().clone()))
        .collect();
    max_projective_dimension(&op, &duals, cap)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GorensteinReport {
    /// Injective dimension of `A` as a right module.
    pub right: Dimension,
    /// Injective dimension of `A` as a left module, i.e. the projective
    /// dimension of `D(A)` as a right module.
    pub left: Dimension,
    /// The common value when both are finite and agree.
    pub gorenstein: Option<usize>,
}

pub fn gorenstein_report(alg: &FiniteAlgebra, cap: usize) -> GorensteinReport {
    let right = injective_dimension(alg, cap);
    let injectives: Vec<Module> = (0..alg.num_vertices()).map(|v| alg.injective(v)).collect();
    let left = max_projective_dimension(alg, &injectives, cap);
    let gorenstein = match (right, left) {
        (Dimension::Exactly(a), Dimension::Exactly(b)) if a == b => Some(a),
        _ => None,
    };
    GorensteinReport { right, left, gorenstein }
}

/// `P_i`, `I_i` and `S_i` for every vertex.
#[derive(Clone, Debug)]
pub struct StandardModules {
    pub projectives: Vec<Module>,
    pub injectives: Vec<Module>,
    pub simples: Vec<Module>,
}

pub fn standard_modules(alg: &FiniteAlgebra) -> StandardModules {
    let n = alg.num_vertices();
    StandardModules {
        projectives: (0..n).map(|v| alg.projective(v).module.clone()).collect(),
        injectives: (0..n).map(|v| alg.injective(v)).collect(),
        simples: (0..n).map(|v| alg.simple(v)).collect(),
    }
}

/// Multiplicity of each indecomposable projective as a direct summand of `m`,
/// for an algebra whose projectives are also injective with simple socle:
/// `P_v` splits off once per unit of rank of `x -> x z` on `m_v`, where `z`
/// spans the socle of `P_v`. `None` at vertices whose projective does not
/// have a simple socle.
pub fn projective_multiplicities<A: BasicAlgebra + ?Sized>(alg: &A, m: &Module) -> Vec<Option<usize>> {
    (0..alg.num_vertices())
        .map(|v| {
            if m.dim(v) == 0 {
                return Some(0);
            }
            let p = alg.projective(v);
            let (soc, incl) = socle(&p.module);
            if soc.total_dim() != 1 {
                return None;
            }
            let w = soc.dims().iter().position(|&d| d == 1).expect("one-dimensional");
            let z = &incl.maps[w].cols[0];
            let cols: Vec<SparseVec> = (0..m.dim(v))
                .map(|i| {
                    let img = p.propagate(m, &unit(i));
                    z.iter().fold(Vec::new(), |acc, (k, c)| axpy(&acc, c, &img[w][*k]))
                })
                .collect();
            Some(SMat::from_cols(m.dim(w), cols).rank())
        })
        .collect()
}
