//! Orbit detectors for d-representation finite and infinite algebras.

use serde::Serialize;

use crate::derived::{DualizingComplex, Enveloping, ProjectiveComplex};
use crate::error::{Error, Result};
use crate::repthy::{is_isomorphic, BasicAlgebra, FiniteAlgebra};
use crate::rewrite::HilbertTable;

/// `P_i` reaches the injective `I_k` after `steps` applications of `S_d^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub projective: usize,
    pub steps: usize,
    pub injective: usize,
}

/// Cohomology of `S_d^{-p}` applied to `projective` (or to all of `A`) is
/// nonzero in `degree != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub projective: Option<usize>,
    pub p: usize,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum RfRiVerdict {
    /// Every projective's orbit ends at an injective module.
    RF { criterion: String, orbits: Vec<Orbit> },
    /// Every iterate up to `through` is a module.
    RI { criterion: String, through: usize },
    Neither { witness: Witness },
    Inconclusive { p_max: usize },
}

impl RfRiVerdict {
    pub fn is_rf(&self) -> bool {
        matches!(self, RfRiVerdict::RF { .. })
    }

    pub fn is_ri(&self) -> bool {
        matches!(self, RfRiVerdict::RI { .. })
    }
}

/// Dualizing data for `A` of global dimension at most `d`.
pub struct SerreData {
    pub env: Enveloping,
    pub theta: DualizingComplex,
    pub d: usize,
}

impl SerreData {
    pub fn new(alg: &FiniteAlgebra, d: usize) -> Result<Self> {
        let env = Enveloping::new(alg);
        let theta = DualizingComplex::new(alg, &env, d + 1);
        if !theta.complete || theta.len() > d + 1 {
            return Err(Error::Precondition(format!("global dimension exceeds {d}")));
        }
        Ok(SerreData { env, theta, d })
    }

    pub fn apply(&self, alg: &FiniteAlgebra, c: &ProjectiveComplex) -> ProjectiveComplex {
        crate::derived::inverse_serre(alg, &self.theta, self.d as i64, c)
    }
}

/// The first degree other than 0 carrying cohomology.
fn stray_degree(alg: &FiniteAlgebra, c: &ProjectiveComplex) -> Option<i64> {
    c.cohomology_dims(alg).into_iter().map(|(g, _)| g).find(|&g| g != 0)
}

/// RI through `p_max` iff `S_d^{-p} A` is a module for `1 <= p <= p_max`.
pub fn check_dri(alg: &FiniteAlgebra, d: usize, p_max: usize) -> Result<RfRiVerdict> {
    let data = SerreData::new(alg, d)?;
    let mut c = ProjectiveComplex::regular(alg);
    for p in 1..=p_max {
        c = data.apply(alg, &c);
        if let Some(degree) = stray_degree(alg, &c) {
            return Ok(RfRiVerdict::Neither {
                witness: Witness {
                    projective: None,
                    p,
                    degree,
                },
            });
        }
    }
    Ok(RfRiVerdict::RI {
        criterion: "every iterate S_d^{-p}A with 1 <= p <= p_max has cohomology only in degree 0".into(),
        through: p_max,
    })
}

/// The injective `I_k` isomorphic to the module `c` (a complex concentrated
/// in degree 0), if any.
fn injective_stalk(alg: &FiniteAlgebra, c: &ProjectiveComplex) -> Option<usize> {
    let h = c.cohomology(alg, 0);
    (0..alg.num_vertices()).find(|&k| {
        let inj = alg.injective(k);
        inj.dims() == h.dims() && is_isomorphic(&inj, &h)
    })
}

/// RF iff every `P_i` has an orbit `P_i, S_d^{-1} P_i, ...` of modules ending
/// at an indecomposable injective within `p_max` steps.
pub fn check_drf(alg: &FiniteAlgebra, d: usize, p_max: usize) -> Result<RfRiVerdict> {
    let data = SerreData::new(alg, d)?;
    let mut orbits = Vec::new();
    for i in 0..alg.num_vertices() {
        let mut c = ProjectiveComplex::stalk(vec![i], 0);
        let mut found = None;
        for p in 0..=p_max {
            if p > 0 {
                c = data.apply(alg, &c);
            }
            if let Some(degree) = stray_degree(alg, &c) {
                return Ok(RfRiVerdict::Neither {
                    witness: Witness {
                        projective: Some(i),
                        p,
                        degree,
                    },
                });
            }
            if let Some(k) = injective_stalk(alg, &c) {
                found = Some(Orbit {
                    projective: i,
                    steps: p,
                    injective: k,
                });
                break;
            }
        }
        match found {
            Some(o) => orbits.push(o),
            None => return Ok(RfRiVerdict::Inconclusive { p_max }),
        }
    }
    Ok(RfRiVerdict::RF {
        criterion: "orbit of every indecomposable projective under S_d^{-1} stays in modules and ends at an injective".into(),
        orbits,
    })
}

/// `dim e_i H^0(S_d^{-p} A) e_j` for `p = 0..=p_max`.
pub fn h0_dims(alg: &FiniteAlgebra, d: usize, p_max: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    let data = SerreData::new(alg, d)?;
    let n = alg.num_vertices();
    let mut out = vec![vec![vec![0usize; n]; n]; p_max + 1];
    for i in 0..n {
        let mut c = ProjectiveComplex::stalk(vec![i], 0);
        for (p, layer) in out.iter_mut().enumerate() {
            if p > 0 {
                c = data.apply(alg, &c);
            }
            if let Some((_, dims)) = c.cohomology_dims(alg).into_iter().find(|(g, _)| *g == 0) {
                layer[i] = dims;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H0Crosscheck {
    pub p_max: usize,
    /// `h0[p][i][j]`.
    pub h0: Vec<Vec<Vec<usize>>>,
    /// `(p, i, j, from H^0, from the presentation)` for every disagreement.
    pub mismatches: Vec<(usize, usize, usize, usize, u64)>,
    pub pass: bool,
}

/// Compares `H^0(S_d^{-p} A)` with the degree-`p` part of a Hilbert table of
/// the matching graded presentation.
pub fn h0_crosscheck(alg: &FiniteAlgebra, d: usize, p_max: usize, table: &HilbertTable) -> Result<H0Crosscheck> {
    if (table.max_degree as usize) < p_max {
        return Err(Error::Precondition(format!(
            "Hilbert table only reaches degree {}",
            table.max_degree
        )));
    }
    let h0 = h0_dims(alg, d, p_max)?;
    let mut mismatches = Vec::new();
    for (p, layer) in h0.iter().enumerate() {
        for (i, row) in layer.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let y = table.dim(p as u64, i, j);
                if x as u64 != y {
                    mismatches.push((p, i, j, x, y));
                }
            }
        }
    }
    let pass = mismatches.is_empty();
    Ok(H0Crosscheck {
        p_max,
        h0,
        mismatches,
        pass,
    })
}
