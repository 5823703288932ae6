use cyquiver_core::preproj::{
    check_drf, check_dri, classical_preprojective, default_family, h0_crosscheck, stable_cy_bimodule_check,
    stable_cy_module_check, superpotential_preprojective, tensor_preprojective, GradedPresentation,
};
use cyquiver_core::quiver::{classify_dynkin, double_quiver, pretty_print, Presentation, WeightGrading};
use cyquiver_core::repthy::{
    algebra_from_groebner, global_dimension, gorenstein_report, selfinjectivity_report, FiniteAlgebra,
};
use cyquiver_core::rewrite::{
    complete_groebner, finiteness_certificate, graded_dimensions, Budget, FinitenessVerdict, GroebnerState,
    HilbertTable,
};
use cyquiver_core::scalar::{is_prime, Coeff, Fp};
use cyquiver_core::{Error, Result};
use serde_json::{json, Value};

use crate::{Command, Grading, Of};

/// What a subcommand produced: the payload, whether its check passed, and
/// an optional table for TSV output.
pub struct Outcome {
    pub result: Value,
    pub certificates: Value,
    pub pass: bool,
    pub table: Option<String>,
    pub text: String,
}

impl Outcome {
    fn new(result: Value, pass: bool, text: String) -> Self {
        Outcome {
            result,
            certificates: json!({}),
            pass,
            table: None,
            text,
        }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

/// Classical construction without relations, superpotential otherwise.
fn preproj_of(p: &Presentation, maxdeg: u64) -> Result<GradedPresentation> {
    if p.relations.is_empty() {
        classical_preprojective(&p.quiver)
    } else {
        superpotential_preprojective(p, maxdeg)
    }
}

fn default_d(p: &Presentation) -> usize {
    if p.relations.is_empty() {
        1
    } else {
        2
    }
}

fn groebner_certificate<K: Coeff>(state: &GroebnerState<K>) -> Value {
    json!({
        "exact_through": state.exact_through(),
        "closed": state.is_closed(),
        "generators": state.generators().len(),
    })
}

/// The presentation the command looks at, graded by path length.
fn target(p: &Presentation, of: Of, maxdeg: u64) -> Result<Presentation> {
    Ok(match of {
        Of::Input => p.with_path_length_grading(),
        Of::Preproj => preproj_of(p, maxdeg)?.path_length(),
    })
}

fn finite_algebra(p: &Presentation, maxdeg: u64) -> Result<(FiniteAlgebra, Value)> {
    let state = complete_groebner(p, maxdeg.max(p.max_relation_degree()))?;
    let cert = groebner_certificate(&state);
    Ok((algebra_from_groebner(&state)?, cert))
}

fn prime_state(p: &Presentation, maxdeg: u64, prime: u64) -> Result<GroebnerState<Fp>> {
    if !is_prime(prime) || prime >= 1 << 32 {
        return Err(Error::Precondition(format!("{prime} is not a prime below 2^32")));
    }
    GroebnerState::<Fp>::complete(p, maxdeg, prime, Budget::default())
}

fn hilbert_outcome(table: HilbertTable, cert: Value) -> Outcome {
    let text = table
        .totals()
        .iter()
        .enumerate()
        .map(|(n, d)| format!("{n}\t{d}"))
        .collect::<Vec<_>>()
        .join("\n");
    Outcome {
        table: Some(table.to_tsv()),
        certificates: json!({ "groebner": cert }),
        ..Outcome::new(table.to_json(), true, format!("degree\ttotal\n{text}"))
    }
}

fn finite_outcome(v: FinitenessVerdict, cert: Value) -> Outcome {
    let pass = matches!(v, FinitenessVerdict::Finite { .. });
    let text = match &v {
        FinitenessVerdict::Finite { total_dim, top_degree } => {
            format!("Finite: dimension {total_dim}, top degree {top_degree}")
        }
        FinitenessVerdict::NotFiniteCertified { cycle, .. } => format!("NotFinite: normal words contain powers of {cycle}"),
        FinitenessVerdict::UnknownUpTo { degree } => format!("Unknown up to degree {degree}"),
    };
    Outcome {
        certificates: json!({ "groebner": cert }),
        ..Outcome::new(to_value(&v), pass, text)
    }
}

pub fn run(cmd: &Command, p: &Presentation) -> Result<Outcome> {
    Ok(match cmd {
        Command::Classify { .. } => {
            let v = classify_dynkin(&p.quiver);
            Outcome::new(to_value(&v), true, v.to_string())
        }
        Command::Double { .. } => {
            let dq = double_quiver(&p.quiver)?;
            let d = Presentation {
                name: format!("{}_double", p.name),
                grading: WeightGrading::path_length(&dq),
                quiver: dq,
                relations: Vec::new(),
            };
            let text = pretty_print(&d);
            Outcome::new(json!({ "presentation": text }), true, text)
        }
        Command::PreprojClassical { .. } => {
            let g = classical_preprojective(&p.quiver)?;
            Outcome::new(g.to_json(), true, pretty_print(&g.presentation))
        }
        Command::PreprojSuper { opts, .. } => {
            let g = superpotential_preprojective(p, opts.maxdeg)?;
            Outcome::new(g.to_json(), true, pretty_print(&g.presentation))
        }
        Command::PreprojTensor { opts, d, compare, .. } => {
            let (alg, cert) = finite_algebra(&p.with_path_length_grading(), opts.maxdeg)?;
            let t = tensor_preprojective(&alg, *d, opts.maxdeg as usize)?;
            let mut result = to_value(&t);
            let mut pass = true;
            if *compare {
                let g = preproj_of(p, opts.maxdeg)?;
                let table = graded_dimensions(&complete_groebner(&g.presentation, opts.maxdeg)?, opts.maxdeg)?;
                let mismatches = t.compare(&table, opts.maxdeg as usize);
                pass = mismatches.is_empty();
                result["mismatches"] = to_value(&mismatches);
            }
            let names = p.quiver.vertices();
            let mut tsv = String::from("degree\tsource\ttarget\tdim\n");
            for (k, m) in t.dims.iter().enumerate() {
                for (i, row) in m.iter().enumerate() {
                    for (j, x) in row.iter().enumerate() {
                        tsv.push_str(&format!("{k}\t{}\t{}\t{x}\n", names[i], names[j]));
                    }
                }
            }
            let text = t
                .totals()
                .iter()
                .enumerate()
                .map(|(k, x)| format!("{k}\t{x}"))
                .collect::<Vec<_>>()
                .join("\n");
            Outcome {
                table: Some(tsv),
                certificates: json!({ "groebner": cert }),
                ..Outcome::new(result, pass, format!("degree\ttotal\n{text}"))
            }
        }
        Command::Hilbert { opts, of, grading, prime, .. } => {
            let q = match (of, grading) {
                (Of::Preproj, Grading::Tensor) => preproj_of(p, opts.maxdeg)?.presentation,
                (Of::Input, Grading::Tensor) => p.clone(),
                (_, Grading::Path) => target(p, *of, opts.maxdeg)?,
            };
            match *prime {
                Some(prime) => {
                    let state = prime_state(&q, opts.maxdeg, prime)?;
                    hilbert_outcome(graded_dimensions(&state, opts.maxdeg)?, groebner_certificate(&state))
                }
                None => {
                    let state = complete_groebner(&q, opts.maxdeg)?;
                    hilbert_outcome(graded_dimensions(&state, opts.maxdeg)?, groebner_certificate(&state))
                }
            }
        }
        Command::Finite { opts, of, prime, .. } => {
            let q = target(p, *of, opts.maxdeg)?;
            match *prime {
                Some(prime) => {
                    let state = prime_state(&q, opts.maxdeg, prime)?;
                    finite_outcome(finiteness_certificate(&state), groebner_certificate(&state))
                }
                None => {
                    let state = complete_groebner(&q, opts.maxdeg)?;
                    finite_outcome(finiteness_certificate(&state), groebner_certificate(&state))
                }
            }
        }
        Command::Selfinjective { opts, of, .. } => {
            let (alg, cert) = finite_algebra(&target(p, *of, opts.maxdeg)?, opts.maxdeg)?;
            let r = selfinjectivity_report(&alg);
            let text = match (&r.nakayama, &r.witness) {
                (Some(nu), _) => format!(
                    "selfinjective, Nakayama permutation {}",
                    nu.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")
                ),
                (None, Some(w)) => format!("not selfinjective: {w}"),
                (None, None) => "not selfinjective".into(),
            };
            Outcome {
                certificates: json!({ "groebner": cert }),
                ..Outcome::new(to_value(&r), r.selfinjective, text)
            }
        }
        Command::Gldim { opts, of, cap, .. } => {
            let (alg, cert) = finite_algebra(&target(p, *of, opts.maxdeg)?, opts.maxdeg)?;
            let g = global_dimension(&alg, *cap);
            Outcome {
                certificates: json!({ "groebner": cert }),
                ..Outcome::new(json!({ "global_dimension": g, "dimension": alg.dim() }), true, format!("global dimension {g}"))
            }
        }
        Command::Gorenstein { opts, of, cap, .. } => {
            let (alg, cert) = finite_algebra(&target(p, *of, opts.maxdeg)?, opts.maxdeg)?;
            let r = gorenstein_report(&alg, *cap);
            let text = match r.gorenstein {
                Some(n) => format!("Gorenstein of dimension {n}"),
                None => format!("not certified Gorenstein: injective dimensions {} (right), {} (left)", r.right, r.left),
            };
            Outcome {
                certificates: json!({ "groebner": cert }),
                ..Outcome::new(to_value(&r), r.gorenstein.is_some(), text)
            }
        }
        Command::CheckDri { opts, d, p_max, .. } => {
            let (alg, cert) = finite_algebra(&p.with_path_length_grading(), opts.maxdeg)?;
            let v = check_dri(&alg, *d, p_max.unwrap_or(6))?;
            let text = match &v {
                cyquiver_core::preproj::RfRiVerdict::RI { through, .. } => format!("RI through p = {through}"),
                other => format!("not RI: {}", to_value(other)),
            };
            Outcome {
                certificates: json!({ "groebner": cert }),
                ..Outcome::new(to_value(&v), v.is_ri(), text)
            }
        }
        Command::CheckDrf { opts, d, p_max, .. } => {
            let (alg, cert) = finite_algebra(&p.with_path_length_grading(), opts.maxdeg)?;
            let v = check_drf(&alg, *d, p_max.unwrap_or(12))?;
            let text = match &v {
                cyquiver_core::preproj::RfRiVerdict::RF { orbits, .. } => format!(
                    "RF: {}",
                    orbits
                        .iter()
                        .map(|o| format!("P{} -> I{} in {} steps", o.projective + 1, o.injective + 1, o.steps))
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
                other => format!("not RF: {}", to_value(other)),
            };
            Outcome {
                certificates: json!({ "groebner": cert }),
                ..Outcome::new(to_value(&v), v.is_rf(), text)
            }
        }
        Command::CyStable { opts, of, shift, depth, .. } => {
            let (alg, cert) = finite_algebra(&target(p, *of, opts.maxdeg)?, opts.maxdeg)?;
            let r = stable_cy_module_check(&alg, *shift, &default_family(&alg, *depth))?;
            let mut tsv = String::from("x\ty\thom\tdual\n");
            for pair in &r.pairs {
                tsv.push_str(&format!("{}\t{}\t{}\t{}\n", pair.x, pair.y, pair.hom, pair.dual));
            }
            let text = format!(
                "{} over {} modules, {} pairs, {} violations",
                if r.pass { "pass" } else { "fail" },
                r.family.len(),
                r.pairs.len(),
                r.violations.len()
            );
            Outcome {
                table: Some(tsv),
                certificates: json!({ "groebner": cert }),
                ..Outcome::new(to_value(&r), r.pass, text)
            }
        }
        Command::CyBimodule { opts, d, .. } => {
            let d = d.unwrap_or_else(|| default_d(p));
            let g = preproj_of(p, opts.maxdeg)?;
            let r = stable_cy_bimodule_check(&g, d, opts.maxdeg)?;
            let text = format!(
                "tier (i) {}, tier (ii) {}, window {:?}{}",
                if r.tier1 { "pass" } else { "fail" },
                to_value(&r.tier2)["outcome"].as_str().unwrap_or("?"),
                r.window,
                if r.sound { "" } else { ", truncation not certified" }
            );
            Outcome::new(to_value(&r), r.pass, text)
        }
        Command::H0Crosscheck { opts, d, p_max, .. } => {
            let d = d.unwrap_or_else(|| default_d(p));
            let p_max = p_max.unwrap_or(4);
            let (alg, cert) = finite_algebra(&p.with_path_length_grading(), opts.maxdeg)?;
            let g = preproj_of(p, opts.maxdeg)?;
            let deg = opts.maxdeg.max(p_max as u64);
            let table = graded_dimensions(&complete_groebner(&g.presentation, deg)?, p_max as u64)?;
            let r = h0_crosscheck(&alg, d, p_max, &table)?;
            let text = format!(
                "{} through p = {p_max}, {} mismatches",
                if r.pass { "pass" } else { "fail" },
                r.mismatches.len()
            );
            Outcome {
                certificates: json!({ "groebner": cert }),
                ..Outcome::new(to_value(&r), r.pass, text)
            }
        }
        Command::EmitCorpus { .. } => unreachable!("handled without an input file"),
    })
}
