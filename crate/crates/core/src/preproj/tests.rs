use super::*;
use crate::quiver::{parse_presentation, Presentation};
use crate::repthy::{algebra_from_groebner, selfinjectivity_report, FiniteAlgebra};
use crate::rewrite::{complete_groebner, graded_dimensions};

const KA2: &str = "quiver a2\nvertices 1 2\narrow a: 1 -> 2\n";
const KA3: &str = "quiver a3\nvertices 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\n";
const RF: &str = "quiver rf\nvertices 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelation a*b\n";
const KRONECKER: &str = "quiver kronecker\nvertices 1 2\narrow x: 1 -> 2\narrow y: 1 -> 2\n";
const BEILINSON: &str = "quiver beilinson\nvertices 1 2 3\n\
arrow x1: 1 -> 2\narrow y1: 1 -> 2\narrow z1: 1 -> 2\n\
arrow x2: 2 -> 3\narrow y2: 2 -> 3\narrow z2: 2 -> 3\n\
relation x1*y2 - y1*x2\nrelation x1*z2 - z1*x2\nrelation y1*z2 - z1*y2\n";

fn pres(src: &str) -> Presentation {
    parse_presentation(src).unwrap()
}

fn alg(p: &Presentation) -> FiniteAlgebra {
    algebra_from_groebner(&complete_groebner(p, 16).unwrap()).unwrap()
}

fn relation_strings(g: &GradedPresentation) -> Vec<String> {
    let q = &g.presentation.quiver;
    let mut out: Vec<String> = g.presentation.relations.iter().map(|r| r.display(q).to_string()).collect();
    out.sort();
    out
}

#[test]
fn classical_a2_has_one_relation_per_vertex() {
    let g = classical_preprojective(&pres(KA2).quiver).unwrap();
    assert_eq!(g.presentation.relations.len(), 2);
    assert_eq!(g.new_arrows.len(), 1);
    let a = alg(&g.presentation);
    assert_eq!(a.dim(), 4);
    assert!(selfinjectivity_report(&a).selfinjective);
}

#[test]
fn classical_dims_for_dynkin() {
    // dim Π_Q = n(n+1)(n+2)/6 for type A_n
    let a3 = classical_preprojective(&pres(KA3).quiver).unwrap();
    assert_eq!(alg(&a3.presentation).dim(), 10);
}

#[test]
fn superpotential_of_the_rf_example() {
    let g = superpotential_preprojective(&pres(RF), 8).unwrap();
    assert_eq!(g.new_arrows.len(), 1);
    assert_eq!(relation_strings(&g).len(), 3);
    let a = alg(&g.presentation);
    // the oriented 3-cycle modulo all paths of length 2
    assert_eq!(a.dim(), 6);
    assert!(selfinjectivity_report(&a).selfinjective);
}

#[test]
fn superpotential_of_beilinson_is_infinite() {
    let g = superpotential_preprojective(&pres(BEILINSON), 8).unwrap();
    assert_eq!(g.new_arrows.len(), 3);
    assert_eq!(g.presentation.relations.len(), 9);
    let t = graded_dimensions(&complete_groebner(&g.presentation, 8).unwrap(), 3).unwrap();
    let base = alg(&pres(BEILINSON)).dim() as u64;
    assert_eq!(t.total(0), base);
    assert!(t.total(1) > 0 && t.total(2) > 0 && t.total(3) > 0);
}

#[test]
fn superpotential_requires_global_dimension_two() {
    for src in [KA2, KA3] {
        assert!(matches!(
            superpotential_preprojective(&pres(src), 8),
            Err(crate::Error::Precondition(_))
        ));
    }
}

#[test]
fn tensor_matches_classical_for_hereditary() {
    for (src, maxdeg) in [(KA2, 3usize), (KA3, 4), (KRONECKER, 3)] {
        let p = pres(src);
        let t = tensor_preprojective(&alg(&p), 1, maxdeg).unwrap();
        let g = classical_preprojective(&p.quiver).unwrap();
        let table = graded_dimensions(&complete_groebner(&g.presentation, 12).unwrap(), maxdeg as u64).unwrap();
        assert_eq!(t.compare(&table, maxdeg), vec![], "{src}");
    }
    let t = tensor_preprojective(&alg(&pres(KA2)), 1, 3).unwrap();
    assert_eq!(t.totals(), vec![3, 1, 0, 0]);
}

#[test]
fn tensor_matches_superpotential_for_the_rf_example() {
    let p = pres(RF);
    let t = tensor_preprojective(&alg(&p), 2, 3).unwrap();
    let g = superpotential_preprojective(&p, 8).unwrap();
    let table = graded_dimensions(&complete_groebner(&g.presentation, 12).unwrap(), 3).unwrap();
    assert_eq!(t.compare(&table, 3), vec![]);
}

#[test]
fn hereditary_dynkin_is_rf() {
    for src in [KA2, KA3] {
        let v = check_drf(&alg(&pres(src)), 1, 6).unwrap();
        assert!(v.is_rf(), "{v:?}");
    }
}

#[test]
fn rf_example_is_2_rf() {
    let a = alg(&pres(RF));
    let v = check_drf(&a, 2, 6).unwrap();
    let RfRiVerdict::RF { orbits, .. } = v else { panic!("{v:?}") };
    assert_eq!(orbits.len(), 3);
    assert!(!check_dri(&a, 2, 3).unwrap().is_ri());
}

#[test]
fn kronecker_and_beilinson_are_ri() {
    let k = alg(&pres(KRONECKER));
    assert!(check_dri(&k, 1, 4).unwrap().is_ri());
    assert!(!check_drf(&k, 1, 4).unwrap().is_rf());
    let b = alg(&pres(BEILINSON));
    assert!(check_dri(&b, 2, 3).unwrap().is_ri());
}

#[test]
fn gldim_guard() {
    assert!(matches!(check_dri(&alg(&pres(RF)), 1, 2), Err(crate::Error::Precondition(_))));
}

#[test]
fn h0_agrees_with_the_presentation() {
    let p = pres(RF);
    let g = superpotential_preprojective(&p, 8).unwrap();
    let table = graded_dimensions(&complete_groebner(&g.presentation, 12).unwrap(), 3).unwrap();
    let r = h0_crosscheck(&alg(&p), 2, 3, &table).unwrap();
    assert!(r.pass, "{:?}", r.mismatches);
    let k = pres(KRONECKER);
    let g = classical_preprojective(&k.quiver).unwrap();
    let table = graded_dimensions(&complete_groebner(&g.presentation, 12).unwrap(), 3).unwrap();
    let r = h0_crosscheck(&alg(&k), 1, 3, &table).unwrap();
    assert!(r.pass, "{:?}", r.mismatches);
}

#[test]
fn stable_cy_for_pi_a2() {
    let g = classical_preprojective(&pres(KA2).quiver).unwrap();
    let a = alg(&g.presentation);
    let fam = default_family(&a, 4);
    assert!(stable_cy_module_check(&a, 2, &fam).unwrap().pass);
    assert!(!stable_cy_module_check(&a, 1, &fam).unwrap().pass);
}

#[test]
fn stable_cy_needs_selfinjective() {
    let a = alg(&pres(KA2));
    let fam = default_family(&a, 2);
    assert!(matches!(stable_cy_module_check(&a, 2, &fam), Err(crate::Error::Precondition(_))));
}

#[test]
fn bimodule_cy_for_pi_a2() {
    let g = classical_preprojective(&pres(KA2).quiver).unwrap();
    let r = stable_cy_bimodule_check(&g, 1, 12).unwrap();
    assert!(r.sound);
    assert!(r.tier1, "{:?} vs {:?}", r.hom_dual, r.syzygy);
    assert_eq!(r.tier2, IsoSearch::Found);
}

#[test]
fn bimodule_cy_for_the_rf_example() {
    let g = superpotential_preprojective(&pres(RF), 8).unwrap();
    let r = stable_cy_bimodule_check(&g, 2, 12).unwrap();
    assert!(r.pass, "{:?} vs {:?}", r.hom_dual, r.syzygy);
}

#[test]
fn bimodule_cy_needs_selfinjective() {
    let g = GradedPresentation {
        presentation: pres(KA2),
        base_arrows: vec![0],
        new_arrows: vec![],
    };
    assert!(matches!(stable_cy_bimodule_check(&g, 1, 12), Err(crate::Error::Precondition(_))));
}
