use super::*;
use crate::quiver::{parse_presentation, WeightGrading};
use crate::scalar::{Fp, Rat};

fn pres(src: &str) -> crate::quiver::Presentation {
    parse_presentation(src).unwrap()
}

const LOOP_PI: &str = "quiver loop\nvertices 1\narrow x: 1 -> 1\narrow x‾: 1 -> 1\nrelation x*x‾ - x‾*x\n";
const A2_PI: &str = "quiver a2\nvertices 1 2\narrow a: 1 -> 2\narrow a‾: 2 -> 1\nrelation a*a‾\nrelation -a‾*a\n";
const RF: &str = "quiver rf\nvertices 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelation a*b\n";

#[test]
fn commutative_polynomials_in_two_variables() {
    let s = complete_groebner(&pres(LOOP_PI), 12).unwrap();
    let t = graded_dimensions(&s, 12).unwrap();
    assert_eq!(t.totals(), (1..=13).collect::<Vec<u64>>());
    assert_eq!(s.generators().len(), 1);
    assert!(s.is_closed());
}

#[test]
fn a2_preprojective_is_four_dimensional() {
    let s = complete_groebner(&pres(A2_PI), 6).unwrap();
    let t = graded_dimensions(&s, 6).unwrap();
    assert_eq!(t.totals(), vec![2, 2, 0, 0, 0, 0, 0]);
    assert_eq!(
        finiteness_certificate(&s),
        FinitenessVerdict::Finite { total_dim: 4, top_degree: 1 }
    );
}

#[test]
fn free_loop_is_certified_infinite() {
    let p = pres("quiver l\nvertices 1\narrow x: 1 -> 1\n");
    let s = complete_groebner(&p, 5).unwrap();
    match finiteness_certificate(&s) {
        FinitenessVerdict::NotFiniteCertified { layer_dims, cycle } => {
            assert_eq!(layer_dims, vec![1; 6]);
            assert_eq!(cycle, "x");
        }
        v => panic!("unexpected {v:?}"),
    }
}

#[test]
fn truncated_finite_algebra() {
    let s = complete_groebner(&pres(RF), 4).unwrap();
    assert_eq!(graded_dimensions(&s, 4).unwrap().totals(), vec![3, 2, 0, 0, 0]);
    let b = monomial_basis(&s, 1).unwrap();
    assert_eq!(b.len(), 2);
    assert!(matches!(monomial_basis(&s, 5), Err(crate::Error::BeyondCertified { .. })));
}

#[test]
fn normal_form_is_unique_and_idempotent() {
    let p = pres(LOOP_PI);
    let s = complete_groebner(&p, 6).unwrap();
    let (q, g) = (&p.quiver, &p.grading);
    let x = Word::from_arrows(q, g, &[0]).unwrap();
    let xb = Word::from_arrows(q, g, &[1]).unwrap();
    let xxb = Element::<Rat>::monomial(x.concat(&xb).unwrap(), crate::scalar::rat(1));
    let xbx = Element::<Rat>::monomial(xb.concat(&x).unwrap(), crate::scalar::rat(1));
    let n1 = s.normal_form(&xxb).unwrap();
    let n2 = s.normal_form(&xbx).unwrap();
    assert_eq!(n1, n2);
    assert_eq!(s.normal_form(&n1).unwrap(), n1);
    let too_long = Word::from_arrows(q, g, &[0; 7]).unwrap();
    assert!(s.normal_form(&Element::monomial(too_long, crate::scalar::rat(1))).is_err());
}

#[test]
fn overlap_creates_new_generator() {
    let p = pres("quiver two\nvertices 1\narrow x: 1 -> 1\narrow y: 1 -> 1\nrelation x*y - y*x\nrelation x*x\n");
    let s = complete_groebner(&p, 8).unwrap();
    let t = graded_dimensions(&s, 8).unwrap();
    // k[x, y]/(x^2): dims 1, 2, 2, 2, ...
    assert_eq!(t.totals(), vec![1, 2, 2, 2, 2, 2, 2, 2, 2]);
}

#[test]
fn prime_field_agrees_on_small_examples() {
    let p = pres(LOOP_PI);
    let s = GroebnerState::<Fp>::complete(&p, 8, 101, Budget::default()).unwrap();
    assert_eq!(graded_dimensions(&s, 8).unwrap().totals(), (1..=9).collect::<Vec<u64>>());
}

#[test]
fn characteristic_two_changes_the_answer() {
    // over F_2 the last two relations coincide
    let p = pres("quiver c\nvertices 1\narrow x: 1 -> 1\narrow y: 1 -> 1\nrelation x*y - y*x\nrelation x*x + y*y\nrelation x*x - y*y\n");
    let q = GroebnerState::<Rat>::complete(&p, 6, (), Budget::default()).unwrap();
    assert_eq!(graded_dimensions(&q, 3).unwrap().totals(), vec![1, 2, 1, 0]);
    let s = GroebnerState::<Fp>::complete(&p, 6, 2, Budget::default()).unwrap();
    assert_eq!(graded_dimensions(&s, 3).unwrap().totals(), vec![1, 2, 2, 2]);
}

#[test]
fn rejects_invalid_input() {
    let p = pres("quiver l\nvertices 1 2\narrow a: 1 -> 2\narrow b: 2 -> 1\nrelation a*b\n");
    assert!(matches!(complete_groebner(&p, 1), Err(crate::Error::Precondition(_))));
    let cyc = p.with_grading(WeightGrading::from_weights(vec![0, 0]));
    assert!(matches!(complete_groebner(&cyc, 4), Err(crate::Error::InvalidPresentation(_))));
}

#[test]
fn tensor_grading_with_weight_zero_arrows() {
    let p = pres(A2_PI).with_grading(WeightGrading::from_weights(vec![0, 1]));
    let s = complete_groebner(&p, 4).unwrap();
    let t = graded_dimensions(&s, 4).unwrap();
    // degree 0: e1, e2, a; degree 1: a‾
    assert_eq!(t.totals(), vec![3, 1, 0, 0, 0]);
    assert!(matches!(finiteness_certificate(&s), FinitenessVerdict::Finite { total_dim: 4, .. }));
}

#[test]
fn log_replays() {
    let s = complete_groebner(&pres(LOOP_PI), 5).unwrap();
    let log = s.to_log_json();
    assert!(replay_log(&log).unwrap());
    let mut tampered = log.clone();
    tampered["generators"] = serde_json::json!(["x"]);
    assert!(!replay_log(&tampered).unwrap());
}
