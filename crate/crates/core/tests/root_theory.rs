//! Root-theory checks that cut across modules: double-root variants agree
//! classically, the noncommutative commutator identity picks up a matrix
//! witness, and the presentation machinery refuses what it should.

use pairkit_core::instances;
use pairkit_core::pairs::{uniform_presentation, Pair, RelKind};
use pairkit_core::poly::{
    a0_pi_check, double_root, parse_word_poly, DoubleRootVariant, Poly, UPoly,
};

fn polys_up_to(p: &pairkit_core::pairs::FinitePair, deg: u32) -> Vec<UPoly<u16>> {
    let els: Vec<u16> = p.elements().unwrap();
    let mut fam: Vec<UPoly<u16>> = vec![Poly::zero()];
    for k in 0..=deg {
        let mut next = Vec::new();
        for f in &fam {
            for c in &els {
                let mut f2 = f.clone();
                if *c != p.zero() {
                    f2.terms.insert(k, *c);
                }
                next.push(f2);
            }
        }
        fam = next;
    }
    fam
}

#[test]
fn double_root_variants_agree_over_f3_separable() {
    // In characteristic three the derivative of an inseparable polynomial
    // vanishes, so the derivative variant only matches on separable input.
    let p = instances::classical_fp(3).unwrap();
    let tangibles: Vec<u16> = (1..3).collect();
    for f in &polys_up_to(&p, 3) {
        let separable = !pairkit_core::poly::derivative(&p, f).is_zero();
        for a in &tangibles {
            let v1 =
                double_root(&p, RelKind::Leq0, f, a, DoubleRootVariant::SquareDivides).unwrap();
            let v2 = double_root(&p, RelKind::Leq0, f, a, DoubleRootVariant::Deflation).unwrap();
            assert_eq!(v1, v2, "square vs deflation at a={a}, f={:?}", f.terms);
            if separable {
                let v3 = double_root(&p, RelKind::Leq0, f, a, DoubleRootVariant::WithDerivative)
                    .unwrap();
                assert_eq!(v2, v3, "deflation vs derivative at a={a}, f={:?}", f.terms);
            }
        }
    }

    // The inseparable witness: lambda^3 + 1 = (lambda + 1)^3 has 2 as a
    // triple root, yet its derivative is the zero polynomial.
    let f = pairkit_core::poly::from_terms(&p, vec![(3u32, 1u16), (0, 1)]);
    assert!(pairkit_core::poly::derivative(&p, &f).is_zero());
    let two = 2u16;
    assert!(double_root(
        &p,
        RelKind::Leq0,
        &f,
        &two,
        DoubleRootVariant::SquareDivides
    )
    .unwrap());
    assert!(double_root(&p, RelKind::Leq0, &f, &two, DoubleRootVariant::Deflation).unwrap());
    assert!(!double_root(
        &p,
        RelKind::Leq0,
        &f,
        &two,
        DoubleRootVariant::WithDerivative
    )
    .unwrap());
}

#[test]
fn double_root_variants_agree_over_f5() {
    // Degree three keeps every nonconstant polynomial separable over F5,
    // so all three variants coincide without a proviso.
    let p = instances::classical_fp(5).unwrap();
    let tangibles: Vec<u16> = (1..5).collect();
    for f in &polys_up_to(&p, 3) {
        for a in &tangibles {
            let v1 =
                double_root(&p, RelKind::Leq0, f, a, DoubleRootVariant::SquareDivides).unwrap();
            let v2 = double_root(&p, RelKind::Leq0, f, a, DoubleRootVariant::Deflation).unwrap();
            let v3 =
                double_root(&p, RelKind::Leq0, f, a, DoubleRootVariant::WithDerivative).unwrap();
            assert_eq!(v1, v2, "square vs deflation at a={a}, f={:?}", f.terms);
            assert_eq!(v2, v3, "deflation vs derivative at a={a}, f={:?}", f.terms);
        }
    }
}

#[test]
fn commutator_identity_fails_on_matrices_with_witness() {
    // XY (-) YX is a null identity on the commutative base but picks up a
    // concrete counterwitness on the 2x2 matrix pair.
    let stb = instances::supertropical_boolean();
    let f = parse_word_poly(&stb, "X*Y - Y*X").unwrap();
    assert!(a0_pi_check(&stb, &f).unwrap().is_none());

    let m2_inst = instances::lookup("m2-stb").unwrap();
    let m2 = m2_inst.as_finite().unwrap().clone();
    let g = parse_word_poly(&m2, "X*Y - Y*X").unwrap();
    let witness = a0_pi_check(&m2, &g).unwrap();
    let w = witness.expect("matrix multiplication does not commute");
    assert_eq!(w.len(), 2);
}

#[test]
fn commutator_identity_holds_on_commutative_instances() {
    for name in [
        "boolean",
        "vandiver-3",
        "doubled-boolean",
        "classical-f3",
        "krasner-hyperpair",
    ] {
        let inst = instances::lookup(name).unwrap();
        let p = inst.as_finite().unwrap();
        let f = parse_word_poly(p, "X*Y - Y*X").unwrap();
        assert!(a0_pi_check(p, &f).unwrap().is_none(), "{name}");
    }
}

#[test]
fn presentation_refuses_non_metatangible_pairs() {
    let inst = instances::lookup("sign-hyperpair").unwrap();
    let p = inst.as_finite().unwrap();
    // {1, -1} has no tangible-plus-null presentation.
    let mixed = p.parse_el("{1,-1}").unwrap();
    assert!(uniform_presentation(p, &mixed).is_err());
}

#[test]
fn sign_hyperpair_root_example() {
    // f = lambda + {1} over the sign power set: {-1} evaluates to the full
    // sum {0, 1, -1}, which contains zero, so it is a null root.
    use pairkit_core::poly::{eval, from_terms};
    let inst = instances::lookup("sign-hyperpair").unwrap();
    let p = inst.as_finite().unwrap();
    let one = p.one();
    let f = from_terms(p, vec![(1u32, one), (0, one)]);
    let minus = p.parse_el("{-1}").unwrap();
    let v = eval(p, &f, &minus);
    assert_eq!(p.el_name(&v), "{0,1,-1}");
    assert!(p.is_null(&v));
}

#[test]
fn null_divisibility_search_over_supertropical_boolean() {
    // lambda + 1 null-divides lambda^2 + mu1 with a tangible witness of
    // degree one.
    use pairkit_core::poly::{divides, from_terms, DivKind};
    let p = instances::supertropical_boolean();
    let one = p.one();
    let g = p.parse_el("mu1").unwrap();
    let f1 = from_terms(&p, vec![(1u32, one), (0, one)]);
    let f2 = from_terms(&p, vec![(2u32, one), (0, g)]);
    let w = divides(&p, DivKind::Null, RelKind::Leq0, &f1, &f2, 1).unwrap();
    assert!(w.is_some());
}

#[test]
fn trivial_pair_lacks_a_negation_witness() {
    // The idempotent two-element semiring with null part {0} is zero-sum
    // free: declaring the only possible witness still fails, because
    // 1 + 1 = 1 never lands in the null part.
    use pairkit_core::instances::load_descriptor;
    use pairkit_core::pairs::verify_property_n;
    let json = r#"{"carrier":["0","1"],"add":[[0,1],[1,1]],"mul":[[0,0],[0,1]],
                   "tangibles":["1"],"nulls":["0"],"dagUnit":"1","zero":"0","one":"1"}"#;
    let p = load_descriptor("trivial-boolean", json).unwrap();
    let n = verify_property_n(&p);
    assert!(!n.all_ok());
    assert!(n.failures().iter().any(|c| c.id == "e-null"));
}

#[test]
fn diagonal_matrices_have_their_entries_as_eigenvalues() {
    use pairkit_core::matrix::{eigen_search, Mat};
    let p = instances::supertropical_boolean();
    let one = p.one();
    let a = Mat::from_rows(vec![vec![one, p.zero()], vec![p.zero(), one]]);
    let eigens = eigen_search(&p, &a, RelKind::Leq0).unwrap();
    // The unit vectors witness the diagonal entries.
    assert!(eigens
        .iter()
        .any(|(al, v)| *al == one && *v == vec![one, p.zero()]));
    assert!(eigens
        .iter()
        .any(|(al, v)| *al == one && *v == vec![p.zero(), one]));
}
