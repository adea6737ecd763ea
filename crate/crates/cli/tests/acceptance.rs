//! Acceptance gate: one test per top-level criterion, each printing a
//! pass/fail line with its elapsed time and asserting the stated budget.

use pairkit_core::instances;
use pairkit_core::matrix::{
    all_matrices, cauchy_binet_check, cayley_hamilton_check, dag_adjoint, dag_det, eigen_search,
    is_singular, laplace_check, mat_mul, Mat,
};
use pairkit_core::pairs::{
    check_est, check_fissure, check_strong_reversibility, classify, dag, leq0,
    uniform_presentation, verify_pair_axioms, verify_property_n, Pair, RelKind,
};
use pairkit_core::poly::{
    self, constant, eval, factor_identity_check, is_preceq_root, is_root, lambda_minus, monomial,
    poly_add, tangible_polys,
};
use pairkit_core::{cong, hyper, linalg, morph, phase, with_pair};
use std::time::Instant;

struct Gate {
    name: &'static str,
    budget_secs: f64,
    started: Instant,
}

impl Gate {
    fn open(name: &'static str, budget_secs: f64) -> Self {
        Gate {
            name,
            budget_secs,
            started: Instant::now(),
        }
    }
    fn close(self) {
        let secs = self.started.elapsed().as_secs_f64();
        println!(
            "PASS {} ({secs:.2}s, budget {}s)",
            self.name, self.budget_secs
        );
        assert!(
            secs < self.budget_secs,
            "{} exceeded its {}s budget at {secs:.2}s",
            self.name,
            self.budget_secs
        );
    }
}

const AXIOM_INSTANCES: [&str; 11] = [
    "boolean",
    "vandiver-2",
    "vandiver-3",
    "vandiver-4",
    "supertropical-boolean",
    "doubled-boolean",
    "trop-ext",
    "krasner-hyperpair",
    "sign-hyperpair",
    "quot-f3-hyperpair",
    "quot-f5-hyperpair",
];

#[test]
fn criterion_1_axioms_and_negation_witness() {
    let gate = Gate::open("criterion-1 axiom/negation suite", 10.0);
    for name in AXIOM_INSTANCES {
        let inst = instances::lookup(name).unwrap();
        with_pair!(&inst, p => {
            let ax = verify_pair_axioms(p);
            assert!(ax.all_ok(), "{name} axioms: {:?}", ax.failures());
            let n = verify_property_n(p);
            assert!(n.all_ok(), "{name} negation witness: {:?}", n.failures());
            let est = check_est(p);
            assert!(est.all_ok(), "{name} unit-sum laws: {:?}", est.failures());
        });
    }
    gate.close();
}

#[test]
fn criterion_2_classification_and_presentation() {
    let gate = Gate::open("criterion-2 classification suite", 10.0);
    let stb = instances::supertropical_boolean();
    let report = classify(&stb, 4);
    assert!(report.shallow && report.a0_bipotent && report.kind_first);

    for name in instances::registry_names() {
        let inst = instances::lookup(name).unwrap();
        with_pair!(&inst, p => {
            let r = classify(p, 4);
            if r.proper && r.shallow {
                assert!(r.a0_domain, "{name}: proper shallow pair must be null-prime");
            }
            if r.metatangible && p.dag_unit().is_some() {
                for c in p.sample() {
                    let (ct, m) = uniform_presentation(p, &c)
                        .unwrap_or_else(|e| panic!("{name}: {e}"));
                    let rebuilt = if m == 0 {
                        p.zero()
                    } else if r.kind_first {
                        let mut acc = p.zero();
                        for _ in 0..m {
                            acc = p.add(&acc, &ct);
                        }
                        acc
                    } else if m == 1 {
                        ct.clone()
                    } else {
                        p.add(&ct, &dag(p, &ct).unwrap())
                    };
                    assert_eq!(rebuilt, c, "{name}: presentation must reconstruct");
                }
            }
        });
    }
    gate.close();
}

#[test]
fn criterion_3_hyperpairs() {
    let gate = Gate::open("criterion-3 hyperpair suite", 30.0);
    for name in [
        "krasner-hyperpair",
        "sign-hyperpair",
        "quot-f3-hyperpair",
        "quot-f5-hyperpair",
    ] {
        let inst = instances::lookup(name).unwrap();
        let p = inst.as_finite().unwrap();
        assert!(
            check_fissure(p, RelKind::Subset, 4).unwrap(),
            "{name} fissure"
        );
        assert!(
            check_strong_reversibility(p, RelKind::Subset).unwrap(),
            "{name} strong reversibility"
        );
        // Power sets of hyperfields are null-prime.
        let els = p.elements().unwrap();
        for a in &els {
            for b in &els {
                assert!(
                    !p.is_null(&p.mul(a, b)) || p.is_null(a) || p.is_null(b),
                    "{name}: zero-free products must stay zero-free"
                );
            }
        }
    }

    // Explicit isomorphism with the supertropical Boolean pair, checked on
    // both operation tables.
    let kpp = hyper::power_set_pair(&hyper::krasner(), "krasner-hyperpair").unwrap();
    let stb = instances::supertropical_boolean();
    let map: Vec<u16> = (0..kpp.carrier_len() as u16)
        .map(|e| match kpp.el_name(&e).as_str() {
            "{0}" => stb.parse_el("0").unwrap(),
            "{1}" => stb.parse_el("1").unwrap(),
            _ => stb.parse_el("mu1").unwrap(),
        })
        .collect();
    assert!(hyper::check_pair_isomorphism(&kpp, &stb, &map));

    // Double-distributivity failure at exact rational angles.
    let (lhs, rhs) = phase::double_distributivity_witness(
        pairkit_core::phase::Rat::new(0, 1),
        pairkit_core::phase::Rat::new(1, 8),
    );
    assert!(lhs.full && lhs.has_zero);
    assert_ne!(lhs, rhs);
    assert!(lhs.contains_point(pairkit_core::phase::Rat::new(1, 4)));
    assert!(!rhs.contains_point(pairkit_core::phase::Rat::new(1, 4)));
    gate.close();
}

#[test]
fn criterion_4_roots() {
    let gate = Gate::open("criterion-4 root suite", 60.0);
    // Factor-shift expansion identity for every carrier element at n <= 4,
    // on the distributive instances with a negation witness.
    for name in instances::registry_names() {
        let inst = instances::lookup(name).unwrap();
        let caps = inst.caps();
        if !caps.enumerable || caps.nd_only || !inst.claims_property_n() {
            continue;
        }
        with_pair!(&inst, p => {
            for b in p.sample() {
                for n in 1..=4 {
                    assert!(
                        factor_identity_check(p, &b, n).unwrap(),
                        "{name}: factor expansion at n = {n}"
                    );
                }
            }
        });
    }

    // The degree-two divisibility example has a search witness on the
    // supertropical Boolean and sign pairs.
    for name in ["supertropical-boolean", "sign-hyperpair"] {
        let inst = instances::lookup(name).unwrap();
        let p = inst.as_finite().unwrap();
        let rel = p.canonical_rel();
        for b in p.search_palette() {
            let f1 = lambda_minus(p, &b).unwrap();
            let b2 = p.mul(&b, &b);
            let f2 = poly_add(
                p,
                &monomial(p, 2, p.one()),
                &constant(p, dag(p, &b2).unwrap()),
            );
            let w = poly::divides(p, poly::DivKind::Surpassed, rel, &f1, &f2, 1).unwrap();
            assert!(w.is_some(), "{name}: witness at {}", p.el_name(&b));
        }
    }

    // Surpassed roots are null roots over tangible polynomials of degree
    // <= 2; under fissure every tangible root is a surpassed root; on the
    // null-prime pairs the monic surpassed-root count is bounded by degree.
    for name in [
        "supertropical-boolean",
        "sign-hyperpair",
        "krasner-hyperpair",
    ] {
        let inst = instances::lookup(name).unwrap();
        let p = inst.as_finite().unwrap();
        let rel = p.canonical_rel();
        let tangibles: Vec<u16> = p
            .elements()
            .unwrap()
            .into_iter()
            .filter(|e| p.is_tangible(e))
            .collect();
        for f in tangible_polys(p, 2, &p.search_palette()) {
            for a in &tangibles {
                let witness = is_preceq_root(p, rel, &f, a).unwrap();
                if witness.is_some() {
                    assert!(is_root(p, &f, a), "{name}: surpassed roots must be roots");
                }
                if is_root(p, &f, a) {
                    assert!(
                        witness.is_some(),
                        "{name}: fissure roots must be surpassed roots"
                    );
                }
            }
        }
        // Monic count bound at degree <= 2 over the whole coefficient space.
        let els: Vec<u16> = p.elements().unwrap();
        for d in 1..=2u32 {
            let mut fam = vec![monomial(p, d, p.one())];
            for k in 0..d {
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
            for f in fam {
                let count = poly::count_preceq_roots(p, rel, &f).unwrap();
                assert!(
                    count <= d as usize,
                    "{name}: {count} surpassed roots at degree {d}"
                );
            }
        }
    }
    gate.close();
}

#[test]
fn criterion_5_matrices() {
    let gate = Gate::open("criterion-5 matrix suite", 300.0);
    let stb = instances::supertropical_boolean();
    let mats = all_matrices(&stb, 2).unwrap();
    assert_eq!(mats.len(), 81);
    for a in &mats {
        assert!(cayley_hamilton_check(&stb, a).unwrap());
    }
    let dbl_inst = instances::lookup("doubled-boolean").unwrap();
    let dbl = dbl_inst.as_finite().unwrap();
    let dmats = all_matrices(dbl, 2).unwrap();
    assert_eq!(dmats.len(), 256);
    for a in &dmats {
        assert!(cayley_hamilton_check(dbl, a).unwrap());
    }

    // Product law for the dagger determinant, all 81 x 81 pairs.
    for a in &mats {
        let da = dag_det(&stb, a).unwrap();
        for b in &mats {
            let rhs = stb.mul(&da, &dag_det(&stb, b).unwrap());
            let lhs = dag_det(&stb, &mat_mul(&stb, a, b)).unwrap();
            assert!(leq0(&stb, &rhs, &lhs).unwrap());
        }
    }

    // Expansion identities, exhaustive at n = 3 under the reported reading
    // (transposed row expansion and sum-parity block expansion).
    for a in all_matrices(&stb, 3).unwrap() {
        let lap = laplace_check(&stb, &a, 0).unwrap();
        assert!(lap.transposed_dag);
        for rows in [vec![0usize], vec![0, 1]] {
            let cb = cauchy_binet_check(&stb, &a, &rows).unwrap();
            assert!(cb.sum_parity_dag);
        }
    }

    // The adjoint identity, exhaustive at n = 2.
    let nulls: Vec<u16> = stb
        .elements()
        .unwrap()
        .into_iter()
        .filter(|e| stb.is_null(e))
        .collect();
    let els: Vec<u16> = stb.elements().unwrap();
    for a in &mats {
        let adj = dag_adjoint(&stb, a).unwrap();
        let prod = mat_mul(&stb, a, &adj);
        let da = dag_det(&stb, a).unwrap();
        let invertible = els.iter().any(|x| stb.mul(&da, x) == stb.one());
        for i in 0..2 {
            for j in 0..2 {
                if i == j {
                    assert_eq!(*prod.at(i, i), da);
                } else {
                    assert!(stb.is_null(prod.at(i, j)));
                    if invertible {
                        assert!(nulls.iter().any(|h| stb.mul(&da, h) == *prod.at(i, j)));
                    }
                }
            }
        }
    }

    // Dependent-rows singularity, exhaustive at n = 3: the last row is the
    // sum of the first two.
    let els = stb.elements().unwrap();
    let mut vecs: Vec<Vec<u16>> = vec![vec![]];
    for _ in 0..3 {
        vecs = vecs
            .into_iter()
            .flat_map(|v| {
                els.iter().map(move |e| {
                    let mut v2 = v.clone();
                    v2.push(*e);
                    v2
                })
            })
            .collect();
    }
    for v1 in &vecs {
        for v2 in &vecs {
            let v3: Vec<u16> = v1.iter().zip(v2).map(|(a, b)| stb.add(a, b)).collect();
            let m = Mat::from_rows(vec![v1.clone(), v2.clone(), v3]);
            assert!(is_singular(&stb, &m).unwrap());
        }
    }
    gate.close();
}

#[test]
fn criterion_6_linear_algebra() {
    let gate = Gate::open("criterion-6 linear-algebra suite", 120.0);
    let stb = instances::supertropical_boolean();
    let palette: Vec<u16> = stb.elements().unwrap();
    let coeffs: Vec<u16> = palette
        .iter()
        .copied()
        .filter(|e| stb.is_tangible(e))
        .collect();
    let report = linalg::condition_harness(&stb, 3, &palette, &coeffs).unwrap();
    assert!(report.a1.holds, "A1: {:?}", report.a1.witness);
    assert!(report.a2.holds, "A2: {:?}", report.a2.witness);
    assert!(report.a3.holds, "A3: {:?}", report.a3.witness);
    assert!(report.a4.holds, "A4: {:?}", report.a4.witness);
    assert!(report.a5.holds, "A5: {:?}", report.a5.witness);
    assert!(
        report.a4_via_padding.holds,
        "padding: {:?}",
        report.a4_via_padding.witness
    );

    // Eigenvalues land on characteristic roots, exhaustive at 2 x 2
    // through the retraction onto the base.
    for a in all_matrices(&stb, 2).unwrap() {
        let eigens = eigen_search(&stb, &a, RelKind::Leq0).unwrap();
        let (d, f) = pairkit_core::matrix::char_poly(&stb, &a).unwrap();
        for (alpha, _) in eigens {
            let value = eval(&d, &f, &(alpha, stb.zero()));
            assert!(stb.is_null(&d.abs_value(&value)));
        }
    }
    gate.close();
}

#[test]
fn criterion_7_congruences() {
    let gate = Gate::open("criterion-7 congruence suite", 120.0);
    for name in instances::registry_names() {
        let inst = instances::lookup(name).unwrap();
        let Some(p) = inst.as_finite() else { continue };
        if p.carrier_len() > 4 {
            continue;
        }
        let all = cong::enumerate_congruences(p).unwrap();
        assert!(!all.is_empty());
        for c in &all {
            assert!(
                cong::is_congruence(p, c),
                "{name}: enumerated congruence must close"
            );
            let pr = cong::is_prime(p, c, &all);
            let sp = cong::is_semiprime(p, c, &all);
            let ir = cong::is_irreducible(c, &all);
            assert_eq!(pr, sp && ir, "{name}: prime iff semiprime and irreducible");
            if sp {
                let inter = cong::intersection_of_primes_above(p, c, &all).unwrap();
                assert_eq!(&inter, c, "{name}: semiprime decomposition");
            }
        }
        // Locus fixed points at degree <= 2 with up to two variables.
        let nvars = if p.carrier_len() <= 3 { 2 } else { 1 };
        let family = cong::bounded_polys(p, nvars, 2).unwrap();
        let mut loci: Vec<Vec<Vec<u16>>> = Vec::new();
        for f in &family {
            let z = cong::a0_locus(p, std::slice::from_ref(f), nvars);
            if !loci.contains(&z) {
                loci.push(z);
            }
        }
        for z in &loci {
            let lc = cong::LocusCong { points: z.clone() };
            let z2 = cong::z_of_locus_cong(p, &lc, nvars, 2).unwrap();
            assert_eq!(&z2, z, "{name}: locus must be fixed by the correspondence");
        }
    }
    gate.close();
}

#[test]
fn criterion_8_morphisms() {
    let gate = Gate::open("criterion-8 morphism suite", 30.0);
    // Closure-based and bounded weak decisions agree on the registry; the
    // inclusion chain holds; there are at least twenty named maps.
    let reports = morph::registry_consistency().unwrap();
    assert!(reports.len() >= 20, "registry holds {} maps", reports.len());

    // Lifted classes on the sign collapse.
    let maps = morph::registry_maps();
    let lift = maps
        .iter()
        .find(|m| m.name == "sign-collapse-lift")
        .unwrap();
    let spp = instances::lookup("sign-hyperpair").unwrap();
    let kpp = instances::lookup("krasner-hyperpair").unwrap();
    assert!(morph::is_preceq_morphism(
        spp.as_finite().unwrap(),
        kpp.as_finite().unwrap(),
        &lift.graph,
        RelKind::Subset,
        RelKind::Subset
    )
    .unwrap());

    // The valuation morphism on the thirty-element closed sample, with the
    // cancelling pair landing at valuation three.
    let k = pairkit_core::puiseux::PuiseuxPair::new();
    assert_eq!(k.sample().len(), 30);
    let r = morph::val_morphism_report().unwrap();
    assert!(r.zero_preserved && r.multiplicative && r.lax_additive && r.triple_lax);
    assert_eq!(r.cancelling_val.as_deref(), Some("3"));
    gate.close();
}

#[test]
fn criterion_9_cli() {
    let gate = Gate::open("criterion-9 CLI determinism and exit codes", 120.0);
    let bin = env!("CARGO_BIN_EXE_pairkit");
    let run = |args: &[&str]| {
        std::process::Command::new(bin)
            .args(args)
            .output()
            .expect("binary runs")
    };

    // Byte-for-byte determinism of the full JSON report.
    let first = run(&[
        "verify",
        "supertropical-boolean",
        "--suite",
        "all",
        "--json",
    ]);
    let second = run(&[
        "verify",
        "supertropical-boolean",
        "--suite",
        "all",
        "--json",
    ]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    // Exit codes: 0 on pass, 2 on unknown instances and parse errors.
    assert_eq!(
        run(&["verify", "boolean", "--suite", "pair.*"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(run(&["verify", "no-such-instance"]).status.code(), Some(2));

    let dir = std::env::temp_dir().join("pairkit-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"carrier\": []").unwrap();
    assert_eq!(
        run(&["verify", "--file", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );

    // A descriptor that breaks the axioms fails with exit code 1.
    let broken = dir.join("broken.json");
    std::fs::write(
        &broken,
        r#"{"carrier":["z","o"],"add":[[0,1],[0,0]],"mul":[[0,0],[0,1]],
            "tangibles":["o"],"nulls":["z"],"dagUnit":"o","zero":"z","one":"o"}"#,
    )
    .unwrap();
    assert_eq!(
        run(&[
            "verify",
            "--file",
            broken.to_str().unwrap(),
            "--suite",
            "pair.axioms"
        ])
        .status
        .code(),
        Some(1)
    );

    // Descriptor round-trips through `instance --describe` preserve
    // behavior on every finite registry instance.
    for name in instances::registry_names() {
        let inst = instances::lookup(name).unwrap();
        let Some(f) = inst.as_finite() else { continue };
        let out = run(&["instance", name, "--describe"]);
        assert!(out.status.success(), "{name}");
        let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let desc = serde_json::to_string(&doc["descriptor"]).unwrap();
        let re = instances::load_descriptor(name, &desc).unwrap();
        for a in re.elements().unwrap() {
            for b in re.elements().unwrap() {
                assert_eq!(f.add(&a, &b), re.add(&a, &b));
                assert_eq!(f.mul(&a, &b), re.mul(&a, &b));
            }
        }
    }
    gate.close();
}
