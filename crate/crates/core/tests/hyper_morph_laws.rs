//! Cross-module checks: the explicit isomorphism between the Krasner
//! power-set pair and the supertropical Boolean pair, lifted morphism
//! classes, the extension-to-supertropical bijection, and weak-morphism
//! oracle agreement.

use pairkit_core::hyper::{
    self, check_hypergroup_isomorphism, check_pair_isomorphism, is_strong_hyper_morphism,
    is_weak_hyper_morphism, krasner, power_set_pair, quotient_hyperfield_fp, sign,
};
use pairkit_core::instances::{self, STElem, SupTropQ, TEElem};
use pairkit_core::morph::{
    is_preceq_morphism, is_weak_morphism_exact, is_weak_morphism_naive, is_weak_morphism_tuples,
    registry_maps,
};
use pairkit_core::pairs::{Pair, RelKind};
use pairkit_core::with_pair;

#[test]
fn krasner_power_set_is_supertropical_boolean() {
    let kpp = power_set_pair(&krasner(), "krasner-hyperpair").unwrap();
    let stb = instances::supertropical_boolean();
    // {0} -> 0, {1} -> 1, {0,1} -> mu1, checked on both operation tables.
    let map: Vec<u16> = (0..kpp.carrier_len() as u16)
        .map(|e| {
            let target = match kpp.el_name(&e).as_str() {
                "{0}" => "0",
                "{1}" => "1",
                _ => "mu1",
            };
            stb.parse_el(target).unwrap()
        })
        .collect();
    assert!(check_pair_isomorphism(&kpp, &stb, &map));
}

#[test]
fn sign_power_set_matches_doubled_boolean_shape() {
    // The four subsets reachable from the sign table correspond to the
    // doubled Boolean elements; the sign hyperpair embeds them.
    let spp = power_set_pair(&sign(), "sign-hyperpair").unwrap();
    let dbl = instances::doubled_boolean();
    let pairs = [
        ("{0}", "(0,0)"),
        ("{1}", "(1,0)"),
        ("{-1}", "(0,1)"),
        ("{0,1,-1}", "(1,1)"),
    ];
    for (s, d) in pairs {
        let se = spp.parse_el(s).unwrap();
        let de = dbl.parse_el(d).unwrap();
        for (s2, d2) in pairs {
            let se2 = spp.parse_el(s2).unwrap();
            let de2 = dbl.parse_el(d2).unwrap();
            // Products agree under the correspondence.
            let prod = spp.mul(&se, &se2);
            let dprod = dbl.mul(&de, &de2);
            let back = pairs
                .iter()
                .find(|(s3, _)| spp.parse_el(s3).unwrap() == prod);
            if let Some((_, d3)) = back {
                assert_eq!(dbl.parse_el(d3).unwrap(), dprod);
            }
        }
    }
}

#[test]
fn quotient_isomorphisms() {
    for p in [3u8, 5] {
        let g: Vec<u8> = (1..p).collect();
        let q = quotient_hyperfield_fp(p, &g).unwrap();
        assert!(check_hypergroup_isomorphism(&q, &krasner(), &[0, 1]));
    }
    // F5 over the squares gives a three-class hyperfield that passes the
    // axioms but is not the sign hyperfield.
    let q = quotient_hyperfield_fp(5, &[1, 4]).unwrap();
    assert!(hyper::verify_hypergroup(&q).all_ok());
    assert!(!check_hypergroup_isomorphism(&q, &sign(), &[0, 1, 2]));
    assert!(!check_hypergroup_isomorphism(&q, &sign(), &[0, 2, 1]));
}

#[test]
fn lift_classes_follow_the_base_morphism() {
    // The sign collapse onto the Krasner hyperfield is strong, so its
    // power-set lift is a containment morphism (and in particular weak).
    let s = sign();
    let k = krasner();
    let collapse = [0u8, 1, 1]; // 0 -> 0, 1 -> 1, -1 -> 1
    assert!(is_strong_hyper_morphism(&s, &k, &collapse));
    assert!(is_weak_hyper_morphism(&s, &k, &collapse, 5));

    let maps = registry_maps();
    let lift = maps
        .iter()
        .find(|m| m.name == "sign-collapse-lift")
        .unwrap();
    let spp = power_set_pair(&s, "sign-hyperpair").unwrap();
    let kpp = power_set_pair(&k, "krasner-hyperpair").unwrap();
    assert!(is_preceq_morphism(&spp, &kpp, &lift.graph, RelKind::Subset, RelKind::Subset).unwrap());
    let (weak, _) = is_weak_morphism_exact(&spp, &kpp, &lift.graph);
    assert!(weak);

    // The identity lift is the identity.
    let id = [0u8, 1, 2];
    assert!(is_strong_hyper_morphism(&s, &s, &id));
}

#[test]
fn extension_matches_supertropical_on_samples() {
    // The two-layer extension over rational values matches the
    // supertropical rationals through layer 1 -> tangible, layer 2 ->
    // ghost, bottom -> bottom; both operations checked on all sample pairs.
    let ext = instances::trop_ext_sample();
    let st = SupTropQ;
    let to_st = |x: &TEElem| -> STElem {
        match x {
            TEElem::Bot => STElem::Bottom,
            TEElem::At(l, g) => {
                if ext.layers().index_name(*l) == "1" {
                    STElem::Tang(*g)
                } else {
                    STElem::Ghost(*g)
                }
            }
        }
    };
    let sample = ext.sample();
    for a in &sample {
        assert_eq!(ext.is_tangible(a), st.is_tangible(&to_st(a)));
        assert_eq!(ext.is_null(a), st.is_null(&to_st(a)));
        for b in &sample {
            assert_eq!(
                to_st(&ext.add(a, b)),
                st.add(&to_st(a), &to_st(b)),
                "add at {a:?}, {b:?}"
            );
            assert_eq!(
                to_st(&ext.mul(a, b)),
                st.mul(&to_st(a), &to_st(b)),
                "mul at {a:?}, {b:?}"
            );
        }
    }
    // The map is injective on the sample and hits both layers.
    let images: std::collections::BTreeSet<STElem> = sample.iter().map(to_st).collect();
    assert_eq!(images.len(), sample.len());
}

#[test]
fn weak_oracle_agreement_on_registry() {
    for m in registry_maps() {
        let from = instances::lookup(m.from).unwrap();
        let to = instances::lookup(m.to).unwrap();
        let (p, q) = (from.as_finite().unwrap(), to.as_finite().unwrap());
        let (closure, _) = is_weak_morphism_exact(p, q, &m.graph);
        let frontier = is_weak_morphism_naive(p, q, &m.graph, 6);
        assert_eq!(closure, frontier, "{}", m.name);
        // Literal tuple enumeration agrees on small carriers.
        if p.carrier_len() <= 4 {
            assert_eq!(
                closure,
                is_weak_morphism_tuples(p, q, &m.graph, 4),
                "{}",
                m.name
            );
        }
    }
}

#[test]
fn loaded_descriptor_behaves_identically() {
    for name in instances::registry_names() {
        let inst = instances::lookup(name).unwrap();
        let Some(f) = inst.as_finite() else { continue };
        let json = serde_json::to_string(&f.descriptor()).unwrap();
        let re = instances::load_descriptor(name, &json).unwrap();
        with_pair!(&inst, p => {
            let els = re.elements().unwrap();
            let _ = p;
            for a in &els {
                assert_eq!(f.is_tangible(a), re.is_tangible(a));
                assert_eq!(f.is_null(a), re.is_null(a));
                for b in &els {
                    assert_eq!(f.add(a, b), re.add(a, b));
                    assert_eq!(f.mul(a, b), re.mul(a, b));
                }
            }
            assert_eq!(f.zero(), re.zero());
            assert_eq!(f.one(), re.one());
            assert_eq!(f.dag_unit(), re.dag_unit());
        });
    }
}

#[test]
fn kernel_congruences_close() {
    use pairkit_core::cong::{is_congruence, kernel_congruence};
    // Kernel congruences of the registered paired homomorphisms close as
    // subalgebras; verified, never assumed.
    for m in registry_maps() {
        let from = instances::lookup(m.from).unwrap();
        let to = instances::lookup(m.to).unwrap();
        let (p, q) = (from.as_finite().unwrap(), to.as_finite().unwrap());
        let report = pairkit_core::morph::map_report(m.name, p, q, &m.graph).unwrap();
        if report.hom && p.carrier_len() <= 16 {
            let (c, nulls) = kernel_congruence(p, q, &m.graph);
            assert!(is_congruence(p, &c), "{}", m.name);
            // Null-restricted pairs really map into the target null part.
            for (a, _) in nulls {
                assert!(q.is_null(&m.graph[a as usize]), "{}", m.name);
            }
        }
    }
}

#[test]
fn doubled_naturals_retraction_is_a_homomorphism() {
    use pairkit_core::instances::doubled_nat;
    let d = doubled_nat();
    let sample = d.sample();
    for x in &sample {
        for y in &sample {
            assert_eq!(d.abs_value(&d.add(x, y)), d.abs_value(x) + d.abs_value(y));
            assert_eq!(d.abs_value(&d.mul(x, y)), d.abs_value(x) * d.abs_value(y));
        }
    }
    // The retraction splits the positive embedding.
    for n in 0..6u64 {
        assert_eq!(d.abs_value(&(n, 0)), n);
    }
}
