//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line under `cargo test`. The heavy rows (psl2(31), psl3(4),
//! psl2(29)) take minutes of single-core time; the stretch instances are
//! behind #[ignore].

use engel_core::classalg::monster::{
    load_monster_constants, monster_checks, perturb_subdegree,
};
use engel_core::classalg::ops::{
    class_constant_bruteforce, class_constant_formula, component_lower_bound, delta_graph,
    hypotheses_check, involution_slices, match_classes, perm_character, power_fusion,
};
use engel_core::classalg::table::load_character_table;
use engel_core::connectivity::{
    hall_criterion, is_strong_at, least_strong_depth, run_spec, GroupSpec, LeastDepth,
    SuiteConfig,
};
use engel_core::digraph::{is_strongly_connected, tarjan_scc};
use engel_core::engel::{engel_depth, engel_set, ArcTester};
use engel_core::field::factor_prime_power;
use engel_core::group::Group;
use engel_core::matgrp::{engel_matrices, Mat3};
use engel_core::perm::Perm;
use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;

fn data_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data"))
}

fn cfg() -> SuiteConfig {
    SuiteConfig {
        n_cap: 8,
        seed: 1729,
        threads: 1,
        data_dir: data_dir(),
        cache_dir: None,
        timing: false,
    }
}

fn build(spec: &GroupSpec) -> Group {
    spec.build(&data_dir(), None)
        .unwrap_or_else(|e| panic!("building {}: {e}", spec.id()))
}

#[test]
fn criterion_1_least_depth_table() {
    let cases: Vec<(GroupSpec, LeastDepth)> = vec![
        (GroupSpec::Alt(6), LeastDepth::Connected { n: 3 }),
        (GroupSpec::Named("m10".into()), LeastDepth::Connected { n: 3 }),
        (GroupSpec::Psl2(11), LeastDepth::Connected { n: 2 }),
        (GroupSpec::Psl2(4), LeastDepth::NoneUpToCap { n_cap: 8 }),
        (GroupSpec::Psl2(8), LeastDepth::NoneUpToCap { n_cap: 8 }),
        (GroupSpec::Psl2(13), LeastDepth::NoneUpToCap { n_cap: 8 }),
        (GroupSpec::Psl2(7), LeastDepth::Connected { n: 3 }),
        (GroupSpec::Psl2(23), LeastDepth::Connected { n: 3 }),
        (GroupSpec::Psl3(4), LeastDepth::Connected { n: 3 }),
        (GroupSpec::Psl2(31), LeastDepth::Connected { n: 5 }),
    ];
    let config = cfg();
    for (spec, expected) in cases {
        let report = run_spec(&spec, &config).unwrap_or_else(|e| panic!("{}: {e}", spec.id()));
        assert_eq!(report.outcome, expected, "{}", spec.id());
        assert_ne!(report.matched, Some(false), "{}", spec.id());
    }
}

#[test]
fn criterion_2_depth_two_generic_case() {
    for spec in [
        GroupSpec::Alt(7),
        GroupSpec::Sym(7),
        GroupSpec::Named("m11".into()),
        GroupSpec::Psl2(11),
        GroupSpec::Psl2(19),
    ] {
        let g = build(&spec);
        assert!(is_strong_at(&g, 2).unwrap(), "{} at depth 2", spec.id());
    }
    // q = 23 is 3 mod 4 with (q+1)/2 = 12: depth 3, not 2
    let g23 = build(&GroupSpec::Psl2(23));
    assert_eq!(
        least_strong_depth(&g23, 3).unwrap(),
        LeastDepth::Connected { n: 3 }
    );
    // q = 29 is 5 mod 8: excluded from the family, never connected
    let g29 = build(&GroupSpec::Psl2(29));
    assert!(!is_strong_at(&g29, 2).unwrap());
    assert!(!is_strong_at(&g29, 3).unwrap());
}

#[test]
fn criterion_3_matrix_kernel() {
    for q in [8u64, 16] {
        let pair = engel_matrices(q).unwrap();
        let f = &pair.field;
        let c = f.primitive_element();
        let c3 = f.pow(c, 3);
        let k1 = Mat3::commutator(f, &pair.g, &pair.h).unwrap();
        assert_eq!(k1, Mat3::diag(1, c3, f.inv(c3)), "q = {q}");
        let k2 = Mat3::commutator(f, &k1, &pair.h).unwrap();
        assert!(k2.is_identity(), "q = {q}");
        assert!(!pair.h.is_scalar());
        let cap = q * q + q + 1;
        let target = cap / num_integer::gcd(3, q - 1);
        let po = pair.g.projective_order(f, cap).unwrap();
        assert!(po > 1 && target % po == 0, "q = {q}: order {po} vs {target}");
        // the permutation representation on the projective plane
        // preserves the projective order of both matrices
        let (gp, hp) = pair.plane_perms().unwrap();
        assert_eq!(gp.order(), po, "q = {q}");
        assert_eq!(hp.order(), pair.h.projective_order(f, cap).unwrap(), "q = {q}");
        assert_eq!(factor_prime_power(q).unwrap().0, 2);
    }
}

#[test]
fn criterion_4_hall_criterion_crossvalidation() {
    for spec in [GroupSpec::Psl3(4), GroupSpec::Named("m11".into())] {
        let g = build(&spec);
        for n in [2u32, 3] {
            let direct = is_strong_at(&g, n).unwrap();
            let hall = hall_criterion(&g, n, 1729).unwrap();
            assert_eq!(
                hall.connected,
                direct,
                "{} at depth {n}: criterion {} vs direct {direct}",
                spec.id(),
                hall.connected,
            );
        }
    }
}

#[test]
fn criterion_5_class_constants_crosscheck() {
    for (spec, file) in [
        (GroupSpec::Sym(3), "sym3"),
        (GroupSpec::Sym(4), "sym4"),
        (GroupSpec::Alt(5), "alt5"),
        (GroupSpec::Psl2(7), "psl2_7"),
    ] {
        let g = build(&spec);
        let t = load_character_table(&data_dir().join(format!("chartab/{file}.ct"))).unwrap();
        let cm = match_classes(&g, &t).unwrap();
        let k = t.class_count();
        for i in 0..k {
            for j in 0..k {
                for v in 0..k {
                    let formula = class_constant_formula(&t, i, j, v).unwrap();
                    let brute = class_constant_bruteforce(
                        &g,
                        cm.table_to_group[i],
                        cm.table_to_group[j],
                        cm.table_to_group[v],
                    );
                    assert_eq!(formula, brute, "{file} triple ({i},{j},{v})");
                }
            }
        }
    }
}

#[test]
fn criterion_6_coset_graph_instances() {
    // Alt(5): H the point stabilizer (order 12), C generated by a 5-cycle
    let g = build(&GroupSpec::Alt(5));
    let t = load_character_table(&data_dir().join("chartab/alt5.ct")).unwrap();
    let cm = match_classes(&g, &t).unwrap();
    let sub: Vec<u32> = (0..60).filter(|&e| g.elem(e).apply(4) == 4).collect();
    assert_eq!(sub.len(), 12);
    let five = g.conjugacy_classes().iter().position(|c| c.order == 5).unwrap();
    let hyp = hypotheses_check(&g, &sub, five);
    assert!(hyp.all(), "{hyp:?}");
    let delta = delta_graph(&g, &sub, five).unwrap();
    assert_eq!(delta.vertex_count, 24);
    assert_eq!(delta.components, 4);
    assert_eq!(delta.coset_count, 4);
    assert_eq!(delta.component_sizes, vec![6, 6, 6, 6]);
    let rep = perm_character(&g, &t, &cm, &sub).unwrap();
    let fusion = power_fusion(&g, &cm, five);
    let bound = component_lower_bound(&t, &rep.multiplicities, &fusion, 5).unwrap();
    assert_eq!(bound, BigRational::from_integer(4.into()));
    assert_eq!(bound, BigRational::from_integer((delta.components as u64).into()));

    // Sym(4): H a Sylow 2-subgroup, C generated by a 3-cycle
    let g = build(&GroupSpec::Sym(4));
    let t = load_character_table(&data_dir().join("chartab/sym4.ct")).unwrap();
    let cm = match_classes(&g, &t).unwrap();
    let syl = g.sylow_subgroup(2, 1729).unwrap();
    let three = g.conjugacy_classes().iter().position(|c| c.order == 3).unwrap();
    assert!(hypotheses_check(&g, &syl, three).all());
    let delta = delta_graph(&g, &syl, three).unwrap();
    assert_eq!((delta.vertex_count, delta.components), (8, 2));
    assert_eq!(delta.component_sizes, vec![4, 4]);
    let rep = perm_character(&g, &t, &cm, &syl).unwrap();
    let fusion = power_fusion(&g, &cm, three);
    let bound = component_lower_bound(&t, &rep.multiplicities, &fusion, 3).unwrap();
    assert_eq!(bound, BigRational::from_integer(2.into()));

    // involution slices partition each involution class of every table
    for (spec, file) in [
        (GroupSpec::Sym(3), "sym3"),
        (GroupSpec::Sym(4), "sym4"),
        (GroupSpec::Alt(5), "alt5"),
        (GroupSpec::Psl2(7), "psl2_7"),
    ] {
        let g = build(&spec);
        let t = load_character_table(&data_dir().join(format!("chartab/{file}.ct"))).unwrap();
        let cm = match_classes(&g, &t).unwrap();
        for iclass in 0..t.class_count() {
            if t.classes[iclass].elt_order != 2 {
                continue;
            }
            let report = involution_slices(&g, &cm, iclass).unwrap();
            assert_eq!(report.total, t.classes[iclass].size, "{file} class {iclass}");
        }
    }
}

#[test]
fn criterion_7_recorded_constants_arithmetic() {
    let c = load_monster_constants(&data_dir().join("monster.txt")).unwrap();
    let report = monster_checks(&c);
    for check in &report.checks {
        assert!(check.pass, "{}: {}", check.name, check.detail);
    }
    assert_eq!(report.checks.len(), 5);
    // the strict inequality quoted with full digits
    let big: BigUint = "97239461114865275999".parse().unwrap();
    let small: BigUint = "97239449407416602624".parse().unwrap();
    assert_eq!(c.total_nontrivial_nonfused, big);
    assert_eq!(c.total_x3_to_x6, small);
    assert!(c.total_nontrivial_nonfused > c.total_x3_to_x6);
    // the gap between the two sums is exactly the fused subdegree i2
    assert_eq!(
        &c.total_nontrivial_nonfused - &c.total_x3_to_x6,
        BigUint::from(11_707_448_673_375u64)
    );
    assert_eq!(c.i[2], BigUint::from(11_707_448_673_375u64));
    // sensitivity: a unit bump of i7 must break both sum identities
    let perturbed = perturb_subdegree(&c, 7, 1);
    let broken = monster_checks(&perturbed);
    assert!(!broken.checks[0].pass, "sum over orders 3 to 6 must break");
    assert!(!broken.checks[1].pass, "nontrivial nonfused sum must break");
    assert!(broken.checks[2].pass, "the bound inequality is insensitive to i7");
    assert!(broken.checks[3].pass, "the slack inequality is insensitive to +1");
    assert!(!broken.all_pass());
}

#[test]
fn criterion_8_property_suites() {
    // (a) conjugation equivariance of the pair depth
    for spec in [GroupSpec::Sym(4), GroupSpec::Alt(5), GroupSpec::Psl2(7)] {
        let g = build(&spec);
        let order = g.order() as u32;
        let mut rng = ChaCha8Rng::seed_from_u64(1729);
        for _ in 0..1000 {
            let x = rng.gen_range(0..order);
            let y = rng.gen_range(0..order);
            let a = rng.gen_range(0..order);
            assert_eq!(
                engel_depth(&g, x, y),
                engel_depth(&g, g.conj_idx(x, a), g.conj_idx(y, a)),
                "{} triple ({x},{y},{a})",
                spec.id()
            );
        }
    }
    // (b) arcs persist as the depth grows
    for spec in [GroupSpec::Sym(4), GroupSpec::Alt(5), GroupSpec::Psl2(7)] {
        let g = build(&spec);
        let order = g.order() as u32;
        for n in 1..=3u32 {
            let mut lo = ArcTester::new(&g, n);
            let mut hi = ArcTester::new(&g, n + 1);
            for x in 0..order {
                for y in 0..order {
                    if lo.arc(x, y) {
                        assert!(hi.arc(x, y), "{} arc ({x},{y}) lost at {}", spec.id(), n + 1);
                    }
                }
            }
        }
    }
    // (c) the depth-1 set is the center
    for spec in [GroupSpec::Sym(3), GroupSpec::Sym(4), GroupSpec::Alt(5), GroupSpec::Psl2(7)] {
        let g = build(&spec);
        assert_eq!(engel_set(&g, 1), g.center(), "{}", spec.id());
    }
    let d8 = Group::generate(
        vec![Perm::parse("(0,1,2,3)", 4).unwrap(), Perm::parse("(1,3)", 4).unwrap()],
        16,
    )
    .unwrap();
    assert_eq!(engel_set(&d8, 1), d8.center());
    assert_eq!(d8.center().len(), 2);
    // (d) the implicit double-BFS agrees with Tarjan on random digraphs
    let mut rng = ChaCha8Rng::seed_from_u64(1729);
    for round in 0..500 {
        let n = rng.gen_range(2..=200usize);
        let density = (rng.gen_range(1..=3u32) as f64 / n as f64).min(1.0);
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|_| (0..n).filter(|_| rng.gen_bool(density)).collect())
            .collect();
        let direct = is_strongly_connected(n, 0, |i, j| adj[i].contains(&j));
        let tarjan = tarjan_scc(&adj).count == 1;
        assert_eq!(direct, tarjan, "round {round}, {n} vertices");
    }
    // (e) every shipped character table passes its orthogonality checks
    for file in ["sym3", "sym4", "alt5", "psl2_7"] {
        let t = load_character_table(&data_dir().join(format!("chartab/{file}.ct")))
            .unwrap_or_else(|e| panic!("{file}: {e}"));
        t.validate().unwrap_or_else(|e| panic!("{file}: {e}"));
    }
}

#[test]
#[ignore = "stretch tier: tens of minutes single-core; run with --ignored"]
fn criterion_9_stretch_instances() {
    // Suzuki group Sz(8): no depth up to 3 is strongly connected
    let sz8 = build(&GroupSpec::Named("sz8".into()));
    assert_eq!(
        least_strong_depth(&sz8, 3).unwrap(),
        LeastDepth::NoneUpToCap { n_cap: 3 }
    );
    // Mathieu group M12 connects at depth 2
    let m12 = build(&GroupSpec::Named("m12".into()));
    assert!(is_strong_at(&m12, 2).unwrap());
}
