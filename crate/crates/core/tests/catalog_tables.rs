use ellft::catalog::{expand_restriction, Catalog, CountRule};
use ellft::verify::{check_counts, leading_coefficient, run, CheckKind, Filter, Status};
use ellft::CycNum;

fn cat() -> &'static Catalog {
    static CAT: std::sync::OnceLock<Catalog> = std::sync::OnceLock::new();
    CAT.get_or_init(|| Catalog::builtin().unwrap())
}

/// (group, class, A_u, pair count, family, group of the family)
const TABLES: &[(&str, &str, &str, usize, &str, &str)] = &[
    ("G2", "G2", "1", 1, "1_6", "1"),
    ("G2", "G2(a1)", "S3", 8, "2_1", "S3"),
    ("F4", "F4", "1", 1, "1_24", "1"),
    ("F4", "F4(a1)", "C2", 4, "4_13", "C2"),
    ("F4", "F4(a2)", "C2", 4, "9_10", "1"),
    ("F4", "B3", "1", 1, "8_9''", "1"),
    ("F4", "F4(a3)", "S4", 21, "12_4", "S4"),
    ("E6", "E6", "1", 1, "1_36", "1"),
    ("E6", "E6(a1)", "1", 1, "6_25", "1"),
    ("E6", "E6(a3)", "C2", 4, "30_15", "C2"),
    ("E6", "D4(a1)", "S3", 4, "80_7", "S3"),
    ("E7", "E7", "1", 1, "1_63", "1"),
    ("E7", "E7(a1)", "1", 1, "7_46", "1"),
    ("E7", "E7(a2)", "1", 1, "27_37", "1"),
    ("E7", "E7(a3)", "C2", 4, "56_30", "C2"),
    ("E7", "E7(a4)", "C2", 4, "189_22", "1"),
    ("E7", "E7(a5)", "S3", 8, "315_16", "S3"),
    ("E7", "E6(a1)", "C2", 6, "120_25", "C2"),
    ("E7", "D5(a1)+A1", "1", 1, "378_14", "1"),
    ("E7", "A3+A2+A1", "1", 1, "210_10", "1"),
    ("E7", "A4+A1", "C2", 3, "512_11", "C2"),
    ("E8", "E8", "1", 1, "1_120", "1"),
    ("E8", "E8(a1)", "1", 1, "8_91", "1"),
    ("E8", "E8(a2)", "1", 1, "35_74", "1"),
    ("E8", "E8(a3)", "C2", 4, "112_63", "C2"),
    ("E8", "E8(a4)", "C2", 4, "210_52", "C2"),
    ("E8", "E8(b4)", "C2", 4, "560_47", "1"),
    ("E8", "E8(a5)", "C2", 4, "700_42", "C2"),
    ("E8", "E8(b5)", "S3", 8, "1400_37", "S3"),
    ("E8", "E8(a6)", "S3", 8, "1400_32", "S3"),
    ("E8", "E8(b6)", "S3", 8, "2240_28", "C2"),
    ("E8", "E8(a7)", "S5", 39, "4480_16", "S5"),
    ("E8", "D7(a1)", "C2", 6, "3240_31", "1"),
    ("E8", "D5+A2", "C2", 6, "4536_23", "1"),
    ("E8", "E6(a1)+A1", "C2", 6, "4096_26", "C2"),
    ("E8", "D7(a2)", "C2", 6, "4200_24", "C2"),
    ("E8", "A6", "1", 1, "4200_21", "1"),
    ("E8", "A4+A2", "1", 1, "4536_13", "1"),
    ("E8", "A4+2A1", "C2", 3, "4200_12", "C2"),
    ("E8", "D4(a1)+A2", "C2", 1, "2240_10", "C2"),
];

#[test]
fn records_per_group() {
    let per: Vec<usize> = ["G2", "F4", "E6", "E7", "E8"]
        .iter()
        .map(|g| cat().unipotents.iter().filter(|u| &u.group == g).count())
        .collect();
    assert_eq!(per, vec![2, 5, 4, 10, 19]);
    assert_eq!(cat().unipotents.len(), TABLES.len());
}

#[test]
fn records_match_the_tables() {
    for &(g, label, a_u, n, fam, gamma) in TABLES {
        let u = cat()
            .unipotent(g, label)
            .unwrap_or_else(|| panic!("missing {g}/{label}"));
        assert_eq!(u.component_group, a_u, "{g}/{label}");
        assert_eq!(u.pair_count, n, "{g}/{label}");
        assert_eq!(u.family, fam, "{g}/{label}");
        assert_eq!(u.family_gamma, gamma, "{g}/{label}");
    }
}

#[test]
fn count_checks_pass() {
    let rep = check_counts(cat(), &Filter::all());
    let bad: Vec<_> = rep.failures().collect();
    assert!(bad.is_empty(), "{bad:#?}");
    // every record contributes exactly one count check
    let counts = rep.checks.iter().filter(|c| c.check_id == "count").count();
    assert_eq!(counts, TABLES.len());
    for id in ["assertion", "subparahoric", "elliptic", "duals"] {
        assert!(rep.checks.iter().any(|c| c.check_id == id), "{id}");
    }
}

#[test]
fn modulo_center_classes() {
    for (g, label) in [("E6", "D4(a1)"), ("E7", "A4+A1")] {
        let u = cat().unipotent(g, label).unwrap();
        assert_eq!(u.count_rule, CountRule::ModuloCenter);
        assert_eq!(ellft::catalog::count_modulo_center(cat(), u).unwrap(), u.pair_count);
        assert!(u.pairs.len() > u.pair_count);
    }
}

#[test]
fn twisted_family_flag() {
    for u in &cat().unipotents {
        assert_eq!(u.delta_twisted, u.family == "512_11" || u.family.starts_with("4096_"), "{}", u.label);
    }
}

#[test]
fn a4_a1_leading_coefficients() {
    let u = cat().unipotent("E7", "A4+A1").unwrap();
    let want = [
        (("1", "delta"), "-1"),
        (("delta", "1"), "1"),
        (("delta", "delta"), "-z4"),
        (("-1", "delta"), "1"),
        (("delta", "-1"), "-1"),
        (("delta", "-1*delta"), "z4"),
    ];
    for ((s, h), v) in want {
        let p = u.pairs.iter().find(|p| p.s == s && p.h == h).unwrap();
        let r = cat()
            .restrictions_for(u)
            .find(|r| r.s == s && r.h == h)
            .unwrap();
        let z = leading_coefficient(cat(), r, p.leading.as_ref().unwrap()).unwrap();
        assert_eq!(z, CycNum::parse(v).unwrap(), "({s},{h})");
    }
}

#[test]
fn g2_subregular_head() {
    let u = cat().unipotent("G2", "G2(a1)").unwrap();
    let r = cat().restrictions_for(u).find(|r| r.s == "1" && r.h == "1").unwrap();
    let e = expand_restriction(cat(), r).unwrap();
    let f = &cat().families["2_1"];
    assert_eq!(e.families["2_1"], f.sigma_xy("1", "1").unwrap());
    assert_eq!(e.singletons.len(), 1);
    assert!(e.singletons["1_6"].is_one());
}

#[test]
fn b3_restriction() {
    let u = cat().unipotent("F4", "B3").unwrap();
    let r = cat().restrictions_for(u).next().unwrap();
    let e = expand_restriction(cat(), r).unwrap();
    assert_eq!(e.singletons["9_10"], CycNum::from_int(-1));
    assert!(e.singletons["8_9''"].is_one());
    assert!(e.singletons["1_24"].is_one());
    assert_eq!(e.families["4_13"], cat().families["4_13"].sigma_xy("1", "1").unwrap());
}

#[test]
fn checks_cover_every_pair_once() {
    let rep = run(cat(), CheckKind::Main, &Filter::all());
    let mut scopes: Vec<&str> = rep.checks.iter().map(|c| c.scope.as_str()).collect();
    let n = scopes.len();
    scopes.sort();
    scopes.dedup();
    assert_eq!(scopes.len(), n);
    let split: usize = cat()
        .unipotents
        .iter()
        .map(|u| u.pairs.iter().filter(|p| p.split).count())
        .sum();
    assert_eq!(n, split);
}

#[test]
fn main_check_is_symmetric_under_swapping_the_pair() {
    use ellft::catalog::dual_indices;
    use ellft::verify::compare_dual;
    for u in &cat().unipotents {
        let d = dual_indices(cat(), u).unwrap();
        let rec = |i: usize| {
            let p = &u.pairs[i];
            cat().restrictions_for(u).find(|r| r.s == p.s && r.h == p.h)
        };
        for i in 0..u.pairs.len() {
            let (Some(r), Some(j)) = (rec(i), d[i]) else { continue };
            let Some(rd) = rec(j) else { continue };
            let a = compare_dual(cat(), r, rd).unwrap().0;
            let b = compare_dual(cat(), rd, r).unwrap().0;
            assert_eq!(a, b, "{}/{} ({},{})", u.group, u.label, r.s, r.h);
        }
    }
}

#[test]
fn filters() {
    let e8 = run(cat(), CheckKind::Main, &Filter::group("E8"));
    assert!(e8.checks.iter().all(|c| c.scope.starts_with("E8/")));
    assert!(e8.ok(true));
    assert!(!e8.ok(false));
    let one = run(
        cat(),
        CheckKind::All,
        &Filter {
            group: Some("E7".into()),
            unipotent: Some("A4+A1".into()),
        },
    );
    assert!(one.checks.iter().all(|c| c.scope.contains("A4+A1") || !c.scope.contains('/')));
    assert!(one.checks.iter().all(|c| c.status == Status::Pass), "{}", one.to_text());
}

#[test]
fn empty_catalog_has_nothing_to_check() {
    let c = Catalog::from_json("  \n").unwrap();
    let rep = run(&c, CheckKind::All, &Filter::all());
    assert!(rep.checks.is_empty());
    assert!(rep.ok(false));
}

#[test]
fn json_report_shape() {
    let rep = run(cat(), CheckKind::Zeta, &Filter::group("E7"));
    let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
    let first = &v["checks"][0];
    for k in ["check_id", "scope", "status"] {
        assert!(first.get(k).is_some(), "{k}");
    }
    assert_eq!(v["summary"]["fail"], 0);
}
