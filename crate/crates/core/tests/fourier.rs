use std::collections::BTreeMap;

use ellft::catalog::Catalog;
use ellft::chartab::CharTable;
use ellft::elliptic::virtual_combination;
use ellft::families::{conj_transpose, is_identity, mat_mul, Family};
use ellft::groups::commuting_pair_orbits;
use ellft::CycNum;
use proptest::prelude::*;

fn cat() -> &'static Catalog {
    static CAT: std::sync::OnceLock<Catalog> = std::sync::OnceLock::new();
    CAT.get_or_init(|| Catalog::builtin().unwrap())
}

fn c(s: &str) -> CycNum {
    CycNum::parse(s).unwrap()
}

fn table<'a>(gamma: &str, x: &str) -> &'a CharTable {
    let st = &cat().structures[gamma];
    &st.blocks().iter().find(|b| b.x_label == x).unwrap().table
}

/// Compare π(u,s,h) with a transcribed expansion; characters not listed
/// have coefficient zero.
fn assert_combination(gamma: &str, s: &str, h: &str, expected: &[(&str, &str)]) {
    let t = table(gamma, s);
    let vc = virtual_combination(t, "u", s, h).unwrap();
    let mut want = vec![CycNum::zero(); t.num_chars()];
    for (name, v) in expected {
        let r = t
            .row(name)
            .unwrap_or_else(|| panic!("{gamma}: no character {name} of Z({s})"));
        want[r] = c(v);
    }
    let got: Vec<CycNum> = vc.coeffs.iter().map(|(_, v)| v.clone()).collect();
    assert_eq!(got, want, "{gamma}: π(u,{s},{h}) = {vc}");
}

#[test]
fn s3_combinations() {
    let rows: &[(&str, &str, &[(&str, &str)])] = &[
        ("1", "1", &[("1", "1"), ("r", "2"), ("eps", "1")]),
        ("1", "g2", &[("1", "1"), ("eps", "-1")]),
        ("1", "g3", &[("1", "1"), ("r", "-1"), ("eps", "1")]),
        ("g2", "1", &[("1", "1"), ("eps", "1")]),
        ("g2", "g2", &[("1", "1"), ("eps", "-1")]),
        ("g3", "1", &[("1", "1"), ("theta", "1"), ("theta2", "1")]),
        ("g3", "g3", &[("1", "1"), ("theta", "z3^2"), ("theta2", "z3")]),
        ("g3", "g3^-1", &[("1", "1"), ("theta", "z3"), ("theta2", "z3^2")]),
    ];
    for (s, h, e) in rows {
        assert_combination("S3", s, h, e);
    }
}

#[test]
fn s4_combinations() {
    let rows: &[(&str, &str, &[(&str, &str)])] = &[
        ("1", "1", &[("1", "1"), ("lambda1", "3"), ("lambda2", "3"), ("lambda3", "1"), ("sigma", "2")]),
        ("1", "g2", &[("1", "1"), ("lambda1", "1"), ("lambda2", "-1"), ("lambda3", "-1")]),
        ("1", "g2'", &[("1", "1"), ("lambda1", "-1"), ("lambda2", "-1"), ("lambda3", "1"), ("sigma", "2")]),
        ("1", "g3", &[("1", "1"), ("lambda3", "1"), ("sigma", "-1")]),
        ("1", "g4", &[("1", "1"), ("lambda1", "-1"), ("lambda2", "1"), ("lambda3", "-1")]),
        ("g2", "1", &[("1", "1"), ("eps'", "1"), ("eps''", "1"), ("eps", "1")]),
        ("g2", "g2", &[("1", "1"), ("eps'", "-1"), ("eps''", "1"), ("eps", "-1")]),
        ("g2", "tau", &[("1", "1"), ("eps'", "1"), ("eps''", "-1"), ("eps", "-1")]),
        ("g2", "g2'", &[("1", "1"), ("eps'", "-1"), ("eps''", "-1"), ("eps", "1")]),
        ("g2'", "1", &[("1", "1"), ("r", "2"), ("eps'", "1"), ("eps''", "1"), ("eps", "1")]),
        ("g2'", "g2", &[("1", "1"), ("eps'", "-1"), ("eps''", "1"), ("eps", "-1")]),
        ("g2'", "g2'", &[("1", "1"), ("r", "-2"), ("eps'", "1"), ("eps''", "1"), ("eps", "1")]),
        ("g2'", "g4", &[("1", "1"), ("eps'", "-1"), ("eps''", "-1"), ("eps", "1")]),
        ("g2'", "gamma", &[("1", "1"), ("eps'", "1"), ("eps''", "-1"), ("eps", "-1")]),
        ("g3", "1", &[("1", "1"), ("theta", "1"), ("theta2", "1")]),
        ("g3", "g3", &[("1", "1"), ("theta", "z3^2"), ("theta2", "z3")]),
        ("g3", "g3^-1", &[("1", "1"), ("theta", "z3"), ("theta2", "z3^2")]),
        ("g4", "1", &[("1", "1"), ("i", "1"), ("-1", "1"), ("-i", "1")]),
        ("g4", "g4", &[("1", "1"), ("i", "-z4"), ("-1", "-1"), ("-i", "z4")]),
        ("g4", "g2'", &[("1", "1"), ("i", "-1"), ("-1", "1"), ("-i", "-1")]),
        ("g4", "g4^-1", &[("1", "1"), ("i", "z4"), ("-1", "-1"), ("-i", "-z4")]),
    ];
    assert_eq!(rows.len(), 21);
    for (s, h, e) in rows {
        assert_combination("S4", s, h, e);
    }
}

#[test]
fn s5_listed_combinations() {
    let rows: &[(&str, &str, &[(&str, &str)])] = &[
        (
            "1",
            "1",
            &[("1", "1"), ("lambda1", "4"), ("nu", "5"), ("lambda2", "6"), ("nu'", "5"), ("lambda3", "4"), ("lambda4", "1")],
        ),
        (
            "1",
            "g2",
            &[("1", "1"), ("lambda1", "2"), ("nu", "1"), ("nu'", "-1"), ("lambda3", "-2"), ("lambda4", "-1")],
        ),
        ("g2", "1", &[("1", "1"), ("r", "2"), ("eps", "1"), ("-1", "1"), ("-r", "2"), ("-eps", "1")]),
        ("g2'", "1", &[("1", "1"), ("r", "2"), ("eps'", "1"), ("eps''", "1"), ("eps", "1")]),
        ("g3", "1", &[("1", "1"), ("theta", "1"), ("theta2", "1"), ("-1", "1"), ("-theta", "1"), ("-theta2", "1")]),
        ("g4", "1", &[("1", "1"), ("i", "1"), ("-1", "1"), ("-i", "1")]),
        ("g5", "1", &[("1", "1"), ("zeta", "1"), ("zeta2", "1"), ("zeta3", "1"), ("zeta4", "1")]),
        ("g6", "1", &[("1", "1"), ("theta", "1"), ("theta2", "1"), ("-1", "1"), ("-theta", "1"), ("-theta2", "1")]),
    ];
    for (s, h, e) in rows {
        assert_combination("S5", s, h, e);
    }
}

#[test]
fn s5_orbit_representatives() {
    let f = &cat().families["4480_16"];
    // the printed list for s = 1 leaves out g6
    let hs: &[(&str, &[&str])] = &[
        ("1", &["1", "g2", "g2'", "g3", "g4", "g5", "g6"]),
        ("g2", &["1", "g2", "tau", "g3", "g2'", "g6"]),
        ("g2'", &["1", "g2", "g2'", "g4", "gamma"]),
        ("g3", &["1", "g2", "g3", "g3^-1", "g6", "g6^-1"]),
        ("g4", &["1", "g4", "g2'", "g4^-1"]),
        ("g5", &["1", "g5", "g5^2", "g5^3", "g5^4"]),
        ("g6", &["1", "g6", "g6^2", "g6^3", "g6^4", "g6^5"]),
    ];
    let mut n = 0;
    for (x, ys) in hs {
        let b = f.blocks().iter().find(|b| &b.x_label == x).unwrap();
        let z = b.table.group();
        let classes: std::collections::BTreeSet<usize> =
            ys.iter().map(|y| z.class_of(z.eval_word(y).unwrap())).collect();
        assert_eq!(classes.len(), ys.len(), "Z({x})");
        assert_eq!(classes.len(), z.num_classes(), "Z({x})");
        n += ys.len();
    }
    assert_eq!(n, 39);
}

/// Hand expansion of the σ(x,y) basis for Γ = C2 in the (x,ρ) basis.
#[test]
fn untwisted_c2_matrix() {
    let f = &cat().families["4_13"];
    let order = [("1", "1"), ("1", "eps"), ("g2", "1"), ("g2", "eps")];
    let idx: Vec<usize> = order.iter().map(|(x, r)| f.index_xrho(x, r).unwrap()).collect();
    let signs = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];
    for (i, row) in signs.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            assert_eq!(f.ft()[idx[i]][idx[j]], CycNum::from_ratio(*s, 2), "entry {i},{j}");
        }
    }
}

#[test]
fn twisted_c2_matrix() {
    let f = &cat().families["512_11"];
    assert!(f.delta_twisted());
    let order = [("1", "1"), ("1", "eps"), ("g2", "1"), ("g2", "eps")];
    let idx: Vec<usize> = order.iter().map(|(x, r)| f.index_xrho(x, r).unwrap()).collect();
    let signs = [[1, 1, -1, -1], [1, 1, 1, 1], [-1, 1, 1, -1], [-1, 1, -1, 1]];
    let got: Vec<Vec<CycNum>> = idx
        .iter()
        .map(|&i| idx.iter().map(|&j| f.ft()[i][j].clone()).collect())
        .collect();
    let want: Vec<Vec<CycNum>> = signs
        .iter()
        .map(|r| r.iter().map(|&s| CycNum::from_ratio(s, 2)).collect())
        .collect();
    assert_eq!(got, want);
}

/// One printed reference table has a misprint at this entry.
#[test]
fn s5_entry_g2_minus_r_against_g2_one() {
    let f = &cat().families["4480_16"];
    let a = f.index_xrho("g2", "-r").unwrap();
    let b = f.index_xrho("g2", "1").unwrap();
    assert_eq!(f.ft()[a][b], CycNum::from_ratio(-1, 6));
    assert_eq!(f.ft()[b][a], CycNum::from_ratio(-1, 6));
}

fn families_by_gamma() -> BTreeMap<(usize, bool), &'static Family> {
    cat()
        .families
        .values()
        .map(|f| ((f.gamma().order(), f.delta_twisted()), f))
        .collect()
}

#[test]
fn involution_and_unitarity() {
    let twisted = &cat().families["512_11"];
    for f in cat().structures.values().chain([twisted]) {
        assert!(is_identity(&mat_mul(f.ft(), f.ft())), "{}", f.name());
        assert!(is_identity(&mat_mul(f.ft(), &conj_transpose(f.ft()))), "{}", f.name());
    }
}

#[test]
fn dimensions_are_orbit_counts() {
    for (gamma, n) in [("1", 1), ("C2", 4), ("S3", 8), ("S4", 21), ("S5", 39)] {
        let st = &cat().structures[gamma];
        assert_eq!(commuting_pair_orbits(st.gamma()).len(), n, "{gamma}");
        assert_eq!(st.dim(), n, "{gamma}");
    }
}

/// FT σ(x,y) = Δ(x,y) σ(y,x), checked on pairs where both entries are
/// chosen class representatives.
#[test]
fn sigma_swap() {
    for f in cat().families.values() {
        let reps: Vec<String> = f.blocks().iter().map(|b| b.x_label.clone()).collect();
        for x in &reps {
            for y in &reps {
                let (Ok(v), Ok(w)) = (f.sigma_xy(x, y), f.sigma_xy(y, x)) else {
                    continue;
                };
                let tw = f.delta_twisted() && ((x == "1") != (y == "1"));
                let w = if tw { w.scaled(&CycNum::from_int(-1)) } else { w };
                assert_eq!(f.apply_ft(&v).unwrap(), w, "{}: σ({x},{y})", f.name());
            }
        }
    }
}

/// Complex conjugation of FT entries swaps each character of Z(x) with
/// its dual.
#[test]
fn conjugation_permutes_dual_characters() {
    for f in families_by_gamma().values() {
        let mut dual = vec![0; f.dim()];
        for b in f.blocks() {
            let t = &b.table;
            for r in 0..t.num_chars() {
                let conj: Vec<CycNum> = t.values()[r].iter().map(CycNum::conj).collect();
                let d = t.values().iter().position(|row| *row == conj).unwrap();
                dual[b.offset + r] = b.offset + d;
            }
        }
        let ft = f.ft();
        for i in 0..f.dim() {
            for j in 0..f.dim() {
                assert_eq!(ft[i][j].conj(), ft[dual[i]][dual[j]], "{}", f.name());
            }
        }
    }
    // in S4, (g4,i) and (g4,-i) are the swapped pair
    let f = &cat().families["12_4"];
    let (a, b) = (f.index_xrho("g4", "i").unwrap(), f.index_xrho("g4", "-i").unwrap());
    let one = f.index_xrho("1", "1").unwrap();
    assert_eq!(f.ft()[a][one].conj(), f.ft()[b][one]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ft_is_an_involution_on_vectors(
        fam in prop::sample::select(vec!["4_13", "512_11", "1400_32", "12_4", "4480_16"]),
        seed in prop::collection::vec((-3i64..=3, 0i64..60), 39),
    ) {
        let f = &cat().families[fam];
        let mut v = ellft::families::FamilyVector::zero(f);
        for (k, (n, e)) in seed.iter().take(f.dim()).enumerate() {
            v.coords[k] = CycNum::from_int(*n).scale_int(1);
            v.coords[k] = &v.coords[k] * &CycNum::zeta60(*e);
        }
        let w = f.apply_ft(&f.apply_ft(&v).unwrap()).unwrap();
        prop_assert_eq!(w, v);
    }
}
