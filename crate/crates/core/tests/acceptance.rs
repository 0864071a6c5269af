//! Acceptance run: one line per criterion, nonzero exit on any failure.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use ellft::catalog::{dual_indices, expand_named, expand_restriction, Catalog, Expansion};
use ellft::chartab::{character_table, verify_orthogonality, CharTable};
use ellft::elliptic::{elliptic_classes, elliptic_det, elliptic_gram, elliptic_rank, TorusAction};
use ellft::families::{conj_transpose, is_identity, mat_mul};
use ellft::groups::{commuting_pair_orbits, FinGroup, Perm};
use ellft::verify::{
    check_counts, check_main, check_self_dual, check_zeta, leading_coefficient, Filter, Status,
};
use ellft::CycNum;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c(s: &str) -> CycNum {
    CycNum::parse(s).unwrap()
}

fn fourier(cat: &Catalog) -> Outcome {
    let mut checked = Vec::new();
    for name in ["1", "C2", "S3", "S4", "S5"] {
        let f = &cat.structures[name];
        ensure(is_identity(&mat_mul(f.ft(), f.ft())), format!("{name}: ft² ≠ I"))?;
        ensure(
            is_identity(&mat_mul(f.ft(), &conj_transpose(f.ft()))),
            format!("{name}: ft not unitary"),
        )?;
        checked.push(name);
    }
    let tw = &cat.families["512_11"];
    ensure(tw.delta_twisted(), "512_11 should be twisted")?;
    ensure(is_identity(&mat_mul(tw.ft(), tw.ft())), "twisted C2: ft² ≠ I")?;
    ensure(
        is_identity(&mat_mul(tw.ft(), &conj_transpose(tw.ft()))),
        "twisted C2: ft not unitary",
    )?;
    let f = &cat.structures["C2"];
    let idx: Vec<usize> = [("1", "1"), ("1", "eps"), ("g2", "1"), ("g2", "eps")]
        .iter()
        .map(|(x, r)| f.index_xrho(x, r).unwrap())
        .collect();
    let signs = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];
    for i in 0..4 {
        for j in 0..4 {
            ensure(
                f.ft()[idx[i]][idx[j]] == CycNum::from_ratio(signs[i][j], 2),
                format!("untwisted C2 entry ({i},{j}) is {}", f.ft()[idx[i]][idx[j]]),
            )?;
        }
    }
    Ok(format!("{} and twisted C2 are unitary involutions; C2 matrix exact", checked.join(", ")))
}

fn orbit_counts(cat: &Catalog) -> Outcome {
    for (g, n) in [("C2", 4), ("S3", 8), ("S4", 21), ("S5", 39)] {
        let k = commuting_pair_orbits(cat.structures[g].gamma()).len();
        ensure(k == n, format!("{g}: {k} orbits, expected {n}"))?;
    }
    let rep = check_counts(cat, &Filter::all());
    if let Some(f) = rep.failures().next() {
        return Err(format!("{} {}: {}", f.check_id, f.scope, f.witness.clone().unwrap_or_default()));
    }
    let counts = rep.checks.iter().filter(|c| c.check_id == "count").count();
    ensure(counts == 40, format!("{counts} count checks, expected 40"))?;
    for (g, u, n) in [("E7", "A4+A1", 3), ("E8", "A4+2A1", 3), ("E8", "D4(a1)+A2", 1)] {
        let rec = cat.unipotent(g, u).ok_or(format!("missing {g}/{u}"))?;
        ensure(rec.pair_count == n, format!("{g}/{u}: {}", rec.pair_count))?;
    }
    Ok("C2→4, S3→8, S4→21, S5→39; 40 records match their pair counts".into())
}

fn main_theorem(cat: &Catalog) -> Outcome {
    let rep = check_main(cat, &Filter::all());
    if let Some(f) = rep.failures().next() {
        return Err(format!("{}: {}", f.scope, f.witness.clone().unwrap_or_default()));
    }
    for g in ["G2", "F4", "E6", "E7"] {
        let n = rep
            .checks
            .iter()
            .filter(|c| c.scope.starts_with(&format!("{g}/")) && c.status != Status::Pass)
            .count();
        ensure(n == 0, format!("{g}: {n} checks are not a full pass"))?;
    }
    let f4a3 = rep
        .checks
        .iter()
        .filter(|c| c.scope.starts_with("F4/F4(a3)/") && c.status == Status::Pass)
        .count();
    ensure(f4a3 == 21, format!("F4(a3): {f4a3} of 21 pairs pass"))?;
    // records with no partial ingredient must fully pass
    for u in cat.unipotents.iter().filter(|u| u.group == "E8") {
        for r in cat.restrictions_for(u) {
            if cat.is_partial(r) {
                continue;
            }
            let scope = format!("E8/{}/({},{})", u.label, r.s, r.h);
            let st = rep.checks.iter().find(|c| c.scope == scope).map(|c| c.status);
            ensure(st == Some(Status::Pass), format!("{scope}: {st:?}"))?;
        }
    }
    let s = rep.summary();
    Ok(format!("{} pass, {} partial (unexpanded E8 remainders), 0 fail", s.pass, s.partial))
}

fn zeta(cat: &Catalog) -> Outcome {
    let rep = check_zeta(cat, &Filter::all());
    if let Some(f) = rep.failures().next() {
        return Err(format!("{}: {}", f.scope, f.witness.clone().unwrap_or_default()));
    }
    let u = cat.unipotent("E7", "A4+A1").unwrap();
    let z = |s: &str, h: &str| -> CycNum {
        let p = u.pairs.iter().find(|p| p.s == s && p.h == h).unwrap();
        let r = cat.restrictions_for(u).find(|r| r.s == s && r.h == h).unwrap();
        leading_coefficient(cat, r, p.leading.as_ref().unwrap()).unwrap()
    };
    let a = &z("1", "delta") * &z("delta", "1").conj();
    ensure(a == c("-1"), format!("ζ(1,δ)·conj ζ(δ,1) = {a}"))?;
    let b = &z("delta", "delta") * &z("delta", "delta").conj();
    ensure(b == c("1"), format!("ζ(δ,δ)·conj ζ(δ,δ) = {b}"))?;
    ensure(z("delta", "delta") == c("-z4"), "ζ(δ,δ) should be -i")?;
    let s = rep.summary();
    Ok(format!("{} leading terms pass; A4+A1 products -1 and 1", s.pass))
}

fn self_dual(cat: &Catalog) -> Outcome {
    let rep = check_self_dual(cat, &Filter::all());
    if let Some(f) = rep.failures().next() {
        return Err(format!("{}: {}", f.scope, f.witness.clone().unwrap_or_default()));
    }
    let required = [
        "C2-stable", "v2", "v3", "u5", "u5'", "v5", "v5'", "L1", "L2", "L3", "L4", "L5", "L6", "L7",
        "L7'", "L8", "L8'",
    ];
    for n in required {
        let st = rep.checks.iter().find(|c| c.scope == n).map(|c| c.status);
        ensure(st == Some(Status::Pass), format!("{n}: {st:?}"))?;
    }
    for n in cat.named.values().filter(|n| n.complete) {
        let st = rep.checks.iter().find(|c| c.scope == n.name).map(|c| c.status);
        ensure(st == Some(Status::Pass), format!("{}: {st:?}", n.name))?;
    }
    // FT(v5') = v5''
    let f = &cat.families["4480_16"];
    let a = expand_named(cat, &cat.named["v5'"]).unwrap().families["4480_16"].clone();
    let b = expand_named(cat, &cat.named["v5''"]).unwrap().families["4480_16"].clone();
    ensure(f.apply_ft(&a).unwrap() == b, "FT(v5') ≠ v5''")?;
    let complete = cat.named.values().filter(|n| n.complete).count();
    Ok(format!("{complete} complete combinations verified, including the S3 lemma and the S5 claims"))
}

fn all_groups(cat: &Catalog) -> Vec<(String, FinGroup)> {
    let mut out = Vec::new();
    for (name, st) in &cat.structures {
        out.push((name.clone(), st.gamma().clone()));
        for b in st.blocks() {
            out.push((format!("Z_{name}({})", b.x_label), b.table.group().clone()));
        }
    }
    // models used only for pair enumeration carry no table
    for (name, fg) in cat.finite_groups.iter().filter(|(_, fg)| fg.table.is_some()) {
        out.push((name.clone(), fg.group.clone()));
    }
    out
}

fn degrees(t: &CharTable) -> Vec<i64> {
    let mut d = t.degrees();
    d.sort();
    d
}

fn tables(cat: &Catalog) -> Outcome {
    let groups = all_groups(cat);
    for (name, g) in &groups {
        let t = character_table(g).map_err(|e| format!("{name}: {e}"))?;
        ensure(verify_orthogonality(&t).passed(), format!("{name}: orthogonality"))?;
        let sq: i64 = t.degrees().iter().map(|d| d * d).sum();
        ensure(sq as usize == g.order(), format!("{name}: Σd² = {sq} ≠ {}", g.order()))?;
    }
    let want: BTreeMap<&str, Vec<i64>> = [
        ("S4", vec![1, 1, 2, 3, 3]),
        ("S5", vec![1, 1, 4, 4, 5, 5, 6]),
        ("Z_S4(g2')", vec![1, 1, 1, 1, 2]),
    ]
    .into_iter()
    .collect();
    for (name, d) in want {
        let g = &groups.iter().find(|(n, _)| n == name).unwrap().1;
        let got = degrees(&character_table(g).unwrap());
        ensure(got == d, format!("{name}: degrees {got:?}"))?;
    }
    Ok(format!("{} groups pass row and column orthogonality; S4, S5, D8 degrees exact", groups.len()))
}

fn elliptic() -> Outcome {
    let a = Perm::from_cycles(3, "(1 2)").unwrap();
    let b = Perm::from_cycles(3, "(1 2 3)").unwrap();
    let mut s3 = FinGroup::from_generators(3, &[a.clone(), b.clone()]).unwrap();
    s3.set_label("g2", &a).unwrap();
    s3.set_label("g3", &b).unwrap();
    let m = |rows: [[i64; 2]; 2]| -> Vec<Vec<CycNum>> {
        rows.iter().map(|r| r.iter().map(|&x| CycNum::from_int(x)).collect()).collect()
    };
    // e1-e2, e2-e3 coordinates
    let plane = TorusAction::new(&s3, 2, vec![m([[-1, 1], [0, 1]]), m([[0, -1], [1, -1]])])
        .map_err(|e| e.to_string())?;
    let g3 = s3.labelled("g3").unwrap();
    let g2 = s3.labelled("g2").unwrap();
    // det(1 - [[0,-1],[1,-1]]) = det [[1,1],[-1,2]] = 3
    ensure(elliptic_det(&plane, g3).unwrap() == CycNum::from_int(3), "det at g3")?;
    ensure(elliptic_det(&plane, g2).unwrap().is_zero(), "det at g2")?;
    ensure(elliptic_det(&plane, s3.identity()).unwrap().is_zero(), "det at 1")?;
    let el = elliptic_classes(&plane);
    ensure(el == vec![s3.class_of(g3)], format!("elliptic classes {el:?}"))?;
    ensure(elliptic_rank(&plane) == 1, "elliptic rank")?;
    for g in [s3.clone(), FinGroup::from_generators(4, &[Perm::from_cycles(4, "(1 2 3 4)").unwrap()]).unwrap()] {
        let t = character_table(&g).unwrap();
        ensure(is_identity(&elliptic_gram(&TorusAction::trivial(&g), &t)), "dim-0 Gram matrix")?;
    }
    Ok("S3 on the sum-zero plane: elliptic classes {g3}, rank 1; dim-0 Gram = I".into())
}

/// A sign position: (restriction index or named combination, slot kind, slot index).
#[derive(Clone, Debug)]
enum Slot {
    RecordTerm(usize, usize),
    RecordSingleton(usize, usize),
    RecordNamed(usize, usize),
    NamedTerm(String, usize),
    NamedSingleton(String, usize),
}

fn flip(cat: &mut Catalog, s: &Slot) {
    let neg = |c: &mut CycNum| *c = -c.clone();
    match s {
        Slot::RecordTerm(r, k) => neg(&mut cat.restrictions[*r].terms[*k].coeff),
        Slot::RecordSingleton(r, k) => neg(&mut cat.restrictions[*r].singletons[*k].1),
        Slot::RecordNamed(r, k) => neg(&mut cat.restrictions[*r].named[*k].1),
        Slot::NamedTerm(n, k) => neg(&mut cat.named.get_mut(n).unwrap().terms[*k].coeff),
        Slot::NamedSingleton(n, k) => neg(&mut cat.named.get_mut(n).unwrap().singletons[*k].1),
    }
}

fn mutation(cat: &Catalog) -> Outcome {
    let base = cat;
    let mut cat = cat.clone();
    let targets = [("E7", "A4+A1", "gamma(A4+A1)"), ("F4", "F4(a3)", "")];
    let mut slots: Vec<(&str, &str, Slot)> = Vec::new();
    for (g, u, named) in targets {
        for (i, r) in cat.restrictions.iter().enumerate() {
            if r.group != g || r.unipotent != u {
                continue;
            }
            slots.extend((0..r.terms.len()).map(|k| (g, u, Slot::RecordTerm(i, k))));
            slots.extend((0..r.singletons.len()).map(|k| (g, u, Slot::RecordSingleton(i, k))));
            slots.extend((0..r.named.len()).map(|k| (g, u, Slot::RecordNamed(i, k))));
        }
        if let Some(n) = cat.named.get(named) {
            slots.extend((0..n.terms.len()).map(|k| (g, u, Slot::NamedTerm(named.to_string(), k))));
            slots.extend((0..n.singletons.len()).map(|k| (g, u, Slot::NamedSingleton(named.to_string(), k))));
        }
    }
    let (mut caught, mut unobservable) = (0, 0);
    for (g, u, slot) in &slots {
        flip(&mut cat, slot);
        let filter = Filter {
            group: Some(g.to_string()),
            unipotent: Some(u.to_string()),
        };
        let rep = check_main(&cat, &filter);
        let fails: Vec<_> = rep.failures().collect();
        if fails.is_empty() {
            // by linearity a flip escapes only if its change d to each record satisfies FT(d_i) = d_dual(i)
            let rec = cat.unipotent(g, u).unwrap();
            let duals = dual_indices(&cat, rec).unwrap();
            let expand = |c: &Catalog| -> Vec<Option<Expansion>> {
                rec.pairs
                    .iter()
                    .map(|p| {
                        c.restrictions_for(rec)
                            .find(|r| r.s == p.s && r.h == p.h)
                            .map(|r| expand_restriction(c, r).unwrap())
                    })
                    .collect()
            };
            let after = expand(&cat);
            let before = expand(base);
            let delta: Vec<Option<Expansion>> = after
                .iter()
                .zip(&before)
                .map(|(a, b)| Some(a.as_ref()?.sub(b.as_ref()?)))
                .collect();
            let justified = (0..rec.pairs.len()).all(|i| match (&delta[i], duals[i].map(|j| &delta[j])) {
                (Some(d), Some(Some(dd))) => d.apply_ft(&cat).unwrap().sub(dd).is_zero(),
                (Some(d), _) => d.is_zero(),
                (None, _) => true,
            });
            flip(&mut cat, slot);
            ensure(justified, format!("mutation {slot:?} in {g}/{u} not detected"))?;
            unobservable += 1;
            continue;
        }
        // the witness must name the mutated pair (or its swap) and a family
        let localized = fails.iter().all(|f| {
            f.scope.starts_with(&format!("{g}/{u}/"))
                && f.witness.as_deref().is_some_and(|w| w.contains("family ") || w.contains("singleton "))
        });
        let own = match slot {
            Slot::RecordTerm(r, _) | Slot::RecordSingleton(r, _) | Slot::RecordNamed(r, _) => {
                let r = &cat.restrictions[*r];
                let a = format!("({},{})", r.s, r.h);
                fails.iter().any(|f| f.scope.ends_with(&a) || f.witness.as_deref().unwrap_or("").contains(&a))
            }
            _ => true,
        };
        flip(&mut cat, slot);
        ensure(localized && own, format!("mutation {slot:?}: witness not localized"))?;
        caught += 1;
    }
    ensure(caught >= 10, format!("only {caught} mutations caught"))?;
    Ok(format!(
        "{caught} of {} sign flips caught with localized witnesses; {unobservable} change every pair and its dual compatibly",
        slots.len()
    ))
}

fn main() {
    let t0 = Instant::now();
    let cat = match Catalog::builtin() {
        Ok(c) => c,
        Err(e) => {
            println!("catalog failed to load: {e}");
            std::process::exit(1);
        }
    };
    println!("catalog loaded in {:.2}s", t0.elapsed().as_secs_f64());
    let runs: Vec<(u32, Duration, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, Duration::from_secs(5), Box::new(|| fourier(&cat))),
        (2, Duration::from_secs(10), Box::new(|| orbit_counts(&cat))),
        (3, Duration::from_secs(60), Box::new(|| main_theorem(&cat))),
        (4, Duration::from_secs(60), Box::new(|| zeta(&cat))),
        (5, Duration::from_secs(60), Box::new(|| self_dual(&cat))),
        (6, Duration::from_secs(60), Box::new(|| tables(&cat))),
        (7, Duration::from_secs(60), Box::new(elliptic)),
        (8, Duration::from_secs(120), Box::new(|| mutation(&cat))),
    ];
    let mut failed = 0;
    for (k, limit, f) in runs {
        let t = Instant::now();
        let out = f();
        let dt = t.elapsed();
        let out = match out {
            Ok(msg) if dt > limit => Err(format!("{msg}; took {:.2}s, limit {}s", dt.as_secs_f64(), limit.as_secs())),
            o => o,
        };
        match out {
            Ok(msg) => println!("criterion {k}: PASS ({:.2}s) {msg}", dt.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("criterion {k}: FAIL ({:.2}s) {msg}", dt.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
