//! Checks over a loaded catalog and the report they produce.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::catalog::{
    dual_indices, expand_named, expand_restriction, find_pair, validate_tables, Catalog, Claim,
    Expansion, Leading, RestrictionRecord, UnipotentRecord,
};
use crate::cyclo::CycNum;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Partial,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Pass => "pass",
            Status::Partial => "partial",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub check_id: String,
    pub scope: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    fn new(id: &str, scope: &str, status: Status, detail: String) -> Check {
        Check {
            check_id: id.to_string(),
            scope: scope.to_string(),
            status,
            witness: (!detail.is_empty()).then_some(detail),
        }
    }
    pub fn pass(id: &str, scope: &str, detail: String) -> Check {
        Check::new(id, scope, Status::Pass, detail)
    }
    pub fn fail(id: &str, scope: &str, detail: String) -> Check {
        Check::new(id, scope, Status::Fail, detail)
    }
    pub fn partial(id: &str, scope: &str, detail: String) -> Check {
        Check::new(id, scope, Status::Partial, detail)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub partial: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for c in &self.checks {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Partial => s.partial += 1,
                Status::Fail => s.fail += 1,
            }
        }
        s
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// No fails, and no partials unless they are allowed.
    pub fn ok(&self, allow_partial: bool) -> bool {
        self.checks.iter().all(|c| match c.status {
            Status::Pass => true,
            Status::Partial => allow_partial,
            Status::Fail => false,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{:<7} {:<13} {}", c.status, c.check_id, c.scope));
            if let Some(w) = &c.witness {
                if c.status != Status::Pass {
                    out.push_str(&format!("\n        {w}"));
                }
            }
            out.push('\n');
        }
        let s = self.summary();
        out.push_str(&format!(
            "{} checks: {} pass, {} partial, {} fail\n",
            self.checks.len(),
            s.pass,
            s.partial,
            s.fail
        ));
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            checks: &'a [Check],
            summary: Summary,
        }
        serde_json::to_string_pretty(&Out {
            checks: &self.checks,
            summary: self.summary(),
        })
        .expect("report serializes")
    }
}

/// Restricts checks to one group and optionally one unipotent class.
#[derive(Clone, Debug, Default)]
pub struct Filter {
    pub group: Option<String>,
    pub unipotent: Option<String>,
}

impl Filter {
    pub fn all() -> Filter {
        Filter::default()
    }

    pub fn group(g: &str) -> Filter {
        Filter {
            group: Some(g.to_string()),
            unipotent: None,
        }
    }

    pub fn matches(&self, group: &str, unipotent: &str) -> bool {
        self.group.as_deref().is_none_or(|g| g == group)
            && self.unipotent.as_deref().is_none_or(|u| u == unipotent)
    }

    fn is_all(&self) -> bool {
        self.group.is_none() && self.unipotent.is_none()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Main,
    Zeta,
    SelfDual,
    Counts,
    All,
}

pub fn run(cat: &Catalog, kind: CheckKind, filter: &Filter) -> Report {
    let mut rep = Report::default();
    if matches!(kind, CheckKind::Counts | CheckKind::All) {
        rep.extend(check_counts(cat, filter));
    }
    if matches!(kind, CheckKind::Main | CheckKind::All) {
        rep.extend(check_main(cat, filter));
    }
    if matches!(kind, CheckKind::Zeta | CheckKind::All) {
        rep.extend(check_zeta(cat, filter));
    }
    if matches!(kind, CheckKind::SelfDual | CheckKind::All) {
        rep.extend(check_self_dual(cat, filter));
    }
    rep
}

/// Table checks from the catalog validator, restricted by the filter.
pub fn check_counts(cat: &Catalog, filter: &Filter) -> Report {
    let full = validate_tables(cat);
    let keep = |scope: &str| -> bool {
        if filter.is_all() {
            return true;
        }
        let mut parts = scope.split('/');
        match (parts.next(), parts.next()) {
            (Some(g), Some(u)) if cat.unipotent(g, u).is_some() => filter.matches(g, u),
            // finite group assertions are global
            _ => false,
        }
    };
    Report {
        checks: full.checks.into_iter().filter(|c| keep(&c.scope)).collect(),
    }
}

fn pair_scope(u: &UnipotentRecord, s: &str, h: &str) -> String {
    format!("{}/{}/({},{})", u.group, u.label, s, h)
}

/// The restriction record attached to each stored pair.
fn records_by_pair<'a>(
    cat: &'a Catalog,
    u: &'a UnipotentRecord,
) -> Result<Vec<Option<&'a RestrictionRecord>>> {
    let mut out = vec![None; u.pairs.len()];
    for r in cat.restrictions_for(u) {
        if let Some(i) = find_pair(cat, u, &r.s, &r.h)? {
            out[i] = Some(r);
        }
    }
    Ok(out)
}

/// Compare FT of the (s,h) expansion with the (h,s) expansion.
pub fn compare_dual(cat: &Catalog, r: &RestrictionRecord, d: &RestrictionRecord) -> Result<(Status, String)> {
    let e = expand_restriction(cat, r)?;
    let ed = expand_restriction(cat, d)?;
    let diff = e.apply_ft(cat)?.sub(&ed);
    // singletons are FT-fixed, so an unlisted tail only matters between two records
    let unlisted = !std::ptr::eq(r, d) && (r.unlisted_singletons || d.unlisted_singletons);
    let concrete = Expansion {
        families: diff.families.clone(),
        singletons: if unlisted {
            BTreeMap::new()
        } else {
            diff.singletons.clone()
        },
        symbolic: BTreeMap::new(),
    };
    if !concrete.is_zero() {
        let w = concrete.witness(cat).unwrap_or_default();
        return Ok((Status::Fail, format!("FT({},{}) vs ({},{}): {w}", r.s, r.h, d.s, d.h)));
    }
    if !diff.symbolic.is_empty() {
        let w = diff.witness(cat).unwrap_or_default();
        return Ok((
            Status::Fail,
            format!("FT({},{}) vs ({},{}): unexpanded parts differ: {w}", r.s, r.h, d.s, d.h),
        ));
    }
    let mut rest: Vec<String> = e.symbolic.keys().cloned().collect();
    if unlisted {
        rest.push("singleton tail not listed".to_string());
    }
    if rest.is_empty() {
        Ok((Status::Pass, String::new()))
    } else {
        Ok((
            Status::Partial,
            format!("listed terms agree; unverified remainder: {}", rest.join(", ")),
        ))
    }
}

pub fn check_main(cat: &Catalog, filter: &Filter) -> Report {
    let mut rep = Report::default();
    for u in cat.unipotents.iter().filter(|u| filter.matches(&u.group, &u.label)) {
        let recs = match records_by_pair(cat, u) {
            Ok(r) => r,
            Err(e) => {
                rep.push(Check::fail("main", &format!("{}/{}", u.group, u.label), e.to_string()));
                continue;
            }
        };
        let duals = match dual_indices(cat, u) {
            Ok(d) => d,
            Err(e) => {
                rep.push(Check::fail("main", &format!("{}/{}", u.group, u.label), e.to_string()));
                continue;
            }
        };
        for (i, p) in u.pairs.iter().enumerate() {
            let Some(r) = recs[i] else { continue };
            let sc = pair_scope(u, &p.s, &p.h);
            let Some(d) = duals[i].and_then(|j| recs[j]) else {
                rep.push(Check::fail("main", &sc, "no restriction record for the swapped pair".into()));
                continue;
            };
            match compare_dual(cat, r, d) {
                Ok((Status::Pass, _)) => {
                    let detail = if std::ptr::eq(r, d) {
                        "self-dual pair: expansion is FT-fixed".to_string()
                    } else {
                        format!("FT maps it to ({},{})", d.s, d.h)
                    };
                    rep.push(Check::pass("main", &sc, detail));
                }
                Ok((st, w)) => rep.push(Check::new("main", &sc, st, w)),
                Err(e) => rep.push(Check::fail("main", &sc, e.to_string())),
            }
        }
    }
    rep
}

/// Twisting sign of a family at (x, y): -1 iff exactly one is trivial.
pub fn delta(twisted: bool, x: &str, y: &str) -> CycNum {
    if twisted && ((x == "1") != (y == "1")) {
        CycNum::from_int(-1)
    } else {
        CycNum::one()
    }
}

/// Coefficient of the leading term in a restriction record.
pub fn leading_coefficient(cat: &Catalog, r: &RestrictionRecord, lead: &Leading) -> Result<CycNum> {
    let e = expand_restriction(cat, r)?;
    match lead {
        Leading::Singleton(name) => Ok(e.singletons.get(name).cloned().unwrap_or_else(CycNum::zero)),
        Leading::Family { family, x, y } => {
            let f = &cat.families[family];
            let Some(v) = e.families.get(family) else {
                return Ok(CycNum::zero());
            };
            let block = f
                .blocks()
                .iter()
                .find(|b| &b.x_label == x)
                .expect("leading labels were resolved at load");
            let z = block.table.group();
            let yc = z.class_name(z.class_of(z.eval_word(y)?));
            Ok(f.sigma_coords(v)
                .into_iter()
                .find(|(bx, by, _)| bx == x && *by == yc)
                .map(|(_, _, c)| c)
                .unwrap_or_else(CycNum::zero))
        }
    }
}

pub fn check_zeta(cat: &Catalog, filter: &Filter) -> Report {
    let mut rep = Report::default();
    for u in cat.unipotents.iter().filter(|u| filter.matches(&u.group, &u.label)) {
        let (recs, duals) = match (records_by_pair(cat, u), dual_indices(cat, u)) {
            (Ok(r), Ok(d)) => (r, d),
            (Err(e), _) | (_, Err(e)) => {
                rep.push(Check::fail("zeta", &format!("{}/{}", u.group, u.label), e.to_string()));
                continue;
            }
        };
        for (i, p) in u.pairs.iter().enumerate() {
            let (Some(r), Some(lead)) = (recs[i], &p.leading) else { continue };
            let sc = pair_scope(u, &p.s, &p.h);
            let j = duals[i];
            let (Some(d), Some(dlead)) = (j.and_then(|j| recs[j]), j.and_then(|j| u.pairs[j].leading.as_ref())) else {
                rep.push(Check::fail("zeta", &sc, "swapped pair has no record with a leading term".into()));
                continue;
            };
            let z1 = leading_coefficient(cat, r, lead);
            let z2 = leading_coefficient(cat, d, dlead);
            let (z1, z2) = match (z1, z2) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => {
                    rep.push(Check::fail("zeta", &sc, e.to_string()));
                    continue;
                }
            };
            let want = match lead {
                Leading::Family { family, x, y } => delta(cat.families[family].delta_twisted(), x, y),
                Leading::Singleton(_) => CycNum::one(),
            };
            let prod = &z1 * &z2.conj();
            let partial = cat.is_partial(r) || cat.is_partial(d);
            if z1.root_exponent().is_none() || z2.root_exponent().is_none() {
                let st = if partial && (z1.is_zero() || z2.is_zero()) {
                    Status::Partial
                } else {
                    Status::Fail
                };
                rep.push(Check::new(
                    "zeta",
                    &sc,
                    st,
                    format!("leading coefficients {z1} and {z2} are not both roots of unity"),
                ));
            } else if prod == want {
                rep.push(Check::pass(
                    "zeta",
                    &sc,
                    format!("ζ = {z1}, ζ(h,s) = {z2}, product {prod} = Δ"),
                ));
            } else {
                rep.push(Check::fail(
                    "zeta",
                    &sc,
                    format!("ζ = {z1}, ζ(h,s) = {z2}: product {prod}, Δ = {want}"),
                ));
            }
        }
    }
    rep
}

fn named_in_filter(cat: &Catalog, scope: &str, filter: &Filter) -> bool {
    if filter.is_all() {
        return true;
    }
    match scope.split_once(':') {
        Some((g, u)) => filter.matches(g, u),
        None => cat
            .unipotents
            .iter()
            .any(|u| u.family == scope && filter.matches(&u.group, &u.label)),
    }
}

pub fn check_self_dual(cat: &Catalog, filter: &Filter) -> Report {
    let mut rep = Report::default();
    for n in cat.named.values() {
        if !named_in_filter(cat, &n.scope, filter) {
            continue;
        }
        let sc = n.name.clone();
        if !n.complete {
            rep.push(Check::partial(
                "selfdual",
                &sc,
                "only the leading terms are transcribed".into(),
            ));
            continue;
        }
        let target = match &n.claim {
            Claim::SelfDual => n,
            Claim::MapsTo(t) => &cat.named[t],
        };
        let res = expand_named(cat, n).and_then(|e| {
            let t = expand_named(cat, target)?;
            Ok(e.apply_ft(cat)?.sub(&t))
        });
        match res {
            Ok(diff) if diff.is_zero() => {
                let detail = match &n.claim {
                    Claim::SelfDual => "FT-fixed".to_string(),
                    Claim::MapsTo(t) => format!("FT maps it to {t}"),
                };
                rep.push(Check::pass("selfdual", &sc, detail));
            }
            Ok(diff) => rep.push(Check::fail(
                "selfdual",
                &sc,
                diff.witness(cat).unwrap_or_default(),
            )),
            Err(e) => rep.push(Check::fail("selfdual", &sc, e.to_string())),
        }
    }
    rep
}
