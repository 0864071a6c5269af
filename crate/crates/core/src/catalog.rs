//! The transcribed data: unipotent classes with their elliptic pairs,
//! restriction records, named combinations, and the groups they live in.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::Deserialize;

use crate::chartab::{character_table, CharTable};
use crate::cyclo::CycNum;
use crate::elliptic::{elliptic_classes, elliptic_det, Matrix, TorusAction};
use crate::error::{Error, Result};
use crate::families::{CentralizerData, Family, FamilyVector, Term};
use crate::groups::{commuting_pair_orbits, orbit_of_pair, FinGroup, Perm};
use crate::verify::{Check, Report};

/// The catalog shipped with the crate.
pub const BUILTIN: &str = include_str!("../data/catalog.json");

// ------------------------------------------------------------------ raw

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalog {
    schema_version: Option<u32>,
    #[serde(default)]
    family_groups: BTreeMap<String, RawFamilyGroup>,
    #[serde(default)]
    finite_groups: BTreeMap<String, RawFiniteGroup>,
    #[serde(default)]
    families: BTreeMap<String, RawFamily>,
    #[serde(default)]
    groups: Vec<RawGroup>,
    #[serde(default)]
    named_combinations: Vec<RawNamed>,
}

#[derive(Deserialize)]
struct RawFamilyGroup {
    points: usize,
    generators: Vec<Vec<usize>>,
    #[serde(default)]
    class_labels: BTreeMap<String, Vec<usize>>,
    #[serde(default)]
    centralizers: Vec<RawCentralizer>,
}

#[derive(Deserialize)]
struct RawCentralizer {
    x: String,
    #[serde(default)]
    y_labels: BTreeMap<String, Vec<usize>>,
    #[serde(default)]
    char_fingerprints: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Deserialize)]
struct RawFiniteGroup {
    points: usize,
    generators: Vec<Vec<usize>>,
    #[serde(default)]
    labels: BTreeMap<String, Vec<usize>>,
    char_fingerprints: Option<BTreeMap<String, BTreeMap<String, String>>>,
    #[serde(default)]
    assertions: Vec<RawAssertion>,
    #[serde(default)]
    note: String,
}

#[derive(Deserialize, Clone, Debug)]
pub struct RawAssertion {
    pub centralizer_of: Vec<String>,
    pub order: usize,
    pub element_orders: BTreeMap<String, usize>,
}

#[derive(Deserialize)]
struct RawFamily {
    group: String,
    delta_twisted: bool,
    #[serde(rename = "b_F")]
    b_f: Option<u32>,
}

#[derive(Deserialize)]
struct RawGroup {
    name: String,
    #[serde(default)]
    unipotents: Vec<RawUnipotent>,
    #[serde(default)]
    restrictions: Vec<RawRestriction>,
    #[serde(default)]
    subparahoric: Vec<RawSubparahoric>,
}

#[derive(Deserialize)]
struct RawUnipotent {
    label: String,
    centralizer: RawCentralizerKind,
    component_group: String,
    quotient: String,
    pair_count: usize,
    count_rule: String,
    #[serde(default)]
    center: Vec<String>,
    family: String,
    family_gamma: String,
    delta_twisted: bool,
    pairs: Vec<RawPair>,
}

#[derive(Deserialize)]
struct RawCentralizerKind {
    finite: Option<String>,
    model: Option<String>,
    #[serde(default)]
    torus_dim: usize,
    #[serde(default)]
    note: String,
}

#[derive(Deserialize)]
struct RawPair {
    s: String,
    h: String,
    a_su: Option<String>,
    h_in_a: Option<String>,
    split: bool,
    torus: RawTorus,
    leading: Option<RawLeading>,
    source: String,
}

#[derive(Deserialize)]
struct RawTorus {
    dim: usize,
    #[serde(default)]
    matrices: Vec<Vec<Vec<String>>>,
}

#[derive(Deserialize)]
struct RawLeading {
    family: Option<String>,
    x: Option<String>,
    y: Option<String>,
    singleton: Option<String>,
}

#[derive(Deserialize)]
struct RawTerm {
    family: String,
    basis: String,
    x: String,
    y: Option<String>,
    rho: Option<String>,
    coeff: String,
}

#[derive(Deserialize)]
struct RawSingleton {
    name: String,
    mult: String,
}

#[derive(Deserialize)]
struct RawNamedRef {
    name: String,
    coeff: String,
}

#[derive(Deserialize)]
struct RawRestriction {
    unipotent: String,
    s: String,
    h: String,
    #[serde(default)]
    terms: Vec<RawTerm>,
    #[serde(default)]
    singletons: Vec<RawSingleton>,
    #[serde(default)]
    named: Vec<RawNamedRef>,
    note: Option<String>,
    #[serde(default)]
    unlisted_singletons: bool,
}

#[derive(Deserialize)]
struct RawSubparahoric {
    unipotent: String,
    parahoric: String,
    s: String,
    h: String,
    singletons: Vec<RawSingleton>,
}

#[derive(Deserialize)]
struct RawClaim {
    kind: String,
    target: Option<String>,
}

#[derive(Deserialize)]
struct RawNamed {
    name: String,
    scope: String,
    completeness: String,
    #[serde(default)]
    terms: Vec<RawTerm>,
    #[serde(default)]
    singletons: Vec<RawSingleton>,
    claim: Option<RawClaim>,
    note: Option<String>,
}

// ------------------------------------------------------------------ built

/// A finite group with labels and, unless it is only a model, a labelled
/// character table.
#[derive(Clone, Debug)]
pub struct FiniteGroupDef {
    pub group: FinGroup,
    pub table: Option<CharTable>,
    pub assertions: Vec<RawAssertion>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CentralizerKind {
    Finite(String),
    Model {
        model: String,
        torus_dim: usize,
        note: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountRule {
    /// Orbits of commuting pairs in a finite A_u.
    Computed,
    /// The stored list itself.
    Listed,
    /// Stored pairs up to simultaneous conjugacy and translation by the
    /// listed central elements.
    ModuloCenter,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Leading {
    Family { family: String, x: String, y: String },
    Singleton(String),
}

#[derive(Clone, Debug)]
pub struct PairRecord {
    pub s: String,
    pub h: String,
    /// Name of the group A_su: a finite group, or for distinguished
    /// classes the centralizer of s in A_u.
    pub a_su: String,
    pub h_in_a: String,
    pub split: bool,
    pub torus_dim: usize,
    pub torus_matrices: Vec<Matrix>,
    pub leading: Option<Leading>,
    pub source: String,
}

#[derive(Clone, Debug)]
pub struct UnipotentRecord {
    pub group: String,
    pub label: String,
    pub centralizer: CentralizerKind,
    pub component_group: String,
    pub quotient: String,
    pub pair_count: usize,
    pub count_rule: CountRule,
    pub center: Vec<String>,
    pub family: String,
    pub family_gamma: String,
    pub delta_twisted: bool,
    pub pairs: Vec<PairRecord>,
}

#[derive(Clone, Debug)]
pub struct TermRecord {
    pub family: String,
    pub term: Term,
    pub coeff: CycNum,
}

#[derive(Clone, Debug)]
pub struct RestrictionRecord {
    pub group: String,
    pub unipotent: String,
    pub s: String,
    pub h: String,
    pub terms: Vec<TermRecord>,
    pub singletons: Vec<(String, CycNum)>,
    pub named: Vec<(String, CycNum)>,
    pub note: Option<String>,
    pub unlisted_singletons: bool,
}

#[derive(Clone, Debug)]
pub struct SubparahoricRecord {
    pub group: String,
    pub unipotent: String,
    pub parahoric: String,
    pub s: String,
    pub h: String,
    pub singletons: BTreeMap<String, CycNum>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    SelfDual,
    MapsTo(String),
}

#[derive(Clone, Debug)]
pub struct NamedCombination {
    pub name: String,
    pub scope: String,
    pub complete: bool,
    pub terms: Vec<TermRecord>,
    pub singletons: Vec<(String, CycNum)>,
    pub claim: Claim,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub schema_version: u32,
    /// The groups carrying families and component groups, with labelled
    /// centralizer tables (built as untwisted families).
    pub structures: BTreeMap<String, Family>,
    pub finite_groups: BTreeMap<String, FiniteGroupDef>,
    pub families: BTreeMap<String, Family>,
    pub unipotents: Vec<UnipotentRecord>,
    pub restrictions: Vec<RestrictionRecord>,
    pub subparahoric: Vec<SubparahoricRecord>,
    pub named: BTreeMap<String, NamedCombination>,
}

fn cerr(msg: impl Into<String>) -> Error {
    Error::Catalog(msg.into())
}

fn coeff(path: &str, s: &str) -> Result<CycNum> {
    CycNum::parse(s).map_err(|e| cerr(format!("{path}: {e}")))
}

fn perm(path: &str, images: &[usize], n: usize) -> Result<Perm> {
    if images.len() != n {
        return Err(cerr(format!("{path}: permutation on {} points, expected {n}", images.len())));
    }
    Perm::from_images(images).map_err(|e| cerr(format!("{path}: {e}")))
}

fn fingerprints(
    path: &str,
    raw: &BTreeMap<String, BTreeMap<String, String>>,
) -> Result<Vec<(String, Vec<(String, CycNum)>)>> {
    raw.iter()
        .map(|(name, vals)| {
            let v = vals
                .iter()
                .map(|(w, c)| Ok((w.clone(), coeff(&format!("{path}.{name}"), c)?)))
                .collect::<Result<_>>()?;
            Ok((name.clone(), v))
        })
        .collect()
}

fn build_group(path: &str, n: usize, gens: &[Vec<usize>]) -> Result<FinGroup> {
    let gens: Vec<Perm> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| perm(&format!("{path}.generators[{i}]"), g, n))
        .collect::<Result<_>>()?;
    FinGroup::from_generators(n, &gens).map_err(|e| cerr(format!("{path}: {e}")))
}

fn term_record(path: &str, t: &RawTerm) -> Result<TermRecord> {
    let term = match (t.basis.as_str(), &t.y, &t.rho) {
        ("xy", Some(y), None) => Term::XY(t.x.clone(), y.clone()),
        ("xrho", None, Some(r)) => Term::XRho(t.x.clone(), r.clone()),
        _ => {
            return Err(cerr(format!(
                "{path}: basis {:?} needs exactly one of y (xy) or rho (xrho)",
                t.basis
            )))
        }
    };
    Ok(TermRecord {
        family: t.family.clone(),
        term,
        coeff: coeff(path, &t.coeff)?,
    })
}

fn singletons(path: &str, raw: &[RawSingleton]) -> Result<Vec<(String, CycNum)>> {
    raw.iter()
        .map(|s| Ok((s.name.clone(), coeff(&format!("{path}.{}", s.name), &s.mult)?)))
        .collect()
}

impl Catalog {
    pub fn builtin() -> Result<Catalog> {
        Catalog::from_json(BUILTIN)
    }

    pub fn load(path: &Path) -> Result<Catalog> {
        let text = std::fs::read_to_string(path)?;
        Catalog::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Catalog> {
        if text.trim().is_empty() {
            return Ok(Catalog {
                schema_version: 1,
                ..Catalog::default()
            });
        }
        let raw: RawCatalog = serde_json::from_str(text)?;
        let version = raw.schema_version.unwrap_or(1);
        if version != 1 {
            return Err(cerr(format!("unsupported schema_version {version}")));
        }
        let mut cat = Catalog {
            schema_version: version,
            ..Catalog::default()
        };

        let mut locals: BTreeMap<String, (FinGroup, Vec<CentralizerData>)> = BTreeMap::new();
        for (name, fg) in &raw.family_groups {
            let path = format!("family_groups.{name}");
            let mut g = build_group(&path, fg.points, &fg.generators)?;
            for (l, im) in &fg.class_labels {
                g.set_label(l, &perm(&format!("{path}.class_labels.{l}"), im, fg.points)?)
                    .map_err(|e| cerr(format!("{path}: {e}")))?;
            }
            let local = fg
                .centralizers
                .iter()
                .map(|c| {
                    let p = format!("{path}.centralizers.{}", c.x);
                    Ok(CentralizerData {
                        x: c.x.clone(),
                        y_labels: c
                            .y_labels
                            .iter()
                            .map(|(k, im)| Ok((k.clone(), perm(&p, im, fg.points)?)))
                            .collect::<Result<_>>()?,
                        fingerprints: fingerprints(&p, &c.char_fingerprints)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let st = Family::build(name, &g, false, &local, None)?;
            cat.structures.insert(name.clone(), st);
            locals.insert(name.clone(), (g, local));
        }

        for (name, fg) in &raw.finite_groups {
            let path = format!("finite_groups.{name}");
            let mut g = build_group(&path, fg.points, &fg.generators)?;
            for (l, im) in &fg.labels {
                g.set_label(l, &perm(&format!("{path}.labels.{l}"), im, fg.points)?)
                    .map_err(|e| cerr(format!("{path}: {e}")))?;
            }
            let table = match &fg.char_fingerprints {
                Some(fp) => {
                    let mut t = character_table(&g)?;
                    t.resolve_char_labels(&fingerprints(&path, fp)?)
                        .map_err(|e| cerr(format!("{path}: {e}")))?;
                    Some(t)
                }
                None => None,
            };
            cat.finite_groups.insert(
                name.clone(),
                FiniteGroupDef {
                    group: g,
                    table,
                    assertions: fg.assertions.clone(),
                    note: fg.note.clone(),
                },
            );
        }

        for (name, f) in &raw.families {
            let (g, local) = locals
                .get(&f.group)
                .ok_or_else(|| cerr(format!("families.{name}: unknown group {:?}", f.group)))?;
            let fam = Family::build(name, g, f.delta_twisted, local, f.b_f)?;
            cat.families.insert(name.clone(), fam);
        }

        for n in &raw.named_combinations {
            let path = format!("named_combinations.{}", n.name);
            let complete = match n.completeness.as_str() {
                "complete" => true,
                "partial" => false,
                other => return Err(cerr(format!("{path}: completeness {other:?}"))),
            };
            let claim = match &n.claim {
                None => Claim::SelfDual,
                Some(c) => match (c.kind.as_str(), &c.target) {
                    ("self_dual", None) => Claim::SelfDual,
                    ("maps_to", Some(t)) => Claim::MapsTo(t.clone()),
                    _ => return Err(cerr(format!("{path}: bad claim"))),
                },
            };
            let rec = NamedCombination {
                name: n.name.clone(),
                scope: n.scope.clone(),
                complete,
                terms: n
                    .terms
                    .iter()
                    .map(|t| term_record(&path, t))
                    .collect::<Result<_>>()?,
                singletons: singletons(&path, &n.singletons)?,
                claim,
                note: n.note.clone(),
            };
            if cat.named.insert(n.name.clone(), rec).is_some() {
                return Err(cerr(format!("{path}: duplicate name")));
            }
        }

        for g in &raw.groups {
            for u in &g.unipotents {
                cat.unipotents.push(cat.build_unipotent(&g.name, u)?);
            }
            for r in &g.restrictions {
                let path = format!("{}.{}.({},{})", g.name, r.unipotent, r.s, r.h);
                cat.restrictions.push(RestrictionRecord {
                    group: g.name.clone(),
                    unipotent: r.unipotent.clone(),
                    s: r.s.clone(),
                    h: r.h.clone(),
                    terms: r
                        .terms
                        .iter()
                        .map(|t| term_record(&path, t))
                        .collect::<Result<_>>()?,
                    singletons: singletons(&path, &r.singletons)?,
                    named: r
                        .named
                        .iter()
                        .map(|n| Ok((n.name.clone(), coeff(&path, &n.coeff)?)))
                        .collect::<Result<_>>()?,
                    note: r.note.clone(),
                    unlisted_singletons: r.unlisted_singletons,
                });
            }
            for sp in &g.subparahoric {
                let path = format!("{}.{}.{}", g.name, sp.unipotent, sp.parahoric);
                cat.subparahoric.push(SubparahoricRecord {
                    group: g.name.clone(),
                    unipotent: sp.unipotent.clone(),
                    parahoric: sp.parahoric.clone(),
                    s: sp.s.clone(),
                    h: sp.h.clone(),
                    singletons: singletons(&path, &sp.singletons)?.into_iter().collect(),
                });
            }
        }
        cat.resolve_references()?;
        Ok(cat)
    }

    fn build_unipotent(&self, group: &str, u: &RawUnipotent) -> Result<UnipotentRecord> {
        let path = format!("{group}.{}", u.label);
        let centralizer = match (&u.centralizer.finite, &u.centralizer.model) {
            (Some(f), None) => {
                if !self.structures.contains_key(f) {
                    return Err(cerr(format!("{path}: unknown component group {f:?}")));
                }
                CentralizerKind::Finite(f.clone())
            }
            (None, Some(m)) => {
                if !self.finite_groups.contains_key(m) {
                    return Err(cerr(format!("{path}: unknown model {m:?}")));
                }
                CentralizerKind::Model {
                    model: m.clone(),
                    torus_dim: u.centralizer.torus_dim,
                    note: u.centralizer.note.clone(),
                }
            }
            _ => return Err(cerr(format!("{path}: centralizer needs exactly one of finite, model"))),
        };
        let count_rule = match u.count_rule.as_str() {
            "computed" => CountRule::Computed,
            "listed" => CountRule::Listed,
            "modulo_center" => CountRule::ModuloCenter,
            other => return Err(cerr(format!("{path}: count_rule {other:?}"))),
        };
        let mut pairs = Vec::new();
        for p in &u.pairs {
            let pp = format!("{path}.({},{})", p.s, p.h);
            let (a_su, h_in_a) = match (&centralizer, &p.a_su) {
                (CentralizerKind::Finite(_), None) => (String::new(), p.h.clone()),
                (_, Some(a)) => {
                    if !self.finite_groups.contains_key(a) && !self.structures.contains_key(a) {
                        return Err(cerr(format!("{pp}: unknown A_su group {a:?}")));
                    }
                    (a.clone(), p.h_in_a.clone().unwrap_or_else(|| p.h.clone()))
                }
                (CentralizerKind::Model { .. }, None) => {
                    return Err(cerr(format!("{pp}: model pairs need a_su")))
                }
            };
            let torus_matrices = p
                .torus
                .matrices
                .iter()
                .map(|m| {
                    m.iter()
                        .map(|row| row.iter().map(|c| coeff(&pp, c)).collect())
                        .collect()
                })
                .collect::<Result<Vec<Matrix>>>()?;
            let leading = match &p.leading {
                None => None,
                Some(RawLeading {
                    family: Some(f),
                    x: Some(x),
                    y: Some(y),
                    singleton: None,
                }) => Some(Leading::Family {
                    family: f.clone(),
                    x: x.clone(),
                    y: y.clone(),
                }),
                Some(RawLeading {
                    family: None,
                    singleton: Some(s),
                    ..
                }) => Some(Leading::Singleton(s.clone())),
                Some(_) => return Err(cerr(format!("{pp}: malformed leading term"))),
            };
            pairs.push(PairRecord {
                s: p.s.clone(),
                h: p.h.clone(),
                a_su,
                h_in_a,
                split: p.split,
                torus_dim: p.torus.dim,
                torus_matrices,
                leading,
                source: p.source.clone(),
            });
        }
        Ok(UnipotentRecord {
            group: group.to_string(),
            label: u.label.clone(),
            centralizer,
            component_group: u.component_group.clone(),
            quotient: u.quotient.clone(),
            pair_count: u.pair_count,
            count_rule,
            center: u.center.clone(),
            family: u.family.clone(),
            family_gamma: u.family_gamma.clone(),
            delta_twisted: u.delta_twisted,
            pairs,
        })
    }

    /// Every family, label and named reference must resolve.
    fn resolve_references(&self) -> Result<()> {
        let check_terms = |path: &str, terms: &[TermRecord]| -> Result<()> {
            for t in terms {
                let f = self
                    .families
                    .get(&t.family)
                    .ok_or_else(|| cerr(format!("{path}: unknown family {:?}", t.family)))?;
                f.term(&t.term).map_err(|e| cerr(format!("{path}: {e}")))?;
            }
            Ok(())
        };
        for n in self.named.values() {
            check_terms(&format!("named {}", n.name), &n.terms)?;
            if let Claim::MapsTo(t) = &n.claim {
                if !self.named.contains_key(t) {
                    return Err(cerr(format!("named {}: unknown target {t:?}", n.name)));
                }
            }
        }
        for r in &self.restrictions {
            let path = format!("{}.{}.({},{})", r.group, r.unipotent, r.s, r.h);
            check_terms(&path, &r.terms)?;
            for (n, _) in &r.named {
                let nc = self
                    .named
                    .get(n)
                    .ok_or_else(|| cerr(format!("{path}: unknown named combination {n:?}")))?;
                if !nc.claim_is_self_dual() {
                    return Err(cerr(format!("{path}: {n:?} is not declared self-dual")));
                }
            }
            self.unipotent(&r.group, &r.unipotent)
                .ok_or_else(|| cerr(format!("{path}: unknown unipotent class")))?;
        }
        for u in &self.unipotents {
            for p in &u.pairs {
                if let Some(Leading::Family { family, x, y }) = &p.leading {
                    let f = self
                        .families
                        .get(family)
                        .ok_or_else(|| cerr(format!("{}: unknown family {family:?}", u.label)))?;
                    f.sigma_xy(x, y)
                        .map_err(|e| cerr(format!("{} leading term: {e}", u.label)))?;
                }
            }
        }
        Ok(())
    }

    pub fn unipotent(&self, group: &str, label: &str) -> Option<&UnipotentRecord> {
        self.unipotents
            .iter()
            .find(|u| u.group == group && u.label == label)
    }

    pub fn group_names(&self) -> Vec<String> {
        let mut seen = Vec::new();
        for u in &self.unipotents {
            if !seen.contains(&u.group) {
                seen.push(u.group.clone());
            }
        }
        seen
    }

    pub fn restrictions_for<'a>(&'a self, u: &'a UnipotentRecord) -> impl Iterator<Item = &'a RestrictionRecord> {
        self.restrictions
            .iter()
            .filter(move |r| r.group == u.group && r.unipotent == u.label)
    }

    /// Whether a record depends on a named combination that is only
    /// partially transcribed.
    pub fn is_partial(&self, r: &RestrictionRecord) -> bool {
        r.named.iter().any(|(n, _)| !self.named[n].complete)
    }

    /// The group in which the pairs of `u` live: A_u for distinguished
    /// classes, the finite model otherwise.
    pub fn ambient(&self, u: &UnipotentRecord) -> &FinGroup {
        match &u.centralizer {
            CentralizerKind::Finite(f) => self.structures[f].gamma(),
            CentralizerKind::Model { model, .. } => &self.finite_groups[model].group,
        }
    }

    /// Elements of the ambient group for a pair. For distinguished classes
    /// h may use labels of the centralizer of s.
    pub fn pair_elements(&self, u: &UnipotentRecord, s: &str, h: &str) -> Result<(usize, usize)> {
        match &u.centralizer {
            CentralizerKind::Finite(f) => {
                let st = &self.structures[f];
                let g = st.gamma();
                let se = g.eval_word(s)?;
                match st.blocks().iter().find(|b| b.x == se) {
                    Some(b) => {
                        let z = b.table.group();
                        let he = z.eval_word(h)?;
                        Ok((se, z.parent_index(he).expect("subgroup")))
                    }
                    None => Ok((se, g.eval_word(h)?)),
                }
            }
            CentralizerKind::Model { model, .. } => {
                let g = &self.finite_groups[model].group;
                Ok((g.eval_word(s)?, g.eval_word(h)?))
            }
        }
    }

    /// Labelled character table of A_su for a stored pair.
    pub fn a_su_table(&self, u: &UnipotentRecord, p: &PairRecord) -> Result<CharTable> {
        if p.a_su.is_empty() {
            if let CentralizerKind::Finite(f) = &u.centralizer {
                let st = &self.structures[f];
                let se = st.gamma().eval_word(&p.s)?;
                return st
                    .blocks()
                    .iter()
                    .find(|b| b.x == se)
                    .map(|b| b.table.clone())
                    .ok_or_else(|| cerr(format!("{}: s = {} is not a block label", u.label, p.s)));
            }
        }
        if let Some(st) = self.structures.get(&p.a_su) {
            return Ok(st.blocks()[0].table.clone());
        }
        self.finite_groups[&p.a_su]
            .table
            .clone()
            .ok_or_else(|| cerr(format!("{}: A_su group {} has no character table", u.label, p.a_su)))
    }

    /// The torus action of A_su for a stored pair.
    pub fn torus_action(&self, u: &UnipotentRecord, p: &PairRecord) -> Result<TorusAction> {
        let group = if p.a_su.is_empty() {
            self.a_su_table(u, p)?.group().clone()
        } else if let Some(st) = self.structures.get(&p.a_su) {
            st.gamma().clone()
        } else {
            self.finite_groups[&p.a_su].group.clone()
        };
        if p.torus_dim == 0 {
            Ok(TorusAction::trivial(&group))
        } else {
            TorusAction::new(&group, p.torus_dim, p.torus_matrices.clone())
        }
    }

    fn a_su_element(&self, u: &UnipotentRecord, p: &PairRecord, act: &TorusAction) -> Result<usize> {
        let g = act.group();
        if p.a_su.is_empty() {
            return g.eval_word(&p.h_in_a);
        }
        g.eval_word(&p.h_in_a)
            .map_err(|e| cerr(format!("{} ({},{}): h in A_su: {e}", u.label, p.s, p.h)))
    }
}

impl NamedCombination {
    pub fn claim_is_self_dual(&self) -> bool {
        self.claim == Claim::SelfDual
    }
}

// ------------------------------------------------------------------ expansion

/// A restriction as family vectors, singleton multiplicities and the
/// unexpanded remainders (partial named combinations).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expansion {
    pub families: BTreeMap<String, FamilyVector>,
    pub singletons: BTreeMap<String, CycNum>,
    pub symbolic: BTreeMap<String, CycNum>,
}

fn add_to(map: &mut BTreeMap<String, CycNum>, k: &str, c: &CycNum) {
    let e = map.entry(k.to_string()).or_insert_with(CycNum::zero);
    *e += c;
    if e.is_zero() {
        map.remove(k);
    }
}

impl Expansion {
    fn add_terms(
        &mut self,
        cat: &Catalog,
        terms: &[TermRecord],
        singles: &[(String, CycNum)],
        scale: &CycNum,
    ) -> Result<()> {
        for t in terms {
            let f = cat
                .families
                .get(&t.family)
                .ok_or_else(|| cerr(format!("unknown family {:?}", t.family)))?;
            let v = f.term(&t.term)?;
            let entry = self
                .families
                .entry(t.family.clone())
                .or_insert_with(|| FamilyVector::zero(f));
            entry.add_scaled(&v, &(&t.coeff * scale));
        }
        for (n, m) in singles {
            add_to(&mut self.singletons, n, &(m * scale));
        }
        Ok(())
    }

    fn normalize(&mut self) {
        self.families.retain(|_, v| !v.is_zero());
    }

    /// Apply each family's Fourier matrix; singletons and the declared
    /// self-dual remainders are fixed.
    pub fn apply_ft(&self, cat: &Catalog) -> Result<Expansion> {
        let mut out = self.clone();
        for (name, v) in &self.families {
            out.families.insert(name.clone(), cat.families[name].apply_ft(v)?);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Expansion) -> Expansion {
        let mut out = self.clone();
        for (name, v) in &other.families {
            match out.families.get_mut(name) {
                Some(w) => *w = w.sub(v),
                None => {
                    out.families
                        .insert(name.clone(), v.scaled(&CycNum::from_int(-1)));
                }
            }
        }
        let minus = CycNum::from_int(-1);
        for (k, c) in &other.singletons {
            add_to(&mut out.singletons, k, &(c * &minus));
        }
        for (k, c) in &other.symbolic {
            add_to(&mut out.symbolic, k, &(c * &minus));
        }
        out.normalize();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.families.values().all(FamilyVector::is_zero)
            && self.singletons.is_empty()
            && self.symbolic.is_empty()
    }

    /// A human-readable description of the first nonzero component, for
    /// use on a difference.
    pub fn witness(&self, cat: &Catalog) -> Option<String> {
        for (name, v) in &self.families {
            if v.is_zero() {
                continue;
            }
            let f = &cat.families[name];
            let coords = f.sigma_coords(v);
            let parts: Vec<String> = coords
                .iter()
                .map(|(x, y, c)| format!("{c}·σ({name};{x},{y})"))
                .collect();
            return Some(format!("family {name}: difference {}", parts.join(" + ")));
        }
        if let Some((k, c)) = self.singletons.iter().next() {
            return Some(format!("singleton {k}: difference {c}"));
        }
        if let Some((k, c)) = self.symbolic.iter().next() {
            return Some(format!("unexpanded {k}: difference {c}"));
        }
        None
    }
}

pub fn expand_named(cat: &Catalog, n: &NamedCombination) -> Result<Expansion> {
    let mut e = Expansion::default();
    e.add_terms(cat, &n.terms, &n.singletons, &CycNum::one())?;
    e.normalize();
    Ok(e)
}

/// Expand a restriction record. Complete named combinations are inlined;
/// partial ones stay symbolic.
pub fn expand_restriction(cat: &Catalog, r: &RestrictionRecord) -> Result<Expansion> {
    let mut e = Expansion::default();
    e.add_terms(cat, &r.terms, &r.singletons, &CycNum::one())?;
    for (name, c) in &r.named {
        let n = cat
            .named
            .get(name)
            .ok_or_else(|| cerr(format!("unknown named combination {name:?}")))?;
        if n.complete {
            e.add_terms(cat, &n.terms, &n.singletons, c)?;
        } else {
            add_to(&mut e.symbolic, name, c);
        }
    }
    e.normalize();
    Ok(e)
}

// ------------------------------------------------------------------ pairs

/// Whether (a, b) and (c, d) are simultaneously conjugate.
pub fn simultaneously_conjugate(g: &FinGroup, a: usize, b: usize, c: usize, d: usize) -> bool {
    g.class_of(a) == g.class_of(c)
        && g.class_of(b) == g.class_of(d)
        && (0..g.order()).any(|x| g.conj(a, x) == c && g.conj(b, x) == d)
}

/// For each stored pair, the index of the stored pair equal to its swap
/// up to simultaneous conjugacy.
pub fn dual_indices(cat: &Catalog, u: &UnipotentRecord) -> Result<Vec<Option<usize>>> {
    let g = cat.ambient(u);
    let elts: Vec<(usize, usize)> = u
        .pairs
        .iter()
        .map(|p| cat.pair_elements(u, &p.s, &p.h))
        .collect::<Result<_>>()?;
    Ok(elts
        .iter()
        .map(|&(s, h)| {
            elts.iter()
                .position(|&(s2, h2)| simultaneously_conjugate(g, h, s, s2, h2))
        })
        .collect())
}

/// Index of the stored pair matching (s, h) up to simultaneous conjugacy.
pub fn find_pair(cat: &Catalog, u: &UnipotentRecord, s: &str, h: &str) -> Result<Option<usize>> {
    if let Some(i) = u.pairs.iter().position(|p| p.s == s && p.h == h) {
        return Ok(Some(i));
    }
    let g = cat.ambient(u);
    let (a, b) = cat.pair_elements(u, s, h)?;
    for (i, p) in u.pairs.iter().enumerate() {
        let (c, d) = cat.pair_elements(u, &p.s, &p.h)?;
        if simultaneously_conjugate(g, a, b, c, d) {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

fn element_subgroup(g: &FinGroup, gens: &[usize]) -> Vec<usize> {
    let mut seen = BTreeSet::from([g.identity()]);
    let mut todo = vec![g.identity()];
    while let Some(x) = todo.pop() {
        for &y in gens {
            let z = g.mul(x, y);
            if seen.insert(z) {
                todo.push(z);
            }
        }
    }
    seen.into_iter().collect()
}

/// Number of classes of the stored pairs under simultaneous conjugacy
/// and translation by the center words.
pub fn count_modulo_center(cat: &Catalog, u: &UnipotentRecord) -> Result<usize> {
    let g = cat.ambient(u);
    let zs: Vec<usize> = u
        .center
        .iter()
        .map(|w| g.eval_word(w))
        .collect::<Result<_>>()?;
    if let Some(&z) = zs.iter().find(|&&z| (0..g.order()).any(|x| !g.commute(x, z))) {
        return Err(cerr(format!("{}: {} is not central", u.label, g.element(z))));
    }
    let center = element_subgroup(g, &zs);
    let elts: Vec<(usize, usize)> = u
        .pairs
        .iter()
        .map(|p| cat.pair_elements(u, &p.s, &p.h))
        .collect::<Result<_>>()?;
    let n = elts.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = elts[i];
            let (c, d) = elts[j];
            let linked = center.iter().any(|&z1| {
                center
                    .iter()
                    .any(|&z2| simultaneously_conjugate(g, g.mul(z1, a), g.mul(z2, b), c, d))
            });
            if linked {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    Ok((0..n).filter(|&i| find(&mut parent, i) == i).count())
}

fn histogram(g: &FinGroup, elts: &[usize]) -> BTreeMap<String, usize> {
    let mut h = BTreeMap::new();
    for &x in elts {
        *h.entry(g.element_order(x).to_string()).or_insert(0) += 1;
    }
    h
}

// ------------------------------------------------------------------ validation

fn scope(u: &UnipotentRecord) -> String {
    format!("{}/{}", u.group, u.label)
}

/// Structural checks on the tables: pair counts, commutation, duals,
/// model assertions, elliptic h, restriction coverage and the
/// subparahoric symmetry.
pub fn validate_tables(cat: &Catalog) -> Report {
    let mut rep = Report::default();
    for u in &cat.unipotents {
        validate_unipotent(cat, u, &mut rep);
    }
    for (name, fg) in &cat.finite_groups {
        for (k, a) in fg.assertions.iter().enumerate() {
            rep.push(check_assertion(name, k, fg, a));
        }
    }
    validate_subparahoric(cat, &mut rep);
    rep
}

fn check_assertion(name: &str, k: usize, fg: &FiniteGroupDef, a: &RawAssertion) -> Check {
    let g = &fg.group;
    let id = "assertion";
    let sc = format!("{name}#{k}");
    let elts: Result<Vec<usize>> = a.centralizer_of.iter().map(|w| g.eval_word(w)).collect();
    let elts = match elts {
        Ok(e) => e,
        Err(e) => return Check::fail(id, &sc, e.to_string()),
    };
    let z: Vec<usize> = (0..g.order())
        .filter(|&x| elts.iter().all(|&e| g.commute(x, e)))
        .collect();
    let hist = histogram(g, &z);
    if z.len() == a.order && hist == a.element_orders {
        Check::pass(
            id,
            &sc,
            format!("Z({}) has order {} and element orders {:?}", a.centralizer_of.join(","), z.len(), hist),
        )
    } else {
        Check::fail(
            id,
            &sc,
            format!(
                "Z({}): order {} with {:?}, expected {} with {:?}",
                a.centralizer_of.join(","),
                z.len(),
                hist,
                a.order,
                a.element_orders
            ),
        )
    }
}

fn validate_unipotent(cat: &Catalog, u: &UnipotentRecord, rep: &mut Report) {
    let sc = scope(u);
    // family and its group
    if cat.families.contains_key(&u.family) {
        let f = &cat.families[&u.family];
        let gname = cat
            .structures
            .iter()
            .find(|(_, st)| st.gamma().elements() == f.gamma().elements())
            .map(|(k, _)| k.clone())
            .unwrap_or_default();
        if gname != u.family_gamma || f.delta_twisted() != u.delta_twisted {
            rep.push(Check::fail(
                "family_gamma",
                &sc,
                format!(
                    "family {} has group {gname} (twisted {}), record says {} (twisted {})",
                    u.family,
                    f.delta_twisted(),
                    u.family_gamma,
                    u.delta_twisted
                ),
            ));
        } else {
            rep.push(Check::pass("family_gamma", &sc, format!("{} on {gname}", u.family)));
        }
    } else if u.family_gamma != "1" || u.delta_twisted {
        rep.push(Check::fail(
            "family_gamma",
            &sc,
            format!("singleton {} recorded with group {}", u.family, u.family_gamma),
        ));
    } else {
        rep.push(Check::pass("family_gamma", &sc, format!("singleton {}", u.family)));
    }

    let g = cat.ambient(u);
    let elts: Vec<Result<(usize, usize)>> = u
        .pairs
        .iter()
        .map(|p| cat.pair_elements(u, &p.s, &p.h))
        .collect();
    let mut ok_elts = Vec::new();
    for (p, e) in u.pairs.iter().zip(&elts) {
        match e {
            Ok((a, b)) if g.commute(*a, *b) => ok_elts.push((*a, *b)),
            Ok(_) => rep.push(Check::fail(
                "commute",
                &format!("{sc}/({},{})", p.s, p.h),
                "s and h do not commute".into(),
            )),
            Err(e) => rep.push(Check::fail("commute", &format!("{sc}/({},{})", p.s, p.h), e.to_string())),
        }
    }
    if ok_elts.len() != u.pairs.len() {
        return;
    }

    // counts
    let count = match u.count_rule {
        CountRule::Computed => {
            let orbits = commuting_pair_orbits(g);
            let mut hit = vec![0usize; orbits.len()];
            for &(a, b) in &ok_elts {
                if let Some(o) = orbit_of_pair(g, &orbits, a, b) {
                    hit[o] += 1;
                }
            }
            if hit.iter().any(|&k| k != 1) {
                rep.push(Check::fail(
                    "pair_list",
                    &sc,
                    format!("stored pairs do not meet each of the {} orbits once: {hit:?}", orbits.len()),
                ));
            } else {
                rep.push(Check::pass(
                    "pair_list",
                    &sc,
                    format!("stored pairs are one per orbit ({})", orbits.len()),
                ));
            }
            Ok(orbits.len())
        }
        CountRule::Listed => {
            let mut dup = None;
            for i in 0..ok_elts.len() {
                for j in i + 1..ok_elts.len() {
                    let (a, b) = ok_elts[i];
                    let (c, d) = ok_elts[j];
                    if simultaneously_conjugate(g, a, b, c, d) {
                        dup = Some((i, j));
                    }
                }
            }
            match dup {
                Some((i, j)) => {
                    rep.push(Check::fail(
                        "pair_list",
                        &sc,
                        format!(
                            "({},{}) and ({},{}) are conjugate",
                            u.pairs[i].s, u.pairs[i].h, u.pairs[j].s, u.pairs[j].h
                        ),
                    ));
                }
                None => rep.push(Check::pass("pair_list", &sc, "stored pairs are pairwise non-conjugate".into())),
            }
            Ok(u.pairs.len())
        }
        CountRule::ModuloCenter => count_modulo_center(cat, u),
    };
    match count {
        Ok(n) if n == u.pair_count => rep.push(Check::pass(
            "count",
            &sc,
            format!("{n} pairs ({:?}) = table value {}", u.count_rule, u.pair_count),
        )),
        Ok(n) => rep.push(Check::fail(
            "count",
            &sc,
            format!("{n} pairs ({:?}), table value {}", u.count_rule, u.pair_count),
        )),
        Err(e) => rep.push(Check::fail("count", &sc, e.to_string())),
    }

    // duals
    match dual_indices(cat, u) {
        Ok(d) => {
            let bad: Vec<String> = (0..d.len())
                .filter(|&i| d[i].and_then(|j| d[j]) != Some(i))
                .map(|i| format!("({},{})", u.pairs[i].s, u.pairs[i].h))
                .collect();
            if bad.is_empty() {
                let selfdual = (0..d.len()).filter(|&i| d[i] == Some(i)).count();
                rep.push(Check::pass(
                    "duals",
                    &sc,
                    format!("swap is an involution on {} pairs, {selfdual} self-dual", d.len()),
                ));
            } else {
                rep.push(Check::fail(
                    "duals",
                    &sc,
                    format!("swap is not an involution at {}", bad.join(", ")),
                ));
            }
        }
        Err(e) => rep.push(Check::fail("duals", &sc, e.to_string())),
    }

    // h elliptic for the torus action of A_su
    let mut bad = Vec::new();
    for p in &u.pairs {
        let r = cat.torus_action(u, p).and_then(|act| {
            let h = cat.a_su_element(u, p, &act)?;
            let d = elliptic_det(&act, h)?;
            let in_list = elliptic_classes(&act).contains(&act.group().class_of(h));
            Ok(!d.is_zero() && in_list)
        });
        match r {
            Ok(true) => {}
            Ok(false) => bad.push(format!("({},{}) h is not elliptic", p.s, p.h)),
            Err(e) => bad.push(format!("({},{}) {e}", p.s, p.h)),
        }
    }
    if bad.is_empty() {
        rep.push(Check::pass("elliptic", &sc, "every h is elliptic in A_su".into()));
    } else {
        rep.push(Check::fail("elliptic", &sc, bad.join("; ")));
    }

    // restriction coverage
    let mut covered = vec![0usize; u.pairs.len()];
    let mut stray = Vec::new();
    for r in cat.restrictions_for(u) {
        match find_pair(cat, u, &r.s, &r.h) {
            Ok(Some(i)) => covered[i] += 1,
            _ => stray.push(format!("({},{})", r.s, r.h)),
        }
    }
    let missing: Vec<String> = u
        .pairs
        .iter()
        .zip(&covered)
        .filter(|(p, &c)| p.split && c == 0)
        .map(|(p, _)| format!("({},{})", p.s, p.h))
        .collect();
    let doubled = covered.iter().any(|&c| c > 1);
    let unsplit_with_record = u
        .pairs
        .iter()
        .zip(&covered)
        .any(|(p, &c)| !p.split && c > 0);
    if missing.is_empty() && stray.is_empty() && !doubled && !unsplit_with_record {
        let partial = cat
            .restrictions_for(u)
            .filter(|r| cat.is_partial(r))
            .count();
        let detail = format!(
            "{} restriction records cover the split pairs{}",
            covered.iter().sum::<usize>(),
            if partial > 0 {
                format!(", {partial} of them partial")
            } else {
                String::new()
            }
        );
        if partial > 0 {
            rep.push(Check::partial("coverage", &sc, detail));
        } else {
            rep.push(Check::pass("coverage", &sc, detail));
        }
    } else {
        rep.push(Check::fail(
            "coverage",
            &sc,
            format!(
                "missing {:?}, unmatched {:?}, duplicated {doubled}, records on non-split pairs {unsplit_with_record}",
                missing, stray
            ),
        ));
    }
}

fn validate_subparahoric(cat: &Catalog, rep: &mut Report) {
    let mut by_type: BTreeMap<(String, String, String), Vec<&SubparahoricRecord>> = BTreeMap::new();
    for sp in &cat.subparahoric {
        by_type
            .entry((sp.group.clone(), sp.unipotent.clone(), sp.parahoric.clone()))
            .or_default()
            .push(sp);
    }
    for ((g, u, par), recs) in by_type {
        let sc = format!("{g}/{u}/{par}");
        let get = |s: &str, h: &str| recs.iter().find(|r| r.s == s && r.h == h).map(|r| &r.singletons);
        let mut bad = Vec::new();
        if get("1", "g2") != get("g2", "1") || get("1", "g2").is_none() {
            bad.push("(1,g2) and (g2,1) differ".to_string());
        }
        let g3: Vec<_> = [("1", "g3"), ("g3", "1"), ("g3", "g3"), ("g3", "g3^-1")]
            .iter()
            .map(|(s, h)| get(s, h))
            .collect();
        if g3.iter().any(|x| x.is_none() || *x != g3[0]) {
            bad.push("the records involving g3 differ".to_string());
        }
        if bad.is_empty() {
            rep.push(Check::pass("subparahoric", &sc, "symmetric under swapping s and h".into()));
        } else {
            rep.push(Check::fail("subparahoric", &sc, bad.join("; ")));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_catalog() {
        let c = Catalog::from_json("").unwrap();
        assert!(c.unipotents.is_empty());
        let c = Catalog::from_json("{\"schema_version\": 1}").unwrap();
        assert!(c.restrictions.is_empty());
        assert!(Catalog::from_json("{\"schema_version\": 2}").is_err());
        assert!(Catalog::from_json("{\"bogus\": 1}").is_err());
    }

    #[test]
    fn builtin_loads() {
        let c = Catalog::builtin().unwrap();
        let per: Vec<usize> = ["G2", "F4", "E6", "E7", "E8"]
            .iter()
            .map(|g| c.unipotents.iter().filter(|u| &u.group == g).count())
            .collect();
        assert_eq!(per, vec![2, 5, 4, 10, 19]);
        assert!(c.families["512_11"].delta_twisted());
        assert!(!c.families["56_30"].delta_twisted());
    }
}
