//! Finite permutation groups, conjugacy classes, centralizers and
//! orbits of commuting pairs under simultaneous conjugation.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 10_000;

/// A permutation of {0..n-1}. Products apply the left factor first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u16>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u16).collect())
    }

    /// From a 1-based image array, as used in catalog files.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut v = Vec::with_capacity(n);
        for &i in images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::BadPerm(format!("{images:?} is not a permutation")));
            }
            seen[i - 1] = true;
            v.push((i - 1) as u16);
        }
        Ok(Perm(v))
    }

    /// From cycle notation on 1-based points, e.g. `(1 2)(3 4 5)`.
    pub fn from_cycles(n: usize, cycles: &str) -> Result<Self> {
        let mut img: Vec<u16> = (0..n as u16).collect();
        let bad = || Error::BadPerm(format!("bad cycle string {cycles:?}"));
        let mut seen = vec![false; n];
        for part in cycles.split('(').skip(1) {
            let body = part.split(')').next().ok_or_else(bad)?;
            let pts: Vec<usize> = body
                .split([' ', ','])
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            for (k, &p) in pts.iter().enumerate() {
                if p == 0 || p > n || seen[p - 1] {
                    return Err(bad());
                }
                seen[p - 1] = true;
                img[p - 1] = (pts[(k + 1) % pts.len()] - 1) as u16;
            }
        }
        Ok(Perm(img))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// 1-based image array.
    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0u16; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            v[j as usize] = i as u16;
        }
        Perm(v)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| acc.lcm(&c.len()))
    }

    fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut j = self.0[s] as usize;
            while j != s {
                seen[j] = true;
                c.push(j);
                j = self.0[j] as usize;
            }
            out.push(c);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite group given by permutations, with its elements sorted
/// lexicographically by image array. Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct FinGroup {
    n: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    table: Option<Vec<u32>>,
    inverse: Vec<usize>,
    gens: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    labels: BTreeMap<String, usize>,
    /// For groups built as subgroups: element index in the parent.
    parent_index: Option<Vec<usize>>,
}

const TABLE_LIMIT: usize = 1500;

impl FinGroup {
    pub fn from_generators(n: usize, gens: &[Perm]) -> Result<Self> {
        Self::from_generators_capped(n, gens, DEFAULT_CAP)
    }

    pub fn from_generators_capped(n: usize, gens: &[Perm], cap: usize) -> Result<Self> {
        for g in gens {
            if g.degree() != n {
                return Err(Error::BadPerm(format!("{g} does not act on {n} points")));
            }
        }
        let id = Perm::identity(n);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = x.compose(g);
                if !seen.contains_key(&y) {
                    if seen.len() >= cap {
                        return Err(Error::GroupTooLarge(cap));
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }
        let mut group = Self::from_elements(n, seen.into_keys().collect());
        group.gens = gens.iter().map(|g| group.index[g]).collect();
        Ok(group)
    }

    /// Build from a complete, closed list of elements.
    fn from_elements(n: usize, mut elements: Vec<Perm>) -> Self {
        elements.sort();
        elements.dedup();
        let index: HashMap<Perm, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let inverse = elements.iter().map(|p| index[&p.inverse()]).collect();
        let size = elements.len();
        let table = (size <= TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; size * size];
            for (i, a) in elements.iter().enumerate() {
                for (j, b) in elements.iter().enumerate() {
                    t[i * size + j] = index[&a.compose(b)] as u32;
                }
            }
            t
        });
        let mut g = FinGroup {
            n,
            elements,
            index,
            table,
            inverse,
            gens: Vec::new(),
            classes: Vec::new(),
            class_of: Vec::new(),
            labels: BTreeMap::new(),
            parent_index: None,
        };
        g.compute_classes();
        g.gens = g.small_generating_set();
        g
    }

    fn compute_classes(&mut self) {
        let size = self.order();
        let mut class_of = vec![usize::MAX; size];
        let mut classes = Vec::new();
        for x in 0..size {
            if class_of[x] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut members = Vec::new();
            for gi in 0..size {
                let z = self.conj(x, gi);
                if class_of[z] == usize::MAX {
                    class_of[z] = c;
                    members.push(z);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    fn small_generating_set(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut members = vec![0usize];
        for x in 0..self.order() {
            if inside[x] {
                continue;
            }
            gens.push(x);
            // re-close
            let mut k = 0;
            members.push(x);
            inside[x] = true;
            while k < members.len() {
                let a = members[k];
                for &g in &gens {
                    let b = self.mul(a, g);
                    if !inside[b] {
                        inside[b] = true;
                        members.push(b);
                    }
                }
                k += 1;
            }
        }
        gens
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&self.elements[a].compose(&self.elements[b])],
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// g^-1 x g
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inverse[g], x), g)
    }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inverse[x] } else { x };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.elements[x].order()
    }

    pub fn exponent(&self) -> usize {
        self.classes
            .iter()
            .fold(1, |acc, c| acc.lcm(&self.element_order(c[0])))
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Classes in canonical order: by their lexicographically least
    /// element, which is also the representative.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_rep(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn centralizer_order(&self, c: usize) -> usize {
        self.order() / self.class_size(c)
    }

    /// Class of the k-th power of the elements of class c.
    pub fn power_map(&self, k: i64, c: usize) -> usize {
        self.class_of(self.pow(self.class_rep(c), k))
    }

    /// Some g with g^-1 a g = b.
    pub fn conjugator(&self, a: usize, b: usize) -> Option<usize> {
        (0..self.order()).find(|&g| self.conj(a, g) == b)
    }

    fn sub_from_indices(&self, mut idx: Vec<usize>) -> FinGroup {
        idx.sort_unstable();
        let perms = idx.iter().map(|&i| self.elements[i].clone()).collect();
        let mut h = FinGroup::from_elements(self.n, perms);
        // sorted order is preserved, so positions match idx
        h.parent_index = Some(idx);
        h
    }

    pub fn centralizer(&self, g: usize) -> FinGroup {
        let idx = (0..self.order()).filter(|&x| self.commute(x, g)).collect();
        self.sub_from_indices(idx)
    }

    /// Centralizer of an arbitrary permutation, which must lie in the group.
    pub fn centralizer_of(&self, p: &Perm) -> Result<FinGroup> {
        let g = self
            .index_of(p)
            .ok_or_else(|| Error::BadPerm(format!("{p} is not in the group")))?;
        Ok(self.centralizer(g))
    }

    pub fn subgroup(&self, gens: &[Perm]) -> Result<FinGroup> {
        for g in gens {
            if self.index_of(g).is_none() {
                return Err(Error::BadPerm(format!("{g} is not in the group")));
            }
        }
        let mut h = FinGroup::from_generators(self.n, gens)?;
        h.parent_index = Some(h.elements.iter().map(|p| self.index[p]).collect());
        Ok(h)
    }

    /// Element index in the parent group, for subgroups.
    pub fn parent_index(&self, x: usize) -> Option<usize> {
        self.parent_index.as_ref().map(|v| v[x])
    }

    pub fn direct_product(a: &FinGroup, b: &FinGroup) -> Result<FinGroup> {
        let n = a.n + b.n;
        let shift = |p: &Perm, off: usize| -> Perm {
            let mut v: Vec<u16> = (0..n as u16).collect();
            for i in 0..p.degree() {
                v[i + off] = (p.image(i) + off) as u16;
            }
            Perm(v)
        };
        let mut gens: Vec<Perm> = a
            .gens
            .iter()
            .map(|&g| shift(&a.elements[g], 0))
            .collect();
        gens.extend(b.gens.iter().map(|&g| shift(&b.elements[g], a.n)));
        FinGroup::from_generators(n, &gens)
    }

    pub fn set_label(&mut self, name: &str, p: &Perm) -> Result<()> {
        let x = self
            .index_of(p)
            .ok_or_else(|| Error::BadPerm(format!("label {name}: {p} is not in the group")))?;
        self.labels.insert(name.to_string(), x);
        Ok(())
    }

    pub fn labels(&self) -> &BTreeMap<String, usize> {
        &self.labels
    }

    pub fn labelled(&self, name: &str) -> Option<usize> {
        if name == "1" {
            return Some(0);
        }
        self.labels.get(name).copied()
    }

    /// Evaluate a word such as `g2*g3^2` or `g3^-1` in the labelled
    /// elements. `1` is the identity.
    pub fn eval_word(&self, word: &str) -> Result<usize> {
        let bad = |m: &str| Error::BadPerm(format!("word {word:?}: {m}"));
        let mut acc = 0;
        for factor in word.split('*') {
            let factor = factor.trim();
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (
                    b.trim(),
                    e.trim().parse::<i64>().map_err(|_| bad("bad exponent"))?,
                ),
                None => (factor, 1),
            };
            let x = self
                .labelled(base)
                .ok_or_else(|| bad(&format!("unknown label {base:?}")))?;
            acc = self.mul(acc, self.pow(x, exp));
        }
        Ok(acc)
    }

    /// The name of a class: a label whose element lies in it, else the
    /// cycle form of its representative.
    pub fn class_name(&self, c: usize) -> String {
        if c == self.class_of(0) {
            return "1".to_string();
        }
        self.labels
            .iter()
            .find(|(_, &x)| self.class_of(x) == c)
            .map(|(k, _)| k.clone())
            .unwrap_or_else(|| self.elements[self.class_rep(c)].to_string())
    }
}

/// One orbit of commuting pairs under simultaneous conjugation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommPairOrbit {
    /// Lexicographically least pair in the orbit.
    pub rep: (usize, usize),
    pub orbit_size: usize,
    /// Class of x in G and class of y in Z_G(x).
    pub x_class: usize,
    pub y_class: usize,
    /// Index of the orbit of (y, x).
    pub dual: usize,
}

/// All orbits, grouped by the class of x in canonical order and, within
/// it, by the class of y in the canonical order of Z_G(x).
pub fn commuting_pair_orbits(g: &FinGroup) -> Vec<CommPairOrbit> {
    let mut out = Vec::new();
    let mut lookup: HashMap<(usize, usize), usize> = HashMap::new();
    let cents: Vec<FinGroup> = (0..g.num_classes())
        .map(|c| g.centralizer(g.class_rep(c)))
        .collect();
    for (c, z) in cents.iter().enumerate() {
        let x = g.class_rep(c);
        for d in 0..z.num_classes() {
            let y = z.parent_index(z.class_rep(d)).unwrap();
            lookup.insert((x, y), out.len());
            out.push(CommPairOrbit {
                rep: (x, y),
                orbit_size: g.class_size(c) * z.class_size(d),
                x_class: c,
                y_class: d,
                dual: usize::MAX,
            });
        }
    }
    for i in 0..out.len() {
        let (x, y) = out[i].rep;
        let key = canonical_pair(g, &cents, y, x);
        out[i].dual = lookup[&key];
    }
    out
}

/// Canonical representative of the orbit of (a, b).
fn canonical_pair(g: &FinGroup, cents: &[FinGroup], a: usize, b: usize) -> (usize, usize) {
    let c = g.class_of(a);
    let a0 = g.class_rep(c);
    let t = g.conjugator(a, a0).expect("same class");
    let b1 = g.conj(b, t);
    let z = &cents[c];
    let b1z = z.index_of(g.element(b1)).expect("commutes");
    let b0 = z.parent_index(z.class_rep(z.class_of(b1z))).unwrap();
    (a0, b0)
}

/// Locate the orbit of an arbitrary commuting pair.
pub fn orbit_of_pair(g: &FinGroup, orbits: &[CommPairOrbit], a: usize, b: usize) -> Option<usize> {
    if !g.commute(a, b) {
        return None;
    }
    let c = g.class_of(a);
    let z = g.centralizer(g.class_rep(c));
    let a0 = g.class_rep(c);
    let t = g.conjugator(a, a0)?;
    let b1 = g.conj(b, t);
    let b1z = z.index_of(g.element(b1))?;
    let b0 = z.parent_index(z.class_rep(z.class_of(b1z)))?;
    orbits.iter().position(|o| o.rep == (a0, b0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> FinGroup {
        let mut cyc = String::from("(");
        for i in 1..=n {
            cyc.push_str(&format!("{i} "));
        }
        cyc.push(')');
        FinGroup::from_generators(
            n,
            &[
                Perm::from_cycles(n, "(1 2)").unwrap(),
                Perm::from_cycles(n, &cyc).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn symmetric_groups() {
        let s4 = sym(4);
        assert_eq!(s4.order(), 24);
        assert_eq!(s4.num_classes(), 5);
        assert_eq!(sym(3).num_classes(), 3);
        assert_eq!(sym(5).num_classes(), 7);
        assert_eq!(s4.exponent(), 12);
        for c in 0..s4.num_classes() {
            assert_eq!(s4.class_size(c) * s4.centralizer_order(c), 24);
        }
    }

    #[test]
    fn trivial_group() {
        let g = FinGroup::from_generators(1, &[]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.num_classes(), 1);
        assert_eq!(commuting_pair_orbits(&g).len(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let gens = [
            Perm::from_cycles(5, "(1 2)").unwrap(),
            Perm::from_cycles(5, "(1 2 3 4 5)").unwrap(),
        ];
        assert!(matches!(
            FinGroup::from_generators_capped(5, &gens, 100),
            Err(Error::GroupTooLarge(100))
        ));
    }

    #[test]
    fn centralizers_in_s5() {
        let s5 = sym(5);
        let z = s5
            .centralizer_of(&Perm::from_cycles(5, "(1 2)(3 4)").unwrap())
            .unwrap();
        assert_eq!(z.order(), 8);
        assert_eq!(z.num_classes(), 5);
        assert_eq!(z.exponent(), 4);
        let z = s5
            .centralizer_of(&Perm::from_cycles(5, "(1 2)").unwrap())
            .unwrap();
        assert_eq!(z.order(), 12);
        assert_eq!(z.num_classes(), 6);
        assert_eq!(s5.centralizer(0).order(), 120);
    }

    #[test]
    fn pair_counts() {
        for (n, want) in [(2, 4), (3, 8), (4, 21), (5, 39)] {
            let g = sym(n);
            let orbits = commuting_pair_orbits(&g);
            assert_eq!(orbits.len(), want, "S{n}");
            let total: usize = orbits.iter().map(|o| o.orbit_size).sum();
            let brute = (0..g.order())
                .flat_map(|a| (0..g.order()).map(move |b| (a, b)))
                .filter(|&(a, b)| g.commute(a, b))
                .count();
            assert_eq!(total, brute);
            for (i, o) in orbits.iter().enumerate() {
                assert_eq!(orbits[o.dual].dual, i);
            }
        }
    }

    #[test]
    fn products_and_subgroups() {
        let c2 = FinGroup::from_generators(2, &[Perm::from_cycles(2, "(1 2)").unwrap()]).unwrap();
        let c4 =
            FinGroup::from_generators(4, &[Perm::from_cycles(4, "(1 2 3 4)").unwrap()]).unwrap();
        let p = FinGroup::direct_product(&c2, &c4).unwrap();
        assert_eq!(p.order(), 8);
        assert_eq!(p.num_classes(), 8);
        let c3 = FinGroup::from_generators(3, &[Perm::from_cycles(3, "(1 2 3)").unwrap()]).unwrap();
        assert_eq!(FinGroup::direct_product(&c3, &c3).unwrap().num_classes(), 9);
        let s4 = sym(4);
        let v = s4
            .subgroup(&[
                Perm::from_cycles(4, "(1 2)(3 4)").unwrap(),
                Perm::from_cycles(4, "(1 3)(2 4)").unwrap(),
            ])
            .unwrap();
        assert_eq!(v.order(), 4);
        assert!(v.is_abelian());
        assert!(s4
            .subgroup(&[Perm::from_cycles(4, "(1 2 3 4)").unwrap(), Perm::identity(4)])
            .is_ok());
        let a4 = FinGroup::from_generators(
            4,
            &[
                Perm::from_cycles(4, "(1 2 3)").unwrap(),
                Perm::from_cycles(4, "(2 3 4)").unwrap(),
            ],
        )
        .unwrap();
        assert!(a4
            .subgroup(&[Perm::from_cycles(4, "(1 2)").unwrap()])
            .is_err());
    }

    #[test]
    fn words_and_labels() {
        let mut s5 = sym(5);
        s5.set_label("g2", &Perm::from_cycles(5, "(1 2)").unwrap())
            .unwrap();
        s5.set_label("g3", &Perm::from_cycles(5, "(1 2 3)").unwrap())
            .unwrap();
        let w = s5.eval_word("g3^-1").unwrap();
        assert_eq!(s5.element(w), &Perm::from_cycles(5, "(1 3 2)").unwrap());
        assert_eq!(s5.eval_word("g3^3").unwrap(), 0);
        assert!(s5.eval_word("g7").is_err());
        assert!(s5
            .set_label("x", &Perm::from_cycles(4, "(1 2)").unwrap())
            .is_err());
    }

    #[test]
    fn power_maps_respect_classes() {
        let s5 = sym(5);
        for k in 1..=6 {
            for (c, cls) in s5.classes().iter().enumerate() {
                let target = s5.power_map(k, c);
                assert!(cls
                    .iter()
                    .all(|&x| s5.class_of(s5.pow(x, k)) == target));
            }
        }
        for c in 0..s5.num_classes() {
            assert_eq!(s5.power_map(1, c), c);
        }
    }

    #[test]
    fn cycles_round_trip() {
        let p = Perm::from_cycles(6, "(1 2)(3 4 5)").unwrap();
        assert_eq!(p.to_string(), "(1 2)(3 4 5)");
        assert_eq!(p.order(), 6);
        assert_eq!(Perm::from_images(&p.images()).unwrap(), p);
        assert!(Perm::from_images(&[1, 1]).is_err());
        assert!(Perm::from_cycles(3, "(1 4)").is_err());
    }
}
