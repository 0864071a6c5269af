//! Elliptic elements and the elliptic pairing for a finite group acting on
//! the Lie algebra of a torus, plus the virtual combinations π(u, s, h).

use crate::chartab::CharTable;
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::groups::FinGroup;

pub type Matrix = Vec<Vec<CycNum>>;

/// A linear action of a finite group on a `dim`-dimensional space, given
/// on the generators and extended to every element.
#[derive(Clone, Debug)]
pub struct TorusAction {
    group: FinGroup,
    dim: usize,
    mats: Vec<Matrix>,
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| CycNum::from_int(i64::from(i == j))).collect())
        .collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Determinant by Gaussian elimination over Q(ζ60).
pub fn det(m: &Matrix) -> CycNum {
    let n = m.len();
    let mut a = m.clone();
    let mut d = CycNum::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return CycNum::zero();
        };
        if piv != col {
            a.swap(piv, col);
            d = -&d;
        }
        let p = a[col][col].clone();
        d = &d * &p;
        let pinv = p.inv().expect("nonzero pivot");
        for i in col + 1..n {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] * &pinv;
            for j in col..n {
                let t = &a[col][j] * &f;
                a[i][j] -= &t;
            }
        }
    }
    d
}

/// Rank over Q(ζ60).
pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(piv, r);
        let pinv = a[r][col].inv().expect("nonzero pivot");
        for i in 0..rows {
            if i != r && !a[i][col].is_zero() {
                let f = &a[i][col] * &pinv;
                for j in col..cols {
                    let t = &a[r][j] * &f;
                    a[i][j] -= &t;
                }
            }
        }
        r += 1;
    }
    r
}

impl TorusAction {
    /// `gens` holds one matrix per generator of `group`, in order. The
    /// relations are checked by walking the Cayley graph: every element
    /// must receive a single well-defined matrix.
    pub fn new(group: &FinGroup, dim: usize, gens: Vec<Matrix>) -> Result<Self> {
        let g = group;
        if dim > 0 && gens.len() != g.generators().len() {
            return Err(Error::Torus(format!(
                "{} matrices for {} generators",
                gens.len(),
                g.generators().len()
            )));
        }
        if gens
            .iter()
            .any(|m| m.len() != dim || m.iter().any(|r| r.len() != dim))
        {
            return Err(Error::Torus(format!("matrices must be {dim}x{dim}")));
        }
        let mut mats: Vec<Option<Matrix>> = vec![None; g.order()];
        mats[g.identity()] = Some(identity(dim));
        let mut queue = vec![g.identity()];
        while let Some(x) = queue.pop() {
            let mx = mats[x].clone().expect("visited");
            for (k, &gen) in g.generators().iter().enumerate() {
                let y = g.mul(x, gen);
                let my = if dim == 0 {
                    Vec::new()
                } else {
                    mat_mul(&mx, &gens[k])
                };
                match &mats[y] {
                    Some(old) if *old != my => {
                        return Err(Error::Torus(format!(
                            "generator matrices violate a relation at {}",
                            g.element(y)
                        )))
                    }
                    Some(_) => {}
                    None => {
                        mats[y] = Some(my);
                        queue.push(y);
                    }
                }
            }
        }
        Ok(TorusAction {
            group: g.clone(),
            dim,
            mats: mats.into_iter().map(|m| m.expect("generated")).collect(),
        })
    }

    /// The action on a zero-dimensional space.
    pub fn trivial(group: &FinGroup) -> Self {
        TorusAction {
            group: group.clone(),
            dim: 0,
            mats: vec![Vec::new(); group.order()],
        }
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, h: usize) -> &Matrix {
        &self.mats[h]
    }
}

/// det(1 − h) on the torus Lie algebra; 1 when the torus is trivial.
pub fn elliptic_det(act: &TorusAction, h: usize) -> Result<CycNum> {
    if h >= act.group.order() {
        return Err(Error::Torus(format!("element {h} is outside the group")));
    }
    let m = &act.mats[h];
    let n = act.dim;
    let one_minus: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| &CycNum::from_int(i64::from(i == j)) - &m[i][j])
                .collect()
        })
        .collect();
    Ok(det(&one_minus))
}

/// Classes (by index) whose elements act without fixed vectors.
pub fn elliptic_classes(act: &TorusAction) -> Vec<usize> {
    let g = &act.group;
    (0..g.num_classes())
        .filter(|&c| !elliptic_det(act, g.class_rep(c)).expect("in group").is_zero())
        .collect()
}

/// (χ, χ′)_el = 1/|A| Σ_h conj(χ(h)) χ′(h) det(1 − h).
pub fn elliptic_pairing(act: &TorusAction, t: &CharTable, chi: usize, chi2: usize) -> CycNum {
    let g = &act.group;
    let total: CycNum = (0..g.num_classes())
        .map(|c| {
            let d = elliptic_det(act, g.class_rep(c)).expect("in group");
            (&(&t.value(chi, c).conj() * t.value(chi2, c)) * &d).scale_int(g.class_size(c) as i64)
        })
        .sum();
    total.scale(&num_rational::BigRational::new(1.into(), (g.order() as i64).into()))
}

pub fn elliptic_gram(act: &TorusAction, t: &CharTable) -> Matrix {
    let n = t.num_chars();
    (0..n)
        .map(|a| (0..n).map(|b| elliptic_pairing(act, t, a, b)).collect())
        .collect()
}

pub fn elliptic_rank(act: &TorusAction) -> usize {
    elliptic_classes(act).len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualCombination {
    pub u: String,
    pub s: String,
    pub h: String,
    /// (character name, conj(φ(h))) in table order.
    pub coeffs: Vec<(String, CycNum)>,
    /// Opaque symbols π(u, s, φ).
    pub formal_terms: Vec<String>,
}

impl VirtualCombination {
    pub fn coeff(&self, name: &str) -> Option<&CycNum> {
        self.coeffs.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }
}

/// π(u, s, h) = Σ_φ conj(φ(h)) π(u, s, φ), with h a word in the labels of
/// the table's group.
pub fn virtual_combination(t: &CharTable, u: &str, s: &str, h: &str) -> Result<VirtualCombination> {
    let he = t.group().eval_word(h)?;
    let coeffs: Vec<(String, CycNum)> = (0..t.num_chars())
        .map(|r| (t.char_name(r), t.value_at(r, he).conj()))
        .collect();
    let formal_terms = coeffs
        .iter()
        .map(|(n, _)| format!("π({u},{s},{n})"))
        .collect();
    Ok(VirtualCombination {
        u: u.to_string(),
        s: s.to_string(),
        h: h.to_string(),
        coeffs,
        formal_terms,
    })
}

impl std::fmt::Display for VirtualCombination {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "π({},{},{}) =", self.u, self.s, self.h)?;
        let mut first = true;
        for ((_, c), term) in self.coeffs.iter().zip(&self.formal_terms) {
            if c.is_zero() {
                continue;
            }
            let sep = if first { " " } else { " + " };
            first = false;
            if c.is_one() {
                write!(f, "{sep}{term}")?;
            } else {
                write!(f, "{sep}({c})·{term}")?;
            }
        }
        if first {
            write!(f, " 0")?;
        }
        Ok(())
    }
}
