//! Character tables by the Dixon–Schneider method: class matrices are
//! simultaneously diagonalized over a prime field F_p with p ≡ 1 mod the
//! group exponent, and the resulting values are lifted to Q(ζ60).

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclo::{CycNum, N};
use crate::error::{Error, Result};
use crate::groups::FinGroup;

const SEED: u64 = 0x5eed_d1c0;
const RANDOM_TRIES: usize = 8;

#[derive(Clone, Debug)]
pub struct CharTable {
    group: FinGroup,
    values: Vec<Vec<CycNum>>,
    labels: BTreeMap<String, usize>,
}

impl CharTable {
    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn num_chars(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Vec<CycNum>] {
        &self.values
    }

    pub fn value(&self, chi: usize, class: usize) -> &CycNum {
        &self.values[chi][class]
    }

    /// χ at an element of the group.
    pub fn value_at(&self, chi: usize, x: usize) -> &CycNum {
        &self.values[chi][self.group.class_of(x)]
    }

    pub fn degree(&self, chi: usize) -> i64 {
        let d = self.values[chi][0]
            .to_rational()
            .expect("degrees are integers");
        i64::try_from(d.to_integer()).expect("small degree")
    }

    pub fn degrees(&self) -> Vec<i64> {
        (0..self.num_chars()).map(|i| self.degree(i)).collect()
    }

    pub fn labels(&self) -> &BTreeMap<String, usize> {
        &self.labels
    }

    pub fn row(&self, name: &str) -> Option<usize> {
        self.labels.get(name).copied()
    }

    /// First label attached to a row, or `chi<k>` if none.
    pub fn char_name(&self, chi: usize) -> String {
        self.labels
            .iter()
            .find(|(_, &r)| r == chi)
            .map(|(k, _)| k.clone())
            .unwrap_or_else(|| format!("chi{chi}"))
    }

    /// Attach names to rows. Each fingerprint lists values at words in
    /// the group's labelled elements (`1` gives the degree) and must
    /// match exactly one row.
    pub fn resolve_char_labels(&mut self, fingerprints: &[(String, Vec<(String, CycNum)>)]) -> Result<()> {
        for (name, fp) in fingerprints {
            let classes: Vec<(usize, &CycNum)> = fp
                .iter()
                .map(|(w, v)| Ok((self.group.class_of(self.group.eval_word(w)?), v)))
                .collect::<Result<_>>()?;
            let hits: Vec<usize> = (0..self.num_chars())
                .filter(|&r| classes.iter().all(|&(c, v)| &self.values[r][c] == v))
                .collect();
            if hits.len() != 1 {
                return Err(Error::CharTable(format!(
                    "fingerprint {name:?} matches rows {hits:?}"
                )));
            }
            self.labels.insert(name.clone(), hits[0]);
        }
        Ok(())
    }

    /// Replace the table, keeping the group. Used to exercise the
    /// orthogonality checker on corrupted data.
    pub fn with_values(&self, values: Vec<Vec<CycNum>>) -> CharTable {
        CharTable {
            group: self.group.clone(),
            values,
            labels: self.labels.clone(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrthogonalityReport {
    /// Row pairs (χ, χ') with wrong inner product.
    pub rows: Vec<(usize, usize)>,
    /// Class pairs (c, c') with wrong column product.
    pub columns: Vec<(usize, usize)>,
}

impl OrthogonalityReport {
    pub fn passed(&self) -> bool {
        self.rows.is_empty() && self.columns.is_empty()
    }
}

pub fn verify_orthogonality(t: &CharTable) -> OrthogonalityReport {
    let g = &t.group;
    let r = t.values.len();
    let k = g.num_classes();
    let mut rep = OrthogonalityReport::default();
    let order = CycNum::from_int(g.order() as i64);
    for a in 0..r {
        for b in a..r {
            let s: CycNum = (0..k)
                .map(|c| {
                    (&t.values[a][c] * &t.values[b][c].conj()).scale_int(g.class_size(c) as i64)
                })
                .sum();
            let want = if a == b { order.clone() } else { CycNum::zero() };
            if s != want {
                rep.rows.push((a, b));
            }
        }
    }
    for c in 0..k {
        for d in c..k {
            let s: CycNum = (0..r)
                .map(|x| &t.values[x][c] * &t.values[x][d].conj())
                .sum();
            let want = if c == d {
                CycNum::from_int(g.centralizer_order(c) as i64)
            } else {
                CycNum::zero()
            };
            if s != want {
                rep.columns.push((c, d));
            }
        }
    }
    rep
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Smallest prime p ≡ 1 mod e with p > 2|G|.
pub fn dixon_prime(exponent: u64, order: u64) -> u64 {
    let mut p = exponent + 1;
    while p <= 2 * order || !is_prime(p) {
        p += exponent;
    }
    p
}

/// An element of exact multiplicative order e mod p.
fn primitive_root_of_order(e: u64, p: u64) -> u64 {
    let factors: Vec<u64> = (2..=e).filter(|&q| e.is_multiple_of(q) && is_prime(q)).collect();
    (2..p)
        .map(|a| pow_mod(a, (p - 1) / e, p))
        .find(|&z| factors.iter().all(|&q| pow_mod(z, e / q, p) != 1))
        .expect("p ≡ 1 mod e")
}

/// Row-reduced basis of the kernel of a d×d matrix over F_p.
fn kernel(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let d = a.len();
    let mut m: Vec<Vec<u64>> = a.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..d {
        let Some(piv) = (row..d).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(row, piv);
        let inv = inv_mod(m[row][col], p);
        for v in m[row].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..d {
            if i != row && m[i][col] != 0 {
                let f = m[i][col];
                for j in 0..d {
                    m[i][j] = (m[i][j] + p - f * m[row][j] % p) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; d];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[i][f]) % p;
            }
            v
        })
        .collect()
}

/// Echelonize a list of row vectors; returns (basis, pivot columns).
fn echelon(mut rows: Vec<Vec<u64>>, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let n = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][col], p);
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let f = rows[i][col];
                for j in 0..n {
                    rows[i][j] = (rows[i][j] + p - f * rows[r][j] % p) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

struct Splitter {
    p: u64,
    /// mats[j][l][k] = a_{j l k}
    mats: Vec<Vec<Vec<u64>>>,
}

impl Splitter {
    fn apply(&self, m: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
        m.iter()
            .map(|row| row.iter().zip(v).fold(0, |a, (x, y)| (a + x * y) % self.p))
            .collect()
    }

    /// Split an invariant subspace by the eigenspaces of m. Returns None
    /// if m acts as a scalar on it.
    fn split(&self, basis: &[Vec<u64>], pivots: &[usize], m: &[Vec<u64>]) -> Option<Vec<Vec<Vec<u64>>>> {
        let p = self.p;
        let d = basis.len();
        // restricted matrix: column i = coordinates of m·basis[i]
        let images: Vec<Vec<u64>> = basis.iter().map(|b| self.apply(m, b)).collect();
        let a: Vec<Vec<u64>> = (0..d)
            .map(|r| (0..d).map(|c| images[c][pivots[r]]).collect())
            .collect();
        let mut spaces = Vec::new();
        let mut found = 0;
        for lambda in 0..p {
            let shifted: Vec<Vec<u64>> = (0..d)
                .map(|r| {
                    (0..d)
                        .map(|c| {
                            if r == c {
                                (a[r][c] + p - lambda) % p
                            } else {
                                a[r][c]
                            }
                        })
                        .collect()
                })
                .collect();
            let ker = kernel(&shifted, p);
            if ker.is_empty() {
                continue;
            }
            if ker.len() == d {
                return None;
            }
            found += ker.len();
            let vecs: Vec<Vec<u64>> = ker
                .iter()
                .map(|coords| {
                    let mut v = vec![0u64; basis[0].len()];
                    for (cf, b) in coords.iter().zip(basis) {
                        for (vi, bi) in v.iter_mut().zip(b) {
                            *vi = (*vi + cf * bi) % p;
                        }
                    }
                    v
                })
                .collect();
            spaces.push(vecs);
            if found == d {
                break;
            }
        }
        // not diagonalizable over F_p would leave a gap; cannot happen for
        // class matrices when p ∤ |G|, but be defensive
        (found == d).then_some(spaces)
    }
}

pub fn character_table(g: &FinGroup) -> Result<CharTable> {
    let e = g.exponent() as u64;
    if !N.is_multiple_of(e) {
        return Err(Error::CharTable(format!(
            "exponent {e} does not divide {N}; values may leave Q(ζ60)"
        )));
    }
    let order = g.order() as u64;
    let r = g.num_classes();
    let p = dixon_prime(e, order);

    // structure constants
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (j, cls) in g.classes().iter().enumerate() {
        for &x in cls {
            let xi = g.inv(x);
            for k in 0..r {
                let y = g.mul(xi, g.class_rep(k));
                a[j][g.class_of(y)][k] += 1;
            }
        }
    }
    let splitter = Splitter { p, mats: a };

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let full: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut todo = vec![full];
    let mut done: Vec<Vec<u64>> = Vec::new();
    while let Some(space) = todo.pop() {
        if space.len() == 1 {
            done.push(space.into_iter().next().unwrap());
            continue;
        }
        let (basis, pivots) = echelon(space, p);
        let mut parts = None;
        for attempt in 0..RANDOM_TRIES + r {
            let m: Vec<Vec<u64>> = if attempt < RANDOM_TRIES {
                let coeffs: Vec<u64> = (0..r).map(|_| rng.gen_range(0..p)).collect();
                (0..r)
                    .map(|l| {
                        (0..r)
                            .map(|k| {
                                (0..r).fold(0, |s, j| (s + coeffs[j] * splitter.mats[j][l][k]) % p)
                            })
                            .collect()
                    })
                    .collect()
            } else {
                splitter.mats[attempt - RANDOM_TRIES].clone()
            };
            if let Some(s) = splitter.split(&basis, &pivots, &m) {
                parts = Some(s);
                break;
            }
        }
        match parts {
            Some(s) => todo.extend(s),
            None => {
                return Err(Error::CharTable(format!(
                    "could not split a {}-dimensional eigenspace",
                    basis.len()
                )))
            }
        }
    }
    if done.len() != r {
        return Err(Error::CharTable(format!(
            "found {} characters, expected {r}",
            done.len()
        )));
    }

    let inv_class: Vec<usize> = (0..r).map(|c| g.class_of(g.inv(g.class_rep(c)))).collect();
    let z = primitive_root_of_order(e, p);
    let mut rows = Vec::with_capacity(r);
    for w in done {
        let w0 = inv_mod(w[0], p);
        let omega: Vec<u64> = w.iter().map(|x| x * w0 % p).collect();
        // d^2 = |G| / Σ_j ω_j ω_j' / h_j
        let s = (0..r).fold(0, |acc, j| {
            let h = inv_mod(g.class_size(j) as u64 % p, p);
            (acc + omega[j] * omega[inv_class[j]] % p * h) % p
        });
        let d2 = order % p * inv_mod(s, p) % p;
        let d = (1..=order)
            .find(|d| d * d % p == d2 && order.is_multiple_of(*d) && d * d <= order)
            .ok_or_else(|| Error::CharTable("no valid degree".into()))?;
        let chi_p: Vec<u64> = (0..r)
            .map(|j| omega[j] * d % p * inv_mod(g.class_size(j) as u64 % p, p) % p)
            .collect();
        let mut row = Vec::with_capacity(r);
        for c in 0..r {
            let o = g.element_order(g.class_rep(c)) as u64;
            let zo = pow_mod(z, e / o, p);
            let inv_o = inv_mod(o % p, p);
            let mut val = CycNum::zero();
            for k in 0..o {
                let mut m = 0u64;
                for l in 0..o {
                    let cl = g.power_map(l as i64, c);
                    let root = pow_mod(zo, (p - 1 - (k * l) % (p - 1)) % (p - 1), p);
                    m = (m + chi_p[cl] * root) % p;
                }
                let m = m * inv_o % p;
                if m > d {
                    return Err(Error::CharTable(format!(
                        "eigenvalue multiplicity {m} exceeds degree {d}"
                    )));
                }
                if m > 0 {
                    val += &CycNum::root_of_unity(o, k as i64)?.scale_int(m as i64);
                }
            }
            row.push(val);
        }
        rows.push(row);
    }
    // degree first, the trivial character leading, then descending values
    let trivial = |row: &Vec<CycNum>| !row.iter().all(|v| v.is_one());
    rows.sort_by(|x, y| {
        let dx = x[0].to_rational();
        let dy = y[0].to_rational();
        dx.cmp(&dy)
            .then_with(|| trivial(x).cmp(&trivial(y)))
            .then_with(|| y.cmp(x))
    });
    Ok(CharTable {
        group: g.clone(),
        values: rows,
        labels: BTreeMap::from([("1".to_string(), 0)]),
    })
}
