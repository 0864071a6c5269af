//! Families indexed by pairs (x, ρ) and their nonabelian Fourier matrices.
//!
//! The Fourier matrix is fixed by its action on the basis
//! σ(x, y) = Σ_ρ conj(ρ(y)) (x, ρ): it sends σ(x, y) to Δ(x, y)·σ(y, x).

use std::fmt;

use crate::chartab::{character_table, CharTable};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::groups::{FinGroup, Perm};

/// Labels and character fingerprints for the centralizer of one class
/// representative of Γ.
#[derive(Clone, Debug, Default)]
pub struct CentralizerData {
    /// Label of x in Γ.
    pub x: String,
    /// Extra element labels inside Z(x).
    pub y_labels: Vec<(String, Perm)>,
    /// Character name → values at words in the labels.
    pub fingerprints: Vec<(String, Vec<(String, CycNum)>)>,
}

/// One coordinate block of a family: a class of Γ with its chosen
/// representative and the character table of its centralizer.
#[derive(Clone, Debug)]
pub struct Block {
    pub x_label: String,
    pub x: usize,
    pub table: CharTable,
    pub offset: usize,
}

#[derive(Clone, Debug)]
pub struct Family {
    name: String,
    gamma: FinGroup,
    delta_twisted: bool,
    b_f: Option<u32>,
    blocks: Vec<Block>,
    dim: usize,
    ft: Vec<Vec<CycNum>>,
}

/// A term of a combination, either in the (x, ρ) basis or a σ(x, y).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    XRho(String, String),
    XY(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyVector {
    pub family: String,
    pub coords: Vec<CycNum>,
}

impl FamilyVector {
    pub fn zero(f: &Family) -> Self {
        FamilyVector {
            family: f.name.clone(),
            coords: vec![CycNum::zero(); f.dim],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add_scaled(&mut self, other: &FamilyVector, c: &CycNum) {
        assert_eq!(self.family, other.family, "family mismatch");
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                *a += &(b * c);
            }
        }
    }

    pub fn scaled(&self, c: &CycNum) -> FamilyVector {
        FamilyVector {
            family: self.family.clone(),
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn sub(&self, other: &FamilyVector) -> FamilyVector {
        let mut out = self.clone();
        out.add_scaled(other, &CycNum::from_int(-1));
        out
    }
}

fn invert(m: &[Vec<CycNum>]) -> Option<Vec<Vec<CycNum>>> {
    let n = m.len();
    let mut a: Vec<Vec<CycNum>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| CycNum::from_int(i64::from(i == j))));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].inv().ok()?;
        a[col] = a[col].iter().map(|x| x * &inv).collect();
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &(p * &f);
                    }
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn det(mut a: Vec<Vec<CycNum>>) -> CycNum {
    let n = a.len();
    let mut d = CycNum::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return CycNum::zero();
        };
        if piv != col {
            a.swap(col, piv);
            d = -d;
        }
        d = &d * &a[col][col];
        let inv = a[col][col].inv().expect("nonzero pivot");
        for i in col + 1..n {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] * &inv;
            let pivot_row = a[col].clone();
            for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                *x -= &(p * &f);
            }
        }
    }
    d
}

pub fn mat_mul(a: &[Vec<CycNum>], b: &[Vec<CycNum>]) -> Vec<Vec<CycNum>> {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![CycNum::zero(); m];
            for (x, brow) in row.iter().zip(b) {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(brow) {
                    if !y.is_zero() {
                        *o += &(x * y);
                    }
                }
            }
            out
        })
        .collect()
}

pub fn is_identity(m: &[Vec<CycNum>]) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
    })
}

pub fn conj_transpose(m: &[Vec<CycNum>]) -> Vec<Vec<CycNum>> {
    let n = m.first().map_or(0, |r| r.len());
    (0..n)
        .map(|j| m.iter().map(|row| row[j].conj()).collect())
        .collect()
}

impl Family {
    /// Build a family on Γ. Every class of Γ must carry a labelled
    /// representative with a matching entry in `local`.
    pub fn build(
        name: &str,
        gamma: &FinGroup,
        delta_twisted: bool,
        local: &[CentralizerData],
        b_f: Option<u32>,
    ) -> Result<Family> {
        let ferr = |msg: String| Error::Family {
            family: name.to_string(),
            msg,
        };
        if delta_twisted && gamma.order() != 2 {
            return Err(ferr("the Δ twist needs Γ of order 2".into()));
        }
        let mut blocks = Vec::new();
        let mut offset = 0;
        for c in 0..gamma.num_classes() {
            let from_local = local.iter().find_map(|s| {
                let e = gamma.labelled(&s.x)?;
                (gamma.class_of(e) == c).then(|| (s.x.clone(), e))
            });
            let (label, x) = if c == gamma.class_of(0) {
                ("1".to_string(), 0)
            } else if let Some(found) = from_local {
                found
            } else {
                gamma
                    .labels()
                    .iter()
                    .find(|(_, &x)| gamma.class_of(x) == c)
                    .map(|(k, &x)| (k.clone(), x))
                    .ok_or_else(|| {
                        ferr(format!(
                            "class of {} has no label",
                            gamma.element(gamma.class_rep(c))
                        ))
                    })?
            };
            let entry = local.iter().find(|s| s.x == label);
            let mut z = gamma.centralizer(x);
            for (k, &e) in gamma.labels() {
                if gamma.commute(e, x) {
                    z.set_label(k, gamma.element(e))?;
                }
            }
            if let Some(entry) = entry {
                for (k, p) in &entry.y_labels {
                    z.set_label(k, p)
                        .map_err(|e| ferr(format!("Z({label}): {e}")))?;
                }
            }
            let mut table = character_table(&z)?;
            if let Some(entry) = entry {
                table
                    .resolve_char_labels(&entry.fingerprints)
                    .map_err(|e| ferr(format!("Z({label}): {e}")))?;
            }
            let n = table.num_chars();
            blocks.push(Block {
                x_label: label,
                x,
                table,
                offset,
            });
            offset += n;
        }
        let mut fam = Family {
            name: name.to_string(),
            gamma: gamma.clone(),
            delta_twisted,
            b_f,
            blocks,
            dim: offset,
            ft: Vec::new(),
        };
        fam.compute_ft()?;
        Ok(fam)
    }

    fn compute_ft(&mut self) -> Result<()> {
        let dim = self.dim;
        // B: column (x, y) = conj(ρ(y)) on rows (x, ρ); block diagonal
        let mut b = vec![vec![CycNum::zero(); dim]; dim];
        let mut b_inv = vec![vec![CycNum::zero(); dim]; dim];
        for blk in &self.blocks {
            let t = &blk.table;
            let k = t.num_chars();
            let block: Vec<Vec<CycNum>> = (0..k)
                .map(|r| (0..k).map(|y| t.value(r, y).conj()).collect())
                .collect();
            let inv = invert(&block).ok_or_else(|| Error::Family {
                family: self.name.clone(),
                msg: format!("σ basis is singular over x = {}", blk.x_label),
            })?;
            for i in 0..k {
                for j in 0..k {
                    b[blk.offset + i][blk.offset + j] = block[i][j].clone();
                    b_inv[blk.offset + i][blk.offset + j] = inv[i][j].clone();
                }
            }
        }
        // P·B⁻¹ where P sends σ(x,y) to Δ(x,y)·σ(y,x)
        let mut pb = vec![vec![CycNum::zero(); dim]; dim];
        for (bi, blk) in self.blocks.iter().enumerate() {
            let z = blk.table.group();
            for yc in 0..z.num_classes() {
                let y = z.parent_index(z.class_rep(yc)).expect("subgroup");
                let src = blk.offset + yc;
                let dst = self.sigma_slot(y, blk.x)?;
                let delta = self.delta(bi, y);
                pb[dst] = b_inv[src].iter().map(|v| v.scale_int(delta)).collect();
            }
        }
        self.ft = mat_mul(&b, &pb);
        Ok(())
    }

    fn delta(&self, x_block: usize, y: usize) -> i64 {
        if !self.delta_twisted {
            return 1;
        }
        let x_trivial = self.blocks[x_block].x == 0;
        if x_trivial != (y == 0) {
            -1
        } else {
            1
        }
    }

    /// Index of σ(a, b) in σ-coordinates, for commuting a, b ∈ Γ.
    fn sigma_slot(&self, a: usize, b: usize) -> Result<usize> {
        let g = &self.gamma;
        let c = g.class_of(a);
        let blk = self
            .blocks
            .iter()
            .find(|bl| g.class_of(bl.x) == c)
            .expect("every class has a block");
        let t = g.conjugator(a, blk.x).expect("conjugate");
        let b1 = g.conj(b, t);
        let z = blk.table.group();
        let zi = z.index_of(g.element(b1)).ok_or_else(|| Error::Family {
            family: self.name.clone(),
            msg: "pair does not commute".into(),
        })?;
        Ok(blk.offset + z.class_of(zi))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gamma(&self) -> &FinGroup {
        &self.gamma
    }

    pub fn delta_twisted(&self) -> bool {
        self.delta_twisted
    }

    pub fn b_f(&self) -> Option<u32> {
        self.b_f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn ft(&self) -> &[Vec<CycNum>] {
        &self.ft
    }

    /// Determinant of the change of basis from σ(x, y) to (x, ρ)
    /// coordinates.
    pub fn sigma_basis_det(&self) -> CycNum {
        let mut d = CycNum::one();
        for b in &self.blocks {
            let t = &b.table;
            let k = t.num_chars();
            let m: Vec<Vec<CycNum>> = (0..k)
                .map(|r| (0..k).map(|y| t.value(r, y).conj()).collect())
                .collect();
            d = &d * &det(m);
        }
        d
    }

    /// Basis labels "(x,ρ)" in coordinate order.
    pub fn basis_labels(&self) -> Vec<String> {
        self.blocks
            .iter()
            .flat_map(|b| {
                (0..b.table.num_chars())
                    .map(move |r| format!("({},{})", b.x_label, b.table.char_name(r)))
            })
            .collect()
    }

    fn block_for(&self, x: &str) -> Result<&Block> {
        let e = self.gamma.eval_word(x).map_err(|e| self.err(e.to_string()))?;
        self.blocks
            .iter()
            .find(|b| b.x == e)
            .ok_or_else(|| self.err(format!("{x} is not a chosen class representative")))
    }

    fn err(&self, msg: String) -> Error {
        Error::Family {
            family: self.name.clone(),
            msg,
        }
    }

    pub fn index_xrho(&self, x: &str, rho: &str) -> Result<usize> {
        let b = self.block_for(x)?;
        let r = b
            .table
            .row(rho)
            .ok_or_else(|| self.err(format!("no character {rho:?} of Z({x})")))?;
        Ok(b.offset + r)
    }

    pub fn unit(&self, i: usize) -> FamilyVector {
        let mut v = FamilyVector::zero(self);
        v.coords[i] = CycNum::one();
        v
    }

    /// σ(x, y) = Σ_ρ conj(ρ(y)) (x, ρ).
    pub fn sigma_xy(&self, x: &str, y: &str) -> Result<FamilyVector> {
        let b = self.block_for(x)?;
        let z = b.table.group();
        let ye = z
            .eval_word(y)
            .map_err(|e| self.err(format!("y in Z({x}): {e}")))?;
        let mut v = FamilyVector::zero(self);
        for r in 0..b.table.num_chars() {
            v.coords[b.offset + r] = b.table.value_at(r, ye).conj();
        }
        Ok(v)
    }

    pub fn term(&self, t: &Term) -> Result<FamilyVector> {
        match t {
            Term::XRho(x, rho) => Ok(self.unit(self.index_xrho(x, rho)?)),
            Term::XY(x, y) => self.sigma_xy(x, y),
        }
    }

    pub fn named_combination(&self, terms: &[(Term, CycNum)]) -> Result<FamilyVector> {
        let mut v = FamilyVector::zero(self);
        for (t, c) in terms {
            v.add_scaled(&self.term(t)?, c);
        }
        Ok(v)
    }

    pub fn apply_ft(&self, v: &FamilyVector) -> Result<FamilyVector> {
        if v.family != self.name || v.coords.len() != self.dim {
            return Err(self.err(format!("vector belongs to {}", v.family)));
        }
        let coords = self
            .ft
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&v.coords)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        Ok(FamilyVector {
            family: self.name.clone(),
            coords,
        })
    }

    pub fn is_ft_fixed(&self, v: &FamilyVector) -> Result<bool> {
        Ok(&self.apply_ft(v)? == v)
    }

    /// Coordinates of v in the σ(x, y) basis, keyed by (x label, y class
    /// name of Z(x)), nonzero entries only.
    pub fn sigma_coords(&self, v: &FamilyVector) -> Vec<(String, String, CycNum)> {
        let mut out = Vec::new();
        for b in &self.blocks {
            let t = &b.table;
            let z = t.group();
            let k = t.num_chars();
            // column orthogonality: coefficient of σ(x,y_c) is
            // (|c|/|Z|) Σ_ρ ρ(y_c) v_ρ
            for c in 0..k {
                let s: CycNum = (0..k)
                    .map(|r| t.value(r, c) * &v.coords[b.offset + r])
                    .sum();
                let s = s.scale(&num_rational::BigRational::new(
                    (z.class_size(c) as i64).into(),
                    (z.order() as i64).into(),
                ));
                if !s.is_zero() {
                    out.push((b.x_label.clone(), z.class_name(c), s));
                }
            }
        }
        out
    }

    /// Render a vector as a sum of basis labels.
    pub fn format_vector(&self, v: &FamilyVector) -> String {
        let labels = self.basis_labels();
        let parts: Vec<String> = v
            .coords
            .iter()
            .zip(&labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| format!("{c}*{l}"))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.basis_labels();
        writeln!(
            f,
            "family {} (|Γ| = {}, {} pairs{})",
            self.name,
            self.gamma.order(),
            self.dim,
            if self.delta_twisted { ", Δ-twisted" } else { "" }
        )?;
        let cells: Vec<Vec<String>> = self
            .ft
            .iter()
            .map(|r| r.iter().map(|c| c.to_string()).collect())
            .collect();
        let w = cells
            .iter()
            .flatten()
            .map(|s| s.len())
            .max()
            .unwrap_or(1);
        let lw = labels.iter().map(|s| s.len()).max().unwrap_or(1);
        for (l, row) in labels.iter().zip(&cells) {
            write!(f, "{l:<lw$} ")?;
            for c in row {
                write!(f, " {c:>w$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
