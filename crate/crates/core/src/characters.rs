//! Representations, class functions and character tables.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::groups::{inv_sqrt2, GroupSpec, MatrixGroup};
use crate::scalar::rat;
use crate::{CycloMatrix, CycloNum};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CharError {
    #[error("class functions belong to different groups")]
    GroupMismatch,
    #[error("generator images do not define a representation")]
    NotARepresentation,
    #[error("multiplicity of irreducible {index} is {value}, not a non-negative integer")]
    NonIntegerMultiplicity { index: usize, value: String },
    #[error("character table for this group is not available")]
    NoTable,
    #[error("character table failed validation: {0}")]
    InvalidTable(String),
}

/// Matrix image of every group element, indexed like the group.
#[derive(Debug, Clone)]
pub struct Representation {
    group: Arc<MatrixGroup>,
    images: Vec<CycloMatrix>,
}

impl Representation {
    /// Extend generator images along the BFS tree and check the homomorphism law.
    pub fn from_generators(group: &Arc<MatrixGroup>, gens: &[CycloMatrix]) -> Result<Self, CharError> {
        if gens.len() != group.generators().len() {
            return Err(CharError::NotARepresentation);
        }
        let dim = gens[0].rows();
        if gens.iter().any(|g| !g.is_square() || g.rows() != dim) {
            return Err(CharError::NotARepresentation);
        }
        let n = group.order();
        let mut images: Vec<CycloMatrix> = Vec::with_capacity(n);
        images.push(CycloMatrix::identity(dim));
        for j in 1..n {
            let (p, k) = group.parent(j).expect("non-identity has a parent");
            images.push(&images[p] * &gens[k]);
        }
        for i in 0..n {
            for (k, g) in gens.iter().enumerate() {
                let j = group.times_generator(i, k);
                if group.parent(j) == Some((i, k)) {
                    continue;
                }
                if images[j] != &images[i] * g {
                    return Err(CharError::NotARepresentation);
                }
            }
        }
        Ok(Representation { group: group.clone(), images })
    }

    /// The defining representation G ⊂ GL_ν.
    pub fn fundamental(group: &Arc<MatrixGroup>) -> Self {
        Representation { group: group.clone(), images: group.elements().to_vec() }
    }

    pub fn group(&self) -> &Arc<MatrixGroup> {
        &self.group
    }

    pub fn dimension(&self) -> usize {
        self.images[0].rows()
    }

    pub fn image(&self, element: usize) -> &CycloMatrix {
        &self.images[element]
    }

    /// Image of the representative of class c.
    pub fn class_image(&self, c: usize) -> &CycloMatrix {
        &self.images[self.group.classes()[c].representative]
    }

    pub fn is_special(&self) -> bool {
        self.images.iter().all(|m| m.det_expansion().is_one())
    }

    pub fn character(&self) -> Character {
        let values = (0..self.group.num_classes()).map(|c| self.class_image(c).trace()).collect();
        Character { group: self.group.clone(), values }
    }
}

/// Character of the representation given by generator images.
pub fn trace_character(group: &Arc<MatrixGroup>, gens: &[CycloMatrix]) -> Result<Character, CharError> {
    Ok(Representation::from_generators(group, gens)?.character())
}

pub fn fundamental_character(group: &Arc<MatrixGroup>) -> Character {
    Representation::fundamental(group).character()
}

/// Class function, one value per conjugacy class in group order.
#[derive(Debug, Clone)]
pub struct Character {
    group: Arc<MatrixGroup>,
    values: Vec<CycloNum>,
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.values == other.values
    }
}

impl Character {
    pub fn new(group: &Arc<MatrixGroup>, values: Vec<CycloNum>) -> Self {
        assert_eq!(values.len(), group.num_classes(), "one value per class");
        Character { group: group.clone(), values }
    }

    pub fn trivial(group: &Arc<MatrixGroup>) -> Self {
        Self::new(group, vec![CycloNum::one(); group.num_classes()])
    }

    pub fn regular(group: &Arc<MatrixGroup>) -> Self {
        let mut values = vec![CycloNum::zero(); group.num_classes()];
        values[group.class_of(0)] = CycloNum::from_int(group.order() as i64);
        Self::new(group, values)
    }

    pub fn group(&self) -> &Arc<MatrixGroup> {
        &self.group
    }

    pub fn values(&self) -> &[CycloNum] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &CycloNum {
        &self.values[class]
    }

    /// Value at the identity.
    pub fn degree(&self) -> CycloNum {
        self.values[self.group.class_of(0)].clone()
    }

    fn check(&self, other: &Self) -> Result<(), CharError> {
        if Arc::ptr_eq(&self.group, &other.group) {
            Ok(())
        } else {
            Err(CharError::GroupMismatch)
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&CycloNum, &CycloNum) -> CycloNum) -> Result<Self, CharError> {
        self.check(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect();
        Ok(Character { group: self.group.clone(), values })
    }

    /// Character of the tensor product.
    pub fn tensor(&self, other: &Self) -> Result<Self, CharError> {
        self.zip(other, |a, b| a * b)
    }

    /// Character of the direct sum.
    pub fn sum(&self, other: &Self) -> Result<Self, CharError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn difference(&self, other: &Self) -> Result<Self, CharError> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &CycloNum) -> Self {
        Character { group: self.group.clone(), values: self.values.iter().map(|v| v * s).collect() }
    }

    /// Character of the dual representation.
    pub fn dual(&self) -> Self {
        let values = (0..self.values.len()).map(|c| self.values[self.group.inverse_class(c)].clone()).collect();
        Character { group: self.group.clone(), values }
    }

    /// g ↦ χ(g^k).
    pub fn power_map(&self, k: u32) -> Self {
        let values = (0..self.values.len()).map(|c| self.values[self.group.power_class(c, k)].clone()).collect();
        Character { group: self.group.clone(), values }
    }
}

/// ⟨φ, ψ⟩ = (1/|G|) Σ_c |c| · conj(φ(c)) · ψ(c).
pub fn inner_product(phi: &Character, psi: &Character) -> Result<CycloNum, CharError> {
    phi.check(psi)?;
    let g = &phi.group;
    let mut acc = CycloNum::zero();
    for (c, class) in g.classes().iter().enumerate() {
        let term = &phi.values[c].conjugate() * &psi.values[c];
        acc += &(term * CycloNum::from_int(class.size() as i64));
    }
    Ok(acc * CycloNum::from_rational(rat(1, g.order() as i64)))
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: Arc<MatrixGroup>,
    labels: Vec<String>,
    irreducibles: Vec<Character>,
    fundamental: Vec<usize>,
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<MatrixGroup> {
        &self.group
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn irreducibles(&self) -> &[Character] {
        &self.irreducibles
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn get(&self, i: usize) -> &Character {
        &self.irreducibles[i]
    }

    pub fn dims(&self) -> Vec<u64> {
        self.irreducibles
            .iter()
            .map(|c| {
                let d = c.degree().as_rational().expect("degree is an integer");
                num_traits::ToPrimitive::to_u64(&d.to_integer()).expect("small degree")
            })
            .collect()
    }

    /// Irreducible constituents of the defining representation.
    pub fn fundamental_constituents(&self) -> &[usize] {
        &self.fundamental
    }

    /// Multiplicities of the irreducibles in χ.
    pub fn decompose(&self, chi: &Character) -> Result<Vec<u64>, CharError> {
        let mut out = Vec::with_capacity(self.len());
        for (i, irr) in self.irreducibles.iter().enumerate() {
            let m = inner_product(irr, chi)?;
            match m.as_rational() {
                Some(q) if q.is_integer() && !q.is_negative() => {
                    out.push(num_traits::ToPrimitive::to_u64(&q.to_integer()).expect("fits u64"))
                }
                _ => return Err(CharError::NonIntegerMultiplicity { index: i, value: m.to_text() }),
            }
        }
        Ok(out)
    }

    /// Multiplicities of a virtual character (integers of either sign).
    pub fn decompose_virtual(&self, chi: &Character) -> Result<Vec<BigInt>, CharError> {
        let mut out = Vec::with_capacity(self.len());
        for (i, irr) in self.irreducibles.iter().enumerate() {
            let m = inner_product(irr, chi)?;
            match m.as_rational() {
                Some(q) if q.is_integer() => out.push(q.to_integer()),
                _ => return Err(CharError::NonIntegerMultiplicity { index: i, value: m.to_text() }),
            }
        }
        Ok(out)
    }

    /// Orthonormality, completeness, sum of squared degrees and power-map integrality.
    pub fn validate(&self) -> Result<(), CharError> {
        let bad = |s: String| Err(CharError::InvalidTable(s));
        let g = &self.group;
        if self.len() != g.num_classes() {
            return bad(format!("{} rows for {} classes", self.len(), g.num_classes()));
        }
        for (i, a) in self.irreducibles.iter().enumerate() {
            for (j, b) in self.irreducibles.iter().enumerate().skip(i) {
                let ip = inner_product(a, b)?;
                let expect = if i == j { CycloNum::one() } else { CycloNum::zero() };
                if ip != expect {
                    return bad(format!("<{}, {}> = {}", self.labels[i], self.labels[j], ip.to_text()));
                }
            }
        }
        let sq: u64 = self.dims().iter().map(|d| d * d).sum();
        if sq != g.order() as u64 {
            return bad(format!("sum of squared degrees {sq} != {}", g.order()));
        }
        for (i, chi) in self.irreducibles.iter().enumerate() {
            let sq = chi.power_map(2);
            if self.decompose_virtual(&sq).is_err() {
                return bad(format!("{} fails the power-map test", self.labels[i]));
            }
            if chi.degree().is_one() {
                let squared = chi.tensor(chi)?;
                if squared != sq {
                    return bad(format!("{} is not multiplicative", self.labels[i]));
                }
            }
        }
        Ok(())
    }
}

fn linear_rep(values: &[CycloNum]) -> Vec<CycloMatrix> {
    values.iter().map(|v| CycloMatrix::from_rows(vec![vec![v.clone()]])).collect()
}

fn table_from_reps(
    group: &Arc<MatrixGroup>,
    reps: Vec<(String, Vec<CycloMatrix>)>,
) -> Result<(Vec<String>, Vec<Character>), CharError> {
    let mut labels = Vec::new();
    let mut chars = Vec::new();
    for (label, gens) in reps {
        chars.push(trace_character(group, &gens)?);
        labels.push(label);
    }
    Ok((labels, chars))
}

/// Stored table: one column per word in the generators.
fn table_from_columns(
    group: &Arc<MatrixGroup>,
    words: &[&[usize]],
    rows: Vec<(&str, Vec<CycloNum>)>,
) -> Result<(Vec<String>, Vec<Character>), CharError> {
    let cols: Vec<usize> = words.iter().map(|w| group.class_of(group.word(w))).collect();
    let mut seen = cols.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != group.num_classes() || cols.len() != group.num_classes() {
        return Err(CharError::InvalidTable("column words do not hit every class once".into()));
    }
    let mut labels = Vec::new();
    let mut chars = Vec::new();
    for (label, vals) in rows {
        let mut values = vec![CycloNum::zero(); cols.len()];
        for (k, v) in vals.into_iter().enumerate() {
            values[cols[k]] = v;
        }
        labels.push(label.to_string());
        chars.push(Character::new(group, values));
    }
    Ok((labels, chars))
}

/// Character table of a built-in group, validated before it is returned.
pub fn irreducible_table(group: &Arc<MatrixGroup>) -> Result<CharacterTable, CharError> {
    let spec = group.spec().cloned().ok_or(CharError::NoTable)?;
    let z = CycloNum::root_of_unity;
    let int = CycloNum::from_int;
    let (labels, irreducibles, fundamental) = match spec {
        GroupSpec::Cyclic(n) | GroupSpec::CyclicOneNA { n, .. } => {
            let n64 = n as u64;
            let reps = (0..n)
                .map(|j| (format!("V_{j}"), linear_rep(&[z(n64, j as i64)])))
                .collect();
            let (l, c) = table_from_reps(group, reps)?;
            let a = match spec {
                GroupSpec::Cyclic(_) => (n - 1) % n,
                GroupSpec::CyclicOneNA { a, .. } => a % n,
                _ => unreachable!(),
            };
            (l, c, vec![1 % n as usize, a as usize])
        }
        GroupSpec::BinaryDihedral(n) => {
            let m = 2 * n as u64;
            let i = z(4, 1);
            let beta = if n % 2 == 0 { int(1) } else { i.clone() };
            let mut reps = vec![("V_0".to_string(), linear_rep(&[int(1), int(1)]))];
            for j in 1..n as i64 {
                let ij = z(4, j);
                let a = CycloMatrix::diagonal(vec![z(m, j), z(m, -j)]);
                let b = CycloMatrix::from_rows(vec![vec![int(0), ij.clone()], vec![ij, int(0)]]);
                reps.push((format!("V_{j}"), vec![a, b]));
            }
            let k = n as usize;
            reps.push((format!("V_{k}"), linear_rep(&[int(1), int(-1)])));
            reps.push((format!("V_{}", k + 1), linear_rep(&[int(-1), beta.clone()])));
            reps.push((format!("V_{}", k + 2), linear_rep(&[int(-1), -beta])));
            let (l, c) = table_from_reps(group, reps)?;
            (l, c, vec![1])
        }
        GroupSpec::BinaryTetrahedral => {
            let w = z(3, 1);
            let w2 = z(3, 2);
            let (o, m) = (int(1), int(-1));
            let n = |x: &CycloNum| -x;
            // Printed column order is (I, -I, B, C, C², C⁴, C⁵); the C² and C⁴
            // columns are exchanged so that the linear rows are homomorphisms.
            let words: &[&[usize]] = &[&[], &[1, 1], &[1], &[2], &[2, 2, 2, 2], &[2, 2], &[2, 2, 2, 2, 2]];
            let rows = vec![
                ("V_0", vec![o.clone(); 7]),
                ("V_1", vec![int(2), int(-2), int(0), o.clone(), m.clone(), m.clone(), o.clone()]),
                ("V_2", vec![int(3), int(3), m.clone(), int(0), int(0), int(0), int(0)]),
                ("V_3", vec![int(2), int(-2), int(0), w.clone(), n(&w), n(&w2), w2.clone()]),
                ("V_3^v", vec![int(2), int(-2), int(0), w2.clone(), n(&w2), n(&w), w.clone()]),
                ("V_4", vec![o.clone(), o.clone(), o.clone(), w.clone(), w.clone(), w2.clone(), w2.clone()]),
                ("V_4^v", vec![o.clone(), o.clone(), o.clone(), w2.clone(), w2.clone(), w.clone(), w.clone()]),
            ];
            let (l, c) = table_from_columns(group, words, rows)?;
            (l, c, vec![1])
        }
        GroupSpec::BinaryOctahedral => {
            let s2 = inv_sqrt2() * int(2);
            let ns2 = -&s2;
            let (o, m, zr) = (int(1), int(-1), int(0));
            let words: &[&[usize]] = &[&[], &[1, 1], &[1], &[2], &[2, 2], &[0], &[1, 0], &[0, 0, 0]];
            let rows = vec![
                ("V_0", vec![o.clone(); 8]),
                ("V_1", vec![int(2), int(-2), zr.clone(), o.clone(), m.clone(), ns2.clone(), zr.clone(), s2.clone()]),
                ("V_2", vec![int(3), int(3), m.clone(), zr.clone(), zr.clone(), o.clone(), m.clone(), o.clone()]),
                ("V_3", vec![int(4), int(-4), zr.clone(), m.clone(), o.clone(), zr.clone(), zr.clone(), zr.clone()]),
                ("V_4", vec![int(3), int(3), m.clone(), zr.clone(), zr.clone(), m.clone(), o.clone(), m.clone()]),
                ("V_5", vec![int(2), int(-2), zr.clone(), o.clone(), m.clone(), s2.clone(), zr.clone(), ns2.clone()]),
                ("V_6", vec![o.clone(), o.clone(), o.clone(), o.clone(), o.clone(), m.clone(), m.clone(), m.clone()]),
                ("V_7", vec![int(2), int(2), int(2), m.clone(), m.clone(), zr.clone(), zr.clone(), zr.clone()]),
            ];
            let (l, c) = table_from_columns(group, words, rows)?;
            (l, c, vec![1])
        }
        GroupSpec::BinaryIcosahedral => {
            let pp = -(z(5, 2) + z(5, 3));
            let pm = int(1) - pp.clone();
            let (npp, npm) = (-&pp, -&pm);
            let (o, m, zr) = (int(1), int(-1), int(0));
            let words: &[&[usize]] =
                &[&[], &[0, 0], &[0], &[1], &[1, 1], &[0, 1], &[0, 1, 0, 1], &[0, 1, 0, 1, 0, 1], &[0, 1, 0, 1, 0, 1, 0, 1]];
            let rows = vec![
                ("V_0", vec![o.clone(); 9]),
                ("V_1", vec![int(2), int(-2), zr.clone(), o.clone(), m.clone(), pp.clone(), npm.clone(), pm.clone(), npp.clone()]),
                ("V_2", vec![int(3), int(3), m.clone(), zr.clone(), zr.clone(), pp.clone(), pm.clone(), pm.clone(), pp.clone()]),
                ("V_3", vec![int(4), int(-4), zr.clone(), m.clone(), o.clone(), o.clone(), m.clone(), o.clone(), m.clone()]),
                ("V_4", vec![int(5), int(5), o.clone(), m.clone(), m.clone(), zr.clone(), zr.clone(), zr.clone(), zr.clone()]),
                ("V_5", vec![int(6), int(-6), zr.clone(), zr.clone(), zr.clone(), m.clone(), o.clone(), m.clone(), o.clone()]),
                ("V_6", vec![int(4), int(4), zr.clone(), o.clone(), o.clone(), m.clone(), m.clone(), m.clone(), m.clone()]),
                ("V_7", vec![int(2), int(-2), zr.clone(), o.clone(), m.clone(), pm.clone(), npp.clone(), pp.clone(), npm.clone()]),
                ("V_8", vec![int(3), int(3), m.clone(), zr.clone(), zr.clone(), pm.clone(), pp.clone(), pp.clone(), pm.clone()]),
            ];
            let (l, c) = table_from_columns(group, words, rows)?;
            (l, c, vec![1])
        }
    };
    let table = CharacterTable { group: group.clone(), labels, irreducibles, fundamental };
    table.validate()?;
    Ok(table)
}
