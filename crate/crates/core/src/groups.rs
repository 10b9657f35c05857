//! Finite matrix groups: closure, multiplication table, conjugacy classes.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::scalar::rat;
use crate::{CycloMatrix, CycloNum, Rational};

pub const DEFAULT_MAX_SIZE: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group closure exceeded {limit} elements")]
    SizeExceeded { limit: usize },
    #[error("generator {index} is not invertible")]
    NotInvertible { index: usize },
    #[error("generators must be square matrices of one common size")]
    DimensionMismatch,
    #[error("bad group spec: {0}")]
    BadSpec(String),
}

/// Built-in groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum GroupSpec {
    /// C_n inside SL_2, generated by diag(ξ, ξ⁻¹).
    Cyclic(u32),
    /// C_n acting by diag(ξ, ξ^a).
    CyclicOneNA { n: u32, a: u32 },
    /// Binary dihedral group of order 4n.
    BinaryDihedral(u32),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

impl GroupSpec {
    /// Groups of the ADE series (all inside SL_2).
    pub fn is_klein(&self) -> bool {
        !matches!(self, GroupSpec::CyclicOneNA { .. })
    }

    pub fn conductor(&self) -> u64 {
        match *self {
            GroupSpec::Cyclic(n) => n as u64,
            GroupSpec::CyclicOneNA { n, .. } => n as u64,
            GroupSpec::BinaryDihedral(n) => (2 * n as u64).lcm(&4),
            GroupSpec::BinaryTetrahedral | GroupSpec::BinaryOctahedral => 24,
            GroupSpec::BinaryIcosahedral => 20,
        }
    }

    pub fn name(&self) -> String {
        match *self {
            GroupSpec::Cyclic(n) => format!("C_{n}"),
            GroupSpec::CyclicOneNA { n, a } => format!("1/{n}(1,{a})"),
            GroupSpec::BinaryDihedral(n) => format!("BD_{n}"),
            GroupSpec::BinaryTetrahedral => "BT".into(),
            GroupSpec::BinaryOctahedral => "BO".into(),
            GroupSpec::BinaryIcosahedral => "BI".into(),
        }
    }

    /// Generator matrices of the fundamental representation.
    pub fn generators(&self) -> Vec<CycloMatrix> {
        let z = CycloNum::root_of_unity;
        let c = |n: i64| CycloNum::from_int(n);
        match *self {
            GroupSpec::Cyclic(n) => {
                let n = n as u64;
                vec![CycloMatrix::diagonal(vec![z(n, 1), z(n, -1)])]
            }
            GroupSpec::CyclicOneNA { n, a } => {
                let n = n as u64;
                vec![CycloMatrix::diagonal(vec![z(n, 1), z(n, a as i64)])]
            }
            GroupSpec::BinaryDihedral(n) => {
                let m = 2 * n as u64;
                vec![CycloMatrix::diagonal(vec![z(m, 1), z(m, -1)]), matrix_b()]
            }
            GroupSpec::BinaryTetrahedral => vec![
                CycloMatrix::diagonal(vec![z(4, 1), z(4, -1)]),
                matrix_b(),
                matrix_c(),
            ],
            GroupSpec::BinaryOctahedral => vec![
                CycloMatrix::diagonal(vec![z(8, 3), z(8, 5)]),
                matrix_b(),
                matrix_c(),
            ],
            GroupSpec::BinaryIcosahedral => {
                let s = inv_sqrt5();
                let zeta = |k| z(5, k);
                let f = CycloMatrix::from_rows(vec![
                    vec![&zeta(4) - &zeta(1), &zeta(2) - &zeta(3)],
                    vec![&zeta(2) - &zeta(3), &zeta(1) - &zeta(4)],
                ])
                .scale(&s);
                let e = CycloMatrix::from_rows(vec![
                    vec![&zeta(2) - &zeta(4), &zeta(4) - &c(1)],
                    vec![&c(1) - &zeta(1), &zeta(3) - &zeta(1)],
                ])
                .scale(&s);
                vec![f, e]
            }
        }
    }
}

/// [[0, i], [i, 0]].
fn matrix_b() -> CycloMatrix {
    let i = CycloNum::zeta(4);
    CycloMatrix::from_rows(vec![vec![CycloNum::zero(), i.clone()], vec![i, CycloNum::zero()]])
}

/// 1/√2 = (ζ8 + ζ8⁷)/2.
pub fn inv_sqrt2() -> CycloNum {
    let z = |k| CycloNum::root_of_unity(8, k);
    (z(1) + z(7)) * CycloNum::from_rational(rat(1, 2))
}

/// The square root of 5 used for the icosahedral generators: 1 + 2ζ5² + 2ζ5³.
///
/// This is the lift for which the generator E has trace 1 and order 6.
pub fn sqrt5() -> CycloNum {
    let z = |k| CycloNum::root_of_unity(5, k);
    CycloNum::from_int(1) + (z(2) + z(3)) * CycloNum::from_int(2)
}

pub fn inv_sqrt5() -> CycloNum {
    sqrt5() * CycloNum::from_rational(rat(1, 5))
}

/// (1/√2) [[ξ, ξ³], [ξ, ξ⁷]] with ξ = ζ8.
fn matrix_c() -> CycloMatrix {
    let z = |k| CycloNum::root_of_unity(8, k);
    CycloMatrix::from_rows(vec![vec![z(1), z(3)], vec![z(1), z(7)]]).scale(&inv_sqrt2())
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupSpec::Cyclic(n) => write!(f, "A:{}", n - 1),
            GroupSpec::CyclicOneNA { n, a } => write!(f, "cyclic:{n}:{a}"),
            GroupSpec::BinaryDihedral(n) => write!(f, "D:{n}"),
            GroupSpec::BinaryTetrahedral => f.write_str("E6"),
            GroupSpec::BinaryOctahedral => f.write_str("E7"),
            GroupSpec::BinaryIcosahedral => f.write_str("E8"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    /// `A:m` (cyclic of order m+1), `D:n` (BD_n), `E6`, `E7`, `E8`, `cyclic:n:a`.
    fn from_str(s: &str) -> Result<Self, GroupError> {
        let bad = |why: &str| GroupError::BadSpec(format!("{s}: {why}"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |p: &str| p.parse::<u32>().map_err(|_| bad("expected a positive integer"));
        match parts.as_slice() {
            ["E6"] | ["BT"] => Ok(GroupSpec::BinaryTetrahedral),
            ["E7"] | ["BO"] => Ok(GroupSpec::BinaryOctahedral),
            ["E8"] | ["BI"] => Ok(GroupSpec::BinaryIcosahedral),
            ["A", m] => {
                let m = num(m)?;
                if m == 0 {
                    return Err(bad("A:m needs m >= 1"));
                }
                Ok(GroupSpec::Cyclic(m + 1))
            }
            ["D", n] => {
                let n = num(n)?;
                if n < 2 {
                    return Err(bad("D:n needs n >= 2"));
                }
                Ok(GroupSpec::BinaryDihedral(n))
            }
            ["cyclic", n, a] => {
                let (n, a) = (num(n)?, num(a)?);
                if n < 1 {
                    return Err(bad("cyclic order must be positive"));
                }
                Ok(GroupSpec::CyclicOneNA { n, a: a % n.max(1) })
            }
            _ => Err(bad("unknown group")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
    pub element_order: u32,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Finite subgroup of GL_ν over a cyclotomic field.
///
/// Element 0 is the identity; every other element is its BFS parent times
/// one generator.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    spec: Option<GroupSpec>,
    dimension: usize,
    conductor: u64,
    generators: Vec<CycloMatrix>,
    elements: Vec<CycloMatrix>,
    parent: Vec<Option<(usize, usize)>>,
    right: Vec<Vec<usize>>,
    mul: Vec<u32>,
    inv: Vec<usize>,
    orders: Vec<u32>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    det_one: bool,
}

fn key(m: &CycloMatrix, conductor: u64) -> Vec<Rational> {
    m.entries()
        .iter()
        .flat_map(|e| e.embed(conductor).expect("entry conductor divides group conductor").coeffs().to_vec())
        .collect()
}

/// Closure of the generators under multiplication.
pub fn generate_group(generators: &[CycloMatrix], max_size: usize) -> Result<MatrixGroup, GroupError> {
    let dim = generators.first().map_or(0, |g| g.rows());
    if dim == 0 || generators.iter().any(|g| !g.is_square() || g.rows() != dim) {
        return Err(GroupError::DimensionMismatch);
    }
    let mut conductor = 1u64;
    for g in generators {
        for e in g.entries() {
            conductor = conductor.lcm(&e.conductor());
        }
    }
    let lift = |m: &CycloMatrix| m.map(|e| e.embed(conductor).expect("divisor"));
    let gens: Vec<CycloMatrix> = generators.iter().map(lift).collect();
    for (i, g) in gens.iter().enumerate() {
        if g.det_expansion().is_zero() {
            return Err(GroupError::NotInvertible { index: i });
        }
    }

    let id = lift(&CycloMatrix::identity(dim));
    let mut index: HashMap<Vec<Rational>, usize> = HashMap::new();
    index.insert(key(&id, conductor), 0);
    let mut elements = vec![id];
    let mut parent = vec![None];
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let mut row = Vec::with_capacity(gens.len());
        for (k, g) in gens.iter().enumerate() {
            let prod = &elements[i] * g;
            let kk = key(&prod, conductor);
            let j = match index.get(&kk) {
                Some(&j) => j,
                None => {
                    let j = elements.len();
                    if j >= max_size {
                        return Err(GroupError::SizeExceeded { limit: max_size });
                    }
                    index.insert(kk, j);
                    elements.push(prod);
                    parent.push(Some((i, k)));
                    queue.push_back(j);
                    j
                }
            };
            row.push(j);
        }
        // BFS pops in index order, so rows line up with element indices.
        debug_assert_eq!(right.len(), i);
        right.push(row);
    }

    let n = elements.len();
    let mut mul = vec![0u32; n * n];
    for i in 0..n {
        mul[i * n] = i as u32;
        for j in 1..n {
            let (p, k) = parent[j].expect("non-identity has a parent");
            let left = mul[i * n + p] as usize;
            mul[i * n + j] = right[left][k] as u32;
        }
    }
    let mut inv = vec![0usize; n];
    for i in 0..n {
        inv[i] = (0..n).find(|&j| mul[i * n + j] == 0).expect("finite group has inverses");
    }
    let mut orders = vec![0u32; n];
    for i in 0..n {
        let (mut p, mut k) = (i, 1u32);
        while p != 0 {
            p = mul[p * n + i] as usize;
            k += 1;
        }
        orders[i] = k;
    }
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut members = Vec::new();
        for g in 0..n {
            let y = mul[(mul[g * n + x] as usize) * n + inv[g]] as usize;
            if class_of[y] == usize::MAX {
                class_of[y] = c;
                members.push(y);
            }
        }
        members.sort_unstable();
        classes.push(ConjugacyClass { representative: x, members, element_order: orders[x] });
    }
    let det_one = gens.iter().all(|g| g.det_expansion().is_one());

    Ok(MatrixGroup {
        spec: None,
        dimension: dim,
        conductor,
        generators: gens,
        elements,
        parent,
        right,
        mul,
        inv,
        orders,
        classes,
        class_of,
        det_one,
    })
}

/// Build a built-in group with the default size limit.
pub fn make_group(spec: &GroupSpec) -> Result<MatrixGroup, GroupError> {
    match *spec {
        GroupSpec::Cyclic(0) | GroupSpec::CyclicOneNA { n: 0, .. } => {
            return Err(GroupError::BadSpec("order must be positive".into()))
        }
        GroupSpec::BinaryDihedral(n) if n < 2 => {
            return Err(GroupError::BadSpec("binary dihedral needs n >= 2".into()))
        }
        _ => {}
    }
    let mut g = generate_group(&spec.generators(), DEFAULT_MAX_SIZE)?;
    // Entries may live in a proper subfield; use the documented conductor.
    let target = spec.conductor();
    if target != g.conductor {
        g.conductor = target;
        g.elements = g.elements.iter().map(|m| m.map(|e| e.embed(target).expect("divisor"))).collect();
        g.generators = g.generators.iter().map(|m| m.map(|e| e.embed(target).expect("divisor"))).collect();
    }
    g.spec = Some(spec.clone());
    Ok(g)
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupDump {
    pub name: String,
    pub order: usize,
    pub conductor: u64,
    pub class_sizes: Vec<usize>,
    pub class_orders: Vec<u32>,
    pub det_one: bool,
}

impl MatrixGroup {
    pub fn spec(&self) -> Option<&GroupSpec> {
        self.spec.as_ref()
    }

    pub fn name(&self) -> String {
        self.spec.as_ref().map_or_else(|| "custom".to_string(), GroupSpec::name)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn generators(&self) -> &[CycloMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[CycloMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &CycloMatrix {
        &self.elements[i]
    }

    /// BFS parent and generator index; `None` for the identity.
    pub fn parent(&self, i: usize) -> Option<(usize, usize)> {
        self.parent[i]
    }

    /// Index of element i times generator k.
    pub fn times_generator(&self, i: usize, k: usize) -> usize {
        self.right[i][k]
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.order() + j] as usize
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inv[i]
    }

    pub fn element_order(&self, i: usize) -> u32 {
        self.orders[i]
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(ConjugacyClass::size).collect()
    }

    /// Class containing the inverses of class c.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.class_of[self.inv[self.classes[c].representative]]
    }

    /// Class of x ↦ x^k applied to class c.
    pub fn power_class(&self, c: usize, k: u32) -> usize {
        let x = self.classes[c].representative;
        let mut p = 0;
        for _ in 0..k {
            p = self.mul(p, x);
        }
        self.class_of[p]
    }

    pub fn det_one(&self) -> bool {
        self.det_one
    }

    /// Element reached by multiplying generators left to right.
    pub fn word(&self, gens: &[usize]) -> usize {
        gens.iter().fold(0, |acc, &k| self.right[acc][k])
    }

    pub fn find(&self, m: &CycloMatrix) -> Option<usize> {
        self.elements.iter().position(|e| e == m)
    }

    /// Index of -I, if present.
    pub fn minus_identity(&self) -> Option<usize> {
        let neg = -&CycloMatrix::identity(self.dimension);
        self.find(&neg)
    }

    /// True when no non-identity element is a pseudo-reflection.
    pub fn is_small(&self) -> bool {
        let id = CycloMatrix::identity(self.dimension);
        self.elements.iter().skip(1).all(|g| (&id - g).rank() != self.dimension - 1)
    }

    pub fn dump(&self) -> GroupDump {
        GroupDump {
            name: self.name(),
            order: self.order(),
            conductor: self.conductor,
            class_sizes: self.class_sizes(),
            class_orders: self.classes.iter().map(|c| c.element_order).collect(),
            det_one: self.det_one,
        }
    }
}
