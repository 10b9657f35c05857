//! Vector bundles on an elliptic curve in Atiyah normal form.
//!
//! An indecomposable is E_A(r, d) ⊗ L_τ ⊗ 𝓛^k where τ ∈ (Q/Z)² is a torsion
//! point of the degree-0 Picard group and 𝓛 is an opaque degree-0 line bundle.
//! A = O(P0) for the flex point P0 at infinity, so O_Y(1) = A^⊗3 and
//! E_A(1, d) = A^⊗d. All tensor rules assume characteristic 0.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::matrix::Matrix;
use crate::poly::{monomials_of_degree, Exponent};
use crate::scalar::rat;
use crate::{Rational, RationalPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BundleError {
    #[error("slope of the empty sum is undefined")]
    EmptySum,
    #[error("tensor product not covered by the Atiyah rules: {0}")]
    Unsupported(String),
    #[error("symmetric power of {0} is not determined")]
    NotDeterminedByPaper(String),
    #[error("the curve is singular")]
    SingularCurve,
    #[error("curve equation must be a ternary cubic form")]
    NotACubic,
}

/// Degree-0 twist: a torsion point in (Q/Z)² and an exponent of the opaque bundle 𝓛.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorsionLabel {
    torsion: [Rational; 2],
    opaque: i64,
}

fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

impl TorsionLabel {
    pub fn trivial() -> Self {
        TorsionLabel { torsion: [Rational::zero(), Rational::zero()], opaque: 0 }
    }

    pub fn new(a: Rational, b: Rational, opaque: i64) -> Self {
        TorsionLabel { torsion: [frac(&a), frac(&b)], opaque }
    }

    /// The 2-torsion bundles L_0..L_3.
    pub fn two_torsion(i: usize) -> Self {
        let h = rat(1, 2);
        let (a, b) = match i {
            0 => (Rational::zero(), Rational::zero()),
            1 => (h, Rational::zero()),
            2 => (Rational::zero(), h),
            3 => (h.clone(), h),
            _ => panic!("two-torsion index out of range"),
        };
        TorsionLabel::new(a, b, 0)
    }

    pub fn opaque(k: i64) -> Self {
        TorsionLabel { opaque: k, ..Self::trivial() }
    }

    pub fn torsion(&self) -> &[Rational; 2] {
        &self.torsion
    }

    pub fn opaque_exponent(&self) -> i64 {
        self.opaque
    }

    pub fn is_trivial(&self) -> bool {
        self.opaque == 0 && self.torsion.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        TorsionLabel::new(
            &self.torsion[0] + &other.torsion[0],
            &self.torsion[1] + &other.torsion[1],
            self.opaque + other.opaque,
        )
    }

    pub fn times(&self, k: i64) -> Self {
        let k_r = Rational::from_integer(k.into());
        TorsionLabel::new(&self.torsion[0] * &k_r, &self.torsion[1] * &k_r, self.opaque * k)
    }

    pub fn neg(&self) -> Self {
        self.times(-1)
    }

    /// Reduce the torsion part modulo the points killed by `m`.
    fn reduce_mod(&self, m: u64) -> Self {
        let m_r = Rational::from_integer((m as i64).into());
        let red = |x: &Rational| x - (x * &m_r).floor() / &m_r;
        TorsionLabel { torsion: [red(&self.torsion[0]), red(&self.torsion[1])], opaque: self.opaque }
    }
}

impl fmt::Display for TorsionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.torsion.iter().any(|x| !x.is_zero()) {
            parts.push(format!("L({},{})", self.torsion[0], self.torsion[1]));
        }
        if self.opaque != 0 {
            parts.push(format!("𝓛^{}", self.opaque));
        }
        if parts.is_empty() {
            parts.push("O".into());
        }
        f.write_str(&parts.join("⊗"))
    }
}

/// E_A(r, d) ⊗ twist, with the twist normalized modulo its stabilizer.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bundle {
    rank: u64,
    degree: i64,
    twist: TorsionLabel,
}

fn gcd_rd(r: u64, d: i64) -> u64 {
    r.gcd(&d.unsigned_abs())
}

impl Bundle {
    pub fn new(rank: u64, degree: i64, twist: TorsionLabel) -> Self {
        assert!(rank >= 1, "rank must be positive");
        let m = rank / gcd_rd(rank, degree);
        Bundle { rank, degree, twist: twist.reduce_mod(m) }
    }

    pub fn atiyah(rank: u64, degree: i64) -> Self {
        Self::new(rank, degree, TorsionLabel::trivial())
    }

    /// The Atiyah bundle F_r.
    pub fn f(rank: u64) -> Self {
        Self::atiyah(rank, 0)
    }

    pub fn line(degree: i64, twist: TorsionLabel) -> Self {
        Self::new(1, degree, twist)
    }

    /// O_Y(a) = A^⊗3a.
    pub fn o_y(a: i64) -> Self {
        Self::atiyah(1, 3 * a)
    }

    /// E_A(2, −9) ⊗ 𝓛.
    pub fn syzygy() -> Self {
        Self::new(2, -9, TorsionLabel::opaque(1))
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn twist(&self) -> &TorsionLabel {
        &self.twist
    }

    pub fn slope(&self) -> Rational {
        rat(self.degree, self.rank as i64)
    }

    pub fn is_line(&self) -> bool {
        self.rank == 1
    }

    pub fn dual(&self) -> Self {
        Self::new(self.rank, -self.degree, self.twist.neg())
    }

    pub fn with_twist(&self, t: &TorsionLabel) -> Self {
        Self::new(self.rank, self.degree, self.twist.add(t))
    }
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            write!(f, "F_{}", self.rank)?;
        } else {
            write!(f, "E_A({},{})", self.rank, self.degree)?;
        }
        if !self.twist.is_trivial() {
            write!(f, "⊗{}", self.twist)?;
        }
        Ok(())
    }
}

/// Direct sum with positive multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BundleSum {
    parts: BTreeMap<Bundle, u64>,
}

impl BundleSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(b: Bundle) -> Self {
        let mut s = Self::new();
        s.push(b, 1);
        s
    }

    pub fn from_parts(parts: impl IntoIterator<Item = (Bundle, u64)>) -> Self {
        let mut s = Self::new();
        for (b, m) in parts {
            s.push(b, m);
        }
        s
    }

    pub fn push(&mut self, b: Bundle, mult: u64) {
        if mult > 0 {
            *self.parts.entry(b).or_insert(0) += mult;
        }
    }

    pub fn extend(&mut self, other: &BundleSum, scale: u64) {
        for (b, &m) in &other.parts {
            self.push(b.clone(), m * scale);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> impl Iterator<Item = (&Bundle, u64)> {
        self.parts.iter().map(|(b, &m)| (b, m))
    }

    /// Number of distinct indecomposables.
    pub fn kinds(&self) -> usize {
        self.parts.len()
    }

    /// Number of summands counted with multiplicity.
    pub fn count(&self) -> u64 {
        self.parts.values().sum()
    }

    pub fn rank(&self) -> u64 {
        self.parts.iter().map(|(b, m)| b.rank * m).sum()
    }

    pub fn degree(&self) -> i64 {
        self.parts.iter().map(|(b, &m)| b.degree * m as i64).sum()
    }

    pub fn dual(&self) -> Self {
        Self::from_parts(self.parts.iter().map(|(b, &m)| (b.dual(), m)))
    }

    pub fn twist(&self, t: &TorsionLabel) -> Self {
        Self::from_parts(self.parts.iter().map(|(b, &m)| (b.with_twist(t), m)))
    }

    pub fn summary(&self) -> Vec<SummandRecord> {
        self.parts.iter().map(|(b, &m)| SummandRecord::new(b, m)).collect()
    }
}

impl fmt::Display for BundleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|(b, &m)| if m == 1 { b.to_string() } else { format!("{m}·{b}") })
            .collect();
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// Serialized summand.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SummandRecord {
    pub rank: u64,
    pub degree: i64,
    pub twist: TwistRecord,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct TwistRecord {
    pub torsion: [String; 2],
    pub opaque: i64,
}

impl SummandRecord {
    fn new(b: &Bundle, m: u64) -> Self {
        SummandRecord {
            rank: b.rank,
            degree: b.degree,
            twist: TwistRecord {
                torsion: [b.twist.torsion[0].to_string(), b.twist.torsion[1].to_string()],
                opaque: b.twist.opaque,
            },
            multiplicity: m,
        }
    }
}

/// (rank, degree, slope).
pub fn rank_degree_slope(s: &BundleSum) -> Result<(u64, i64, Rational), BundleError> {
    if s.is_empty() {
        return Err(BundleError::EmptySum);
    }
    let (r, d) = (s.rank(), s.degree());
    Ok((r, d, rat(d, r as i64)))
}

/// F_r ⊗ F_s as the list of Atiyah ranks.
fn atiyah_product(r: u64, s: u64) -> Vec<u64> {
    let (r, s) = if r >= s { (r, s) } else { (s, r) };
    (0..s).map(|j| r - s + 1 + 2 * j).collect()
}

fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n && n % p != 0 {
        p += 1;
    }
    if n % p != 0 {
        p = n;
    }
    let mut m = n;
    let mut a = 0;
    while m % p == 0 {
        m /= p;
        a += 1;
    }
    (m == 1).then_some((p, a))
}

/// Product of E_A(r1, d1) and E_A(r2, d2) with both pairs coprime; all summands are coprime.
fn coprime_product(r1: u64, d1: i64, r2: u64, d2: i64) -> Result<Vec<(Bundle, u64)>, BundleError> {
    if r1.gcd(&r2) == 1 {
        return Ok(vec![(Bundle::atiyah(r1 * r2, r1 as i64 * d2 + r2 as i64 * d1), 1)]);
    }
    let ((p, a1), (p2, a2)) = match (prime_power(r1), prime_power(r2)) {
        (Some(x), Some(y)) => (x, y),
        _ => {
            return Err(BundleError::Unsupported(format!(
                "E_A({r1},{d1}) ⊗ E_A({r2},{d2}) has non-coprime ranks that are not prime powers"
            )))
        }
    };
    if p != p2 {
        return Err(BundleError::Unsupported(format!("ranks {r1} and {r2} share no prime")));
    }
    if a1 < a2 {
        return coprime_product(r2, d2, r1, d1);
    }
    if a1 > a2 {
        let d = d1 + p.pow(a1 - a2) as i64 * d2;
        return Ok(vec![(Bundle::atiyah(r1, d), p.pow(a2))]);
    }
    // Equal ranks p^a: the sum splits over torsion classes.
    let a = a1;
    let s = d1 + d2;
    let g = r1.gcd(&s.unsigned_abs());
    let a_minus_b = (0..=a).rev().find(|&e| g % p.pow(e) == 0).unwrap_or(0);
    let b = a - a_minus_b;
    let d3 = s / p.pow(a_minus_b) as i64;
    let pa = p.pow(a) as i64;
    let reps = p.pow(a_minus_b) as i64;
    let mut out = Vec::new();
    for i in 0..reps {
        for j in 0..reps {
            let t = TorsionLabel::new(rat(i, pa), rat(j, pa), 0);
            out.push((Bundle::new(p.pow(b), d3, t), p.pow(b)));
        }
    }
    Ok(out)
}

/// Tensor product of two indecomposables.
pub fn tensor_bundles(x: &Bundle, y: &Bundle) -> Result<BundleSum, BundleError> {
    let h1 = gcd_rd(x.rank, x.degree);
    let h2 = gcd_rd(y.rank, y.degree);
    let core = coprime_product(x.rank / h1, x.degree / h1 as i64, y.rank / h2, y.degree / h2 as i64)?;
    let t = x.twist.add(&y.twist);
    let mut out = BundleSum::new();
    for k in atiyah_product(h1, h2) {
        for (b, m) in &core {
            out.push(Bundle::new(k * b.rank, k as i64 * b.degree, b.twist.add(&t)), *m);
        }
    }
    Ok(out)
}

/// Bilinear extension of [`tensor_bundles`].
pub fn tensor(a: &BundleSum, b: &BundleSum) -> Result<BundleSum, BundleError> {
    let mut out = BundleSum::new();
    for (x, mx) in a.parts() {
        for (y, my) in b.parts() {
            out.extend(&tensor_bundles(x, y)?, mx * my);
        }
    }
    Ok(out)
}

/// Sym^j of an atom: a line bundle, or F_2 ⊗ L.
fn sym_atom(b: &Bundle, j: u64) -> BundleSum {
    if b.rank == 1 {
        return BundleSum::single(Bundle::new(1, b.degree * j as i64, b.twist.times(j as i64)));
    }
    // F_2 ⊗ A^k ⊗ τ with d = 2k; Sym^j = F_{j+1} ⊗ A^{jk} ⊗ τ^j.
    let k = b.degree / 2;
    let r = j + 1;
    BundleSum::single(Bundle::new(r, r as i64 * j as i64 * k, b.twist.times(j as i64)))
}

fn sym_atoms(atoms: &[Bundle], q: u64) -> Result<BundleSum, BundleError> {
    match atoms {
        [] => Ok(if q == 0 { BundleSum::single(Bundle::atiyah(1, 0)) } else { BundleSum::new() }),
        [only] => Ok(sym_atom(only, q)),
        [first, rest @ ..] => {
            let mut out = BundleSum::new();
            for j in 0..=q {
                let tail = sym_atoms(rest, q - j)?;
                out.extend(&tensor(&sym_atom(first, j), &tail)?, 1);
            }
            Ok(out)
        }
    }
}

/// Sym^q for sums of line bundles and bundles of the form F_2 ⊗ L.
pub fn sym_power(s: &BundleSum, q: u64) -> Result<BundleSum, BundleError> {
    let mut atoms = Vec::new();
    for (b, m) in s.parts() {
        let ok = b.rank == 1 || (b.rank == 2 && b.degree % 2 == 0);
        if !ok {
            return Err(BundleError::NotDeterminedByPaper(b.to_string()));
        }
        for _ in 0..m {
            atoms.push(b.clone());
        }
    }
    sym_atoms(&atoms, q)
}

/// T^q(Syz) with Syz = E_A(2, −9) ⊗ 𝓛, in closed form.
pub fn tensor_power_syz(q: u64) -> BundleSum {
    assert!(q >= 1, "q must be positive");
    let lq = TorsionLabel::opaque(q as i64);
    if q == 1 {
        return BundleSum::single(Bundle::syzygy());
    }
    if q % 2 == 0 {
        let d = -9 * (q as i64) / 2;
        BundleSum::from_parts(
            (0..4).map(|i| (Bundle::line(d, TorsionLabel::two_torsion(i).add(&lq)), 1u64 << (q - 2))),
        )
    } else {
        BundleSum::from_parts([(Bundle::new(2, -9 * q as i64, lq), 1u64 << (q - 1))])
    }
}

/// T^q(Syz) by repeated tensoring.
pub fn tensor_power_iterated(q: u64) -> Result<BundleSum, BundleError> {
    let e = BundleSum::single(Bundle::syzygy());
    let mut acc = e.clone();
    for _ in 1..q {
        acc = tensor(&acc, &e)?;
    }
    Ok(acc)
}

/// Sym^q(F_2 ⊗ O_Y(1)) for q = 0..=qmax.
pub fn differential_sym_sequence(qmax: u64) -> Vec<BundleSum> {
    let omega = BundleSum::single(Bundle::atiyah(2, 6));
    (0..=qmax).map(|q| sym_power(&omega, q).expect("F_2 ⊗ line bundle")).collect()
}

/// Free rank with respect to O_Y(1) of each entry of the differential sequence.
pub fn differential_frk(qmax: u64) -> Vec<u64> {
    differential_sym_sequence(qmax)
        .iter()
        .map(|s| s.parts().filter(|(b, _)| b.rank == 1 && b.degree % 3 == 0 && b.twist.is_trivial()).map(|(_, m)| m).sum())
        .collect()
}

/// Σ frk / Σ rank over q ≤ n for the differential sequence.
pub fn differential_cumulative_ratio(n: u64) -> Rational {
    let seq = differential_sym_sequence(n);
    let frk: u64 = differential_frk(n).iter().sum();
    let rank: u64 = seq.iter().map(BundleSum::rank).sum();
    rat(frk as i64, rank as i64)
}

/// How an frk bound was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FrkCertificate {
    /// q = 0: the module is free of rank 1.
    Trivial,
    /// Odd q: slope −9q/2 is not an integer, so no summand is O_Y(a).
    SlopeNonIntegral { slope: String },
    /// Even q: dimension of the degree-q/2 kernel of M_φ over R = k[x,y,z]/(f).
    KernelSearch { unknowns: usize, equations: usize, solution_dim: usize, kernel_dim: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrkReport {
    pub q: u64,
    pub lower: u64,
    pub upper: u64,
    pub rank: u64,
    pub certificate: FrkCertificate,
}

/// y²z − x³ − a·xz² − b·z³ in variables (x, y, z).
pub fn weierstrass(a: &Rational, b: &Rational) -> RationalPoly {
    RationalPoly::from_terms(
        3,
        [
            (vec![0, 2, 1], Rational::one()),
            (vec![3, 0, 0], -Rational::one()),
            (vec![1, 0, 2], -a.clone()),
            (vec![0, 0, 3], -b.clone()),
        ],
    )
}

/// Whether y²z − x³ − axz² − bz³ is smooth, from the discriminant.
pub fn weierstrass_nonsingular(a: &Rational, b: &Rational) -> bool {
    let four = Rational::from_integer(4.into());
    let tw7 = Rational::from_integer(27.into());
    !(four * a * a * a + tw7 * b * b).is_zero()
}

/// Smoothness of a plane cubic: the partials span all quartics.
pub fn is_nonsingular_cubic(f: &RationalPoly) -> Result<bool, BundleError> {
    if f.nvars() != 3 || !f.is_homogeneous() || f.degree() != Some(3) {
        return Err(BundleError::NotACubic);
    }
    let quad = monomials_of_degree(3, 2);
    let quart = monomials_of_degree(3, 4);
    let mut rows = Vec::new();
    for i in 0..3 {
        let fi = f.derivative(i);
        for m in &quad {
            let g = RationalPoly::monomial(m.clone(), Rational::one());
            rows.push((&g * &fi).coefficient_vector(&quart));
        }
    }
    Ok(Matrix::from_rows(rows).rank() == quart.len())
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension of {h ∈ R_d^K : M_φ·h = 0 in R} for d = q/2, q even.
///
/// Solved in S = k[x,y,z] as M_φ·h = f·g with g ∈ S_{d−2}^J; pairs (f·k, M_φ·k)
/// with k ∈ S_{d−3}^K are then discounted.
fn even_kernel(q: u64, f: &RationalPoly) -> FrkCertificate {
    let d = (q / 2) as u32;
    let cols_e = monomials_of_degree(3, q as u32);
    let rows_e = monomials_of_degree(3, q as u32 - 1);
    let s_d = monomials_of_degree(3, d);
    let s_g = if d >= 2 { monomials_of_degree(3, d - 2) } else { Vec::new() };
    let s_t = monomials_of_degree(3, d + 1);
    let index = |v: &[Exponent]| -> HashMap<Exponent, usize> {
        v.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect()
    };
    let (ce, sd, sg) = (index(&cols_e), index(&s_d), index(&s_g));
    let nh = cols_e.len() * s_d.len();
    let unknowns = nh + rows_e.len() * s_g.len();
    let mut rows = Vec::new();
    for (bi, b) in rows_e.iter().enumerate() {
        for t in &s_t {
            let mut row = vec![Rational::zero(); unknowns];
            for k in 0..3 {
                if t[k] == 0 {
                    continue;
                }
                let mut a = b.clone();
                a[k] += 1;
                let mut m = t.clone();
                m[k] -= 1;
                let col = ce[&a] * s_d.len() + sd[&m];
                row[col] += Rational::from_integer((a[k] as i64).into());
            }
            for (e, c) in f.terms() {
                if e.iter().zip(t).all(|(x, y)| x <= y) {
                    let n: Exponent = t.iter().zip(e).map(|(y, x)| y - x).collect();
                    if let Some(&ni) = sg.get(&n) {
                        row[nh + bi * s_g.len() + ni] -= c.clone();
                    }
                }
            }
            rows.push(row);
        }
    }
    let equations = rows.len();
    let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(rows).rank() };
    let solution_dim = unknowns - rank;
    let spurious = if d >= 3 { cols_e.len() as u64 * binom(d as u64 - 1, 2) } else { 0 } as usize;
    FrkCertificate::KernelSearch { unknowns, equations, solution_dim, kernel_dim: solution_dim - spurious }
}

/// Bounds on frk_{O_Y(1)} Sym^q(Syz) on the curve f = 0.
pub fn frk_report(q: u64, f: &RationalPoly) -> Result<FrkReport, BundleError> {
    if !is_nonsingular_cubic(f)? {
        return Err(BundleError::SingularCurve);
    }
    let rank = q + 1;
    if q == 0 {
        return Ok(FrkReport { q, lower: 1, upper: 1, rank, certificate: FrkCertificate::Trivial });
    }
    if q % 2 == 1 {
        let slope = rat(-9 * q as i64, 2);
        return Ok(FrkReport {
            q,
            lower: 0,
            upper: 0,
            rank,
            certificate: FrkCertificate::SlopeNonIntegral { slope: slope.to_string() },
        });
    }
    let cert = even_kernel(q, f);
    let upper = match &cert {
        FrkCertificate::KernelSearch { kernel_dim, .. } => (*kernel_dim as u64).min(rank),
        _ => unreachable!(),
    };
    Ok(FrkReport { q, lower: 0, upper, rank, certificate: cert })
}

/// Upper bounds on frk for q = 0..=qmax: exact kernel data up to `kernel_qmax`, rank beyond.
pub fn frk_upper_bounds(qmax: u64, kernel_qmax: u64, f: &RationalPoly) -> Result<Vec<u64>, BundleError> {
    (0..=qmax)
        .map(|q| {
            if q <= kernel_qmax || q % 2 == 1 {
                Ok(frk_report(q, f)?.upper)
            } else {
                Ok(q + 1)
            }
        })
        .collect()
}

/// Σ_{q≤n} bound_q / Σ_{q≤n} (q+1) for each n.
pub fn frk_prefix_ratios(bounds: &[u64]) -> Vec<Rational> {
    let mut num = 0u64;
    let mut den = 0u64;
    bounds
        .iter()
        .enumerate()
        .map(|(q, &b)| {
            num += b;
            den += q as u64 + 1;
            rat(num as i64, den as i64)
        })
        .collect()
}

/// Whether every summand has the given slope.
pub fn all_slopes_equal(s: &BundleSum, slope: &Rational) -> bool {
    s.parts().all(|(b, _)| &b.slope() == slope)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum(parts: &[(Bundle, u64)]) -> BundleSum {
        BundleSum::from_parts(parts.iter().cloned())
    }

    #[test]
    fn slopes() {
        assert_eq!(rank_degree_slope(&BundleSum::single(Bundle::f(2))).unwrap(), (2, 0, rat(0, 1)));
        assert_eq!(rank_degree_slope(&BundleSum::single(Bundle::syzygy())).unwrap(), (2, -9, rat(-9, 2)));
        let s = sum(&[(Bundle::atiyah(3, 1), 2)]);
        assert_eq!(rank_degree_slope(&s).unwrap(), (6, 2, rat(1, 3)));
        assert_eq!(rank_degree_slope(&BundleSum::new()), Err(BundleError::EmptySum));
    }

    #[test]
    fn rule_one() {
        let p = tensor_bundles(&Bundle::f(2), &Bundle::f(2)).unwrap();
        assert_eq!(p, sum(&[(Bundle::f(1), 1), (Bundle::f(3), 1)]));
        let p = tensor_bundles(&Bundle::f(5), &Bundle::f(3)).unwrap();
        assert_eq!(p, sum(&[(Bundle::f(3), 1), (Bundle::f(5), 1), (Bundle::f(7), 1)]));
    }

    #[test]
    fn syzygy_square() {
        let e = Bundle::atiyah(2, -9);
        let p = tensor_bundles(&e, &e).unwrap();
        let expect = sum(&(0..4).map(|i| (Bundle::line(-9, TorsionLabel::two_torsion(i)), 1)).collect::<Vec<_>>());
        assert_eq!(p, expect);
        let p = tensor_bundles(&Bundle::atiyah(1, -9), &e).unwrap();
        assert_eq!(p, BundleSum::single(Bundle::atiyah(2, -27)));
    }

    #[test]
    fn rule_four_and_unsupported() {
        let p = tensor_bundles(&Bundle::atiyah(4, 1), &Bundle::atiyah(2, 1)).unwrap();
        assert_eq!(p, sum(&[(Bundle::atiyah(4, 3), 2)]));
        assert!(matches!(
            tensor_bundles(&Bundle::atiyah(6, 1), &Bundle::atiyah(2, 1)),
            Err(BundleError::Unsupported(_))
        ));
    }

    #[test]
    fn twist_stabilizer() {
        let t = TorsionLabel::two_torsion(1);
        assert_eq!(Bundle::new(2, -9, t.clone()), Bundle::atiyah(2, -9));
        assert_ne!(Bundle::new(1, -9, t.clone()), Bundle::atiyah(1, -9));
        assert_ne!(Bundle::new(2, 0, t), Bundle::f(2));
        assert_eq!(Bundle::new(3, 1, TorsionLabel::new(rat(1, 3), rat(2, 3), 0)), Bundle::atiyah(3, 1));
    }

    #[test]
    fn sym_examples() {
        for q in 0..=10 {
            assert_eq!(sym_power(&BundleSum::single(Bundle::f(2)), q).unwrap(), BundleSum::single(Bundle::f(q + 1)));
        }
        let omega = BundleSum::single(Bundle::atiyah(2, 6));
        assert_eq!(sym_power(&omega, 5).unwrap(), BundleSum::single(Bundle::atiyah(6, 90)));
        let l1 = Bundle::line(1, TorsionLabel::trivial());
        let l2 = Bundle::line(0, TorsionLabel::two_torsion(2));
        let s = sym_power(&sum(&[(l1.clone(), 1), (l2.clone(), 1)]), 2).unwrap();
        let expect = sum(&[
            (Bundle::line(2, TorsionLabel::trivial()), 1),
            (Bundle::line(1, TorsionLabel::two_torsion(2)), 1),
            (Bundle::line(0, TorsionLabel::trivial()), 1),
        ]);
        assert_eq!(s, expect);
        assert!(matches!(
            sym_power(&BundleSum::single(Bundle::syzygy()), 2),
            Err(BundleError::NotDeterminedByPaper(_))
        ));
    }

    #[test]
    fn tensor_power_closed_form_matches_iteration() {
        for q in 1..=8 {
            assert_eq!(tensor_power_syz(q), tensor_power_iterated(q).unwrap(), "q = {q}");
        }
        let t3 = tensor_power_syz(3);
        assert_eq!((t3.rank(), t3.degree(), t3.count()), (8, -108, 4));
        let t4 = tensor_power_syz(4);
        assert_eq!(t4.count(), 16);
        assert!(t4.parts().all(|(b, _)| b.degree() == -18));
    }

    #[test]
    fn frk_small() {
        let f = weierstrass(&rat(1, 1), &rat(0, 1));
        for q in [1, 3, 5, 7] {
            assert_eq!(frk_report(q, &f).unwrap().upper, 0);
        }
        assert_eq!(frk_report(0, &f).unwrap().upper, 1);
        let r2 = frk_report(2, &f).unwrap();
        assert_eq!(r2.upper, 0);
        // Two sections: Sym⁴ of the twisted syzygy bundle contains O twice.
        let r4 = frk_report(4, &f).unwrap();
        assert_eq!(r4.upper, 2, "{:?}", r4.certificate);
    }

    #[test]
    fn singular_curves() {
        let cusp = weierstrass(&rat(0, 1), &rat(0, 1));
        assert!(!weierstrass_nonsingular(&rat(0, 1), &rat(0, 1)));
        assert_eq!(frk_report(2, &cusp), Err(BundleError::SingularCurve));
        let node = weierstrass(&rat(-3, 1), &rat(2, 1));
        assert!(!is_nonsingular_cubic(&node).unwrap());
        assert!(is_nonsingular_cubic(&weierstrass(&rat(1, 1), &rat(0, 1))).unwrap());
    }

    #[test]
    fn differential() {
        assert_eq!(differential_cumulative_ratio(100), rat(1, 5151));
        let seq = differential_sym_sequence(5);
        assert_eq!(seq[1], BundleSum::single(Bundle::atiyah(2, 6)));
        assert_eq!(seq[5], BundleSum::single(Bundle::atiyah(6, 90)));
    }
}
