//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! An element of conductor `N` is stored as its canonical residue modulo the
//! cyclotomic polynomial Φ_N, i.e. as φ(N) rational coefficients with respect
//! to the power basis 1, ζ_N, …, ζ_N^{φ(N)-1}. Binary operations on elements
//! of different conductors first lift both operands to the lcm.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::scalar::{Field, RationalField, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {from} does not divide {to}")]
    NotADivisor { from: u64, to: u64 },
    #[error("invalid Galois exponent {k} for conductor {n}")]
    NotAUnit { k: i64, n: u64 },
    #[error("cannot parse cyclotomic number: {0}")]
    Parse(String),
}

/// Coefficients of Φ_N from the constant term upward.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "conductor must be positive");
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

pub fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Reduction data for one conductor.
#[derive(Debug)]
pub struct Context {
    n: u64,
    phi: usize,
    /// ζ_N^k reduced mod Φ_N for 0 <= k < N, as sparse (index, coefficient) lists.
    powers: Vec<Vec<(usize, i64)>>,
}

impl Context {
    fn build(n: u64) -> Context {
        let poly: Vec<i64> = cyclotomic_polynomial(n)
            .iter()
            .map(|c| c.to_i64().expect("cyclotomic coefficient overflow"))
            .collect();
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(i, c)| (i, *c))
                    .collect(),
            );
            // multiply by x and reduce the x^phi term
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (i, c) in cur.iter_mut().enumerate() {
                    *c = c
                        .checked_sub(top.checked_mul(poly[i]).expect("overflow"))
                        .expect("overflow");
                }
            }
        }
        Context { n, phi, powers }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi
    }
}

fn context(n: u64) -> Arc<Context> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Context>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("context cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(Context::build(n)))
        .clone()
}

fn lcm(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

/// Element of Q(ζ_N) with coefficients in `Q`.
#[derive(Clone)]
pub struct Cyclotomic<Q> {
    ctx: Arc<Context>,
    coeffs: Vec<Q>,
}

impl<Q: Ring> Cyclotomic<Q> {
    pub fn from_rational(q: Q) -> Self {
        Cyclotomic { ctx: context(1), coeffs: vec![q] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Q::from_i64(n))
    }

    /// ζ_n^k.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        let ctx = context(n);
        let idx = k.rem_euclid(n as i64) as usize;
        let mut coeffs = vec![Q::zero(); ctx.phi];
        for &(i, c) in &ctx.powers[idx] {
            coeffs[i] = Q::from_i64(c);
        }
        Cyclotomic { ctx, coeffs }
    }

    pub fn zeta(n: u64) -> Self {
        Self::root_of_unity(n, 1)
    }

    /// Σ vals[k] ζ_n^k for an arbitrary-length coefficient list.
    pub fn from_power_coeffs(n: u64, vals: &[Q]) -> Self {
        let ctx = context(n);
        let mut coeffs = vec![Q::zero(); ctx.phi];
        for (k, v) in vals.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            add_scaled_power(&mut coeffs, &ctx, k % n as usize, v);
        }
        Cyclotomic { ctx, coeffs }
    }

    pub fn conductor(&self) -> u64 {
        self.ctx.n
    }

    /// Power-basis coefficients, length φ(N).
    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Q> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Same element with coefficients converted by `f`; `None` if any conversion fails.
    pub fn try_map<R: Ring>(&self, f: impl Fn(&Q) -> Option<R>) -> Option<Cyclotomic<R>> {
        let coeffs = self.coeffs.iter().map(f).collect::<Option<Vec<R>>>()?;
        Some(Cyclotomic { ctx: self.ctx.clone(), coeffs })
    }

    /// Lift into Q(ζ_m); requires N | m.
    pub fn embed(&self, m: u64) -> Result<Self, CycloError> {
        let n = self.ctx.n;
        if m == 0 || m % n != 0 {
            return Err(CycloError::NotADivisor { from: n, to: m });
        }
        if m == n {
            return Ok(self.clone());
        }
        let ctx = context(m);
        let step = (m / n) as usize;
        let mut coeffs = vec![Q::zero(); ctx.phi];
        for (j, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                add_scaled_power(&mut coeffs, &ctx, (j * step) % m as usize, a);
            }
        }
        Ok(Cyclotomic { ctx, coeffs })
    }

    fn lift(&self, m: u64) -> Self {
        self.embed(m).expect("lift to a multiple of the conductor")
    }

    /// Automorphism ζ_N ↦ ζ_N^k for k a unit mod N.
    pub fn galois(&self, k: i64) -> Result<Self, CycloError> {
        let n = self.ctx.n;
        let kk = k.rem_euclid(n as i64) as u64;
        if kk.gcd(&n) != 1 {
            return Err(CycloError::NotAUnit { k, n });
        }
        let mut coeffs = vec![Q::zero(); self.ctx.phi];
        for (j, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                let idx = ((j as u64 * kk) % n) as usize;
                add_scaled_power(&mut coeffs, &self.ctx, idx, a);
            }
        }
        Ok(Cyclotomic { ctx: self.ctx.clone(), coeffs })
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conjugate(&self) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        self.galois(-1).expect("-1 is always a unit")
    }

    /// x · conj(x), a non-negative real number.
    pub fn abs_squared(&self) -> Self {
        self * &self.conjugate()
    }

    /// `a0 + a1*z + a2*z^2 ...` with `z = zeta_N` declared elsewhere.
    pub fn to_text(&self) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{j}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

}

impl<Q: RationalField> Cyclotomic<Q> {
    pub fn inverse(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.try_inv().expect("nonzero")));
        }
        let modulus: Vec<Q> = cyclotomic_polynomial(self.ctx.n)
            .into_iter()
            .map(Q::from_bigint)
            .collect();
        let inv = poly_inverse_mod(&self.coeffs, &modulus).ok_or(CycloError::DivisionByZero)?;
        let mut coeffs = inv;
        coeffs.resize(self.ctx.phi, Q::zero());
        Ok(Cyclotomic { ctx: self.ctx.clone(), coeffs })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CycloError> {
        Ok(self * &other.inverse()?)
    }

    /// Floating-point value (re, im), for display and tolerance checks only.
    pub fn approx(&self) -> (f64, f64) {
        let n = self.ctx.n as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let v = a.to_f64();
            let ang = 2.0 * std::f64::consts::PI * j as f64 / n;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    /// Smallest conductor d | N with the element in Q(ζ_d), re-expressed there.
    pub fn minimize_conductor(&self) -> Self {
        let n = self.ctx.n;
        if self.is_rational() {
            return Self::from_rational(self.coeffs[0].clone());
        }
        for d in 1..n {
            if n % d != 0 {
                continue;
            }
            if let Some(y) = self.restrict(d) {
                return y;
            }
        }
        self.clone()
    }

    fn restrict(&self, d: u64) -> Option<Self> {
        let n = self.ctx.n;
        let small = context(d);
        let step = (n / d) as usize;
        let phi = self.ctx.phi;
        let cols = small.phi;
        // Columns are images of ζ_d^j; augmented column holds self.
        let mut rows: Vec<Vec<Q>> = vec![vec![Q::zero(); cols + 1]; phi];
        for j in 0..cols {
            for &(i, c) in &self.ctx.powers[(j * step) % n as usize] {
                rows[i][j] = Q::from_i64(c);
            }
        }
        for i in 0..phi {
            rows[i][cols] = self.coeffs[i].clone();
        }
        let sol = solve_exact(rows, cols)?;
        let mut coeffs = sol;
        coeffs.resize(small.phi, Q::zero());
        Some(Cyclotomic { ctx: small, coeffs })
    }

    /// Inverse of [`Cyclotomic::to_text`] at conductor `n`.
    pub fn parse_text(s: &str, n: u64) -> Result<Self, CycloError> {
        let bad = || CycloError::Parse(s.to_string());
        let s = s.trim();
        let mut vals: Vec<Q> = Vec::new();
        if s == "0" {
            return Ok(Self::from_int(0).lift(n));
        }
        for term in s.split(" + ") {
            let term = term.trim();
            let (coef, power) = match term.split_once('*') {
                None if term == "z" => ("1", 1usize),
                None => match term.strip_prefix("z^") {
                    Some(p) => ("1", p.parse().map_err(|_| bad())?),
                    None => (term, 0),
                },
                Some((c, zpart)) => {
                    let p = if zpart == "z" {
                        1
                    } else {
                        zpart
                            .strip_prefix("z^")
                            .ok_or_else(bad)?
                            .parse()
                            .map_err(|_| bad())?
                    };
                    (c, p)
                }
            };
            let q = parse_rational::<Q>(coef).ok_or_else(bad)?;
            if vals.len() <= power {
                vals.resize(power + 1, Q::zero());
            }
            vals[power] = vals[power].clone() + q;
        }
        Ok(Self::from_power_coeffs(n, &vals))
    }
}

fn parse_rational<Q: RationalField>(s: &str) -> Option<Q> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Q::from_ratio(n, d))
}

fn add_scaled_power<Q: Ring>(out: &mut [Q], ctx: &Context, idx: usize, a: &Q) {
    for &(i, c) in &ctx.powers[idx] {
        match c {
            1 => out[i] = out[i].clone() + a.clone(),
            -1 => out[i] = out[i].clone() - a.clone(),
            _ => out[i] = out[i].clone() + a.clone() * Q::from_i64(c),
        }
    }
}

fn poly_trim<Q: RationalField>(p: &mut Vec<Q>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_is_zero<Q: RationalField>(p: &[Q]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn poly_divrem<Q: RationalField>(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let mut b = b.to_vec();
    poly_trim(&mut b);
    let db = b.len() - 1;
    let lead_inv = b[db].try_inv().expect("nonzero divisor");
    if r.len() < b.len() {
        return (vec![Q::zero()], r);
    }
    let mut q = vec![Q::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone() * lead_inv.clone();
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            r[k + j] = r[k + j].clone() - c.clone() * b[j].clone();
        }
        q[k] = c;
    }
    r.truncate(db.max(1));
    poly_trim(&mut r);
    (q, r)
}

fn poly_mul<Q: RationalField>(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

fn poly_sub<Q: RationalField>(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let mut out = vec![Q::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] = x.clone();
    }
    for (i, y) in b.iter().enumerate() {
        out[i] = out[i].clone() - y.clone();
    }
    poly_trim(&mut out);
    out
}

/// Inverse of `a` modulo the irreducible `m` via the extended Euclidean algorithm.
fn poly_inverse_mod<Q: RationalField>(a: &[Q], m: &[Q]) -> Option<Vec<Q>> {
    let (mut r0, mut r1) = (m.to_vec(), poly_divrem(a, m).1);
    let (mut t0, mut t1) = (vec![Q::zero()], vec![Q::one()]);
    while !poly_is_zero(&r1) {
        let (q, r) = poly_divrem(&r0, &r1);
        let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t2;
    }
    poly_trim(&mut r0);
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].try_inv()?;
    let mut inv: Vec<Q> = t0.into_iter().map(|x| x * c.clone()).collect();
    inv = poly_divrem(&inv, m).1;
    Some(inv)
}

/// Solve an augmented system with `cols` unknowns; `None` if inconsistent.
fn solve_exact<Q: RationalField>(mut rows: Vec<Vec<Q>>, cols: usize) -> Option<Vec<Q>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].try_inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..=cols {
                    let v = rows[r][k].clone();
                    rows[i][k] = rows[i][k].clone() - f.clone() * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut sol = vec![Q::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = rows[i][cols].clone();
    }
    Some(sol)
}

fn same_conductor<Q: Ring>(a: &Cyclotomic<Q>, b: &Cyclotomic<Q>) -> (Cyclotomic<Q>, Cyclotomic<Q>) {
    let m = lcm(a.ctx.n, b.ctx.n);
    (a.lift(m), b.lift(m))
}

fn mul_same<Q: Ring>(a: &Cyclotomic<Q>, b: &Cyclotomic<Q>) -> Cyclotomic<Q> {
    let ctx = &a.ctx;
    let phi = ctx.phi;
    let n = ctx.n as usize;
    let mut prod = vec![Q::zero(); 2 * phi - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            prod[i + j] = prod[i + j].clone() + x.clone() * y.clone();
        }
    }
    let mut coeffs: Vec<Q> = prod[..phi].to_vec();
    for (k, v) in prod.iter().enumerate().skip(phi) {
        if !v.is_zero() {
            add_scaled_power(&mut coeffs, ctx, k % n, v);
        }
    }
    Cyclotomic { ctx: ctx.clone(), coeffs }
}

fn scale<Q: Ring>(a: &Cyclotomic<Q>, s: &Q) -> Cyclotomic<Q> {
    if s.is_zero() {
        return Cyclotomic::from_rational(Q::zero());
    }
    Cyclotomic {
        ctx: a.ctx.clone(),
        coeffs: a.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
    }
}

impl<Q: Ring> PartialEq for Cyclotomic<Q> {
    fn eq(&self, other: &Self) -> bool {
        if self.ctx.n == other.ctx.n {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = same_conductor(self, other);
        a.coeffs == b.coeffs
    }
}

impl<Q: Ring> Eq for Cyclotomic<Q> {}

impl<Q: Ring> fmt::Debug for Cyclotomic<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]({})", self.ctx.n, self.to_text())
    }
}

impl<Q: Ring> fmt::Display for Cyclotomic<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<'a, Q: Ring> Add<&'a Cyclotomic<Q>> for &'a Cyclotomic<Q> {
    type Output = Cyclotomic<Q>;
    fn add(self, rhs: &'a Cyclotomic<Q>) -> Cyclotomic<Q> {
        if self.ctx.n == rhs.ctx.n {
            return Cyclotomic {
                ctx: self.ctx.clone(),
                coeffs: self
                    .coeffs
                    .iter()
                    .zip(&rhs.coeffs)
                    .map(|(a, b)| a.clone() + b.clone())
                    .collect(),
            };
        }
        let (a, b) = same_conductor(self, rhs);
        &a + &b
    }
}

impl<'a, Q: Ring> Sub<&'a Cyclotomic<Q>> for &'a Cyclotomic<Q> {
    type Output = Cyclotomic<Q>;
    fn sub(self, rhs: &'a Cyclotomic<Q>) -> Cyclotomic<Q> {
        if self.ctx.n == rhs.ctx.n {
            return Cyclotomic {
                ctx: self.ctx.clone(),
                coeffs: self
                    .coeffs
                    .iter()
                    .zip(&rhs.coeffs)
                    .map(|(a, b)| a.clone() - b.clone())
                    .collect(),
            };
        }
        let (a, b) = same_conductor(self, rhs);
        &a - &b
    }
}

impl<'a, Q: Ring> Mul<&'a Cyclotomic<Q>> for &'a Cyclotomic<Q> {
    type Output = Cyclotomic<Q>;
    fn mul(self, rhs: &'a Cyclotomic<Q>) -> Cyclotomic<Q> {
        if let Some(s) = rhs.as_rational() {
            return scale(self, &s);
        }
        if let Some(s) = self.as_rational() {
            return scale(rhs, &s);
        }
        if self.ctx.n == rhs.ctx.n {
            return mul_same(self, rhs);
        }
        let (a, b) = same_conductor(self, rhs);
        mul_same(&a, &b)
    }
}

impl<Q: Ring> Neg for &Cyclotomic<Q> {
    type Output = Cyclotomic<Q>;
    fn neg(self) -> Cyclotomic<Q> {
        Cyclotomic {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<Q: Ring> Neg for Cyclotomic<Q> {
    type Output = Cyclotomic<Q>;
    fn neg(self) -> Cyclotomic<Q> {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<Q: Ring> $tr for Cyclotomic<Q> {
            type Output = Cyclotomic<Q>;
            fn $m(self, rhs: Cyclotomic<Q>) -> Cyclotomic<Q> {
                (&self).$m(&rhs)
            }
        }
        impl<'a, Q: Ring> $tr<&'a Cyclotomic<Q>> for Cyclotomic<Q> {
            type Output = Cyclotomic<Q>;
            fn $m(self, rhs: &'a Cyclotomic<Q>) -> Cyclotomic<Q> {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<Q: RationalField> Div for Cyclotomic<Q> {
    type Output = Cyclotomic<Q>;
    /// Panics on division by zero; use [`Cyclotomic::checked_div`] to handle it.
    fn div(self, rhs: Cyclotomic<Q>) -> Cyclotomic<Q> {
        self.checked_div(&rhs).expect("cyclotomic division by zero")
    }
}

impl<Q: Ring> AddAssign<&Cyclotomic<Q>> for Cyclotomic<Q> {
    fn add_assign(&mut self, rhs: &Cyclotomic<Q>) {
        if self.ctx.n == rhs.ctx.n {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                if !b.is_zero() {
                    *a = a.clone() + b.clone();
                }
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl<Q: Ring> SubAssign<&Cyclotomic<Q>> for Cyclotomic<Q> {
    fn sub_assign(&mut self, rhs: &Cyclotomic<Q>) {
        if self.ctx.n == rhs.ctx.n {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                if !b.is_zero() {
                    *a = a.clone() - b.clone();
                }
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl<Q: Ring> MulAssign<&Cyclotomic<Q>> for Cyclotomic<Q> {
    fn mul_assign(&mut self, rhs: &Cyclotomic<Q>) {
        *self = &*self * rhs;
    }
}

impl<Q: Ring> Zero for Cyclotomic<Q> {
    fn zero() -> Self {
        Self::from_rational(Q::zero())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl<Q: Ring> One for Cyclotomic<Q> {
    fn one() -> Self {
        Self::from_rational(Q::one())
    }
}

impl<Q: Ring> Ring for Cyclotomic<Q> {
    fn from_i64(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<Q: RationalField> Field for Cyclotomic<Q> {
    fn try_inv(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::CycloNum;
    use num_rational::BigRational;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(8), ints(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi_105_has_a_coefficient_minus_two() {
        let p = cyclotomic_polynomial(105);
        assert_eq!(p.len() - 1, 48);
        assert!(p.contains(&BigInt::from(-2)));
    }

    #[test]
    fn sqrt_two_squares_to_two() {
        let s = CycloNum::root_of_unity(8, 1) + CycloNum::root_of_unity(8, 7);
        assert_eq!(&s * &s, CycloNum::from_int(2));
    }

    #[test]
    fn sum_of_primitive_cube_roots() {
        let s = CycloNum::root_of_unity(3, 1) + CycloNum::root_of_unity(3, 2);
        assert_eq!(s, CycloNum::from_int(-1));
        assert_eq!(s.as_rational(), Some(rat(-1, 1)));
    }

    #[test]
    fn inverse_of_sqrt_five() {
        let z = |k| CycloNum::root_of_unity(5, k);
        let s = z(1) - z(2) - z(3) + z(4);
        let inv = s.inverse().unwrap();
        assert_eq!(inv, &s * &CycloNum::from_rational(rat(1, 5)));
        assert_eq!(&s * &s, CycloNum::from_int(5));
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(CycloNum::zero().inverse(), Err(CycloError::DivisionByZero));
    }

    #[test]
    fn embed_requires_divisor() {
        let z = CycloNum::zeta(6);
        assert!(matches!(z.embed(8), Err(CycloError::NotADivisor { from: 6, to: 8 })));
        let e = z.embed(24).unwrap();
        assert_eq!(e.conductor(), 24);
        assert_eq!(e, CycloNum::root_of_unity(24, 4));
    }

    #[test]
    fn mixed_conductor_sum() {
        let i = CycloNum::zeta(4);
        let w = CycloNum::zeta(3);
        let s = &i + &w;
        assert_eq!(s.conductor(), 12);
        assert_eq!(&s - &w, i);
    }

    #[test]
    fn minimize_conductor_finds_subfield() {
        let x = CycloNum::root_of_unity(24, 8).minimize_conductor();
        assert_eq!(x.conductor(), 3);
        let r = (CycloNum::root_of_unity(24, 3) + CycloNum::root_of_unity(24, 21)).minimize_conductor();
        assert_eq!(r.conductor(), 8);
    }

    #[test]
    fn text_round_trip() {
        let x = CycloNum::zeta(8) * CycloNum::from_rational(rat(-3, 2)) + CycloNum::from_int(5).embed(8).unwrap();
        let t = x.to_text();
        assert_eq!(t, "5 + -3/2*z");
        assert_eq!(CycloNum::parse_text(&t, 8).unwrap(), x);
    }

    #[test]
    fn approx_of_zeta() {
        let (re, im) = CycloNum::zeta(8).approx();
        assert!((re - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((im - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn galois_non_unit_rejected() {
        assert!(CycloNum::zeta(12).galois(2).is_err());
    }

    #[test]
    fn rational_inverse() {
        let x = CycloNum::from_rational(BigRational::new(2.into(), 7.into()));
        assert_eq!(x.inverse().unwrap(), CycloNum::from_rational(rat(7, 2)));
    }
}
