//! Lattice-point counts for diagonal cyclic actions.
//!
//! For C_n acting on k[x_1, …, x_ν] with weights w, the monomial x^a has
//! weight Σ w_i a_i mod n. The multiplicity of the character t in degree q
//! is the number of points of the shifted lattice {a : w·a ≡ t} on the
//! simplex |a| = q.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::scalar::rat;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("only one or two weights are supported, got {0}")]
    Unsupported(usize),
    #[error("no solution of w·x ≡ {t} mod {n}")]
    NoSolution { t: u64, n: u64 },
    #[error("representation is not faithful")]
    NotFaithful,
    #[error("modulus must be positive")]
    ZeroModulus,
}

/// The representation g ↦ diag(ξ^{w_1}, …, ξ^{w_ν}) of C_n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightRep {
    pub n: u64,
    pub weights: Vec<u64>,
}

impl WeightRep {
    pub fn new(n: u64, weights: Vec<u64>) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::ZeroModulus);
        }
        if weights.is_empty() || weights.len() > 2 {
            return Err(LatticeError::Unsupported(weights.len()));
        }
        Ok(WeightRep { n, weights: weights.into_iter().map(|w| w % n).collect() })
    }

    /// The weights (1, a) of the quotient 1/n(1, a).
    pub fn one_a(n: u64, a: u64) -> Result<Self, LatticeError> {
        Self::new(n, vec![1, a])
    }

    /// gcd(n, w_1, …, w_ν); the weight image in Z/n has index equal to it.
    pub fn weight_gcd(&self) -> u64 {
        self.weights.iter().fold(self.n, |g, &w| g.gcd(&w))
    }
}

/// Faithful iff the lcm of the orders of ξ^{w_i} is n.
pub fn is_faithful(rep: &WeightRep) -> bool {
    let order = rep.weights.iter().fold(1u64, |l, &w| l.lcm(&(rep.n / rep.n.gcd(&w))));
    order == rep.n
}

/// {x : w·x ≡ t mod n} = offset + span(basis).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelLattice {
    /// Rows of the Hermite normal form of the lattice of w·x ≡ 0.
    pub basis: Vec<Vec<i64>>,
    pub offset: Vec<i64>,
    /// [Z^ν : L] from the HNF diagonal.
    pub index: u64,
    /// Elementary divisors of the basis matrix.
    pub smith: Vec<i64>,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    (e.gcd, e.x, e.y)
}

/// Row-style Hermite normal form: upper triangular, positive pivots,
/// entries above a pivot reduced into [0, pivot).
pub fn hermite_normal_form(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if a[i][c] == 0 {
                continue;
            }
            let (g, x, y) = ext_gcd(a[r][c], a[i][c]);
            let (p, q) = (a[r][c] / g, a[i][c] / g);
            let (top, bot) = (a[r].clone(), a[i].clone());
            for k in 0..cols {
                a[r][k] = x * top[k] + y * bot[k];
                a[i][k] = -q * top[k] + p * bot[k];
            }
        }
        if a[r][c] == 0 {
            continue;
        }
        if a[r][c] < 0 {
            for v in a[r].iter_mut() {
                *v = -*v;
            }
        }
        let piv = a[r][c];
        for i in 0..r {
            let f = Integer::div_floor(&a[i][c], &piv);
            if f != 0 {
                for k in 0..cols {
                    a[i][k] -= f * a[r][k];
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Elementary divisors d_1 | d_2 | … of an integer matrix.
pub fn smith_invariants(m: &[Vec<i64>]) -> Vec<i64> {
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // move a nonzero entry of least magnitude to (t, t)
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                diag.sort_unstable();
                return diag;
            };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let f = a[i][t] / p;
                for k in t..cols {
                    a[i][k] -= f * a[t][k];
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let f = a[t][j] / p;
                for row in a.iter_mut().skip(t) {
                    row[j] -= f * row[t];
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // enforce divisibility of the remaining block
            let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % p != 0);
            match bad {
                Some((i, _)) => {
                    for k in t..cols {
                        a[t][k] += a[i][k];
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

/// Lattice of w·x ≡ 0 mod n with a particular solution of w·x ≡ t.
pub fn kernel_lattice(rep: &WeightRep, t: u64) -> Result<KernelLattice, LatticeError> {
    let nu = rep.weights.len();
    let n = rep.n as i64;
    // Column operations on the row (w_1, …, w_ν, n) tracked in u.
    let mut row: Vec<i64> = rep.weights.iter().map(|&w| w as i64).chain([n]).collect();
    let size = nu + 1;
    let mut u: Vec<Vec<i64>> = (0..size).map(|i| (0..size).map(|j| i64::from(i == j)).collect()).collect();
    for j in 1..size {
        if row[j] == 0 {
            continue;
        }
        let (g, x, y) = ext_gcd(row[0], row[j]);
        let (p, q) = (row[0] / g, row[j] / g);
        for r in u.iter_mut() {
            let (c0, cj) = (r[0], r[j]);
            r[0] = x * c0 + y * cj;
            r[j] = -q * c0 + p * cj;
        }
        row[0] = g;
        row[j] = 0;
    }
    let g = row[0].abs();
    let sign = row[0].signum();
    if t as i64 % g != 0 {
        return Err(LatticeError::NoSolution { t, n: rep.n });
    }
    let scale = sign * (t as i64 / g);
    let offset: Vec<i64> = (0..nu).map(|i| (u[i][0] * scale).rem_euclid(n)).collect();
    let gens: Vec<Vec<i64>> = (1..size).map(|j| (0..nu).map(|i| u[i][j]).collect()).collect();
    let basis = hermite_normal_form(&gens);
    let index = (0..nu).map(|i| basis[i][i]).product::<i64>() as u64;
    let smith = smith_invariants(&basis);
    Ok(KernelLattice { basis, offset, index, smith })
}

fn check_dims(rep: &WeightRep) -> Result<(), LatticeError> {
    if rep.weights.is_empty() || rep.weights.len() > 2 {
        return Err(LatticeError::Unsupported(rep.weights.len()));
    }
    Ok(())
}

/// #{x ∈ N^ν : Σ x_i = q, w·x ≡ t mod n}, by enumerating the slice.
pub fn count_simplex_points(rep: &WeightRep, t: u64, q: u64) -> Result<u64, LatticeError> {
    check_dims(rep)?;
    let n = rep.n;
    let t = t % n;
    if rep.weights.len() == 1 {
        return Ok(u64::from((rep.weights[0] * (q % n)) % n == t));
    }
    let (w1, w2) = (rep.weights[0], rep.weights[1]);
    // weight of u^{x} v^{q-x}, stepped as x increases
    let mut wt = (w2 * (q % n)) % n;
    let step = (w1 + n - w2) % n;
    let mut count = 0;
    for _ in 0..=q {
        if wt == t {
            count += 1;
        }
        wt = (wt + step) % n;
    }
    Ok(count)
}

/// The same count from the Hermite basis of the kernel lattice.
pub fn count_simplex_points_lattice(rep: &WeightRep, t: u64, q: u64) -> Result<u64, LatticeError> {
    check_dims(rep)?;
    let lat = match kernel_lattice(rep, t % rep.n) {
        Ok(l) => l,
        Err(LatticeError::NoSolution { .. }) => return Ok(0),
        Err(e) => return Err(e),
    };
    let q = q as i64;
    if rep.weights.len() == 1 {
        let d = lat.basis[0][0];
        return Ok(u64::from((q - lat.offset[0]).rem_euclid(d) == 0));
    }
    let (a, b, d) = (lat.basis[0][0], lat.basis[0][1], lat.basis[1][1]);
    let (o1, o2) = (lat.offset[0], lat.offset[1]);
    // x1 = o1 + k a ∈ [0, q]; then q - x1 ≡ o2 + k b mod d
    let kmin = -Integer::div_floor(&o1, &a);
    let kmax = Integer::div_floor(&(q - o1), &a);
    let mut count = 0;
    let mut k = kmin;
    while k <= kmax {
        let x1 = o1 + k * a;
        if (q - x1 - o2 - k * b).rem_euclid(d) == 0 {
            count += 1;
        }
        k += 1;
    }
    Ok(count)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticeRatio {
    pub qmax: u64,
    pub alpha: u64,
    pub beta: u64,
    #[serde(serialize_with = "crate::signature::ser_rational")]
    pub ratio: Rational,
    #[serde(serialize_with = "crate::signature::ser_rational")]
    pub limit: Rational,
}

impl LatticeRatio {
    pub fn abs_error(&self) -> Rational {
        let d = &self.ratio - &self.limit;
        if d < rat(0, 1) {
            -d
        } else {
            d
        }
    }
}

/// Σ_{q≤N} α_{t,q} / Σ_{q≤N} dim Sym^q, against the limit 1/n.
pub fn ratio_to_limit(rep: &WeightRep, t: u64, qmax: u64) -> Result<LatticeRatio, LatticeError> {
    check_dims(rep)?;
    if !is_faithful(rep) {
        return Err(LatticeError::NotFaithful);
    }
    let nu = rep.weights.len() as u64;
    let mut alpha = 0u64;
    let mut beta = 0u64;
    for q in 0..=qmax {
        alpha += count_simplex_points(rep, t, q)?;
        beta += if nu == 1 { 1 } else { q + 1 };
    }
    Ok(LatticeRatio {
        qmax,
        alpha,
        beta,
        ratio: Rational::new(BigInt::from(alpha), BigInt::from(beta)),
        limit: rat(1, rep.n as i64),
    })
}

/// Minimal generators u^i v^j of the invariants of 1/n(1, a), highest power of u first.
pub fn minimal_invariant_monomials(n: u64, a: u64) -> Vec<(u64, u64)> {
    let inv: Vec<(u64, u64)> = (0..=n)
        .flat_map(|i| (0..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| (i, j) != (0, 0) && (i + a * j) % n == 0)
        .collect();
    let mut out: Vec<(u64, u64)> = inv
        .iter()
        .copied()
        .filter(|&(i, j)| {
            !inv.iter().any(|&(p, r)| (p, r) != (i, j) && p <= i && r <= j && ((i - p) + a * (j - r)) % n == 0 && (i - p, j - r) != (0, 0))
        })
        .collect();
    out.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    out
}
