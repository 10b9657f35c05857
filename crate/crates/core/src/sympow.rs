//! Characters and multiplicities of symmetric powers Sym^q(V).
//!
//! Four independent routes are provided: the Chebyshev-type recurrence for
//! special linear representations, the diagonal coefficients of the
//! substitution action on monomials, complete homogeneous polynomials in
//! eigenvalues for diagonal groups, and the power series of 1/det(1 - tM).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::characters::{CharError, Character, CharacterTable, Representation};
use crate::cyclotomic::Cyclotomic;
use crate::scalar::RationalField;
use crate::{CycloMatrix, CycloNum, IntCyclo};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymError {
    #[error("recurrence needs a two-dimensional representation of determinant one")]
    NotSL2,
    #[error("eigenvalue method needs diagonal class representatives")]
    NotDiagonal,
    #[error("multiplicity of irreducible {index} in degree {q} is not an integer")]
    NonIntegerCoefficient { q: usize, index: usize },
    #[error("element order {m} is too small for the tail bound")]
    OrderTooSmall { m: u64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Char(#[from] CharError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SymMethod {
    Recurrence,
    Monomial,
    Eigen,
    Springer,
}

impl SymMethod {
    pub const ALL: [SymMethod; 4] = [SymMethod::Recurrence, SymMethod::Monomial, SymMethod::Eigen, SymMethod::Springer];

    /// Recurrence for special linear representations, monomial traces otherwise.
    pub fn default_for(rep: &Representation) -> SymMethod {
        if rep.dimension() == 2 && rep.is_special() {
            SymMethod::Recurrence
        } else {
            SymMethod::Monomial
        }
    }
}

impl fmt::Display for SymMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymMethod::Recurrence => "recurrence",
            SymMethod::Monomial => "monomial",
            SymMethod::Eigen => "eigen",
            SymMethod::Springer => "springer",
        })
    }
}

impl FromStr for SymMethod {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "recurrence" => Ok(SymMethod::Recurrence),
            "monomial" => Ok(SymMethod::Monomial),
            "eigen" => Ok(SymMethod::Eigen),
            "springer" | "molien" => Ok(SymMethod::Springer),
            _ => Err(format!("unknown method {s}")),
        }
    }
}

/// Characters of Sym^0 .. Sym^qmax.
pub fn sym_characters(rep: &Representation, qmax: usize, method: SymMethod) -> Result<Vec<Character>, SymError> {
    match method {
        SymMethod::Recurrence => recurrence_series(rep, qmax),
        SymMethod::Springer => {
            let group = rep.group();
            let per_class: Vec<Vec<CycloNum>> = (0..group.num_classes())
                .map(|c| springer_coefficients(rep.class_image(c), qmax))
                .collect();
            Ok((0..=qmax)
                .map(|q| Character::new(group, per_class.iter().map(|v| v[q].clone()).collect()))
                .collect())
        }
        _ => (0..=qmax).map(|q| sym_character(rep, q, method)).collect(),
    }
}

/// Character of Sym^q(V).
pub fn sym_character(rep: &Representation, q: usize, method: SymMethod) -> Result<Character, SymError> {
    let group = rep.group();
    let classes = 0..group.num_classes();
    let values: Vec<CycloNum> = match method {
        SymMethod::Recurrence => return Ok(recurrence_series(rep, q)?.pop().expect("non-empty")),
        SymMethod::Monomial => {
            if rep.dimension() != 2 {
                return Err(SymError::Unsupported("monomial traces are implemented for rank 2".into()));
            }
            classes.map(|c| monomial_trace(rep.class_image(c), q)).collect()
        }
        SymMethod::Eigen => {
            let mut out = Vec::new();
            for c in classes {
                let m = rep.class_image(c);
                if !m.is_diagonal() {
                    return Err(SymError::NotDiagonal);
                }
                let eig: Vec<CycloNum> = (0..m.rows()).map(|i| m[(i, i)].clone()).collect();
                out.push(complete_homogeneous(&eig, q));
            }
            out
        }
        SymMethod::Springer => classes.map(|c| springer_coefficients(rep.class_image(c), q).pop().expect("len q+1")).collect(),
    };
    Ok(Character::new(group, values))
}

/// χ_q = χ_1 · χ_{q-1} - χ_{q-2}, valid when V is two-dimensional of determinant one.
fn recurrence_series(rep: &Representation, qmax: usize) -> Result<Vec<Character>, SymError> {
    if rep.dimension() != 2 || !rep.is_special() {
        return Err(SymError::NotSL2);
    }
    let group = rep.group();
    let chi1 = rep.character();
    let mut out = vec![Character::trivial(group)];
    if qmax >= 1 {
        out.push(chi1.clone());
    }
    for q in 2..=qmax {
        let next = chi1.tensor(&out[q - 1])?.difference(&out[q - 2])?;
        out.push(next);
    }
    Ok(out)
}

fn binomials(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = row[k].clone() * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

fn powers(x: &CycloNum, n: usize) -> Vec<CycloNum> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(CycloNum::one());
    for k in 1..=n {
        out.push(&out[k - 1] * x);
    }
    out
}

/// Σ_t [u^t v^{q-t}] (a u + b v)^t (c u + d v)^{q-t} for M = [[a, b], [c, d]].
pub fn monomial_trace(m: &CycloMatrix, q: usize) -> CycloNum {
    let (pa, pb) = (powers(&m[(0, 0)], q), powers(&m[(0, 1)], q));
    let (pc, pd) = (powers(&m[(1, 0)], q), powers(&m[(1, 1)], q));
    let binom: Vec<Vec<BigInt>> = (0..=q).map(binomials).collect();
    let mut total = CycloNum::zero();
    for t in 0..=q {
        let s = q - t;
        // choose i powers of a from the first factor and j = t - i of c from the second
        for i in t.saturating_sub(s)..=t {
            let j = t - i;
            let coef = &binom[t][i] * &binom[s][j];
            let ab = &pa[i] * &pb[t - i];
            if ab.is_zero() {
                continue;
            }
            let cd = &pc[j] * &pd[s - j];
            if cd.is_zero() {
                continue;
            }
            let term = &ab * &cd;
            total += &(term * CycloNum::from_rational(crate::Rational::from_bigint(coef)));
        }
    }
    total
}

/// h_q(x_1, ..., x_n).
pub fn complete_homogeneous(xs: &[CycloNum], q: usize) -> CycloNum {
    let mut h = vec![CycloNum::zero(); q + 1];
    h[0] = CycloNum::one();
    for x in xs {
        for k in 1..=q {
            let add = x * &h[k - 1];
            h[k] += &add;
        }
    }
    h.pop().expect("q+1 entries")
}

/// Coefficients c_0..c_qmax of 1/det(1 - tM).
pub fn springer_coefficients(m: &CycloMatrix, qmax: usize) -> Vec<CycloNum> {
    let n = m.rows();
    let cp = m.char_poly(); // det(tI - M) = Σ cp[k] t^k
    // det(1 - tM) = Σ_k cp[n - k] t^k
    let a: Vec<CycloNum> = (0..=n).map(|k| cp[n - k].clone()).collect();
    let mut c = Vec::with_capacity(qmax + 1);
    c.push(CycloNum::one());
    for q in 1..=qmax {
        let mut acc = CycloNum::zero();
        for k in 1..=n.min(q) {
            acc -= &(&a[k] * &c[q - k]);
        }
        c.push(acc);
    }
    c
}

/// Multiplicities of the irreducibles in Sym^q(V).
pub fn multiplicities(
    table: &CharacterTable,
    rep: &Representation,
    q: usize,
    method: SymMethod,
) -> Result<Vec<u64>, SymError> {
    Ok(table.decompose(&sym_character(rep, q, method)?)?)
}

/// α_{i,q} = (1/|G|) Σ_c |c| χ_i(c⁻¹) c_q(c), read off the Molien-type series.
pub fn molien_multiplicities(
    table: &CharacterTable,
    rep: &Representation,
    qmax: usize,
) -> Result<Vec<Vec<u64>>, SymError> {
    let group = rep.group();
    let order = CycloNum::from_int(group.order() as i64);
    let per_class: Vec<Vec<CycloNum>> =
        (0..group.num_classes()).map(|c| springer_coefficients(rep.class_image(c), qmax)).collect();
    let mut out = Vec::with_capacity(qmax + 1);
    for q in 0..=qmax {
        let mut row = Vec::with_capacity(table.len());
        for (i, chi) in table.irreducibles().iter().enumerate() {
            let mut acc = CycloNum::zero();
            for (c, class) in group.classes().iter().enumerate() {
                let v = chi.value(group.inverse_class(c)) * &per_class[c][q];
                acc += &(v * CycloNum::from_int(class.size() as i64));
            }
            let alpha = (acc / order.clone()).as_rational();
            match alpha.filter(|a| a.is_integral()).and_then(|a| a.to_integer().to_u64()) {
                Some(v) => row.push(v),
                None => return Err(SymError::NonIntegerCoefficient { q, index: i }),
            }
        }
        out.push(row);
    }
    Ok(out)
}

/// Multiplicity vectors for q = 0..=qmax.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymSeries {
    pub labels: Vec<String>,
    pub dims: Vec<u64>,
    pub method: SymMethod,
    /// `multiplicities[q][i]` is the multiplicity of irreducible i in Sym^q.
    pub multiplicities: Vec<Vec<u64>>,
}

impl SymSeries {
    pub fn qmax(&self) -> usize {
        self.multiplicities.len() - 1
    }

    /// dim Sym^q = Σ_i α_{i,q} dim V_i.
    pub fn rank(&self, q: usize) -> u64 {
        self.multiplicities[q].iter().zip(&self.dims).map(|(a, d)| a * d).sum()
    }
}

pub fn sym_series(
    table: &CharacterTable,
    rep: &Representation,
    qmax: usize,
    method: SymMethod,
) -> Result<SymSeries, SymError> {
    let multiplicities = match method {
        SymMethod::Springer => molien_multiplicities(table, rep, qmax)?,
        _ => sym_characters(rep, qmax, method)?
            .iter()
            .map(|chi| table.decompose(chi))
            .collect::<Result<Vec<_>, _>>()?,
    };
    Ok(SymSeries { labels: table.labels().to_vec(), dims: table.dims(), method, multiplicities })
}

fn to_int(x: &CycloNum, n: u64) -> Option<IntCyclo> {
    x.embed(n).ok()?.try_map(|c| if c.is_integral() { c.to_integer().to_i64() } else { None })
}

/// Streaming multiplicities over algebraic-integer coefficients.
///
/// Uses c_q = Σ_k -a_k c_{q-k} per class (a_k from det(1 - tM)) and
/// |G| α_{i,q} = Σ_c |c| conj(χ_i(c)) c_q(c), all in Z[ζ_N].
pub struct MultiplicityStream {
    order: i64,
    /// Coefficients -a_1..-a_n of the recurrence, per class.
    recur: Vec<Vec<IntCyclo>>,
    /// |c| conj(χ_i(c)), indexed [i][c].
    weights: Vec<Vec<IntCyclo>>,
    /// Last n coefficients per class, most recent last.
    history: Vec<Vec<IntCyclo>>,
    q: usize,
}

impl MultiplicityStream {
    pub fn new(table: &CharacterTable, rep: &Representation) -> Result<Self, SymError> {
        let group = rep.group();
        let n = group.conductor();
        let not_integral = || SymError::Unsupported("character values are not algebraic integers".into());
        let mut recur = Vec::new();
        for c in 0..group.num_classes() {
            let m = rep.class_image(c);
            let cp = m.char_poly();
            let dim = m.rows();
            let mut r = Vec::with_capacity(dim);
            for k in 1..=dim {
                r.push(to_int(&-&cp[dim - k], n).ok_or_else(not_integral)?);
            }
            recur.push(r);
        }
        let mut weights = Vec::new();
        for chi in table.irreducibles() {
            let mut w = Vec::new();
            for (c, class) in group.classes().iter().enumerate() {
                let v = chi.value(c).conjugate() * CycloNum::from_int(class.size() as i64);
                w.push(to_int(&v, n).ok_or_else(not_integral)?);
            }
            weights.push(w);
        }
        let history = recur.iter().map(|_| Vec::new()).collect();
        Ok(MultiplicityStream { order: group.order() as i64, recur, weights, history, q: 0 })
    }

    /// Multiplicities for the next degree, starting at q = 0.
    pub fn next_degree(&mut self) -> Result<Vec<u64>, SymError> {
        let q = self.q;
        let mut values = Vec::with_capacity(self.recur.len());
        for (c, r) in self.recur.iter().enumerate() {
            let h = &mut self.history[c];
            let v = if q == 0 {
                Cyclotomic::one()
            } else {
                let mut acc: IntCyclo = Cyclotomic::zero();
                for (k, coef) in r.iter().enumerate() {
                    if k < h.len() {
                        acc += &(coef * &h[h.len() - 1 - k]);
                    }
                }
                acc
            };
            h.push(v.clone());
            if h.len() > r.len() {
                h.remove(0);
            }
            values.push(v);
        }
        let mut out = Vec::with_capacity(self.weights.len());
        for (i, w) in self.weights.iter().enumerate() {
            let mut acc: IntCyclo = Cyclotomic::zero();
            for (wc, v) in w.iter().zip(&values) {
                acc += &(wc * v);
            }
            match acc.as_rational() {
                Some(s) if s % self.order == 0 && s >= 0 => out.push((s / self.order) as u64),
                _ => return Err(SymError::NonIntegerCoefficient { q, index: i }),
            }
        }
        self.q += 1;
        Ok(out)
    }
}

/// sup over q <= qmax of |Σ_t ξ^{2t-q}| for ξ a primitive m-th root of unity.
pub fn bounded_tail_check(m: u64, qmax: usize) -> Result<f64, SymError> {
    if m <= 2 {
        return Err(SymError::OrderTooSmall { m });
    }
    let xi: IntCyclo = Cyclotomic::root_of_unity(m, 1);
    let tr = &xi + &xi.conjugate();
    let mut prev: IntCyclo = Cyclotomic::one();
    let mut cur = tr.clone();
    let abs = |x: &IntCyclo| {
        let n = x.conductor() as f64;
        x.coeffs()
            .iter()
            .enumerate()
            .map(|(j, &a)| a as f64 * (2.0 * std::f64::consts::PI * j as f64 / n).cos())
            .sum::<f64>()
            .abs()
    };
    let mut sup = abs(&prev);
    if qmax >= 1 {
        sup = sup.max(abs(&cur));
    }
    for _ in 2..=qmax {
        let next = &(&tr * &cur) - &prev;
        prev = cur;
        cur = next;
        sup = sup.max(abs(&cur));
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::irreducible_table;
    use crate::groups::make_group;
    use std::sync::Arc;

    fn setup(s: &str) -> (CharacterTable, Representation) {
        let g = Arc::new(make_group(&s.parse().unwrap()).unwrap());
        let t = irreducible_table(&g).unwrap();
        (t, Representation::fundamental(&g))
    }

    #[test]
    fn bd2_sym2_character_and_multiplicities() {
        let (t, rep) = setup("D:2");
        let g = rep.group().clone();
        let chi = sym_character(&rep, 2, SymMethod::Recurrence).unwrap();
        // classes of e, a², a, b, ab
        let cols = [g.word(&[]), g.word(&[0, 0]), g.word(&[0]), g.word(&[1]), g.word(&[0, 1])];
        let vals: Vec<CycloNum> = cols.iter().map(|&e| chi.value(g.class_of(e)).clone()).collect();
        let expect: Vec<CycloNum> = [3, 3, -1, -1, -1].iter().map(|&x| CycloNum::from_int(x)).collect();
        assert_eq!(vals, expect);
        assert_eq!(multiplicities(&t, &rep, 2, SymMethod::Recurrence).unwrap(), vec![0, 0, 1, 1, 1]);
    }

    #[test]
    fn bd2_invariant_counts() {
        let (t, rep) = setup("D:2");
        let s = sym_series(&t, &rep, 40, SymMethod::Recurrence).unwrap();
        for q in 0..=40u64 {
            let expect = match q % 4 {
                0 => (q + 4) / 4,
                2 => (q - 2) / 4,
                _ => 0,
            };
            assert_eq!(s.multiplicities[q as usize][0], expect, "q = {q}");
        }
    }

    #[test]
    fn tetrahedral_sym6_at_minus_identity() {
        let (_, rep) = setup("E6");
        let g = rep.group().clone();
        let chi = sym_character(&rep, 6, SymMethod::Monomial).unwrap();
        let minus = g.class_of(g.minus_identity().unwrap());
        assert_eq!(chi.value(minus), &CycloNum::from_int(7));
    }

    #[test]
    fn methods_agree_on_small_groups() {
        for s in ["D:2", "D:3", "A:4", "cyclic:5:2"] {
            let (t, rep) = setup(s);
            let mono = sym_series(&t, &rep, 12, SymMethod::Monomial).unwrap();
            let spr = sym_series(&t, &rep, 12, SymMethod::Springer).unwrap();
            assert_eq!(mono.multiplicities, spr.multiplicities, "{s}");
            if rep.is_special() {
                let rec = sym_series(&t, &rep, 12, SymMethod::Recurrence).unwrap();
                assert_eq!(rec.multiplicities, mono.multiplicities, "{s}");
            }
        }
    }

    #[test]
    fn eigen_method_on_diagonal_groups() {
        let (t, rep) = setup("cyclic:7:3");
        let e = sym_series(&t, &rep, 15, SymMethod::Eigen).unwrap();
        let m = sym_series(&t, &rep, 15, SymMethod::Monomial).unwrap();
        assert_eq!(e, SymSeries { method: SymMethod::Eigen, ..m });
        let (_, bd) = setup("D:2");
        assert_eq!(sym_character(&bd, 3, SymMethod::Eigen).unwrap_err(), SymError::NotDiagonal);
    }

    #[test]
    fn recurrence_rejects_non_special() {
        let (_, rep) = setup("cyclic:5:2");
        assert_eq!(sym_character(&rep, 3, SymMethod::Recurrence).unwrap_err(), SymError::NotSL2);
        assert_eq!(SymMethod::default_for(&rep), SymMethod::Monomial);
    }

    #[test]
    fn stream_matches_exact_series() {
        for s in ["E8", "cyclic:6:5", "D:5"] {
            let (t, rep) = setup(s);
            let exact = sym_series(&t, &rep, 20, SymMethod::Springer).unwrap();
            let mut st = MultiplicityStream::new(&t, &rep).unwrap();
            for q in 0..=20 {
                assert_eq!(st.next_degree().unwrap(), exact.multiplicities[q], "{s} q={q}");
            }
        }
    }

    #[test]
    fn tail_bound() {
        assert!((bounded_tail_check(4, 50).unwrap() - 1.0).abs() < 1e-12);
        assert!(bounded_tail_check(3, 50).unwrap() <= 2.0);
        let b8 = bounded_tail_check(8, 500).unwrap();
        assert!(b8 <= 1.0 / (std::f64::consts::PI / 4.0).sin() + 1e-9);
        assert_eq!(bounded_tail_check(2, 5), Err(SymError::OrderTooSmall { m: 2 }));
    }

    #[test]
    fn series_rank_is_q_plus_one() {
        let (t, rep) = setup("E7");
        let s = sym_series(&t, &rep, 10, SymMethod::Recurrence).unwrap();
        for q in 0..=10 {
            assert_eq!(s.rank(q), q as u64 + 1);
        }
    }
}
