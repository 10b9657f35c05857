//! Sparse multivariate polynomials over a coefficient ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::matrix::Matrix;
use crate::scalar::Ring;

/// Exponent vector, one entry per variable.
pub type Exponent = Vec<u32>;

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<T> {
    nvars: usize,
    terms: BTreeMap<Exponent, T>,
}

/// All exponent vectors of total degree `d` in `nvars` variables, graded-lex descending.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0u32; nvars];
    fill_monomials(&mut cur, 0, d, &mut out);
    out
}

fn fill_monomials(cur: &mut Exponent, pos: usize, rest: u32, out: &mut Vec<Exponent>) {
    if pos + 1 == cur.len() {
        cur[pos] = rest;
        out.push(cur.clone());
        return;
    }
    for e in (0..=rest).rev() {
        cur[pos] = e;
        fill_monomials(cur, pos + 1, rest - e, out);
    }
    cur[pos] = 0;
}

fn grlex_desc(a: &Exponent, b: &Exponent) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl<T: Ring> MultiPoly<T> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: T, nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    /// The variable `x_i`.
    pub fn var(i: usize, nvars: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, T::one())
    }

    pub fn monomial(exp: Exponent, c: T) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, T)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    /// Build from integer coefficients, e.g. `&[(3, &[2, 1])]` for `3u²v`.
    pub fn from_int_terms(nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(nvars, terms.iter().map(|(c, e)| (e.to_vec(), T::from_i64(*c))))
    }

    fn add_term(&mut self, exp: Exponent, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: &[u32]) -> T {
        self.terms.get(exp).cloned().unwrap_or_else(T::zero)
    }

    /// Terms in graded-lex order, highest first.
    pub fn terms(&self) -> Vec<(&Exponent, &T)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_desc(a.0, b.0));
        v
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.iter().sum::<u32>() == d)
            .map(|(e, c)| (e.clone(), c.clone()));
        Self::from_terms(self.nvars, terms)
    }

    pub fn scale(&self, s: &T) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c.clone() * s.clone()));
        Self::from_terms(self.nvars, terms)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> MultiPoly<U> {
        MultiPoly::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(T::one(), self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative in `x_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let terms = self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut e2 = e.clone();
            e2[i] -= 1;
            (e2, c.clone() * T::from_i64(e[i] as i64))
        });
        Self::from_terms(self.nvars, terms)
    }

    pub fn eval(&self, point: &[T]) -> T {
        assert_eq!(point.len(), self.nvars);
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Coefficients along `basis` (exponent vectors); terms outside the basis are ignored.
    pub fn coefficient_vector(&self, basis: &[Exponent]) -> Vec<T> {
        basis.iter().map(|e| self.coeff(e)).collect()
    }

    /// Substitute `x_i ↦ Σ_j M[i][j] x_j`.
    pub fn substitute_linear(&self, m: &Matrix<T>) -> Self {
        assert!(m.rows() == self.nvars && m.cols() == self.nvars, "matrix size mismatch");
        let n = self.nvars;
        let forms: Vec<Self> = (0..n)
            .map(|i| {
                let terms = (0..n).map(|j| {
                    let mut e = vec![0; n];
                    e[j] = 1;
                    (e, m[(i, j)].clone())
                });
                Self::from_terms(n, terms)
            })
            .collect();
        let mut max_exp = vec![0u32; n];
        for e in self.terms.keys() {
            for (m, &k) in max_exp.iter_mut().zip(e) {
                *m = (*m).max(k);
            }
        }
        let powers: Vec<Vec<Self>> = forms
            .iter()
            .zip(&max_exp)
            .map(|(f, &k)| {
                let mut v = vec![Self::constant(T::one(), n)];
                for _ in 0..k {
                    let next = v.last().unwrap() * f;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Self::zero(n);
        for (e, c) in &self.terms {
            let mut t = Self::constant(c.clone(), n);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Render with the given variable names, graded-lex order.
    pub fn to_text(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(e, c)| {
                let mut factors = Vec::new();
                let is_const = e.iter().all(|&k| k == 0);
                if is_const || !c.is_one() {
                    factors.push(format!("({c})"));
                }
                for (i, &k) in e.iter().enumerate() {
                    match k {
                        0 => {}
                        1 => factors.push(names[i].to_string()),
                        _ => factors.push(format!("{}^{}", names[i], k)),
                    }
                }
                factors.join("*")
            })
            .collect();
        parts.join(" + ")
    }
}

impl<T: Ring> fmt::Display for MultiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let default = ["x", "y", "z", "w"];
        let names: Vec<String> = (0..self.nvars)
            .map(|i| default.get(i).map(|s| s.to_string()).unwrap_or(format!("x{i}")))
            .collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.to_text(&refs))
    }
}

impl<'a, T: Ring> Add for &'a MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn add(self, rhs: Self) -> MultiPoly<T> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a, T: Ring> Sub for &'a MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn sub(self, rhs: Self) -> MultiPoly<T> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a, T: Ring> Mul for &'a MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn mul(self, rhs: Self) -> MultiPoly<T> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<'a, T: Ring> Neg for &'a MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn neg(self) -> MultiPoly<T> {
        self.map(|c| -c.clone())
    }
}

impl<T: Ring> Add for MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn add(self, rhs: Self) -> MultiPoly<T> {
        &self + &rhs
    }
}

impl<T: Ring> Sub for MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn sub(self, rhs: Self) -> MultiPoly<T> {
        &self - &rhs
    }
}

impl<T: Ring> Mul for MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn mul(self, rhs: Self) -> MultiPoly<T> {
        &self * &rhs
    }
}

impl<T: Ring> Neg for MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn neg(self) -> MultiPoly<T> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{CycloNum, Rational};
    use num_bigint::BigInt;
    use num_traits::Zero;

    type P = MultiPoly<BigInt>;

    #[test]
    fn arithmetic() {
        let u = P::var(0, 2);
        let v = P::var(1, 2);
        let s = &u + &v;
        let d = &u - &v;
        assert_eq!(&s * &d, &u.pow(2) - &v.pow(2));
        assert_eq!(s.pow(3).num_terms(), 4);
        assert_eq!(s.pow(3).coeff(&[2, 1]), BigInt::from(3));
        assert!((&u - &u).is_zero());
        assert_eq!(s.pow(5).degree(), Some(5));
        assert!(s.pow(5).is_homogeneous());
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(3, 2)[0], vec![2, 0, 0]);
        assert_eq!(monomials_of_degree(2, 4).len(), 5);
        assert_eq!(monomials_of_degree(3, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn derivative_and_eval() {
        let p = P::from_int_terms(3, &[(1, &[0, 2, 1]), (-1, &[3, 0, 0]), (-1, &[1, 0, 2])]);
        assert_eq!(p.derivative(0), P::from_int_terms(3, &[(-3, &[2, 0, 0]), (-1, &[0, 0, 2])]));
        let pt = [BigInt::from(0), BigInt::from(1), BigInt::from(0)];
        assert!(p.eval(&pt).is_zero());
    }

    #[test]
    fn substitution_examples() {
        let n = 5;
        let xi = CycloNum::root_of_unity(n, 1);
        let a = Matrix::diagonal(vec![xi.clone(), xi.inverse().unwrap()]);
        let uv = MultiPoly::<CycloNum>::from_int_terms(2, &[(1, &[1, 1])]);
        assert_eq!(uv.substitute_linear(&a), uv);
        let un = MultiPoly::<CycloNum>::from_int_terms(2, &[(1, &[5, 0])]);
        assert_eq!(un.substitute_linear(&a), un);

        let i = CycloNum::root_of_unity(4, 1);
        let z = CycloNum::from_int(0);
        let b = Matrix::from_rows(vec![vec![z.clone(), i.clone()], vec![i.clone(), z]]);
        let u = MultiPoly::<CycloNum>::var(0, 2);
        let iv = MultiPoly::monomial(vec![0, 1], i);
        assert_eq!(u.substitute_linear(&b), iv);
    }

    #[test]
    fn text_is_grlex() {
        let p = MultiPoly::<Rational>::from_int_terms(2, &[(1, &[0, 1]), (3, &[2, 0]), (-2, &[1, 1])]);
        assert_eq!(p.to_text(&["u", "v"]), "(3)*u^2 + (-2)*u*v + v");
        assert_eq!(MultiPoly::<Rational>::zero(2).to_text(&["u", "v"]), "0");
    }
}
