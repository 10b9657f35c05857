//! Symmetric signature estimates from multiplicity series.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::characters::{irreducible_table, CharError, CharacterTable, Representation};
use crate::groups::{make_group, GroupError, GroupSpec, MatrixGroup};
use crate::scalar::{rat, RationalField};
use crate::sympow::{sym_series, MultiplicityStream, SymError, SymMethod};
use crate::{CycloMatrix, CycloNum, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SigError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error("module index {index} out of range for {count} irreducibles")]
    NoSuchModule { index: usize, count: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub fn ser_rational<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Symmetric,
    Differential,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Symmetric => "symmetric",
            Variant::Differential => "differential",
        })
    }
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "symmetric" => Ok(Variant::Symmetric),
            "differential" => Ok(Variant::Differential),
            _ => Err(format!("unknown variant {s}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SigRecord {
    pub q: usize,
    pub beta: u64,
    pub alpha: Vec<u64>,
}

/// Multiplicities α_{i,q} of every irreducible in Sym^q(V) for q ≤ N.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignatureSeries {
    pub group: String,
    pub representation: String,
    pub variant: Variant,
    pub order: usize,
    pub labels: Vec<String>,
    pub dims: Vec<u64>,
    pub records: Vec<SigRecord>,
}

impl SignatureSeries {
    pub fn qmax(&self) -> usize {
        self.records.len() - 1
    }

    pub fn modules(&self) -> usize {
        self.dims.len()
    }

    /// Σ_{q≤n} α_{i,q} / Σ_{q≤n} β_q.
    pub fn ratio_at(&self, i: usize, n: usize) -> Rational {
        let (a, b) = self.records[..=n].iter().fold((0u64, 0u64), |(a, b), r| (a + r.alpha[i], b + r.beta));
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    pub fn ratio(&self, i: usize) -> Rational {
        self.ratio_at(i, self.qmax())
    }

    /// Every prefix ratio for module i.
    pub fn prefix_ratios(&self, i: usize) -> Vec<Rational> {
        let a: Vec<Rational> = self.records.iter().map(|r| rat(r.alpha[i] as i64, 1)).collect();
        let b: Vec<Rational> = self.records.iter().map(|r| rat(r.beta as i64, 1)).collect();
        cesaro_ratio(&a, &b)
    }

    /// dim V_i / |G|.
    pub fn target(&self, i: usize) -> Rational {
        rat(self.dims[i] as i64, self.order as i64)
    }

    pub fn abs_error(&self, i: usize) -> Rational {
        let d = self.ratio(i) - self.target(i);
        if d < Rational::zero() {
            -d
        } else {
            d
        }
    }

    pub fn summary(&self, i: usize) -> SignatureSummary {
        let r = self.ratio(i);
        let t = self.target(i);
        let e = self.abs_error(i);
        SignatureSummary {
            module: self.labels[i].clone(),
            qmax: self.qmax(),
            final_ratio_f64: r.to_f64(),
            target_f64: t.to_f64(),
            abs_error_f64: e.to_f64(),
            final_ratio: r,
            target: t,
            abs_error: e,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignatureSummary {
    pub module: String,
    pub qmax: usize,
    #[serde(serialize_with = "ser_rational")]
    pub target: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub final_ratio: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub abs_error: Rational,
    pub target_f64: f64,
    pub final_ratio_f64: f64,
    pub abs_error_f64: f64,
}

fn group_and_table(spec: &GroupSpec) -> Result<(Arc<MatrixGroup>, CharacterTable), SigError> {
    let g = Arc::new(make_group(spec)?);
    let t = irreducible_table(&g)?;
    Ok((g, t))
}

fn run_series(
    spec: &GroupSpec,
    table: &CharacterTable,
    rep: &Representation,
    label: String,
    qmax: usize,
    variant: Variant,
) -> Result<SignatureSeries, SigError> {
    let mut records = Vec::with_capacity(qmax + 1);
    match MultiplicityStream::new(table, rep) {
        Ok(mut stream) => {
            for q in 0..=qmax {
                records.push(SigRecord { q, beta: 0, alpha: stream.next_degree()? });
            }
        }
        Err(SymError::Unsupported(_)) => {
            let s = sym_series(table, rep, qmax, SymMethod::Springer)?;
            for (q, alpha) in s.multiplicities.into_iter().enumerate() {
                records.push(SigRecord { q, beta: 0, alpha });
            }
        }
        Err(e) => return Err(e.into()),
    }
    let dims = table.dims();
    for r in records.iter_mut() {
        r.beta = r.alpha.iter().zip(&dims).map(|(a, d)| a * d).sum();
    }
    Ok(SignatureSeries {
        group: spec.to_string(),
        representation: label,
        variant,
        order: rep.group().order(),
        labels: table.labels().to_vec(),
        dims,
        records,
    })
}

/// Series for the fundamental representation; `module` is only range-checked.
pub fn signature_estimate(spec: &GroupSpec, module: usize, qmax: usize) -> Result<SignatureSeries, SigError> {
    let (g, t) = group_and_table(spec)?;
    if module >= t.len() {
        return Err(SigError::NoSuchModule { index: module, count: t.len() });
    }
    let rep = Representation::fundamental(&g);
    run_series(spec, &t, &rep, "fundamental".into(), qmax, Variant::Symmetric)
}

/// Series for 1/n(1, a) using the faithful representation diag(ξ^{w_1}, ξ^{w_2}).
pub fn signature_estimate_weights(
    spec: &GroupSpec,
    weights: (u32, u32),
    qmax: usize,
) -> Result<SignatureSeries, SigError> {
    let GroupSpec::CyclicOneNA { n, .. } = *spec else {
        return Err(SigError::Unsupported("custom weights need a cyclic:n:a group".into()));
    };
    let (g, t) = group_and_table(spec)?;
    let (w1, w2) = weights;
    let faithful = (n / n.gcd(&w1)).lcm(&(n / n.gcd(&w2))) == n;
    if !faithful {
        return Err(SigError::Unsupported(format!("weights ({w1},{w2}) are not faithful")));
    }
    let z = |w: u32| CycloNum::root_of_unity(n as u64, w as i64);
    let rep = Representation::from_generators(&g, &[CycloMatrix::diagonal(vec![z(w1), z(w2)])])?;
    run_series(spec, &t, &rep, format!("weights ({w1},{w2})"), qmax, Variant::Symmetric)
}

/// Series for the module of Zariski differentials, which corresponds to the fundamental representation.
pub fn differential_signature_estimate(spec: &GroupSpec, qmax: usize) -> Result<SignatureSeries, SigError> {
    let (g, t) = group_and_table(spec)?;
    let rep = Representation::fundamental(&g);
    run_series(spec, &t, &rep, "fundamental".into(), qmax, Variant::Differential)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrkSequence {
    pub values: Vec<u64>,
    /// Limits of α_{0,q}/(q+1) along q ≡ r mod period, r = 0..period.
    #[serde(serialize_with = "ser_rationals")]
    pub accumulation_points: Vec<Rational>,
    pub oscillates: bool,
}

fn ser_rationals<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|q| q.to_string()))
}

/// α_{0,q} for q ≤ N plus an exact oscillation test for α_{0,q}/β_q.
///
/// Only scalar elements λI contribute linearly in q, so along q ≡ r the
/// ratio tends to (1/|G|) Σ_{λI ∈ G} λ^r.
pub fn frk_sequence(spec: &GroupSpec, qmax: usize) -> Result<FrkSequence, SigError> {
    let series = signature_estimate(spec, 0, qmax)?;
    let values = series.records.iter().map(|r| r.alpha[0]).collect();
    let g = make_group(spec)?;
    let scalars: Vec<(u64, CycloNum)> = g
        .elements()
        .iter()
        .enumerate()
        .filter(|(_, m)| m.is_diagonal() && (0..m.rows()).all(|i| m[(i, i)] == m[(0, 0)]))
        .map(|(i, m)| (g.element_order(i) as u64, m[(0, 0)].clone()))
        .collect();
    let period = scalars.iter().fold(1u64, |p, (o, _)| p.lcm(o));
    let order = CycloNum::from_int(g.order() as i64);
    let mut points = Vec::new();
    for r in 0..period {
        let mut acc = CycloNum::zero();
        for (_, lam) in &scalars {
            let mut p = CycloNum::from_int(1);
            for _ in 0..r {
                p = &p * lam;
            }
            acc += &p;
        }
        let lim = (acc / order.clone()).as_rational().ok_or_else(|| SigError::Unsupported("non-real limit".into()))?;
        points.push(lim);
    }
    let mut distinct = points.clone();
    distinct.sort();
    distinct.dedup();
    Ok(FrkSequence { values, oscillates: distinct.len() > 1, accumulation_points: points })
}

/// Prefix ratios (Σ_{k≤n} a_k) / (Σ_{k≤n} b_k). Panics unless every b_k > 0.
pub fn cesaro_ratio(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    assert_eq!(a.len(), b.len(), "sequences of equal length");
    let mut sa = Rational::zero();
    let mut sb = Rational::zero();
    let mut out = Vec::with_capacity(a.len());
    for (x, y) in a.iter().zip(b) {
        assert!(*y > Rational::zero(), "denominators must be positive");
        sa += x;
        sb += y;
        out.push(&sa / &sb);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    #[test]
    fn a1_ratio_near_half() {
        let s = signature_estimate(&spec("A:1"), 0, 1000).unwrap();
        assert!(s.abs_error(0) <= rat(1, 1000));
    }

    #[test]
    fn bd2_ratio_near_eighth() {
        let s = signature_estimate(&spec("D:2"), 0, 2000).unwrap();
        assert!(s.abs_error(0) <= rat(1, 100));
        assert_eq!(s.records[0].alpha, vec![1, 0, 0, 0, 0]);
        assert_eq!(s.records[0].beta, 1);
    }

    #[test]
    fn frk_patterns() {
        let a1 = frk_sequence(&spec("A:1"), 8).unwrap();
        assert_eq!(a1.values, vec![1, 0, 3, 0, 5, 0, 7, 0, 9]);
        assert!(a1.oscillates);
        let bd = frk_sequence(&spec("D:2"), 6).unwrap();
        assert_eq!(bd.values, vec![1, 0, 0, 0, 2, 0, 1]);
        let c3 = frk_sequence(&spec("cyclic:3:2"), 30).unwrap();
        for (q, v) in c3.values.iter().enumerate() {
            let direct = (0..=q).filter(|t| (2 * t) % 3 == q % 3).count() as u64;
            assert_eq!(*v, direct);
        }
        assert!(!c3.oscillates);
    }

    #[test]
    fn cesaro_example() {
        let n = 60;
        let two = BigInt::from(2);
        let a: Vec<Rational> = (0..=n).map(|k| Rational::new(BigInt::from(k), two.pow(k as u32))).collect();
        let b: Vec<Rational> = (0..=n).map(|k| Rational::new(BigInt::from(k + 1), two.pow(k as u32))).collect();
        let r = cesaro_ratio(&a, &b);
        assert!((r[n].to_f64() - 0.5).abs() < 1e-6);
        assert!((&a[n] / &b[n]).to_f64() > 0.98);
        let ones = vec![rat(1, 1); 5];
        assert!(cesaro_ratio(&ones, &ones).iter().all(|x| *x == rat(1, 1)));
    }

    #[test]
    fn weights_route_matches_default() {
        let s = spec("cyclic:5:2");
        let a = signature_estimate(&s, 0, 50).unwrap();
        let b = signature_estimate_weights(&s, (1, 2), 50).unwrap();
        assert_eq!(a.records, b.records);
        assert!(signature_estimate_weights(&s, (0, 0), 5).is_err());
    }

    #[test]
    fn module_out_of_range() {
        assert_eq!(
            signature_estimate(&spec("A:1"), 2, 5).unwrap_err(),
            SigError::NoSuchModule { index: 2, count: 2 }
        );
    }
}
