//! Exact checks of invariant generators, their syzygies and the induced action.
//!
//! For each built-in Kleinian group the fixture stores generators p_1, p_2, p_3
//! of the maximal ideal of the invariant ring, two syzygy vectors s_1, s_2 and
//! claimed matrices N_g with g·s_j = Σ_k N_g[j][k] s_k. Here g acts by
//! substitution, (g·p)(u, v) = p(g·(u, v)ᵀ).

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::characters::{fundamental_character, CharError, Representation};
use crate::groups::{make_group, GroupError, GroupSpec, MatrixGroup};
use crate::{CycloMatrix, CycloNum, CycloPoly};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("{kind} check failed for generator {generator}, entry {index}")]
    VerificationFailed { kind: CheckKind, generator: usize, index: usize },
    #[error("the induced action is not isomorphic to the fundamental representation")]
    NotFundamental,
    #[error("no stored generators for {0}")]
    NoFixture(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Char(#[from] CharError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Invariance,
    Syzygy,
    Equivariance,
    Intertwiner,
    Character,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckKind::Invariance => "invariance",
            CheckKind::Syzygy => "syzygy",
            CheckKind::Equivariance => "equivariance",
            CheckKind::Intertwiner => "intertwiner",
            CheckKind::Character => "character",
        };
        f.write_str(s)
    }
}

/// One passed assertion. `generator` and `index` are absent where they do not apply.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub kind: CheckKind,
    pub generator: Option<usize>,
    pub index: Option<usize>,
}

/// Generators, syzygies and claimed action for one singularity.
#[derive(Debug, Clone)]
pub struct SyzygyDatum {
    pub spec: GroupSpec,
    pub generators: Vec<CycloPoly>,
    pub syzygies: [Vec<CycloPoly>; 2],
    pub action: Vec<CycloMatrix>,
    /// P with P·N_g = g·P, when stored.
    pub intertwiner: Option<CycloMatrix>,
}

fn poly(terms: &[(i64, &[u32])]) -> CycloPoly {
    CycloPoly::from_int_terms(2, terms)
}

/// Specs with stored fixtures for the `--all` run.
pub fn fixture_specs() -> Vec<GroupSpec> {
    let mut v: Vec<GroupSpec> = (2..=8).map(GroupSpec::Cyclic).collect();
    v.extend((2..=6).map(GroupSpec::BinaryDihedral));
    v.push(GroupSpec::BinaryTetrahedral);
    v.push(GroupSpec::BinaryOctahedral);
    v.push(GroupSpec::BinaryIcosahedral);
    v
}

pub fn fixture(spec: &GroupSpec) -> Result<SyzygyDatum, VerifyError> {
    let gens = spec.generators();
    let datum = match *spec {
        GroupSpec::Cyclic(n) if n >= 2 => {
            SyzygyDatum {
                spec: spec.clone(),
                generators: vec![poly(&[(1, &[n, 0])]), poly(&[(1, &[0, n])]), poly(&[(1, &[1, 1])])],
                syzygies: [
                    vec![CycloPoly::zero(2), poly(&[(-1, &[1, 0])]), poly(&[(1, &[0, n - 1])])],
                    vec![poly(&[(-1, &[0, 1])]), CycloPoly::zero(2), poly(&[(1, &[n - 1, 0])])],
                ],
                action: gens,
                intertwiner: None,
            }
        }
        GroupSpec::BinaryDihedral(n) if n >= 2 => {
            let m = 2 * n;
            if n % 2 == 0 {
                let i3 = CycloNum::root_of_unity(4, 3);
                let zero = CycloNum::from_int(0);
                let nb = CycloMatrix::from_rows(vec![vec![zero.clone(), i3.clone()], vec![i3, zero.clone()]]);
                let p = CycloMatrix::diagonal(vec![CycloNum::from_int(1), CycloNum::from_int(-1)]);
                SyzygyDatum {
                    spec: spec.clone(),
                    generators: vec![
                        poly(&[(1, &[m, 0]), (1, &[0, m])]),
                        poly(&[(1, &[2, 2])]),
                        poly(&[(1, &[m + 1, 1]), (-1, &[1, m + 1])]),
                    ],
                    syzygies: [
                        vec![poly(&[(-1, &[2, 1])]), poly(&[(2, &[0, m - 1])]), poly(&[(1, &[1, 0])])],
                        vec![poly(&[(-1, &[1, 2])]), poly(&[(2, &[m - 1, 0])]), poly(&[(-1, &[0, 1])])],
                    ],
                    action: vec![gens[0].clone(), nb],
                    intertwiner: Some(p),
                }
            } else {
                SyzygyDatum {
                    spec: spec.clone(),
                    generators: vec![
                        poly(&[(1, &[m, 0]), (-1, &[0, m])]),
                        poly(&[(1, &[2, 2])]),
                        poly(&[(1, &[m + 1, 1]), (1, &[1, m + 1])]),
                    ],
                    syzygies: [
                        vec![poly(&[(1, &[2, 1])]), poly(&[(2, &[0, m - 1])]), poly(&[(-1, &[1, 0])])],
                        vec![poly(&[(-1, &[1, 2])]), poly(&[(2, &[m - 1, 0])]), poly(&[(-1, &[0, 1])])],
                    ],
                    action: gens,
                    intertwiner: None,
                }
            }
        }
        GroupSpec::BinaryTetrahedral => SyzygyDatum {
            spec: spec.clone(),
            generators: vec![tetra_z(), tetra_y(), tetra_x()],
            syzygies: [
                vec![
                    poly(&[(210, &[4, 3]), (30, &[0, 7])]),
                    poly(&[(-5, &[5, 0]), (25, &[1, 4])]),
                    poly(&[(5, &[1, 0])]),
                ],
                vec![
                    poly(&[(-210, &[3, 4]), (-30, &[7, 0])]),
                    poly(&[(-5, &[0, 5]), (25, &[4, 1])]),
                    poly(&[(5, &[0, 1])]),
                ],
            ],
            action: gens,
            intertwiner: None,
        },
        GroupSpec::BinaryOctahedral => {
            let n = tetra_z();
            SyzygyDatum {
                spec: spec.clone(),
                generators: vec![tetra_y(), &n * &n, &n * &tetra_x()],
                syzygies: [
                    vec![
                        poly(&[(7, &[10, 1]), (-42, &[6, 5]), (35, &[2, 9])]),
                        poly(&[(-294, &[4, 3]), (-42, &[0, 7])]),
                        poly(&[(-7, &[1, 0])]),
                    ],
                    vec![
                        poly(&[(-35, &[9, 2]), (42, &[5, 6]), (-7, &[1, 10])]),
                        poly(&[(42, &[7, 0]), (294, &[3, 4])]),
                        poly(&[(-7, &[0, 1])]),
                    ],
                ],
                action: gens,
                intertwiner: None,
            }
        }
        GroupSpec::BinaryIcosahedral => SyzygyDatum {
            spec: spec.clone(),
            generators: vec![
                poly(&[(1, &[11, 1]), (11, &[6, 6]), (-1, &[1, 11])]),
                poly(&[(1, &[20, 0]), (-228, &[15, 5]), (494, &[10, 10]), (228, &[5, 15]), (1, &[0, 20])]),
                poly(&[
                    (1, &[30, 0]),
                    (522, &[25, 5]),
                    (-10005, &[20, 10]),
                    (-10005, &[10, 20]),
                    (-522, &[5, 25]),
                    (1, &[0, 30]),
                ]),
            ],
            syzygies: [
                vec![
                    poly(&[(-684684, &[15, 4]), (2966964, &[10, 9]), (2054052, &[5, 14]), (12012, &[0, 19])]),
                    poly(&[(-1001, &[11, 0]), (-66066, &[6, 5]), (11011, &[1, 10])]),
                    poly(&[(1001, &[1, 0])]),
                ],
                vec![
                    poly(&[(-12012, &[19, 0]), (2054052, &[14, 5]), (-2966964, &[9, 10]), (-684684, &[4, 15])]),
                    poly(&[(11011, &[10, 1]), (66066, &[5, 6]), (-1001, &[0, 11])]),
                    poly(&[(1001, &[0, 1])]),
                ],
            ],
            action: gens,
            intertwiner: None,
        },
        _ => return Err(VerifyError::NoFixture(spec.to_string())),
    };
    Ok(datum)
}

/// uv(u⁴ − v⁴).
fn tetra_z() -> CycloPoly {
    poly(&[(1, &[5, 1]), (-1, &[1, 5])])
}

fn tetra_y() -> CycloPoly {
    poly(&[(1, &[8, 0]), (14, &[4, 4]), (1, &[0, 8])])
}

fn tetra_x() -> CycloPoly {
    poly(&[(1, &[12, 0]), (-33, &[8, 4]), (-33, &[4, 8]), (1, &[0, 12])])
}

/// g·p_i = p_i for every group generator g and every p_i.
pub fn verify_invariance(group: &MatrixGroup, datum: &SyzygyDatum) -> Result<Vec<CheckRecord>, VerifyError> {
    let mut out = Vec::new();
    for (k, g) in group.generators().iter().enumerate() {
        for (i, p) in datum.generators.iter().enumerate() {
            if &p.substitute_linear(g) != p {
                return Err(VerifyError::VerificationFailed { kind: CheckKind::Invariance, generator: k, index: i });
            }
            out.push(CheckRecord { kind: CheckKind::Invariance, generator: Some(k), index: Some(i) });
        }
    }
    Ok(out)
}

/// Σ_i s_j[i]·p_i = 0 for both syzygies.
pub fn verify_syzygy(datum: &SyzygyDatum) -> Result<Vec<CheckRecord>, VerifyError> {
    let mut out = Vec::new();
    for (j, s) in datum.syzygies.iter().enumerate() {
        let mut acc = CycloPoly::zero(2);
        for (a, p) in s.iter().zip(&datum.generators) {
            acc = &acc + &(a * p);
        }
        if !acc.is_zero() || s.len() != datum.generators.len() {
            return Err(VerifyError::VerificationFailed { kind: CheckKind::Syzygy, generator: 0, index: j });
        }
        out.push(CheckRecord { kind: CheckKind::Syzygy, generator: None, index: Some(j) });
    }
    Ok(out)
}

/// g·s_j = Σ_k N_g[j][k] s_k, then the N_g are compared with the fundamental
/// representation by character, and by the stored intertwiner when present.
pub fn verify_equivariance(
    group: &Arc<MatrixGroup>,
    datum: &SyzygyDatum,
) -> Result<Vec<CheckRecord>, VerifyError> {
    let mut out = Vec::new();
    if datum.action.len() != group.generators().len() {
        return Err(VerifyError::NotFundamental);
    }
    for (k, (g, n)) in group.generators().iter().zip(&datum.action).enumerate() {
        for j in 0..2 {
            for (c, _) in datum.generators.iter().enumerate() {
                let lhs = datum.syzygies[j][c].substitute_linear(g);
                let rhs = &datum.syzygies[0][c].scale(&n[(j, 0)]) + &datum.syzygies[1][c].scale(&n[(j, 1)]);
                if lhs != rhs {
                    return Err(VerifyError::VerificationFailed {
                        kind: CheckKind::Equivariance,
                        generator: k,
                        index: j,
                    });
                }
            }
            out.push(CheckRecord { kind: CheckKind::Equivariance, generator: Some(k), index: Some(j) });
        }
    }
    if let Some(p) = &datum.intertwiner {
        for (k, (g, n)) in group.generators().iter().zip(&datum.action).enumerate() {
            if p * n != g * p {
                return Err(VerifyError::VerificationFailed { kind: CheckKind::Intertwiner, generator: k, index: 0 });
            }
            out.push(CheckRecord { kind: CheckKind::Intertwiner, generator: Some(k), index: None });
        }
    }
    let rep = match Representation::from_generators(group, &datum.action) {
        Ok(r) => r,
        Err(CharError::NotARepresentation) => return Err(VerifyError::NotFundamental),
        Err(e) => return Err(e.into()),
    };
    if rep.character() != fundamental_character(group) {
        return Err(VerifyError::NotFundamental);
    }
    out.push(CheckRecord { kind: CheckKind::Character, generator: None, index: None });
    Ok(out)
}

/// Outcome of all checks for one singularity.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub singularity: String,
    pub group_order: usize,
    pub checks: Vec<CheckRecord>,
    /// First failure, if any.
    pub failure: Option<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Run invariance, syzygy and equivariance checks; failures are recorded, not raised.
pub fn verify_singularity(spec: &GroupSpec) -> Result<VerifyReport, VerifyError> {
    let datum = fixture(spec)?;
    let group = Arc::new(make_group(spec)?);
    let mut report = VerifyReport {
        singularity: singularity_name(spec),
        group_order: group.order(),
        checks: Vec::new(),
        failure: None,
    };
    let steps: [&dyn Fn() -> Result<Vec<CheckRecord>, VerifyError>; 3] = [
        &|| verify_invariance(&group, &datum),
        &|| verify_syzygy(&datum),
        &|| verify_equivariance(&group, &datum),
    ];
    for step in steps {
        match step() {
            Ok(mut v) => report.checks.append(&mut v),
            Err(e) => {
                report.failure = Some(e.to_string());
                break;
            }
        }
    }
    Ok(report)
}

/// ADE name of the quotient singularity of a built-in group.
pub fn singularity_name(spec: &GroupSpec) -> String {
    match *spec {
        GroupSpec::Cyclic(n) => format!("A_{}", n.saturating_sub(1)),
        GroupSpec::BinaryDihedral(n) => format!("D_{}", n + 2),
        GroupSpec::BinaryTetrahedral => "E_6".into(),
        GroupSpec::BinaryOctahedral => "E_7".into(),
        GroupSpec::BinaryIcosahedral => "E_8".into(),
        GroupSpec::CyclicOneNA { n, a } => format!("1/{n}(1,{a})"),
    }
}
