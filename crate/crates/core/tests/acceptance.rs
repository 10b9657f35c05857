//! End-to-end acceptance checks. One PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::Value;

use symsig::bundles::{
    differential_cumulative_ratio, frk_prefix_ratios, frk_report, frk_upper_bounds, is_nonsingular_cubic, sym_power,
    tensor, tensor_power_iterated, tensor_power_syz, weierstrass, Bundle, BundleSum, TorsionLabel,
};
use symsig::characters::{fundamental_character, inner_product, irreducible_table, trace_character, CharacterTable};
use symsig::groups::{make_group, GroupSpec, MatrixGroup};
use symsig::lattice::{count_simplex_points, count_simplex_points_lattice, is_faithful, kernel_lattice, WeightRep};
use symsig::polyverify::{fixture_specs, verify_singularity, CheckKind};
use symsig::signature::{cesaro_ratio, frk_sequence, signature_estimate};
use symsig::sympow::{sym_characters, sym_series, SymMethod};
use symsig::{CycloNum, Rational, RationalPoly};

/// Sub-checks known to be unattainable as stated; they must fail and nothing else may.
const DOCUMENTED_FAILURES: &[(u32, &str)] = &[(7, "frk q=4 for y^2z - x^3 - xz^2 is 0")];

fn rat(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

fn abs(x: Rational) -> Rational {
    if x < Rational::zero() {
        -x
    } else {
        x
    }
}

struct Criterion {
    id: u32,
    budget: Option<Duration>,
    subs: Vec<(String, bool, String)>,
}

impl Criterion {
    fn new(id: u32, budget_secs: Option<u64>) -> Self {
        Criterion { id, budget: budget_secs.map(Duration::from_secs), subs: Vec::new() }
    }

    fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.subs.push((name.to_string(), ok, detail.into()));
    }
}

fn group(spec: &GroupSpec) -> Arc<MatrixGroup> {
    Arc::new(make_group(spec).expect("built-in group"))
}

fn klein_specs() -> Vec<GroupSpec> {
    let mut v: Vec<GroupSpec> = (2..=12).map(GroupSpec::Cyclic).collect();
    v.extend((2..=12).map(GroupSpec::BinaryDihedral));
    v.extend([GroupSpec::BinaryTetrahedral, GroupSpec::BinaryOctahedral, GroupSpec::BinaryIcosahedral]);
    v
}

fn one_a_specs(nmax: u32) -> Vec<(u32, u32)> {
    let mut v = Vec::new();
    for n in 2..=nmax {
        for a in 1..n {
            if a.gcd(&n) == 1 {
                v.push((n, a));
            }
        }
    }
    v
}

fn criterion_1() -> Criterion {
    let mut c = Criterion::new(1, Some(5));
    let mut cases: Vec<(GroupSpec, usize, usize)> = (1..=12u32).map(|n| (GroupSpec::Cyclic(n), n as usize, n as usize)).collect();
    cases.extend((2..=12u32).map(|n| (GroupSpec::BinaryDihedral(n), 4 * n as usize, n as usize + 3)));
    cases.push((GroupSpec::BinaryTetrahedral, 24, 7));
    cases.push((GroupSpec::BinaryOctahedral, 48, 8));
    cases.push((GroupSpec::BinaryIcosahedral, 120, 9));
    for (spec, order, classes) in cases {
        let g = group(&spec);
        let got = (g.order(), g.num_classes());
        c.check(&spec.to_string(), got == (order, classes), format!("{got:?} vs {:?}", (order, classes)));
    }
    c
}

fn orthonormal(t: &CharacterTable) -> bool {
    let k = t.len();
    for i in 0..k {
        for j in 0..k {
            let want = if i == j { CycloNum::one() } else { CycloNum::zero() };
            if inner_product(t.get(i), t.get(j)).expect("same group") != want {
                return false;
            }
        }
    }
    true
}

fn criterion_2() -> Criterion {
    let mut c = Criterion::new(2, Some(5));
    let mut specs: Vec<GroupSpec> = vec![GroupSpec::Cyclic(1)];
    specs.extend(klein_specs());
    for spec in &specs {
        let g = group(spec);
        let t = irreducible_table(&g).expect("table");
        let dims2: u64 = t.dims().iter().map(|d| d * d).sum();
        c.check(&format!("{spec} orthonormal"), orthonormal(&t), "");
        c.check(&format!("{spec} sum dims^2"), dims2 == g.order() as u64, format!("{dims2}"));
    }

    // Columns e, a², a, b, ab with a, b the two generators.
    let g = group(&GroupSpec::BinaryDihedral(2));
    let t = irreducible_table(&g).expect("table");
    let words: [&[usize]; 5] = [&[], &[0, 0], &[0], &[1], &[0, 1]];
    let expected: [[i64; 5]; 5] =
        [[1, 1, 1, 1, 1], [2, -2, 0, 0, 0], [1, 1, 1, -1, -1], [1, 1, -1, 1, -1], [1, 1, -1, -1, 1]];
    let cols: Vec<usize> = words.iter().map(|w| g.class_of(g.word(w))).collect();
    let mut distinct = cols.clone();
    distinct.sort();
    distinct.dedup();
    let mut cells = distinct.len() == 5 && t.len() == 5;
    if cells {
        for (i, row) in expected.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                cells &= *t.get(i).value(cols[j]) == CycloNum::from_int(*v);
            }
        }
    }
    c.check("BD_2 table cell-for-cell", cells, "");

    for spec in [GroupSpec::BinaryTetrahedral, GroupSpec::BinaryOctahedral, GroupSpec::BinaryIcosahedral] {
        let g = group(&spec);
        let t = irreducible_table(&g).expect("table");
        let traced = trace_character(&g, g.generators()).expect("trace");
        let fund = fundamental_character(&g);
        let ok = traced == fund && t.fundamental_constituents().len() == 1 && *t.get(t.fundamental_constituents()[0]) == traced;
        c.check(&format!("{spec} fundamental row"), ok, "");
    }
    c
}

fn criterion_3() -> Criterion {
    let mut c = Criterion::new(3, Some(60));
    let mut specs = klein_specs();
    specs.retain(|s| !matches!(s, GroupSpec::Cyclic(1)));
    for spec in &specs {
        let g = group(spec);
        let rep = symsig::characters::Representation::fundamental(&g);
        let rec = sym_characters(&rep, 30, SymMethod::Recurrence).expect("recurrence");
        let mono = sym_characters(&rep, 30, SymMethod::Monomial).expect("monomial");
        let spr = sym_characters(&rep, 30, SymMethod::Springer).expect("springer");
        c.check(&format!("{spec} characters"), rec == mono && mono == spr, "");
        let t = irreducible_table(&g).expect("table");
        let a = sym_series(&t, &rep, 30, SymMethod::Recurrence).expect("series");
        let b = sym_series(&t, &rep, 30, SymMethod::Springer).expect("series");
        c.check(&format!("{spec} multiplicities"), a.multiplicities == b.multiplicities, "");
    }
    for (n, a) in one_a_specs(12) {
        let spec = GroupSpec::CyclicOneNA { n, a };
        let g = group(&spec);
        let rep = symsig::characters::Representation::fundamental(&g);
        let mono = sym_characters(&rep, 30, SymMethod::Monomial).expect("monomial");
        let spr = sym_characters(&rep, 30, SymMethod::Springer).expect("springer");
        let eig = sym_characters(&rep, 30, SymMethod::Eigen).expect("eigen");
        c.check(&format!("{spec} characters"), mono == spr && spr == eig, "");
    }
    c
}

fn criterion_4() -> Criterion {
    let mut c = Criterion::new(4, None);
    let a1 = frk_sequence(&GroupSpec::Cyclic(2), 100).expect("A_1");
    let ok = a1.values.iter().enumerate().all(|(q, &v)| v == if q % 2 == 0 { q as u64 + 1 } else { 0 });
    c.check("A_1 frk", ok && a1.values.len() == 101, "");
    let d = frk_sequence(&GroupSpec::BinaryDihedral(2), 100).expect("BD_2");
    let want = |q: u64| match q % 4 {
        0 => (q + 4) / 4,
        2 => (q - 2) / 4,
        _ => 0,
    };
    let ok = d.values.iter().enumerate().all(|(q, &v)| v == want(q as u64));
    c.check("BD_2 frk", ok && d.values.len() == 101, "");
    c
}

fn criterion_5() -> Criterion {
    let mut c = Criterion::new(5, Some(120));
    let tol_5000 = rat(1, 20);
    let tol_2000 = rat(1, 100);
    let mut specs: Vec<GroupSpec> = (2..=12).map(GroupSpec::Cyclic).collect();
    specs.extend((2..=6).map(GroupSpec::BinaryDihedral));
    specs.extend([GroupSpec::BinaryTetrahedral, GroupSpec::BinaryOctahedral, GroupSpec::BinaryIcosahedral]);
    for spec in &specs {
        let s = signature_estimate(spec, 0, 5000).expect("series");
        let order = s.order as i64;
        for i in 0..s.modules() {
            let target = rat(s.dims[i] as i64, order);
            let e5000 = abs(s.ratio_at(i, 5000) - &target);
            c.check(&format!("{spec} V_{i} N=5000"), e5000 <= tol_5000, format!("{e5000}"));
            if order <= 24 {
                let e2000 = abs(s.ratio_at(i, 2000) - &target);
                c.check(&format!("{spec} V_{i} N=2000"), e2000 <= tol_2000, format!("{e2000}"));
            }
        }
    }
    let n_max = 3000usize;
    for (n, a) in one_a_specs(12) {
        let spec = GroupSpec::CyclicOneNA { n, a };
        let s = signature_estimate(&spec, 0, n_max).expect("series");
        for i in 0..s.modules() {
            let err = abs(s.ratio_at(i, n_max) - rat(1, n as i64));
            c.check(&format!("{spec} V_{i}"), err <= rat(2, n_max as i64), format!("{err}"));
        }
    }
    c
}

fn criterion_6() -> Criterion {
    let mut c = Criterion::new(6, None);
    for (n, a) in one_a_specs(12) {
        let spec = GroupSpec::CyclicOneNA { n, a };
        let g = group(&spec);
        let t = irreducible_table(&g).expect("table");
        let rep = symsig::characters::Representation::fundamental(&g);
        let series = sym_series(&t, &rep, 60, SymMethod::Monomial).expect("series");
        let w = WeightRep::one_a(n as u64, a as u64).expect("weights");
        let mut ok = true;
        for tt in 0..n as u64 {
            for q in 0..=60u64 {
                let m = series.multiplicities[q as usize][tt as usize];
                let direct = count_simplex_points(&w, tt, q).expect("count");
                let lattice = count_simplex_points_lattice(&w, tt, q).expect("count");
                ok &= direct == m && lattice == m;
            }
        }
        c.check(&format!("{spec} counts"), ok, "");
    }
    for n in 1..=12u64 {
        let mut ok = true;
        let mut faithful = 0;
        for w1 in 0..n {
            for w2 in 0..n {
                let w = WeightRep::new(n, vec![w1, w2]).expect("weights");
                if !is_faithful(&w) {
                    continue;
                }
                faithful += 1;
                for tt in 0..n {
                    ok &= kernel_lattice(&w, tt).expect("lattice").index == n;
                }
            }
        }
        c.check(&format!("n={n} index"), ok && faithful > 0, format!("{faithful} faithful pairs"));
    }
    c
}

fn line_shape_q2(s: &BundleSum) -> bool {
    let op = TorsionLabel::opaque(2);
    let want = BundleSum::from_parts((0..4).map(|i| (Bundle::line(-9, TorsionLabel::two_torsion(i).add(&op)), 1)));
    *s == want && s.kinds() == 4
}

fn criterion_7() -> Criterion {
    let mut c = Criterion::new(7, Some(30));
    let f2 = BundleSum::single(Bundle::f(2));
    let prod = tensor(&f2, &f2).expect("tensor");
    c.check("F_2 x F_2 = F_1 + F_3", prod == BundleSum::from_parts([(Bundle::f(1), 1), (Bundle::f(3), 1)]), "");

    let ok = (0..=50u64).all(|q| sym_power(&f2, q).ok() == Some(BundleSum::single(Bundle::f(q + 1))));
    c.check("Sym^q F_2 = F_(q+1), q <= 50", ok, "");

    let mut ok = true;
    for q in 1..=10u64 {
        let s = tensor_power_syz(q);
        ok &= s.rank() == 1 << q;
        ok &= s.degree() as i128 == -9 * q as i128 * (1i128 << (q - 1));
        if q <= 8 {
            ok &= tensor_power_iterated(q).ok() == Some(s);
        }
    }
    c.check("Syz tensor powers rank and degree, q <= 10", ok, "");
    c.check("Syz tensor square shape", line_shape_q2(&tensor_power_syz(2)), "");

    let curves: Vec<RationalPoly> = [(1, 0), (0, 1), (-1, 1), (2, 3), (-3, 5)]
        .iter()
        .map(|&(a, b)| weierstrass(&rat(a, 1), &rat(b, 1)))
        .chain([RationalPoly::from_int_terms(3, &[(1, &[3, 0, 0]), (1, &[0, 3, 0]), (1, &[0, 0, 3])])])
        .collect();
    let mut ok = true;
    for f in &curves {
        ok &= is_nonsingular_cubic(f).unwrap_or(false);
        for q in (1..100u64).step_by(2) {
            ok &= frk_report(q, f).map(|r| r.upper == 0 && r.lower == 0).unwrap_or(false);
        }
    }
    c.check("frk = 0 for odd q < 100", ok, "");

    let mut ok = true;
    for f in &curves {
        ok &= frk_report(2, f).map(|r| r.upper == 0).unwrap_or(false);
    }
    c.check("frk q=2 is 0 for nonsingular cubics", ok, "");

    let f = weierstrass(&rat(1, 1), &rat(0, 1));
    let r4 = frk_report(4, &f).expect("q = 4");
    c.check(DOCUMENTED_FAILURES[0].1, r4.upper == 0, format!("computed {} (kernel {:?})", r4.upper, r4.certificate));

    let mut ok = true;
    let mut total = 0u64;
    for n in 0..=100u64 {
        total += n + 1;
        ok &= differential_cumulative_ratio(n) == rat(1, total as i64);
    }
    c.check("differential cumulative ratio 1/sum(q+1)", ok, format!("N=100: {}", differential_cumulative_ratio(100)));
    c
}

fn criterion_8() -> Criterion {
    let mut c = Criterion::new(8, None);
    let f = weierstrass(&rat(1, 1), &rat(0, 1));
    let bounds = frk_upper_bounds(5000, 8, &f).expect("bounds");
    let ratios = frk_prefix_ratios(&bounds);
    let half = rat(1, 2);
    let mut worst: Option<usize> = None;
    for (n, r) in ratios.iter().enumerate().skip(1) {
        if *r > &half + rat(2, n as i64) {
            worst.get_or_insert(n);
        }
    }
    c.check("prefix ratios <= 1/2 + 2/N, N <= 5000", worst.is_none() && ratios.len() == 5001, format!("first violation {worst:?}"));
    c
}

fn criterion_9() -> Criterion {
    let mut c = Criterion::new(9, Some(30));
    let argv: Vec<String> = ["symsig", "--format", "json", "verify", "--all"].iter().map(|s| s.to_string()).collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = symsig::cli::run_with(&argv, &mut out, &mut err);
    c.check("exit code 0", code == 0, String::from_utf8_lossy(&err).to_string());
    let doc: Value = serde_json::from_slice(&out).unwrap_or(Value::Null);
    let rows = doc["rows"].as_array().cloned().unwrap_or_default();
    let names: Vec<String> = rows.iter().filter_map(|r| r["singularity"].as_str().map(String::from)).collect();
    let mut want: Vec<String> = (2..=8).map(|n| format!("A_{}", n - 1)).collect();
    want.extend((2..=6).map(|n| format!("D_{}", n + 2)));
    want.extend(["E_6", "E_7", "E_8"].map(String::from));
    c.check("singularities covered", names == want, format!("{names:?}"));
    c.check("all rows passed", !rows.is_empty() && rows.iter().all(|r| r["passed"] == Value::Bool(true)), "");
    for spec in fixture_specs() {
        let rep = verify_singularity(&spec).expect("fixture");
        let kinds = [CheckKind::Invariance, CheckKind::Syzygy, CheckKind::Equivariance, CheckKind::Character];
        let all = kinds.iter().all(|k| rep.checks.iter().any(|r| r.kind == *k));
        c.check(&format!("{} check kinds", rep.singularity), rep.passed() && all, "");
    }
    c
}

fn criterion_10() -> Criterion {
    let mut c = Criterion::new(10, None);
    let n = 60i64;
    let pow2 = |k: i64| Rational::from_integer(BigInt::one() << k as usize);
    let a: Vec<Rational> = (0..=n).map(|k| rat(k, 1) / pow2(k)).collect();
    let b: Vec<Rational> = (0..=n).map(|k| rat(k + 1, 1) / pow2(k)).collect();
    // a_k / b_k = k/(k+1), so the termwise gap to 1 is exactly 1/(k+1).
    let termwise = a.iter().zip(&b).enumerate().all(|(i, (x, y))| abs(x / y - rat(1, 1)) == rat(1, i as i64 + 1));
    c.check("termwise ratio tends to 1", termwise, "");
    let prefix = cesaro_ratio(&a, &b);
    let gap = abs(prefix[n as usize].clone() - rat(1, 2));
    c.check("prefix ratio within 1e-6 of 1/2 at N=60", gap < rat(1, 1_000_000), format!("{gap}"));
    c
}

fn main() {
    let runs: [fn() -> Criterion; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut unexpected = Vec::new();
    for run in runs {
        let start = Instant::now();
        let mut c = run();
        let elapsed = start.elapsed();
        if let Some(b) = c.budget {
            c.check("runtime", elapsed <= b, format!("{:.2?} > {:.0?}", elapsed, b));
        }
        let failed: Vec<_> = c.subs.iter().filter(|s| !s.1).collect();
        let verdict = if failed.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict} ({} checks, {:.2?})", c.id, c.subs.len(), elapsed);
        for (name, _, detail) in &failed {
            let documented = DOCUMENTED_FAILURES.contains(&(c.id, name.as_str()));
            println!("  failed: {name} [{detail}]{}", if documented { " (documented)" } else { "" });
            if !documented {
                unexpected.push(format!("{}: {name}", c.id));
            }
        }
        for &(id, name) in DOCUMENTED_FAILURES {
            if id == c.id && !failed.iter().any(|s| s.0 == name) {
                println!("  note: documented failure '{name}' now passes");
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
