//! Built-in verification suites run by `borsuk-ulam selftest`.
//!
//! Each suite checks the classifier against fixtures with known answers or
//! against an independent route (diagonal closed form, the quarter-form of the
//! linking pairing, brute-force search). The classifier under test is passed
//! in, so a deliberately broken implementation can be checked to fail.

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::borsuk::{classify_class, diagonal_index, evaluate_lift, Index, IndexReport};
use crate::catalog;
use crate::error::Result;
use crate::gen;
use crate::homology::{cover_classes, CoverClass, QmodZ};
use crate::linalg::{
    is_in_integral_image, smith_normal_form, solve_integral, solve_rational, IntMatrix,
};
use crate::surgery::{lens_presentation, linking_matrix};

/// A classifier for one class of one matrix.
pub type ClassifyFn<'a> = &'a (dyn Fn(&IntMatrix, &CoverClass) -> Result<IndexReport> + Sync);

const MAX_LOGGED_FAILURES: usize = 8;
const SEED: u64 = 0x5eed_b0b5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
    pub millis: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestSummary {
    pub schema: u32,
    pub version: String,
    pub suites: Vec<SuiteResult>,
    pub passed: bool,
}

impl SelftestSummary {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            let _ = writeln!(
                out,
                "{} {:<24} {:>6} checks {:>7} ms",
                if s.passed { "PASS" } else { "FAIL" },
                s.name,
                s.checks,
                s.millis
            );
            for f in &s.failures {
                let _ = writeln!(out, "     - {f}");
            }
        }
        let _ = writeln!(
            out,
            "{}",
            if self.passed { "all suites passed" } else { "SOME SUITES FAILED" }
        );
        out
    }
}

struct Suite {
    name: &'static str,
    checks: usize,
    failures: Vec<String>,
    failure_count: usize,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checks: 0,
            failures: Vec::new(),
            failure_count: 0,
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < MAX_LOGGED_FAILURES {
                self.failures.push(msg());
            }
        }
    }

    fn finish(mut self, started: Instant) -> SuiteResult {
        if self.failure_count > self.failures.len() {
            self.failures.push(format!(
                "... {} more failures",
                self.failure_count - self.failures.len()
            ));
        }
        SuiteResult {
            name: self.name.to_string(),
            passed: self.failure_count == 0,
            checks: self.checks,
            failures: self.failures,
            millis: started.elapsed().as_millis() as u64,
        }
    }
}

/// Every classification made by the suites, for the linking identity check.
type Ledger = Vec<(IntMatrix, IndexReport)>;

fn default_classifier(b: &IntMatrix, x: &CoverClass) -> Result<IndexReport> {
    classify_class(b, x)
}

pub fn run(quick: bool) -> SelftestSummary {
    run_with(quick, &default_classifier)
}

pub fn run_with(quick: bool, classify: ClassifyFn<'_>) -> SelftestSummary {
    let mut ledger = Ledger::new();
    let mut suites = vec![fixtures(classify, &mut ledger)];
    if !quick {
        suites.push(lens_sweep(classify, &mut ledger));
        suites.push(diagonal_oracle(classify, &mut ledger));
        suites.push(lift_independence(classify, &mut ledger));
        suites.push(presentation_invariance(classify, &mut ledger));
        suites.push(linking_identity(&ledger));
        suites.push(exact_linear_algebra());
    }
    let passed = suites.iter().all(|s| s.passed);
    SelftestSummary {
        schema: crate::report::SCHEMA,
        version: crate::report::VERSION.to_string(),
        suites,
        passed,
    }
}

/// Classifies every cover class of `b`; `None` when any class errors.
fn classify_every(
    classify: ClassifyFn<'_>,
    b: &IntMatrix,
    ledger: &mut Ledger,
) -> std::result::Result<Vec<IndexReport>, String> {
    let set = cover_classes(b, usize::MAX).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(set.classes.len());
    for x in &set.classes {
        let r = classify(b, x).map_err(|e| format!("B={b} x={x}: {e}"))?;
        ledger.push((b.clone(), r.clone()));
        out.push(r);
    }
    Ok(out)
}

fn single(a: i64) -> IntMatrix {
    IntMatrix::diagonal(&[a])
}

fn fixtures(classify: ClassifyFn<'_>, ledger: &mut Ledger) -> SuiteResult {
    let started = Instant::now();
    let mut s = Suite::new("fixtures");

    let expect = |s: &mut Suite, ledger: &mut Ledger, b: IntMatrix, want: &[(Vec<u8>, Index)]| {
        match classify_every(classify, &b, ledger) {
            Ok(reports) => {
                let got: Vec<_> = reports
                    .iter()
                    .map(|r| (r.class.bits().to_bits(), r.index))
                    .collect();
                s.check(got == want, || format!("B={b}: got {got:?}, want {want:?}"));
            }
            Err(e) => s.check(false, || e),
        }
    };

    expect(&mut s, ledger, single(-2), &[(vec![1], Index::Three)]);
    expect(&mut s, ledger, single(-4), &[(vec![1], Index::Two)]);
    expect(&mut s, ledger, single(0), &[(vec![1], Index::One)]);
    expect(&mut s, ledger, single(-3), &[]);
    expect(
        &mut s,
        ledger,
        IntMatrix::diagonal(&[2, 2]),
        &[
            (vec![1, 0], Index::Three),
            (vec![0, 1], Index::Three),
            (vec![1, 1], Index::Two),
        ],
    );

    // Stolz witness: Y = (-2) is not in 4Z and the triple cup vanishes.
    let b = single(-4);
    match CoverClass::from_bits(&b, &[1]).and_then(|x| classify(&b, &x)) {
        Ok(r) => {
            s.check(r.bockstein_rep == vec![BigInt::from(-2)], || {
                format!("Stolz: Y = {:?}", r.bockstein_rep)
            });
            s.check(
                is_in_integral_image(&b, &r.bockstein_rep) == Ok(false),
                || "Stolz: Y lies in 4Z".into(),
            );
            s.check(r.triple_cup == 0, || "Stolz: triple cup is 1".into());
        }
        Err(e) => s.check(false, || format!("Stolz: {e}")),
    }

    for e in catalog::entries() {
        match (&e.surgery_presentation, &e.cover_class) {
            (Some(b), Some(bits)) => {
                let got = CoverClass::from_bits(b, bits).and_then(|x| classify(b, &x));
                match got {
                    Ok(r) => {
                        ledger.push((b.clone(), r.clone()));
                        s.check(r.index == e.index, || {
                            format!(
                                "catalog {} -> {}: got {}, stored {}",
                                e.cover_manifold, e.quotient_manifold, r.index, e.index
                            )
                        });
                    }
                    Err(err) => s.check(false, || format!("catalog {}: {err}", e.quotient_manifold)),
                }
            }
            _ => s.check(!e.computable_by_surgery && !e.source.is_empty(), || {
                format!("catalog {} -> {}: missing data", e.cover_manifold, e.quotient_manifold)
            }),
        }
    }
    let k3 = catalog::lookup("K3");
    s.check(
        k3.len() == 1 && k3[0].index == Index::Three && !k3[0].computable_by_surgery,
        || format!("catalog K3: {k3:?}"),
    );
    let s1rp2 = catalog::entries()
        .into_iter()
        .find(|e| e.quotient_manifold == "S1xRP2" && e.cover_manifold == "S1xS2");
    s.check(
        s1rp2.is_some_and(|e| e.index == Index::Two && !e.computable_by_surgery),
        || "catalog S1xS2 -> S1xRP2 missing or wrong".into(),
    );
    s.finish(started)
}

fn lens_sweep(classify: ClassifyFn<'_>, ledger: &mut Ledger) -> SuiteResult {
    let started = Instant::now();
    let mut s = Suite::new("lens-sweep");
    for p in 2..=200i64 {
        for q in 1..p {
            if p.gcd(&q) != 1 {
                continue;
            }
            let b = match lens_presentation(p, q) {
                Ok(pres) => linking_matrix(&pres),
                Err(e) => {
                    s.check(false, || format!("L({p},{q}): {e}"));
                    continue;
                }
            };
            match classify_every(classify, &b, ledger) {
                Ok(reports) if p % 2 == 1 => {
                    s.check(reports.is_empty(), || format!("L({p},{q}): {} classes", reports.len()))
                }
                Ok(reports) => {
                    let want = if p % 4 == 2 { Index::Three } else { Index::Two };
                    s.check(reports.len() == 1 && reports[0].index == want, || {
                        let got: Vec<_> = reports.iter().map(|r| r.index).collect();
                        format!("L({p},{q}): got {got:?}, want [{want:?}]")
                    });
                }
                Err(e) => s.check(false, || e),
            }
        }
    }
    s.finish(started)
}

fn diagonal_oracle(classify: ClassifyFn<'_>, ledger: &mut Ledger) -> SuiteResult {
    let started = Instant::now();
    let mut s = Suite::new("diagonal-oracle");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    for _ in 0..500 {
        let n = rng.gen_range(1..=8);
        let diag = gen::random_diagonal(&mut rng, n, 10);
        let b = IntMatrix::diagonal(&diag);
        match classify_every(classify, &b, ledger) {
            Ok(reports) => {
                for r in reports {
                    let oracle = diagonal_index(&diag, &r.class);
                    s.check(oracle.as_ref() == Ok(&r.index), || {
                        format!("diag{diag:?} x={}: classifier {}, closed form {oracle:?}", r.class, r.index)
                    });
                }
            }
            Err(e) => s.check(false, || e),
        }
    }
    s.finish(started)
}

fn random_class<R: Rng>(rng: &mut R, max_n: usize) -> (IntMatrix, CoverClass) {
    loop {
        let n = rng.gen_range(1..=max_n);
        let b = gen::random_even_biased_symmetric(rng, n, 6);
        let set = cover_classes(&b, usize::MAX).expect("symmetric");
        if set.classes.is_empty() {
            continue;
        }
        let x = set.classes[rng.gen_range(0..set.classes.len())].clone();
        return (b, x);
    }
}

fn lift_independence(classify: ClassifyFn<'_>, ledger: &mut Ledger) -> SuiteResult {
    let started = Instant::now();
    let mut s = Suite::new("lift-independence");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    for _ in 0..1000 {
        let (b, x) = random_class(&mut rng, 6);
        let report = match classify(&b, &x) {
            Ok(r) => r,
            Err(e) => {
                s.check(false, || format!("B={b} x={x}: {e}"));
                continue;
            }
        };
        ledger.push((b.clone(), report.clone()));
        let shifted: Vec<BigInt> = report
            .lift
            .iter()
            .map(|v| v + 2 * BigInt::from(rng.gen_range(-5i64..=5)))
            .collect();
        match evaluate_lift(&b, &shifted) {
            Ok(v) => s.check(
                v.index == report.index
                    && v.beta_vanishes == report.beta_vanishes
                    && v.triple_cup == report.triple_cup,
                || format!("B={b} x={x} X'={shifted:?}: {v:?} vs index {}", report.index),
            ),
            Err(e) => s.check(false, || format!("B={b} X'={shifted:?}: {e}")),
        }
    }
    s.finish(started)
}

fn index_multiset(
    classify: ClassifyFn<'_>,
    b: &IntMatrix,
    ledger: &mut Ledger,
) -> std::result::Result<Vec<Index>, String> {
    let mut v: Vec<Index> = classify_every(classify, b, ledger)?
        .into_iter()
        .map(|r| r.index)
        .collect();
    v.sort();
    Ok(v)
}

fn presentation_invariance(classify: ClassifyFn<'_>, ledger: &mut Ledger) -> SuiteResult {
    let started = Instant::now();
    let mut s = Suite::new("presentation-invariance");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    for _ in 0..200 {
        let n = rng.gen_range(1..=5);
        let b = gen::random_even_biased_symmetric(&mut rng, n, 6);
        let p = gen::random_unimodular(&mut rng, n, 3 * n + 2);
        let moved = crate::linalg::congruence_transform(&b, &p).expect("unimodular by construction");
        let mut stabilized = moved.clone();
        for _ in 0..rng.gen_range(1..=2) {
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            stabilized = stabilized.block_sum(&IntMatrix::diagonal(&[sign]));
        }
        let base = index_multiset(classify, &b, ledger);
        for (what, other) in [("congruence", &moved), ("stabilization", &stabilized)] {
            let got = index_multiset(classify, other, ledger);
            s.check(base.is_ok() && base == got, || {
                format!("B={b} vs {what} {other}: {base:?} vs {got:?}")
            });
        }
    }
    s.finish(started)
}

/// `XᵀBX / 4 mod 1`, computed directly from the matrix.
pub fn quarter_form(b: &IntMatrix, lift: &[BigInt]) -> Option<QmodZ> {
    let q = b.bilinear(lift, lift).ok()?;
    Some(QmodZ::new(BigRational::new(q, BigInt::from(4))))
}

fn linking_identity(ledger: &Ledger) -> SuiteResult {
    let started = Instant::now();
    let mut s = Suite::new("linking-identity");
    for (b, r) in ledger {
        let Some(lambda) = &r.self_linking else {
            s.check(false, || format!("B={b} x={}: no self-linking computed", r.class));
            continue;
        };
        let half = QmodZ::half();
        s.check(lambda.is_zero() || *lambda == half, || {
            format!("B={b} x={}: self-linking {lambda} not in {{0, 1/2}}", r.class)
        });
        s.check((*lambda == half) == (r.triple_cup == 1), || {
            format!("B={b} x={}: self-linking {lambda} vs triple cup {}", r.class, r.triple_cup)
        });
        let quarter = quarter_form(b, &r.lift);
        s.check(quarter.as_ref() == Some(lambda), || {
            format!("B={b} x={}: self-linking {lambda} vs quarter form {quarter:?}", r.class)
        });
    }
    s.finish(started)
}

/// Exhaustive search for `z ∈ [-bound, bound]ⁿ` with `b·z = y`.
pub fn brute_force_preimage(b: &IntMatrix, y: &[BigInt], bound: i64) -> Option<Vec<BigInt>> {
    let n = b.cols();
    let mut z = vec![-bound; n];
    loop {
        let zb: Vec<BigInt> = z.iter().map(|&v| BigInt::from(v)).collect();
        if b.mul_vec(&zb).ok()?.as_slice() == y {
            return Some(zb);
        }
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            if z[i] < bound {
                z[i] += 1;
                break;
            }
            z[i] = -bound;
            i += 1;
        }
    }
}

fn exact_linear_algebra() -> SuiteResult {
    let started = Instant::now();
    let mut s = Suite::new("exact-linear-algebra");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 10);
    for _ in 0..500 {
        let rows = rng.gen_range(1..=20);
        let cols = rng.gen_range(1..=20);
        let b = gen::random_matrix(&mut rng, rows, cols, 100);
        let d = smith_normal_form(&b);
        let product = d.u.mul(&b).and_then(|ub| ub.mul(&d.v));
        s.check(product.as_ref() == Ok(&d.s), || format!("U.B.V != S for B={b}"));
        s.check(d.u.is_unimodular() && d.v.is_unimodular(), || {
            format!("non-unimodular transform for B={b}")
        });
        s.check(d.s.is_diagonal(), || format!("S not diagonal for B={b}"));
        let diag = d.diagonal();
        let chain = diag.iter().all(|x| !x.is_negative())
            && diag.windows(2).all(|w| {
                if w[0].is_zero() {
                    w[1].is_zero()
                } else {
                    w[1].is_multiple_of(&w[0])
                }
            });
        s.check(chain, || format!("divisibility chain broken: {diag:?}"));
    }

    for i in 0..200 {
        let rows = rng.gen_range(1..=3);
        let cols = rng.gen_range(1..=3);
        let b = gen::random_matrix(&mut rng, rows, cols, 5);
        let y: Vec<BigInt> = if i % 2 == 0 {
            let z0: Vec<BigInt> = (0..cols).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect();
            b.mul_vec(&z0).expect("dims")
        } else {
            (0..rows).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect()
        };
        let brute = brute_force_preimage(&b, &y, 5);
        let member = is_in_integral_image(&b, &y);
        let solved = solve_integral(&b, &y);
        let (Ok(member), Ok(solved)) = (member, solved) else {
            s.check(false, || format!("B={b} y={y:?}: error"));
            continue;
        };
        s.check(member == solved.is_some(), || {
            format!("B={b} y={y:?}: membership {member} but solve {solved:?}")
        });
        if brute.is_some() {
            s.check(member, || format!("B={b} y={y:?}: brute force found {brute:?}"));
        }
        if let Some(z) = &solved {
            s.check(b.mul_vec(z).ok().as_deref() == Some(&y[..]), || {
                format!("B={b} y={y:?}: witness {z:?} fails")
            });
        }
        // With full column rank the rational solution is unique; integrality
        // of it decides membership independently of the Smith route.
        if smith_normal_form(&b).rank() == cols {
            let rational = solve_rational(&b, &y).ok().flatten();
            let integral = rational
                .as_ref()
                .is_some_and(|z| z.entries().iter().all(|v| v.is_integer()));
            s.check(integral == member, || {
                format!("B={b} y={y:?}: rational route {rational:?} vs membership {member}")
            });
        }
    }
    s.finish(started)
}
