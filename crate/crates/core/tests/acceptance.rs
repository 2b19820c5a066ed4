//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the summary is always printed.
//! Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use borsuk_ulam::borsuk::{evaluate_lift, lift_class};
use borsuk_ulam::catalog;
use borsuk_ulam::linalg::{is_in_integral_image, smith_normal_form, solve_integral};
use borsuk_ulam::surgery::{lens_presentation, linking_matrix};
use borsuk_ulam::{
    classify_all, classify_class, cover_classes, diagonal_index, CoverClass, Index, IndexReport,
    IntMatrix, QmodZ,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const CAP: usize = 1 << 12;

type Ledger = Vec<(IntMatrix, IndexReport)>;

struct Outcome {
    id: u8,
    name: &'static str,
    checks: usize,
    failures: Vec<String>,
    elapsed: Duration,
    note: String,
}

impl Outcome {
    fn new(id: u8, name: &'static str) -> Self {
        Self {
            id,
            name,
            checks: 0,
            failures: Vec::new(),
            elapsed: Duration::ZERO,
            note: String::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(detail());
        }
    }

    fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn m(rows: Vec<Vec<i64>>) -> IntMatrix {
    IntMatrix::from_rows(rows).unwrap()
}

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

fn all_reports(b: &IntMatrix, ledger: &mut Ledger) -> Vec<IndexReport> {
    let reports = classify_all(b, CAP).unwrap().reports;
    ledger.extend(reports.iter().map(|r| (b.clone(), r.clone())));
    reports
}

fn criterion_1(ledger: &mut Ledger) -> Outcome {
    let mut o = Outcome::new(1, "S3 antipodal: [[-2]] has one class of index 3, < 1 ms");
    let b = m(vec![vec![-2]]);
    let reports = all_reports(&b, ledger);
    o.check(reports.len() == 1, || format!("{} classes", reports.len()));
    o.check(reports.iter().all(|r| r.index == Index::Three), || {
        format!("indices {:?}", reports.iter().map(|r| r.index).collect::<Vec<_>>())
    });
    let best = (0..200)
        .map(|_| {
            let t = Instant::now();
            let r = classify_all(&b, CAP).unwrap();
            std::hint::black_box(r);
            t.elapsed()
        })
        .min()
        .unwrap();
    o.check(best < Duration::from_millis(1), || format!("best time {best:?}"));
    o.note = format!("best of 200: {best:?}");
    o
}

fn criterion_2(ledger: &mut Ledger) -> Outcome {
    let mut o = Outcome::new(2, "RP3 over L(4,1): [[-4]] has index 2, Y = (-2) not in 4Z");
    let b = m(vec![vec![-4]]);
    let reports = all_reports(&b, ledger);
    o.check(reports.len() == 1, || format!("{} classes", reports.len()));
    if let Some(r) = reports.first() {
        o.check(r.index == Index::Two, || format!("index {}", r.index));
        o.check(r.bockstein_rep == ints(&[-2]), || format!("Y = {:?}", r.bockstein_rep));
        // Witness that Y is not a multiple of 4.
        o.check(!BigInt::from(-2).is_multiple_of(&BigInt::from(4)), || "-2 in 4Z".into());
        o.check(!r.beta_vanishes, || "beta vanishes".into());
        o.check(r.triple_cup == 0, || format!("triple cup {}", r.triple_cup));
    }
    o
}

fn lens_expected(p: i64) -> Option<Index> {
    match p.rem_euclid(4) {
        2 => Some(Index::Three),
        0 => Some(Index::Two),
        _ => None,
    }
}

fn criterion_3(ledger: &mut Ledger) -> Outcome {
    let mut o = Outcome::new(3, "lens sweep p <= 200: index 3 iff p = 2 mod 4, odd p uncovered, < 10 s");
    let started = Instant::now();
    let cases: Vec<(i64, i64)> = (2..=200i64)
        .flat_map(|p| (1..p).filter(move |q| q.gcd(&p) == 1).map(move |q| (p, q)))
        .collect();
    let results: Vec<_> = cases
        .par_iter()
        .map(|&(p, q)| {
            let b = linking_matrix(&lens_presentation(p, q).unwrap());
            let reports = classify_all(&b, CAP).unwrap().reports;
            (p, q, b, reports)
        })
        .collect();
    for (p, q, b, reports) in results {
        match lens_expected(p) {
            Some(idx) => {
                o.check(reports.len() == 1 && reports[0].index == idx, || {
                    format!("L({p},{q}): {:?}", reports.iter().map(|r| r.index).collect::<Vec<_>>())
                });
            }
            None => o.check(reports.is_empty(), || format!("L({p},{q}): {} classes", reports.len())),
        }
        ledger.extend(reports.into_iter().map(|r| (b.clone(), r)));
    }
    let elapsed = started.elapsed();
    o.check(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"));
    o.note = format!("{} presentations in {elapsed:?}", cases.len());
    o
}

fn criterion_4(ledger: &mut Ledger) -> Outcome {
    let mut o = Outcome::new(4, "S1xS2 quotients: [[0]] -> 1, diag(2,2) class (1,1) -> 2");
    let b = m(vec![vec![0]]);
    let reports = all_reports(&b, ledger);
    o.check(reports.len() == 1 && reports[0].index == Index::One, || {
        format!("[[0]]: {:?}", reports.iter().map(|r| r.index).collect::<Vec<_>>())
    });
    let b = IntMatrix::diagonal(&[2, 2]);
    let reports = all_reports(&b, ledger);
    let diag = reports.iter().find(|r| r.class.bits().to_bits() == vec![1, 1]);
    o.check(diag.map(|r| r.index) == Some(Index::Two), || format!("(1,1): {:?}", diag.map(|r| r.index)));
    o
}

fn criterion_5(ledger: &mut Ledger) -> Outcome {
    let mut o = Outcome::new(5, "catalog self-consistency");
    let entries = catalog::entries();
    for e in &entries {
        if e.computable_by_surgery {
            let b = e.surgery_presentation.clone().unwrap();
            let x = CoverClass::from_bits(&b, e.cover_class.as_deref().unwrap()).unwrap();
            let r = classify_class(&b, &x).unwrap();
            o.check(r.index == e.index, || {
                format!("{} -> {}: computed {} vs {}", e.cover_manifold, e.quotient_manifold, r.index, e.index)
            });
            ledger.push((b, r));
        }
        o.check(!e.source.trim().is_empty(), || format!("{}: no source", e.cover_manifold));
    }
    let find = |cover: &str, quotient: &str| {
        entries
            .iter()
            .find(|e| e.cover_manifold == cover && e.quotient_manifold == quotient)
    };
    let k3 = find("K3", "S1xRP2");
    o.check(k3.is_some_and(|e| e.index == Index::Three && !e.computable_by_surgery), || {
        "K3 entry missing or wrong".into()
    });
    let s1rp2 = find("S1xS2", "S1xRP2");
    o.check(s1rp2.is_some_and(|e| e.index == Index::Two && !e.computable_by_surgery), || {
        "S1xRP2 quotient entry missing or wrong".into()
    });
    o.note = format!("{} entries", entries.len());
    o
}

/// Index for a diagonal matrix straight from its entries.
fn diagonal_oracle(d: &[i64], x: &[u8]) -> Index {
    let selected: Vec<i64> = d.iter().zip(x).filter(|(_, &b)| b == 1).map(|(&a, _)| a).collect();
    assert!(selected.iter().all(|a| a % 2 == 0));
    let sum: i64 = selected.iter().sum();
    if sum.rem_euclid(4) != 0 {
        Index::Three
    } else if selected.iter().any(|&a| a != 0) {
        Index::Two
    } else {
        Index::One
    }
}

fn criterion_6(ledger: &mut Ledger) -> Outcome {
    let mut o = Outcome::new(6, "diagonal oracle: 500 random diagonal matrices");
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..500 {
        let n = rng.gen_range(1..=8);
        let d: Vec<i64> = (0..n).map(|_| rng.gen_range(-10..=10)).collect();
        let b = IntMatrix::diagonal(&d);
        for r in all_reports(&b, ledger) {
            let bits = r.class.bits().to_bits();
            let lib = diagonal_index(&d, &r.class).unwrap();
            let local = diagonal_oracle(&d, &bits);
            o.check(r.index == lib && lib == local, || {
                format!("d={d:?} x={bits:?}: classify {} closed form {lib} oracle {local}", r.index)
            });
        }
    }
    o
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> IntMatrix {
    let mut b = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            // Even entries on half the draws so that covers exist more often.
            let v = if rng.gen_bool(0.5) {
                2 * rng.gen_range(-bound / 2..=bound / 2)
            } else {
                rng.gen_range(-bound..=bound)
            };
            b[(i, j)] = BigInt::from(v);
            b[(j, i)] = BigInt::from(v);
        }
    }
    b
}

fn criterion_7(ledger: &mut Ledger) -> Outcome {
    let mut o = Outcome::new(7, "lift independence: 1000 perturbations X -> X + 2Z");
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut done = 0;
    while done < 1000 {
        let n = rng.gen_range(1..=6);
        let b = random_symmetric(&mut rng, n, 10);
        let set = cover_classes(&b, CAP).unwrap();
        if set.classes.is_empty() {
            continue;
        }
        let x = &set.classes[rng.gen_range(0..set.classes.len())];
        let r = classify_class(&b, x).unwrap();
        let lift = lift_class(x);
        let moved: Vec<BigInt> = lift
            .iter()
            .map(|l| l + BigInt::from(2 * rng.gen_range(-5i64..=5)))
            .collect();
        let v = evaluate_lift(&b, &moved).unwrap();
        o.check(
            v.index == r.index && v.beta_vanishes == r.beta_vanishes && v.triple_cup == r.triple_cup,
            || format!("B={b} x={} lift {moved:?}: {v:?} vs {}", r.class, r.index),
        );
        ledger.push((b, r));
        done += 1;
    }
    o
}

/// `XᵀBX / 4 mod 1` as a reduced fraction string.
fn quarter_oracle(b: &IntMatrix, x: &[BigInt]) -> &'static str {
    let mut q = BigInt::zero();
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            q += &x[i] * &b[(i, j)] * &x[j];
        }
    }
    match q.mod_floor(&BigInt::from(4)).try_into().unwrap() {
        0u8 => "0/1",
        2 => "1/2",
        r => panic!("XᵀBX = {r} mod 4 for a kernel class"),
    }
}

fn criterion_8(ledger: &Ledger) -> Outcome {
    let mut o = Outcome::new(8, "self-linking in {0, 1/2}, = 1/2 iff triple cup, = XᵀBX/4 mod 1");
    let half = QmodZ::half();
    for (b, r) in ledger {
        let Some(lk) = &r.self_linking else {
            o.check(false, || format!("B={b} x={}: not computed", r.class));
            continue;
        };
        o.check(lk.is_zero() || *lk == half, || format!("B={b} x={}: {lk}", r.class));
        o.check((*lk == half) == (r.triple_cup == 1), || {
            format!("B={b} x={}: {lk} with triple cup {}", r.class, r.triple_cup)
        });
        let expected = quarter_oracle(b, &r.lift);
        o.check(lk.to_string() == expected, || {
            format!("B={b} x={}: {lk} vs quarter form {expected}", r.class)
        });
    }
    o.note = format!("{} classifications", ledger.len());
    o
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut p = IntMatrix::identity(n);
    for _ in 0..3 * n + 2 {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let k = rng.gen_range(-2i64..=2);
        let mut e = IntMatrix::identity(n);
        match rng.gen_range(0..4) {
            0 | 1 if i != j => e[(i, j)] = BigInt::from(k),
            2 => {
                e[(i, i)] = BigInt::zero();
                e[(j, j)] = BigInt::zero();
                e[(i, j)] = BigInt::from(1);
                e[(j, i)] = BigInt::from(1);
                if i == j {
                    e[(i, i)] = BigInt::from(1);
                }
            }
            _ => e[(i, i)] = BigInt::from(-1),
        }
        p = e.mul(&p).unwrap();
    }
    p
}

fn index_multiset(b: &IntMatrix, ledger: &mut Ledger) -> Vec<Index> {
    let mut out: Vec<Index> = all_reports(b, ledger).iter().map(|r| r.index).collect();
    out.sort();
    out
}

fn criterion_9(ledger: &mut Ledger) -> Outcome {
    let mut o = Outcome::new(9, "presentation invariance: congruences and +-1 stabilizations");
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let n = rng.gen_range(1..=5);
        let b = random_symmetric(&mut rng, n, 8);
        let before = index_multiset(&b, ledger);

        let mut c = b.clone();
        for _ in 0..rng.gen_range(0..=2) {
            let unit = IntMatrix::diagonal(&[if rng.gen_bool(0.5) { 1i64 } else { -1 }]);
            c = c.block_sum(&unit);
        }
        let p = random_unimodular(&mut rng, c.rows());
        let c = p.transpose().mul(&c).unwrap().mul(&p).unwrap();
        o.check(c.is_symmetric(), || format!("PᵀCP not symmetric for B={b}"));
        let after = index_multiset(&c, ledger);
        o.check(before == after, || format!("B={b} -> {c}: {before:?} vs {after:?}"));
    }
    o
}

fn is_diagonal_with_divisibility(s: &IntMatrix, rank: usize) -> bool {
    let d = s.diagonal_entries();
    s.is_diagonal()
        && d[..rank].iter().all(|x| x.is_positive())
        && d[rank..].iter().all(Zero::is_zero)
        && d[..rank].windows(2).all(|w| w[1].is_multiple_of(&w[0]))
}

/// Every `z ∈ [-bound, bound]ⁿ` with `b·z = y`, by enumeration.
fn brute_force(b: &IntMatrix, y: &[BigInt], bound: i64) -> Option<Vec<BigInt>> {
    let n = b.cols();
    let width = (2 * bound + 1) as usize;
    (0..width.pow(n as u32)).find_map(|mut code| {
        let z: Vec<BigInt> = (0..n)
            .map(|_| {
                let digit = (code % width) as i64 - bound;
                code /= width;
                BigInt::from(digit)
            })
            .collect();
        (b.mul_vec(&z).unwrap() == y).then_some(z)
    })
}

fn criterion_10() -> Outcome {
    let mut o = Outcome::new(10, "exact linear algebra: 500 SNF identities, 200 brute-force solves");
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let snf_cases: Vec<IntMatrix> = (0..500)
        .map(|_| {
            let rows = rng.gen_range(1..=20);
            let cols = rng.gen_range(1..=20);
            let entries = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-100..=100))).collect();
            IntMatrix::new(rows, cols, entries).unwrap()
        })
        .collect();
    let snf_results: Vec<Option<String>> = snf_cases
        .par_iter()
        .map(|b| {
            let d = smith_normal_form(b);
            let product = d.u.mul(b).unwrap().mul(&d.v).unwrap();
            if product != d.s {
                return Some(format!("U·B·V != S for {b}"));
            }
            if !(d.u.determinant().unwrap().abs() == BigInt::from(1)
                && d.v.determinant().unwrap().abs() == BigInt::from(1))
            {
                return Some(format!("non-unimodular transform for {b}"));
            }
            if !is_diagonal_with_divisibility(&d.s, d.rank()) {
                return Some(format!("S not in normal form for {b}: {}", d.s));
            }
            None
        })
        .collect();
    for r in snf_results {
        o.check(r.is_none(), || r.clone().unwrap());
    }

    let bound = 4;
    for case in 0..200 {
        let rows = rng.gen_range(1..=3);
        let cols = rng.gen_range(1..=3);
        let entries = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-5..=5))).collect();
        let b = IntMatrix::new(rows, cols, entries).unwrap();
        // Half the right-hand sides are known images, half are arbitrary.
        let y: Vec<BigInt> = if case % 2 == 0 {
            let z: Vec<BigInt> = (0..cols).map(|_| BigInt::from(rng.gen_range(-2..=2))).collect();
            b.mul_vec(&z).unwrap()
        } else {
            (0..rows).map(|_| BigInt::from(rng.gen_range(-6..=6))).collect()
        };
        let found = brute_force(&b, &y, bound);
        let member = is_in_integral_image(&b, &y).unwrap();
        let solved = solve_integral(&b, &y).unwrap();
        o.check(member == solved.is_some(), || format!("B={b} y={y:?}: membership vs solve"));
        if let Some(z) = &solved {
            o.check(b.mul_vec(z).unwrap() == y, || format!("B={b} y={y:?}: bad witness {z:?}"));
        }
        if found.is_some() {
            o.check(member, || format!("B={b} y={y:?}: brute force found {found:?}, solver says no"));
        }
        if member && found.is_none() {
            // Only acceptable when every preimage lies outside the search box.
            let z = solved.clone().unwrap();
            let small = z.iter().all(|v| v.abs() <= BigInt::from(bound));
            o.check(!small, || {
                format!("B={b} y={y:?}: solver witness {z:?} missed by brute force")
            });
        }
    }
    o
}

fn main() -> ExitCode {
    let mut ledger = Ledger::new();
    let mut outcomes = Vec::new();
    let timed = |f: &mut dyn FnMut(&mut Ledger) -> Outcome, ledger: &mut Ledger| {
        let t = Instant::now();
        let mut o = f(ledger);
        o.elapsed = t.elapsed();
        o
    };
    outcomes.push(timed(&mut criterion_1, &mut ledger));
    outcomes.push(timed(&mut criterion_2, &mut ledger));
    outcomes.push(timed(&mut criterion_3, &mut ledger));
    outcomes.push(timed(&mut criterion_4, &mut ledger));
    outcomes.push(timed(&mut criterion_5, &mut ledger));
    outcomes.push(timed(&mut criterion_6, &mut ledger));
    outcomes.push(timed(&mut criterion_7, &mut ledger));
    outcomes.push(timed(&mut criterion_9, &mut ledger));
    outcomes.push(timed(&mut |l: &mut Ledger| criterion_8(l), &mut ledger));
    outcomes.push(timed(&mut |_: &mut Ledger| criterion_10(), &mut ledger));
    outcomes.sort_by_key(|o| o.id);

    let mut all = true;
    for o in &outcomes {
        all &= o.passed();
        println!(
            "{} criterion {:>2}: {} [{} checks, {:.2?}]{}",
            if o.passed() { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.checks,
            o.elapsed,
            if o.note.is_empty() { String::new() } else { format!(" ({})", o.note) }
        );
        for f in o.failures.iter().take(5) {
            println!("    {f}");
        }
    }
    println!("{}", if all { "acceptance: all criteria passed" } else { "acceptance: FAILED" });
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
