//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod support;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use affine_automata::analysis::{
    equidistribution_test, isolation_gap, lower_density, prime_sieve, spectrum, unary_scan, weyl_sequence,
    IntervalBox,
};
use affine_automata::combinators::{
    amplify, complement, convex_sum, scale, shift_cutpoint, tensor_product, BooleanOp, MixWeights,
};
use affine_automata::gallery::{eq3, eq3_components, eq_afa, eq_counter};
use affine_automata::normal_forms::{bounded_form, canonical_initial};
use affine_automata::rational::to_f64;
use affine_automata::sample::{random_afa, random_affine_matrix};
use affine_automata::{words_up_to, Afa, Composite, Rational};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const AB: [char; 2] = ['a', 'b'];
const ABC: [char; 3] = ['a', 'b', 'c'];

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Dense row-major reference evaluation, independent of the library's
/// sparse run.
fn reference_value(a: &Afa, word: &str) -> Rational {
    let mut v = a.initial().entries().to_vec();
    for c in word.chars() {
        let rows = a.transition(c).unwrap().rows();
        v = rows
            .iter()
            .map(|row| row.iter().zip(&v).fold(Rational::zero(), |s, (m, x)| s + m * x))
            .collect();
    }
    let total = v.iter().fold(Rational::zero(), |s, x| s + x.abs());
    let acc = a.accepting().accepting().iter().fold(Rational::zero(), |s, &i| s + v[i].abs());
    acc / total
}

/// 200 random automata over {a, b} with 2 or 3 states and denominators ≤ 8.
fn corpus() -> Vec<Afa> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    (0..200)
        .map(|_| {
            let states = rng.gen_range(2..=3);
            random_afa(&mut rng, states, &AB, 8)
        })
        .collect()
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let corpus = corpus();
    let words = words_up_to(&AB, 6);
    let reference: Vec<Vec<Rational>> = corpus
        .iter()
        .map(|a| words.iter().map(|w| reference_value(a, w)).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut checks = 0usize;
    for (i, a) in corpus.iter().enumerate() {
        let j = (i + 1) % corpus.len();
        let b = &corpus[j];
        let alpha = q(rng.gen_range(0..=8), 8);
        let beta = Rational::one() - &alpha;
        let outputs = [
            ("tensor", tensor_product(a, b)),
            ("convex", convex_sum(a, b, &MixWeights::from_alpha(alpha.clone()).unwrap())),
            ("complement", Ok(complement(a))),
            ("amplify", amplify(a)),
            ("scale", scale(a, alpha.clone())),
        ];
        for (name, out) in outputs {
            let out = out.map_err(|e| format!("automaton {i}, {name}: {e}"))?;
            ensure(out.validate().is_empty(), || format!("automaton {i}: {name} output fails validation"))?;
            let values = out.values_up_to(6);
            ensure(values.len() == words.len(), || "word enumeration mismatch".into())?;
            for (n, (w, got)) in values.iter().enumerate() {
                ensure(*w == words[n], || "word order mismatch".into())?;
                let (f, g) = (&reference[i][n], &reference[j][n]);
                let want = match name {
                    "tensor" => f * g,
                    "convex" => &alpha * f + &beta * g,
                    "complement" => Rational::one() - f,
                    "amplify" => f * f * (q(3, 1) - q(2, 1) * f),
                    _ => &alpha * f,
                };
                ensure(*got == want, || format!("automaton {i}, {name}, word {w:?}: {got} != {want}"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} exact identities over 200 automata and {} words", words.len()))
}

fn criterion_2() -> Outcome {
    let corpus = corpus();
    let words = words_up_to(&AB, 6);
    let froms = [q(0, 1), q(1, 3), q(1, 2), q(1, 1)];
    let tos = [q(1, 4), q(1, 2), q(3, 4)];
    let mut checks = 0usize;
    for (i, a) in corpus.iter().enumerate() {
        let values: Vec<Rational> = words.iter().map(|w| a.accept_value(w).unwrap()).collect();
        for l1 in &froms {
            for l2 in &tos {
                let b = shift_cutpoint(a, l1, l2).map_err(|e| format!("automaton {i}, {l1} -> {l2}: {e}"))?;
                for (w, f) in words.iter().zip(&values) {
                    let g = b.accept_value(w).unwrap();
                    ensure((f > l1) == (&g > l2) && (f == l1) == (&g == l2), || {
                        format!("automaton {i}, {l1} -> {l2}, word {w:?}: f = {f}, shifted = {g}")
                    })?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} word checks, both > and = relations"))
}

fn criterion_3() -> Outcome {
    let (ab, ac) = eq3_components();
    let union = ab.clone().union(ac.clone()).unwrap();
    let inter = ab.clone().intersection(ac.clone()).unwrap();
    let (u_hi, u_lo) = BooleanOp::Union.thresholds();
    let (i_hi, i_lo) = BooleanOp::Intersection.thresholds();
    ensure(u_hi == q(3, 8) && u_lo == q(1, 4) && i_hi == q(9, 16) && i_lo == q(1, 4), || {
        "threshold table differs from 3/8, 1/4, 9/16, 1/4".into()
    })?;
    let quarter = q(1, 4);
    let words = words_up_to(&ABC, 9);
    for w in &words {
        let count = |c: char| w.chars().filter(|&x| x == c).count();
        let in_ab = count('a') == count('b');
        let in_ac = count('a') == count('c');
        let fa = ab.accept_value(w).unwrap();
        let fb = ac.accept_value(w).unwrap();
        for (inside, f) in [(in_ab, &fa), (in_ac, &fb)] {
            let clamped = if inside { f >= &(Rational::one() - &quarter) } else { f <= &quarter };
            ensure(clamped, || format!("component error above 1/4 on {w:?}: {f}"))?;
        }
        let u = union.accept_value(w).unwrap();
        let x = inter.accept_value(w).unwrap();
        let u_ok = if in_ab || in_ac { u >= u_hi } else { u <= u_lo };
        let x_ok = if in_ab && in_ac { x >= i_hi } else { x <= i_lo };
        ensure(u_ok, || format!("union value {u} on {w:?}"))?;
        ensure(x_ok, || format!("intersection value {x} on {w:?}"))?;
    }
    Ok(format!("{} words over {{a,b,c}}, union >= 3/8 | <= 1/4, intersection >= 9/16 | <= 1/4", words.len()))
}

fn criterion_4() -> Outcome {
    let corpus = corpus();
    let words = words_up_to(&AB, 6);
    let half = q(1, 2);
    let mut empty_word_mismatch = Vec::new();
    for (i, a) in corpus.iter().enumerate() {
        let c = canonical_initial(a).map_err(|e| e.to_string())?;
        let b = bounded_form(&c).map_err(|e| e.to_string())?;
        for out in [&c, &b] {
            ensure(out.transitions().values().all(|m| m.is_affine()), || {
                format!("automaton {i}: emitted matrix with a column not summing to 1")
            })?;
        }
        for w in &words {
            let f = a.accept_value(w).unwrap();
            let g = c.accept_value(w).unwrap();
            if f != g {
                ensure(w.is_empty(), || format!("automaton {i}, canonical value differs on {w:?}: {g} != {f}"))?;
                empty_word_mismatch.push((i, f, g));
            }
        }
        let mut failure = None;
        b.visit_words(6, |w, v| {
            if failure.is_some() {
                return;
            }
            if !v.entries().iter().all(|x| x.abs() <= Rational::one()) {
                failure = Some(format!("automaton {i}: bounded state entry outside [-1,1] after {w:?}"));
                return;
            }
            let f = c.accept_value(w).unwrap();
            let g = b.value_of_state(v);
            if (f > half) != (g > half) || (f == half) != (g == half) {
                failure = Some(format!("automaton {i}: bounded membership differs on {w:?}"));
            }
        });
        if let Some(msg) = failure {
            return Err(msg);
        }
    }
    let detail = "bounded form: entries in [-1,1] and cutpoint-1/2 membership preserved on every prefix; canonical form exact on every non-empty word";
    if empty_word_mismatch.is_empty() {
        Ok(detail.into())
    } else {
        let (i, f, g) = &empty_word_mismatch[0];
        Err(format!(
            "{detail}; canonical form changes the empty-word value on {}/200 automata (first: automaton {i}, {f} -> {g}); \
             an automaton started in e_0 has value 0 or 1 on the empty word",
            empty_word_mismatch.len()
        ))
    }
}

fn criterion_5() -> Outcome {
    let eq = eq_afa();
    let mut failure = None;
    let mut count = 0usize;
    eq.visit_words(12, |w, v| {
        let d = w.chars().map(|c| if c == 'a' { 1i64 } else { -1 }).sum::<i64>().abs();
        if failure.is_none() && eq.value_of_state(v) != q(1, 1 + 2 * d) {
            failure = Some(format!("eq value on {w:?} is {}", eq.value_of_state(v)));
        }
        count += 1;
    });
    if let Some(msg) = failure {
        return Err(msg);
    }
    let e3: Composite = eq3();
    let words = words_up_to(&ABC, 9);
    let r = isolation_gap(&e3, &q(1, 2), &words).map_err(|e| e.to_string())?;
    let gap = r.gap.clone().ok_or("one-sided sample")?;
    ensure(gap >= q(1, 4), || format!("eq3 gap {gap} below 1/4"))?;
    Ok(format!(
        "eq closed form on {count} words; eq3 over {} words: min member {}, max non-member {}, gap {} >= 1/4",
        words.len(),
        r.min_accepted.unwrap(),
        r.max_rejected.unwrap(),
        gap
    ))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut worst = 0.0f64;
    for n in 0..100 {
        let size = rng.gen_range(2..=6);
        let m = random_affine_matrix(&mut rng, size, 8);
        let s = spectrum(&m).map_err(|e| e.to_string())?;
        let dist = s
            .iter()
            .map(|e| ((e.re - 1.0).powi(2) + e.im.powi(2)).sqrt())
            .fold(f64::INFINITY, f64::min);
        ensure(dist <= 1e-9, || format!("matrix {n}: nearest eigenvalue to 1 at distance {dist:e}"))?;
        worst = worst.max(dist);
    }
    let sieve = prime_sieve(100_000);
    let ratios: Vec<(u64, f64, u64)> = [1_000u64, 10_000, 100_000]
        .iter()
        .map(|&n| {
            let r = lower_density(|k| sieve[k as usize], n);
            (n, r.ratio_at_n, r.members)
        })
        .collect();
    let (_, at_max, members) = ratios[2];
    ensure(members == 9592, || format!("pi(10^5) = {members}"))?;
    ensure((at_max - 9592.0 / 100_001.0).abs() <= 1e-6, || format!("ratio at 10^5 = {at_max}"))?;
    ensure(ratios.windows(2).all(|w| w[1].1 < w[0].1), || format!("prime ratios not decreasing: {ratios:?}"))?;

    let n = 100_000;
    let irrational = equidistribution_test(
        &weyl_sequence(&[2f64.sqrt()], n),
        &IntervalBox::new(vec![(0.0, 0.5)]).unwrap(),
        n,
    )
    .map_err(|e| e.to_string())?;
    ensure(irrational.deviation <= 0.01, || format!("i*sqrt2 deviation {}", irrational.deviation))?;
    let rational = equidistribution_test(
        &weyl_sequence(&[0.25], n),
        &IntervalBox::new(vec![(0.0, 0.125)]).unwrap(),
        n,
    )
    .map_err(|e| e.to_string())?;
    ensure(rational.deviation >= 0.1, || format!("i/4 deviation {}", rational.deviation))?;
    Ok(format!(
        "max |lambda - 1| = {worst:.1e} <= 1e-9 over 100 matrices; prime ratio {at_max:.6} (9592/100001 +- 1e-6), \
         decreasing {:.4} > {:.4} > {:.4}; sqrt2 deviation {:.5} <= 0.01; 1/4 deviation {:.3} >= 0.1",
        ratios[0].1, ratios[1].1, ratios[2].1, irrational.deviation, rational.deviation
    ))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut worst = 0.0f64;
    for n in 0..20 {
        let states = rng.gen_range(2..=3);
        let a = random_afa(&mut rng, states, &['a'], 8);
        let scan = unary_scan(&a, 200, true).map_err(|e| e.to_string())?;
        for p in &scan.points {
            let exact = to_f64(p.exact.as_ref().ok_or("missing exact value")?);
            let err = (p.value - exact).abs();
            ensure(err <= 1e-9, || format!("automaton {n}, n = {}: float {} vs exact {exact}", p.n, p.value))?;
            worst = worst.max(err);
        }
    }
    let eq = eq_counter(&['a'], 'a', 'b');
    let scan = unary_scan(&eq, 200, true).map_err(|e| e.to_string())?;
    for p in &scan.points {
        ensure(p.exact == Some(q(1, 1 + 2 * p.n as i64)), || format!("unary eq at n = {}", p.n))?;
    }
    Ok(format!("max |float - exact| = {worst:.1e} <= 1e-9 over 20 automata, n <= 200; unary eq = 1/(1+2n) exactly"))
}

fn criterion_8() -> Outcome {
    use support::*;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    fixtures(dir.path());
    let cases = golden_cases(dir.path());
    for case in &cases {
        case.check()?;
    }

    let eq = path(dir.path(), "eq.json");
    let again = path(dir.path(), "again.json");
    let original = std::fs::read_to_string(&eq).unwrap();
    let parsed = affine_automata::format::parse(&original).map_err(|e| e.to_string())?;
    std::fs::write(&again, affine_automata::format::serialize(&parsed)).unwrap();
    ensure(std::fs::read_to_string(&again).unwrap() == original, || "round trip changed the file".into())?;

    let bad = path(dir.path(), "bad.json");
    std::fs::write(&bad, original.replacen("[\"-1\", \"0\", \"1\"]", "[\"-1\", \"0\", \"2\"]", 1)).unwrap();
    let out = afa(["validate", &bad]);
    ensure(code(&out) == 1 && stdout(&out).contains("matrix for 'a': column 2 sums to 2"), || {
        format!("validate on a broken file: exit {}, {:?}", code(&out), stdout(&out))
    })?;

    let amplified = path(dir.path(), "out.json");
    let out = afa(["compose", "amplify", &eq, "--rounds", "2", "-o", &amplified]);
    ensure(code(&out) == 0, || stderr(&out))?;
    let out = afa(["validate", &amplified]);
    ensure(stdout(&out) == "ok: affine automaton, 19683 states, alphabet ab\n", || stdout(&out))?;
    let out = afa(["eval", &amplified, "--word", "aab"]);
    ensure(stdout(&out) == "3283/19683 (0.1667936798)\n", || {
        format!("amplify pipeline printed {:?}", stdout(&out))
    })?;
    Ok(format!("{} golden invocations, round trip, validate, amplify pipeline 3283/19683 on \"aab\"", cases.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("combinator identities (tolerance 0)", criterion_1),
        ("cutpoint shift equivalences (exact)", criterion_2),
        ("boolean closure thresholds (exact)", criterion_3),
        ("normal forms (exact)", criterion_4),
        ("gallery separation (exact, gap >= 1/4)", criterion_5),
        ("analysis sanity (1e-9, 1e-6, 0.01, 0.1)", criterion_6),
        ("scan consistency (1e-9)", criterion_7),
        ("command line (exact output)", criterion_8),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {} {name} [{secs:.1}s]: {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} {name} [{secs:.1}s]: {detail}", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
