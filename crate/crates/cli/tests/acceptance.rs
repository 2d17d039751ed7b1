//! Acceptance suite: one test per criterion, exact tolerances, with the
//! expected runtime budget asserted alongside the values. Run with
//! `cargo test -p quadrep-cli --test acceptance`; the harness prints one
//! pass/fail line per criterion.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use quadrep::compose::{compose_pair, prime_power_rep, smith_two_squares, Sign};
use quadrep::cornacchia::{solve_d1_for_root, solve_for_root, solve_for_root_traced};
use quadrep::factor::factorize;
use quadrep::integer::{mod_inv, mod_pow};
use quadrep::modsqrt::{hensel_lift, normalize_root, sqrt_minus_d_mod_m, tonelli};
use quadrep::{oracle, solve_general, solve_proper, Int, Nat, ProblemSpec};

fn n(x: u64) -> Nat {
    Nat::from(x)
}

fn gcd64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn check_budget(started: Instant, budget: Duration, label: &str) {
    let elapsed = started.elapsed();
    println!("{label}: PASS in {} ms", elapsed.as_millis());
    assert!(
        elapsed < budget,
        "{label} exceeded its {budget:?} budget ({elapsed:?})"
    );
}

#[test]
fn criterion_01_example_one_exact_reproduction() {
    let started = Instant::now();

    // library level: roots, stopping data and the exact solution list
    let m = n(435629);
    let f = factorize(&m).unwrap();
    let roots = sqrt_minus_d_mod_m(&n(5), &m, &f).unwrap();
    assert_eq!(roots.roots(), &[n(231183), n(386057)]);

    let spec = ProblemSpec::new(n(5), m.clone()).unwrap();
    let first = solve_for_root_traced(&n(231183), &spec).unwrap();
    assert_eq!(
        (first.t_stop.clone(), first.x.clone(), first.y.clone()),
        (n(1385), n(228), n(277))
    );
    let second = solve_for_root_traced(&n(386057), &spec).unwrap();
    assert_eq!(
        (second.t_stop.clone(), second.x.clone(), second.y.clone()),
        (n(1450), n(123), n(290))
    );

    let reps = solve_proper(&spec, &f).unwrap();
    let pairs: Vec<_> = reps
        .iter()
        .map(|r| (r.x().clone(), r.y().clone()))
        .collect();
    assert_eq!(pairs, vec![(n(228), n(277)), (n(123), n(290))]);

    // command level: the same data must appear on stdout
    let out = Command::new(env!("CARGO_BIN_EXE_quadrep"))
        .args(["solve", "435629", "--d", "5"])
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0));
    assert!(text.contains("w=231183 t_nu=1385 t=228 D=277"));
    assert!(text.contains("w=386057 t_nu=1450 t=123 D=290"));
    assert!(text.contains("435629 = 228^2 + 5*277^2 (proper)"));
    assert!(text.contains("435629 = 123^2 + 5*290^2 (proper)"));
    assert_eq!(
        text.matches("(proper)").count(),
        2,
        "exactly two proper solutions"
    );

    check_budget(started, Duration::from_secs(1), "criterion 1");
}

#[test]
fn criterion_02_example_one_lifting_chain() {
    let started = Instant::now();

    let p2 = n(367) * n(367);
    let lifted = hensel_lift(&n(27), &Int::from(-5), &n(367), 2).unwrap();
    assert!(lifted == n(109760) || lifted == &p2 - n(109760));
    assert_eq!((&lifted * &lifted) % &p2, &p2 - n(5)); // -5 mod 367^2

    let reps = prime_power_rep(&n(367), 2, &n(5)).unwrap();
    assert_eq!(reps.len(), 1);
    assert_eq!((reps[0].rep.x(), reps[0].rep.y()), (&n(362), &n(27)));
    assert!(reps[0].rep.proper());

    check_budget(started, Duration::from_secs(1), "criterion 2");
}

#[test]
fn criterion_03_example_one_composition() {
    let started = Instant::now();

    let spec = ProblemSpec::new(n(5), n(58674434381)).unwrap();
    let reps = solve_general(&spec).unwrap();
    assert!(reps
        .iter()
        .any(|r| r.proper() && r.x() == &n(119931) && r.y() == &n(94118)));

    // the two sign branches of the explicit composition
    let left = prime_power_rep(&n(367), 2, &n(5)).unwrap().remove(0).rep;
    let right = {
        let m = n(435629);
        let f = factorize(&m).unwrap();
        solve_proper(&ProblemSpec::new(n(5), m).unwrap(), &f)
            .unwrap()
            .remove(0)
    };
    let proper = compose_pair(&left, &right, Sign::Minus).unwrap();
    assert_eq!((proper.x(), proper.y()), (&n(119931), &n(94118)));
    assert!(proper.proper());

    let improper = compose_pair(&left, &right, Sign::Plus).unwrap();
    assert!(!improper.proper());
    let g = num_integer::Integer::gcd(improper.x(), improper.y());
    assert_eq!(&g % n(367), BigUint::from(0u32), "gcd divisible by 367");

    check_budget(started, Duration::from_secs(1), "criterion 3");
}

#[test]
fn criterion_04_example_two_negative_case() {
    let started = Instant::now();

    // the genuine root is computed, then rejected by the identity check
    let spec = ProblemSpec::new(n(7), n(36964)).unwrap();
    let attempt = solve_for_root_traced(&n(24899), &spec).unwrap();
    assert_eq!((attempt.x.clone(), attempt.y.clone()), (n(52), n(144)));
    assert!(attempt.rep.is_none());

    let m = n(36964);
    let f = factorize(&m).unwrap();
    assert!(solve_proper(&spec, &f).unwrap().is_empty());

    let all = solve_general(&spec).unwrap();
    let pairs: Vec<_> = all
        .iter()
        .map(|r| (r.x().clone(), r.y().clone(), r.proper()))
        .collect();
    assert_eq!(pairs, vec![(n(26), n(72), false)]);

    // the odd prime part alone is properly representable
    let m = n(9241);
    let f = factorize(&m).unwrap();
    let reps = solve_proper(&ProblemSpec::new(n(7), m).unwrap(), &f).unwrap();
    let pairs: Vec<_> = reps
        .iter()
        .map(|r| (r.x().clone(), r.y().clone()))
        .collect();
    assert_eq!(pairs, vec![(n(13), n(36))]);

    check_budget(started, Duration::from_secs(1), "criterion 4");
}

#[test]
fn criterion_05_tonelli_root() {
    let started = Instant::now();

    let p = n(9241);
    let minus7 = &p - n(7);
    let r = tonelli(&minus7, &p).unwrap();
    assert!(r == n(6417) || r == n(2824), "pair {{6417, 2824}}");
    assert_eq!((&r * &r) % &p, minus7);

    check_budget(started, Duration::from_secs(1), "criterion 5");
}

#[test]
fn criterion_06_theorem_round_trip() {
    let started = Instant::now();

    let mut checked = 0u64;
    for u in 1u64..=60 {
        for v in 1u64..=60 {
            if gcd64(u, v) != 1 {
                continue;
            }
            for d in 2u64..=20 {
                let m = u * u + d * v * v;
                if gcd64(d, m) != 1 {
                    continue;
                }
                let m_nat = n(m);
                let v_inv = mod_inv(&n(v), &m_nat).expect("v is a unit mod m");
                let w = normalize_root(&((n(u) * v_inv) % &m_nat), &m_nat).unwrap();
                let spec = ProblemSpec::new(n(d), m_nat).unwrap();
                let rep = solve_for_root(&w, &spec)
                    .unwrap()
                    .expect("planted solution must be recovered");
                assert_eq!(
                    (rep.x().clone(), rep.y().clone()),
                    (n(u), n(v)),
                    "u={u} v={v} d={d}"
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 25_000, "sweep size sanity: {checked}");

    check_budget(started, Duration::from_secs(30), "criterion 6");
}

#[test]
fn criterion_07_oracle_equivalence() {
    let started = Instant::now();

    for m in 2u64..=20_000 {
        let m_nat = n(m);
        let f = factorize(&m_nat).unwrap();
        for d in 1u64..=20 {
            if gcd64(d, m) != 1 {
                continue;
            }
            let spec = ProblemSpec::new(n(d), m_nat.clone()).unwrap();
            let got: BTreeSet<_> = solve_proper(&spec, &f)
                .unwrap()
                .into_iter()
                .map(|r| r.class_key())
                .collect();
            let want: BTreeSet<_> = oracle::brute_solutions(&n(d), &m_nat)
                .into_iter()
                .filter(|r| r.proper())
                .map(|r| r.class_key())
                .collect();
            assert_eq!(got, want, "d={d} m={m}");
        }
    }

    check_budget(started, Duration::from_secs(60), "criterion 7");
}

#[test]
fn criterion_08_continued_fraction_identities() {
    let started = Instant::now();

    let sign = |exponent: isize| -> Int {
        if exponent.rem_euclid(2) == 0 {
            Int::from(1)
        } else {
            Int::from(-1)
        }
    };

    for b in 2u64..=2000 {
        let b_nat = n(b);
        let b_int = Int::from(b);
        for a in 0..b {
            let a_nat = n(a);
            let a_int = Int::from(a);
            let exp = quadrep::Antenaresis::expand(&a_nat, &b_nat).unwrap();
            let k = exp.k() as isize;

            for j in 0..=k {
                // division chain with strictly decreasing remainders
                let r_prev = exp.remainder(j - 1);
                let r_cur = exp.remainder(j);
                let r_next = exp.remainder(j + 1);
                assert_eq!(r_prev, &(exp.quotient(j as usize) * r_cur + r_next));
                assert!(r_next < r_cur);
            }
            for j in -1..=k {
                // determinant identity
                let det = exp.conv_num(j) * Int::from(exp.conv_den(j - 1).clone())
                    - exp.conv_num(j - 1) * Int::from(exp.conv_den(j).clone());
                assert_eq!(det, sign(j - 1), "determinant at j={j}, a={a}, b={b}");
                // remainder recovery from the convergents
                let recovered = sign(j)
                    * (&a_int * Int::from(exp.conv_den(j).clone()) - &b_int * exp.conv_num(j));
                assert_eq!(recovered, Int::from(exp.remainder(j + 1).clone()));
            }
            // reconstruction of the reduced fraction at the last step
            let g = exp.gcd();
            assert_eq!(exp.conv_num(k) * Int::from(g.clone()), a_int);
            assert_eq!(exp.conv_den(k) * g, b_nat);
            // denominators strictly increase past the first step
            for j in 1..k {
                assert!(exp.conv_den(j + 1) > exp.conv_den(j));
            }
            // the stopping index is unique whenever gcd(a, b) = 1
            if a > 0 && gcd64(a, b) == 1 {
                let hits = (0..=k)
                    .filter(|&j| {
                        let t_next = exp.remainder(j + 1);
                        let t = exp.remainder(j);
                        (t_next * t_next) <= b_nat && b_nat < (t * t)
                    })
                    .count();
                assert_eq!(hits, 1, "a={a} b={b}");
            }
        }
    }

    // the best-approximation implication over a seeded random sample
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for _ in 0..400 {
        let a = n(rng.gen_range(0..=10_000));
        let b = n(rng.gen_range(2..=10_000));
        let p = Int::from(rng.gen_range(-1000i64..=1000));
        let q = Int::from(rng.gen_range(-1000i64..=1000));
        let k = quadrep::Antenaresis::expand(&a, &b).unwrap().k() as isize;
        for lambda in -1..=k {
            assert!(
                quadrep::contfrac::lemma_bound_check(&a, &b, &p, &q, lambda).unwrap(),
                "a={a} b={b} P={p} Q={q} lambda={lambda}"
            );
        }
    }

    check_budget(started, Duration::from_secs(20), "criterion 8");
}

#[test]
fn criterion_09_two_squares_totality() {
    let started = Instant::now();

    for m in 2u64..=20_000 {
        let m_nat = n(m);
        let f = factorize(&m_nat).unwrap();
        let roots = sqrt_minus_d_mod_m(&n(1), &m_nat, &f).unwrap();
        let want: BTreeSet<_> = oracle::brute_solutions(&n(1), &m_nat)
            .into_iter()
            .filter(|r| r.proper())
            .map(|r| r.class_key())
            .collect();
        if roots.is_empty() {
            assert!(want.is_empty(), "m={m}: proper pair without a root of -1");
            continue;
        }
        let got: BTreeSet<_> = roots
            .roots()
            .iter()
            .map(|w| {
                let rep = solve_d1_for_root(w, &m_nat).unwrap();
                assert!(rep.proper(), "m={m} w={w}");
                rep.class_key()
            })
            .collect();
        assert_eq!(got, want, "m={m}");
    }

    check_budget(started, Duration::from_secs(20), "criterion 9");
}

#[test]
fn criterion_10_palindromic_two_squares() {
    let started = Instant::now();

    let mut primes_seen = 0u32;
    for p in (5u64..=10_000).step_by(4) {
        let p_nat = n(p);
        if !quadrep::is_prime(&p_nat) {
            continue;
        }
        primes_seen += 1;
        let (h, x, y) = smith_two_squares(&p_nat).unwrap();
        assert_eq!(&x * &x + &y * &y, p_nat, "p={p}");
        // the palindromic denominator is itself a square root of -1
        assert_eq!(mod_pow(&h, &n(2), &p_nat), &p_nat - n(1), "p={p} h={h}");
        assert!(h >= n(2) && (&h << 1) < p_nat);
    }
    assert_eq!(primes_seen, 609, "primes 1 mod 4 below 10^4");

    check_budget(started, Duration::from_secs(30), "criterion 10");
}
