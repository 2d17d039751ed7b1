//! Primality testing and factorization, sized for desk-scale inputs.

use std::sync::OnceLock;

use num_bigint::RandBigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::integer::{mod_pow, Nat};

/// Default iteration budget shared by the rho calls inside `factorize`.
pub const DEFAULT_FACTOR_EFFORT: u64 = 50_000_000;

const TRIAL_DIVISION_BOUND: u64 = 10_000;

/// Verdict of a Fermat test; `ProbablePrime` can be wrong (pseudoprimes).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primality {
    Composite,
    ProbablePrime,
}

/// Certified prime factorization: `n` is the product of `p^e` over
/// `factors`, primes strictly increasing, every exponent at least 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: Nat,
    factors: Vec<(Nat, u32)>,
    certified: bool,
}

impl Factorization {
    /// Assemble a factorization from `(prime, exponent)` pairs, checking
    /// primality, ordering and exponent positivity.
    pub fn from_parts(factors: Vec<(Nat, u32)>) -> Result<Self> {
        let mut n = Nat::one();
        let mut certified = true;
        for (i, (p, e)) in factors.iter().enumerate() {
            if *e == 0 {
                return Err(Error::InvalidInput(format!("zero exponent for {p}")));
            }
            if i > 0 && factors[i - 1].0 >= *p {
                return Err(Error::InvalidInput(
                    "factors must be strictly increasing".into(),
                ));
            }
            if !is_prime(p) {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
            certified &= below_deterministic_bound(p);
            n *= p.pow(*e);
        }
        Ok(Factorization {
            n,
            factors,
            certified,
        })
    }

    pub fn n(&self) -> &Nat {
        &self.n
    }

    pub fn factors(&self) -> &[(Nat, u32)] {
        &self.factors
    }

    /// True when every prime was certified by the deterministic
    /// Miller-Rabin witness set rather than a probabilistic run.
    pub fn certified(&self) -> bool {
        self.certified
    }
}

/// Fermat test to base 2: `Composite` iff `2^(m-1) != 1 (mod m)`.
///
/// Kept as a primitive in its own right even though `is_prime`
/// supersedes it; base-2 Fermat pseudoprimes such as 341 fool it.
pub fn fermat_base2(m: &Nat) -> Result<Primality> {
    if m < &Nat::from(3u32) || m.is_even() {
        return Err(Error::InvalidInput(format!(
            "fermat_base2 requires odd m >= 3, got {m}"
        )));
    }
    if mod_pow(&Nat::from(2u32), &(m - 1u32), m).is_one() {
        Ok(Primality::ProbablePrime)
    } else {
        Ok(Primality::Composite)
    }
}

fn below_deterministic_bound(n: &Nat) -> bool {
    static BOUND: OnceLock<Nat> = OnceLock::new();
    // First composite surviving the 12-prime witness set is above 3.3e24.
    let bound = BOUND.get_or_init(|| "318665857834031151167461".parse().unwrap());
    n < bound
}

fn mod_pow_u64(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut result = 1u128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    result as u64
}

fn miller_rabin_witness_u64(n: u64, base: u64) -> bool {
    let base = base % n;
    if base == 0 || base == 1 || base == n - 1 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = mod_pow_u64(base, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = (x as u128 * x as u128 % n as u128) as u64;
        if x == n - 1 {
            return true;
        }
    }
    false
}

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn is_prime_u64(v: u64) -> bool {
    if v < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if v == p {
            return true;
        }
        if v.is_multiple_of(p) {
            return false;
        }
    }
    // witness ladder; the last row is deterministic far past u64::MAX
    let witnesses: &[u64] = if v < 2_047 {
        &[2]
    } else if v < 1_373_653 {
        &[2, 3]
    } else if v < 9_080_191 {
        &[31, 73]
    } else if v < 25_326_001 {
        &[2, 3, 5]
    } else if v < 3_215_031_751 {
        &[2, 3, 5, 7]
    } else if v < 3_474_749_660_383 {
        &[2, 3, 5, 7, 11, 13]
    } else if v < 341_550_071_728_321 {
        &[2, 3, 5, 7, 11, 13, 17]
    } else {
        &SMALL_PRIMES
    };
    witnesses.iter().all(|&w| miller_rabin_witness_u64(v, w))
}

fn miller_rabin_witness(n: &Nat, base: &Nat) -> bool {
    // true = "n passes for this base" (no compositeness detected)
    let n_minus_1 = n - 1u32;
    let base = base % n;
    if base.is_zero() || base.is_one() || base == n_minus_1 {
        return true;
    }
    let s = n_minus_1.trailing_zeros().unwrap();
    let d = &n_minus_1 >> s;
    let mut x = mod_pow(&base, &d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Deterministic Miller-Rabin below 3.3e24; fixed-seed probabilistic
/// rounds above that.
pub fn is_prime(n: &Nat) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    let two = Nat::from(2u32);
    if n.is_even() {
        return false;
    }
    if below_deterministic_bound(n) {
        SMALL_PRIMES
            .iter()
            .all(|&w| miller_rabin_witness(n, &Nat::from(w)))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x9e3779b97f4a7c15);
        (0..40).all(|_| {
            let base = rng.gen_biguint_range(&two, &(n - 1u32));
            miller_rabin_witness(n, &base)
        })
    }
}

fn abs_diff(a: &Nat, b: &Nat) -> Nat {
    if a >= b {
        a - b
    } else {
        b - a
    }
}

/// Brent-cycle rho with polynomial x^2 + c, x0 = 2, c = 1, 2, 3, ... on
/// failure; fully deterministic. Decrements `budget` per iteration.
fn rho_brent(n: &Nat, budget: &mut u64) -> Result<Nat> {
    let one = Nat::one();
    for c in 1u64..64 {
        let c = Nat::from(c);
        let step = |x: &Nat| (x * x + &c) % n;
        let mut y = Nat::from(2u32);
        let mut g = Nat::one();
        let mut r: u64 = 1;
        let mut q = Nat::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k: u64 = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let batch = 128.min(r - k);
                if *budget < batch {
                    return Err(Error::FactorEffortExceeded(n.clone()));
                }
                *budget -= batch;
                for _ in 0..batch {
                    y = step(&y);
                    q = (&q * abs_diff(&x, &y)) % n;
                }
                g = q.gcd(n);
                k += batch;
            }
            r *= 2;
        }
        if &g == n {
            // The batch overshot a factor; replay it one step at a time.
            loop {
                if *budget == 0 {
                    return Err(Error::FactorEffortExceeded(n.clone()));
                }
                *budget -= 1;
                ys = step(&ys);
                g = abs_diff(&x, &ys).gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return Ok(g);
        }
        // degenerate cycle for this c; try the next increment
    }
    Err(Error::FactorEffortExceeded(n.clone()))
}

/// A nontrivial divisor of an odd composite `m`.
pub fn pollard_rho(m: &Nat) -> Result<Nat> {
    if m.is_even() || m < &Nat::from(9u32) {
        return Err(Error::InvalidInput(format!(
            "pollard_rho expects an odd composite, got {m}"
        )));
    }
    if is_prime(m) {
        return Err(Error::InvalidInput(format!("pollard_rho: {m} is prime")));
    }
    let mut budget = DEFAULT_FACTOR_EFFORT;
    rho_brent(m, &mut budget)
}

fn trial_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let bound = TRIAL_DIVISION_BOUND as usize;
        let mut sieve = vec![true; bound + 1];
        let mut primes = Vec::new();
        for p in 2..=bound {
            if sieve[p] {
                primes.push(p as u64);
                let mut multiple = p * p;
                while multiple <= bound {
                    sieve[multiple] = false;
                    multiple += p;
                }
            }
        }
        primes
    })
}

/// `floor(n^(1/e))` by binary search on the bit length.
fn nth_root(n: &Nat, e: u32) -> Nat {
    let bits = n.bits();
    let mut lo = Nat::one();
    let mut hi = Nat::one() << (bits / e as u64 + 1);
    // invariant: lo^e <= n < hi^e
    while &lo + 1u32 < hi {
        let mid: Nat = (&lo + &hi) >> 1;
        if mid.pow(e) <= *n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Smallest base `b` with `b^e = n` for some `e >= 2`, if any.
fn perfect_power(n: &Nat) -> Option<(Nat, u32)> {
    let bits = n.bits() as u32;
    for e in 2..=bits.max(2) {
        let root = nth_root(n, e);
        if root.is_one() {
            break;
        }
        if root.pow(e) == *n {
            // recurse so the returned base is not itself a power
            if let Some((b, e2)) = perfect_power(&root) {
                return Some((b, e2 * e));
            }
            return Some((root, e));
        }
    }
    None
}

/// Complete certified factorization with the default effort bound.
pub fn factorize(m: &Nat) -> Result<Factorization> {
    factorize_with_effort(m, DEFAULT_FACTOR_EFFORT)
}

/// Complete certified factorization: trial division up to 10^4, perfect
/// power detection, then deterministic Pollard-Brent rho recursion.
///
/// `effort` bounds the total number of rho iterations; past it the
/// remaining cofactor is reported in `Error::FactorEffortExceeded`.
pub fn factorize_with_effort(m: &Nat, effort: u64) -> Result<Factorization> {
    if m < &Nat::from(2u32) {
        return Err(Error::InvalidInput(format!(
            "factorize requires m >= 2, got {m}"
        )));
    }
    let mut factors: Vec<(Nat, u32)> = Vec::new();
    let mut push = |p: Nat, e: u32| {
        debug_assert!(e > 0);
        factors.push((p, e));
    };

    let mut n = m.clone();
    if let Some(mut v) = m.to_u64() {
        // everything fits a machine word; divide there
        for &p in trial_primes() {
            if p.checked_mul(p).is_none_or(|pp| pp > v) {
                break; // remaining cofactor is 1 or prime
            }
            let mut e = 0u32;
            while v % p == 0 {
                v /= p;
                e += 1;
            }
            if e > 0 {
                push(Nat::from(p), e);
            }
        }
        n = Nat::from(v);
    } else {
        for &p in trial_primes() {
            let p_nat = Nat::from(p);
            let mut e = 0u32;
            while (&n % &p_nat).is_zero() {
                n /= &p_nat;
                e += 1;
            }
            if e > 0 {
                push(p_nat, e);
            }
            if n.is_one() {
                break;
            }
        }
    }

    let mut budget = effort;
    let mut stack: Vec<(Nat, u32)> = Vec::new();
    if !n.is_one() {
        stack.push((n, 1));
    }
    while let Some((c, mult)) = stack.pop() {
        if is_prime(&c) {
            push(c, mult);
        } else if let Some((base, e)) = perfect_power(&c) {
            stack.push((base, mult * e));
        } else {
            let divisor = rho_brent(&c, &mut budget)?;
            debug_assert!(divisor > Nat::one() && divisor < c);
            let cofactor = &c / &divisor;
            stack.push((cofactor, mult));
            stack.push((divisor, mult));
        }
    }

    // merge duplicates (rho can split a prime power into equal parts)
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    let mut merged: Vec<(Nat, u32)> = Vec::new();
    for (p, e) in factors {
        match merged.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => merged.push((p, e)),
        }
    }
    let certified = merged.iter().all(|(p, _)| below_deterministic_bound(p));
    debug_assert_eq!(
        merged
            .iter()
            .fold(Nat::one(), |acc, (p, e)| acc * p.pow(*e)),
        *m
    );
    Ok(Factorization {
        n: m.clone(),
        factors: merged,
        certified,
    })
}
