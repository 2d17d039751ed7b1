//! Arbitrary-precision integer primitives used by every other module.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Arbitrary-precision non-negative integer.
pub type Nat = BigUint;
/// Arbitrary-precision signed integer.
pub type Int = BigInt;

// Quadratic residues mod 256; used as a cheap filter before the full
// isqrt in `perfect_square`.
const SQUARES_MOD_256: [bool; 256] = {
    let mut table = [false; 256];
    let mut i = 0usize;
    while i < 256 {
        table[(i * i) % 256] = true;
        i += 1;
    }
    table
};

/// Floor of the square root, by Newton iteration.
///
/// Returns `s` with `s^2 <= n < (s+1)^2`.
pub fn isqrt(n: &Nat) -> Nat {
    if n.is_zero() {
        return Nat::zero();
    }
    // Initial guess 2^ceil(bits/2) >= sqrt(n); the iteration then
    // decreases monotonically to the floor root.
    let bits = n.bits();
    let mut x = Nat::one() << bits.div_ceil(2);
    loop {
        let next = (&x + n / &x) >> 1;
        if next >= x {
            return x;
        }
        x = next;
    }
}

/// Exact square root, or `None` if `n` is not a perfect square.
pub fn perfect_square(n: &Nat) -> Option<Nat> {
    let low = (n % 256u32).to_usize().unwrap();
    if !SQUARES_MOD_256[low] {
        return None;
    }
    let s = isqrt(n);
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

/// Extended Euclidean algorithm.
///
/// Returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b)`, the canonical
/// coefficients of the iterative scheme (deterministic, so exact values
/// can be pinned in tests).
pub fn ext_gcd(a: &Nat, b: &Nat) -> (Nat, Int, Int) {
    assert!(
        !(a.is_zero() && b.is_zero()),
        "ext_gcd requires at least one nonzero argument"
    );
    let (mut old_r, mut r) = (Int::from(a.clone()), Int::from(b.clone()));
    let (mut old_s, mut s) = (Int::one(), Int::zero());
    let (mut old_t, mut t) = (Int::zero(), Int::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    (old_r.magnitude().clone(), old_s, old_t)
}

/// Modular inverse of `a` mod `m`, or `None` when `gcd(a, m) != 1`.
pub fn mod_inv(a: &Nat, m: &Nat) -> Option<Nat> {
    if m.is_zero() {
        return None;
    }
    let (g, s, _) = ext_gcd(&(a % m), m);
    if !g.is_one() {
        return None;
    }
    Some(s.mod_floor(&Int::from(m.clone())).to_biguint().unwrap())
}

/// `base^exp mod modulus`; `modulus` must be at least 1.
pub fn mod_pow(base: &Nat, exp: &Nat, modulus: &Nat) -> Nat {
    assert!(!modulus.is_zero(), "mod_pow requires modulus >= 1");
    base.modpow(exp, modulus)
}

/// Least non-negative residue of a signed value.
pub fn reduce_mod(a: &Int, m: &Nat) -> Nat {
    let m_int = Int::from(m.clone());
    a.mod_floor(&m_int).to_biguint().unwrap()
}

/// gcd on magnitudes, re-exported in one place for convenience.
pub fn gcd(a: &Nat, b: &Nat) -> Nat {
    a.gcd(b)
}
