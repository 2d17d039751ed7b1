//! Square roots of `-d` (or any unit) modulo `m`: Euler's criterion,
//! the `p = 3 (mod 4)` exponentiation shortcut, Tonelli-Shanks, Hensel
//! lifting to prime powers, enumeration for small powers of two, and CRT
//! recombination across the factorization of `m`.
//!
//! Every root that leaves this module has been squared and reduced back
//! against its target; the outputs are self-verifying.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::factor::{is_prime, Factorization};
use crate::integer::{ext_gcd, mod_inv, mod_pow, reduce_mod, Int, Nat};

/// Largest supported exponent for power-of-two moduli.
pub const MAX_TWO_POWER_EXP: u32 = 6;

/// Euler classification of a residue against an odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidueClass {
    Residue,
    NonResidue,
    Zero,
}

/// The normalized square roots `w` of a target residue modulo `m`, each
/// satisfying `w^2 = target (mod m)` and `m/2 <= w < m`. One
/// representative per `{r, m-r}` class; empty when the target is not a
/// square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSet {
    modulus: Nat,
    target: Int,
    roots: Vec<Nat>,
}

impl RootSet {
    pub fn modulus(&self) -> &Nat {
        &self.modulus
    }

    /// The residue being rooted, reduced to `[0, m)`.
    pub fn target(&self) -> &Int {
        &self.target
    }

    /// Normalized roots in ascending order.
    pub fn roots(&self) -> &[Nat] {
        &self.roots
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

fn ensure_odd_prime(p: &Nat) -> Result<()> {
    if p.is_even() || !is_prime(p) {
        return Err(Error::NotOddPrime(p.clone()));
    }
    Ok(())
}

/// Euler's criterion: classify `a` as residue, nonresidue or zero mod an
/// odd prime `p` via `a^((p-1)/2)`.
pub fn euler_residue(a: &Nat, p: &Nat) -> Result<ResidueClass> {
    ensure_odd_prime(p)?;
    let a = a % p;
    if a.is_zero() {
        return Ok(ResidueClass::Zero);
    }
    let symbol = mod_pow(&a, &((p - 1u32) >> 1), p);
    if symbol.is_one() {
        Ok(ResidueClass::Residue)
    } else if symbol == p - 1u32 {
        Ok(ResidueClass::NonResidue)
    } else {
        unreachable!("Euler criterion on composite modulus {p}")
    }
}

/// Square root mod `p = 3 (mod 4)` by a single exponentiation:
/// `r = a^((p+1)/4)`. Nonresidues are detected post hoc by squaring.
pub fn sqrt_3mod4(a: &Nat, p: &Nat) -> Result<Nat> {
    ensure_odd_prime(p)?;
    if (p % 4u32) != Nat::from(3u32) {
        return Err(Error::InvalidInput(format!("{p} is not 3 mod 4")));
    }
    let a = a % p;
    let r = mod_pow(&a, &((p + 1u32) >> 2), p);
    if (&r * &r) % p != a {
        return Err(Error::NonResidue(a, p.clone()));
    }
    Ok(r)
}

/// Tonelli-Shanks square root modulo an odd prime, in the 2-Sylow
/// decomposition form with the smallest nonresidue as generator, so the
/// result is deterministic.
pub fn tonelli(a: &Nat, p: &Nat) -> Result<Nat> {
    ensure_odd_prime(p)?;
    let a = a % p;
    match euler_residue(&a, p)? {
        ResidueClass::Residue => {}
        _ => return Err(Error::NonResidue(a, p.clone())),
    }

    // p - 1 = q * 2^s with q odd
    let p_minus_1 = p - 1u32;
    let s = p_minus_1.trailing_zeros().unwrap();
    let q = &p_minus_1 >> s;

    // smallest quadratic nonresidue
    let mut z = Nat::from(2u32);
    while mod_pow(&z, &(&p_minus_1 >> 1), p) != p_minus_1 {
        z += 1u32;
    }

    let mut m = s;
    let mut c = mod_pow(&z, &q, p);
    let mut t = mod_pow(&a, &q, p);
    let mut r = mod_pow(&a, &((&q + 1u32) >> 1), p);
    while !t.is_one() {
        let mut i = 0u64;
        let mut t2i = t.clone();
        while !t2i.is_one() {
            t2i = (&t2i * &t2i) % p;
            i += 1;
        }
        let b = mod_pow(&c, &(Nat::one() << (m - i - 1)), p);
        m = i;
        c = (&b * &b) % p;
        t = (&t * &c) % p;
        r = (&r * &b) % p;
    }
    assert_eq!((&r * &r) % p, a, "tonelli output failed its self-check");
    Ok(r)
}

/// Lift a root of `x^2 = a (mod p)` to one modulo `p^e`.
///
/// Requires `p` odd prime, `p` not dividing `2r`, and `e >= 1`; the
/// returned root reduces to `±r` mod `p` and is verified by squaring.
pub fn hensel_lift(r: &Nat, a: &Int, p: &Nat, e: u32) -> Result<Nat> {
    ensure_odd_prime(p)?;
    if e == 0 {
        return Err(Error::InvalidInput("hensel_lift requires e >= 1".into()));
    }
    let mut root = r % p;
    if root.is_zero() {
        return Err(Error::InvalidInput(format!(
            "hensel_lift: p = {p} divides 2r, the root does not lift"
        )));
    }
    let a_mod_p = reduce_mod(a, p);
    if (&root * &root) % p != a_mod_p {
        return Err(Error::InvalidInput(format!(
            "hensel_lift: {root}^2 != {a} (mod {p})"
        )));
    }

    let target = reduce_mod(a, &p.pow(e));
    let mut pk = p.clone(); // p^step
    for _ in 1..e {
        let pk_next = &pk * p;
        // root^2 = a (mod pk); push the defect down one more power:
        // root' = root - ((root^2 - a)/pk) * (2*root)^{-1} * pk
        let defect = reduce_mod(
            &(Int::from(&root * &root) - Int::from(&target % &pk_next)),
            &pk_next,
        );
        debug_assert!((&defect % &pk).is_zero());
        let t = (&defect / &pk) % p;
        let inv = mod_inv(&((&root << 1) % p), p).expect("2r is a unit mod p");
        let delta = (t * inv) % p;
        root = reduce_mod(&(Int::from(root) - Int::from(delta * &pk)), &pk_next);
        pk = pk_next;
    }
    assert_eq!(
        (&root * &root) % &pk,
        target,
        "hensel_lift output failed its self-check"
    );
    Ok(root)
}

/// All square roots of `a` modulo `2^e`, by enumeration; `e` is capped
/// at 6 because nothing desk-scale ever needs a larger 2-part.
pub fn sqrt_mod_2power(a: &Int, e: u32) -> Result<Vec<Nat>> {
    if e > MAX_TWO_POWER_EXP {
        return Err(Error::TwoPowerTooLarge(e));
    }
    let modulus = 1u64 << e;
    let target = reduce_mod(a, &Nat::from(modulus)).to_u64().unwrap();
    Ok((0..modulus)
        .filter(|r| (r * r) % modulus == target)
        .map(Nat::from)
        .collect())
}

/// All square roots of an odd residue `a` modulo `2^e`, for any `e`:
/// explicit below 8, lifted one bit at a time from there. Mirrors the
/// bounded enumeration of `sqrt_mod_2power` but serves moduli whose
/// 2-part exceeds 2^6 (they do occur once `m` ranges over everything).
pub(crate) fn two_power_roots(a: &Int, e: u32) -> Vec<Nat> {
    let modulus = Nat::one() << e;
    let target = reduce_mod(a, &modulus);
    assert!(
        e == 0 || target.is_odd(),
        "two_power_roots expects an odd residue"
    );
    match e {
        0 => return vec![Nat::zero()],
        1 => return vec![Nat::one()],
        2 => {
            return if target.is_one() {
                vec![Nat::one(), Nat::from(3u32)]
            } else {
                Vec::new()
            }
        }
        _ => {}
    }
    if (&target % 8u32) != Nat::one() {
        return Vec::new(); // odd squares are 1 mod 8
    }
    // r^2 = a (mod 2^k); exactly one of r, r + 2^(k-1) survives mod 2^(k+1)
    let mut r = Nat::one();
    for k in 3..e {
        let square = (&r * &r) % (Nat::one() << (k + 1));
        let defect = reduce_mod(
            &(Int::from(&target % (Nat::one() << (k + 1))) - Int::from(square)),
            &(Nat::one() << (k + 1)),
        );
        if !defect.is_zero() {
            debug_assert_eq!(defect, Nat::one() << k);
            r += Nat::one() << (k - 1);
        }
    }
    let half = Nat::one() << (e - 1);
    let mut roots: Vec<Nat> = vec![
        r.clone(),
        &modulus - &r,
        (&r + &half) % &modulus,
        &modulus - (&r + &half) % &modulus,
    ];
    roots.sort();
    roots.dedup();
    for w in &roots {
        debug_assert_eq!((w * w) % &modulus, target);
    }
    roots
}

/// Pick the representative of `{r, m-r}` lying in `[m/2, m)`.
pub fn normalize_root(r: &Nat, m: &Nat) -> Result<Nat> {
    let r = r % m;
    if r.is_zero() {
        return Err(Error::InvalidInput(
            "normalize_root: r = 0 has no sign class".into(),
        ));
    }
    if &(&r << 1) >= m {
        Ok(r)
    } else {
        Ok(m - r)
    }
}

fn crt_pair(r1: &Nat, m1: &Nat, r2: &Nat, m2: &Nat) -> Nat {
    let (g, s, t) = ext_gcd(m1, m2);
    debug_assert!(g.is_one(), "crt_pair requires coprime moduli");
    let combined = Int::from(r1.clone()) * t * Int::from(m2.clone())
        + Int::from(r2.clone()) * s * Int::from(m1.clone());
    reduce_mod(&combined, &(m1 * m2))
}

/// The complete normalized root set of an arbitrary unit residue `a`
/// modulo `m`, via per-prime-power roots and CRT recombination.
pub fn sqrt_mod(a: &Int, f: &Factorization) -> Result<RootSet> {
    let m = f.n();
    if m < &Nat::from(2u32) {
        return Err(Error::InvalidInput(format!(
            "sqrt_mod requires modulus >= 2, got {m}"
        )));
    }
    let a_reduced = reduce_mod(a, m);
    if !a_reduced.gcd(m).is_one() {
        return Err(Error::InvalidInput(format!(
            "sqrt_mod: target {a_reduced} is not a unit mod {m}"
        )));
    }
    let target = Int::from(a_reduced.clone());
    let empty = |target: Int| RootSet {
        modulus: m.clone(),
        target,
        roots: Vec::new(),
    };

    // roots of a modulo each prime power
    let mut components: Vec<(Nat, Vec<Nat>)> = Vec::new();
    for (p, e) in f.factors() {
        let pe = p.pow(*e);
        if p == &Nat::from(2u32) {
            let roots = two_power_roots(&target, *e);
            if roots.is_empty() {
                return Ok(empty(target));
            }
            components.push((pe, roots));
        } else {
            let a_p = &a_reduced % p;
            match euler_residue(&a_p, p)? {
                ResidueClass::NonResidue => return Ok(empty(target)),
                ResidueClass::Zero => unreachable!("unit target vanished mod {p}"),
                ResidueClass::Residue => {}
            }
            let root_p = if (p % 4u32) == Nat::from(3u32) {
                sqrt_3mod4(&a_p, p)?
            } else {
                tonelli(&a_p, p)?
            };
            let lifted = hensel_lift(&root_p, &target, p, *e)?;
            let negated = &pe - &lifted;
            components.push((pe, vec![lifted, negated]));
        }
    }

    // fold the CRT over every combination of per-factor roots
    let mut combos: Vec<(Nat, Nat)> = vec![(Nat::zero(), Nat::one())];
    for (pe, roots) in &components {
        let mut next = Vec::with_capacity(combos.len() * roots.len());
        for (x, modulus) in &combos {
            for r in roots {
                next.push((crt_pair(x, modulus, r, pe), modulus * pe));
            }
        }
        combos = next;
    }

    let mut roots: Vec<Nat> = combos
        .into_iter()
        .map(|(x, _)| normalize_root(&x, m))
        .collect::<Result<_>>()?;
    roots.sort();
    roots.dedup();
    for w in &roots {
        assert_eq!(
            Int::from((w * w) % m),
            target,
            "sqrt_mod output failed its self-check"
        );
        debug_assert!(&(w << 1) >= m && w < m);
    }
    Ok(RootSet {
        modulus: m.clone(),
        target,
        roots,
    })
}

/// Normalized roots of `-d` modulo `m`; `f` must factor `m` and `d` must
/// be coprime to `m`. Empty when `-d` is a nonresidue at any odd prime
/// factor or the 2-power constraint fails.
pub fn sqrt_minus_d_mod_m(d: &Nat, m: &Nat, f: &Factorization) -> Result<RootSet> {
    if f.n() != m {
        return Err(Error::InvalidInput(format!(
            "factorization of {} does not match m = {m}",
            f.n()
        )));
    }
    if !d.gcd(m).is_one() {
        return Err(Error::InvalidInput(format!(
            "gcd({d}, {m}) != 1, the target -d is not a unit"
        )));
    }
    sqrt_mod(&-Int::from(d.clone()), f)
}
