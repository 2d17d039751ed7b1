//! Representations of composite `m` assembled from smaller pieces.
//!
//! The norm identity `|x + iy*sqrt(d)|^2 = x^2 + d*y^2` multiplies a
//! representation of `m1` and one of `m2` into one of `m1*m2`, with a
//! sign choice on the cross term. The general solver factors `m`, splits
//! it into one square-free block (primes of odd exponent) plus even
//! prime-power blocks, solves each block, and folds the norm identity
//! over every sign choice. The square-free block is deliberately kept
//! whole: a product of primes can be representable even when no single
//! factor is.
//!
//! Improper solutions are additionally generated by scaling: every
//! `(x, y)` of `m/g^2` contributes `(g*x, g*y)`, and conversely every
//! improper solution arises that way from a proper one.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::contfrac::Antenaresis;
use crate::cornacchia::{
    solve_d1_for_root, solve_for_root, solve_proper, ProblemSpec, Representation,
};
use crate::error::{Error, Result};
use crate::factor::{factorize_with_effort, is_prime, Factorization, DEFAULT_FACTOR_EFFORT};
use crate::integer::{isqrt, perfect_square, Int, Nat};
use crate::modsqrt::{
    euler_residue, hensel_lift, normalize_root, sqrt_3mod4, tonelli, two_power_roots, ResidueClass,
    MAX_TWO_POWER_EXP,
};

/// Sign choice on the cross term of the norm identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    /// `(|x1*x2 - d*y1*y2|, x1*y2 + x2*y1)`
    Plus,
    /// `(x1*x2 + d*y1*y2, |x1*y2 - x2*y1|)`
    Minus,
}

/// How a prime-power representation was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepKind {
    /// Directly from the root of `-d` mod `p`.
    Cornacchia,
    /// From a root Hensel-lifted to `p^e`, `e >= 2`.
    Lifted,
    /// `(p^(e/2), 0)` for even `e` when `-d` is a nonresidue mod `p`.
    TrivialSquare,
    /// Enumeration of `x^2 + d*y^2 = 2^e`.
    TwoPowerEnum,
}

/// A representation of `p^e` together with its provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePowerRep {
    pub p: Nat,
    pub e: u32,
    pub rep: Representation,
    pub kind: RepKind,
}

/// Multiply two representations sharing the same `d` into one of
/// `m1 * m2` via the norm identity; the proper flag is recomputed.
pub fn compose_pair(
    r1: &Representation,
    r2: &Representation,
    sign: Sign,
) -> Result<Representation> {
    if r1.d() != r2.d() {
        return Err(Error::InvalidInput(format!(
            "compose_pair: mismatched d ({} vs {})",
            r1.d(),
            r2.d()
        )));
    }
    let d = r1.d().clone();
    let (x1, y1) = (Int::from(r1.x().clone()), Int::from(r1.y().clone()));
    let (x2, y2) = (Int::from(r2.x().clone()), Int::from(r2.y().clone()));
    let d_int = Int::from(d.clone());
    let (x, y) = match sign {
        Sign::Plus => (&x1 * &x2 - &d_int * &y1 * &y2, &x1 * &y2 + &x2 * &y1),
        Sign::Minus => (&x1 * &x2 + &d_int * &y1 * &y2, &x1 * &y2 - &x2 * &y1),
    };
    Ok(Representation::new(
        x.abs().magnitude().clone(),
        y.abs().magnitude().clone(),
        d,
        r1.m() * r2.m(),
    ))
}

/// All `(x, y)` with `x^2 + d*y^2 = n`, by direct enumeration; only used
/// for tiny `n` (powers of two up to 2^6).
fn enumerate_reps(d: &Nat, n: &Nat) -> Vec<(Nat, Nat)> {
    let mut out = Vec::new();
    let y_max = isqrt(&(n / d));
    let mut y = Nat::zero();
    while y <= y_max {
        let rest = n - d * (&y * &y);
        if let Some(x) = perfect_square(&rest) {
            out.push((x, y.clone()));
        }
        y += 1u32;
    }
    out
}

/// Representations of `p^e`: the solver run on the lifted root when `-d`
/// is a residue mod an odd `p`, the trivial `(p^(e/2), 0)` when it is a
/// nonresidue and `e` is even, enumeration for `p = 2`, empty when no
/// representation exists.
pub fn prime_power_rep(p: &Nat, e: u32, d: &Nat) -> Result<Vec<PrimePowerRep>> {
    if e == 0 {
        return Err(Error::InvalidInput(
            "prime_power_rep requires e >= 1".into(),
        ));
    }
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let two = Nat::from(2u32);
    if p == &two {
        let pe = p.pow(e);
        if e <= MAX_TWO_POWER_EXP {
            return Ok(enumerate_reps(d, &pe)
                .into_iter()
                .map(|(x, y)| PrimePowerRep {
                    p: p.clone(),
                    e,
                    rep: Representation::new(x, y, d.clone(), pe.clone()),
                    kind: RepKind::TwoPowerEnum,
                })
                .collect());
        }
        // past the enumeration bound: solve per lifted root, plus the
        // square piece the block machinery needs when e is even
        if d.is_even() {
            return Err(Error::InvalidInput(format!(
                "prime_power_rep: even d = {d} with 2^{e} is not supported"
            )));
        }
        let mut out = Vec::new();
        let minus_d = -Int::from(d.clone());
        for r in two_power_roots(&minus_d, e) {
            let w = normalize_root(&r, &pe)?;
            let rep = if d.is_one() {
                Some(solve_d1_for_root(&w, &pe)?)
            } else {
                solve_for_root(&w, &ProblemSpec::new(d.clone(), pe.clone())?)?
            };
            if let Some(rep) = rep {
                out.push(PrimePowerRep {
                    p: p.clone(),
                    e,
                    rep,
                    kind: RepKind::Lifted,
                });
            }
        }
        out.sort_by_key(|ppr| ppr.rep.class_key());
        out.dedup_by_key(|ppr| ppr.rep.class_key());
        if e.is_multiple_of(2) {
            out.push(PrimePowerRep {
                p: p.clone(),
                e,
                rep: Representation::new(two.pow(e / 2), Nat::zero(), d.clone(), pe),
                kind: RepKind::TrivialSquare,
            });
        }
        return Ok(out);
    }

    if !p.gcd(d).is_one() {
        return Err(Error::InvalidInput(format!(
            "prime_power_rep: p = {p} divides d = {d}"
        )));
    }
    let pe = p.pow(e);
    let minus_d = -Int::from(d.clone());
    let a_p = crate::integer::reduce_mod(&minus_d, p);
    match euler_residue(&a_p, p)? {
        ResidueClass::Zero => unreachable!("gcd(p, d) = 1 rules out a zero residue"),
        ResidueClass::NonResidue => {
            if e.is_multiple_of(2) {
                let half = p.pow(e / 2);
                Ok(vec![PrimePowerRep {
                    p: p.clone(),
                    e,
                    rep: Representation::new(half, Nat::zero(), d.clone(), pe),
                    kind: RepKind::TrivialSquare,
                }])
            } else {
                Ok(Vec::new())
            }
        }
        ResidueClass::Residue => {
            let root = if (p % 4u32) == Nat::from(3u32) {
                sqrt_3mod4(&a_p, p)?
            } else {
                tonelli(&a_p, p)?
            };
            let lifted = hensel_lift(&root, &minus_d, p, e)?;
            let w = normalize_root(&lifted, &pe)?;
            let kind = if e == 1 {
                RepKind::Cornacchia
            } else {
                RepKind::Lifted
            };
            let rep = if d.is_one() {
                Some(solve_d1_for_root(&w, &pe)?)
            } else {
                solve_for_root(&w, &ProblemSpec::new(d.clone(), pe)?)?
            };
            Ok(rep
                .map(|rep| PrimePowerRep {
                    p: p.clone(),
                    e,
                    rep,
                    kind,
                })
                .into_iter()
                .collect())
        }
    }
}

fn sub_factorization(f: &Factorization, take: impl Fn(&Nat, u32) -> u32) -> Result<Factorization> {
    let parts: Vec<(Nat, u32)> = f
        .factors()
        .iter()
        .filter_map(|(p, e)| {
            let kept = take(p, *e);
            (kept > 0).then(|| (p.clone(), kept))
        })
        .collect();
    Factorization::from_parts(parts)
}

/// Divisors `g >= 2` with `g^2 | m`, ascending.
fn square_divisors(f: &Factorization) -> Vec<Nat> {
    let mut divisors = vec![Nat::one()];
    for (p, e) in f.factors() {
        let mut extended = Vec::new();
        for a in 0..=(e / 2) {
            let pa = p.pow(a);
            for g in &divisors {
                extended.push(g * &pa);
            }
        }
        divisors = extended;
    }
    divisors.retain(|g| !g.is_one());
    divisors.sort();
    divisors
}

fn rep_of_unit(d: &Nat) -> Representation {
    Representation::new(Nat::one(), Nat::zero(), d.clone(), Nat::one())
}

/// All representations of `m` reachable from the factorization `f`:
/// the direct solver on `m`, the block composition, and square scaling.
pub fn solve_general_factored(
    spec: &ProblemSpec,
    f: &Factorization,
) -> Result<Vec<Representation>> {
    let (d, m) = (spec.d(), spec.m());
    if f.n() != m {
        return Err(Error::InvalidInput(format!(
            "factorization of {} does not match m = {m}",
            f.n()
        )));
    }

    let mut classes: BTreeMap<(Nat, Nat), Representation> = BTreeMap::new();
    let insert = |classes: &mut BTreeMap<(Nat, Nat), Representation>, rep: Representation| {
        classes.entry(rep.class_key()).or_insert(rep);
    };

    // Cornacchia on the whole m settles the proper solutions; the block
    // composition below can miss proper classes when the relevant form
    // class group has exponent above two.
    for rep in solve_proper(spec, f)? {
        insert(&mut classes, rep);
    }

    // square-free block (odd-exponent primes, one copy each) plus one
    // block per leftover even prime power
    let squarefree = sub_factorization(f, |_, e| e % 2)?;
    let mut blocks: Vec<Vec<Representation>> = Vec::new();
    if !squarefree.n().is_one() {
        let block_spec = ProblemSpec::new(d.clone(), squarefree.n().clone())?;
        blocks.push(solve_proper(&block_spec, &squarefree)?);
    }
    for (p, e) in f.factors() {
        let even = e - e % 2;
        if even > 0 {
            let reps = prime_power_rep(p, even, d)?;
            blocks.push(reps.into_iter().map(|ppr| ppr.rep).collect());
        }
    }
    if !blocks.is_empty() {
        let mut acc = blocks[0].clone();
        for block in &blocks[1..] {
            let mut next: BTreeMap<(Nat, Nat), Representation> = BTreeMap::new();
            for left in &acc {
                for right in block {
                    for sign in [Sign::Plus, Sign::Minus] {
                        let composed = compose_pair(left, right, sign)?;
                        next.entry(composed.class_key()).or_insert(composed);
                    }
                }
            }
            acc = next.into_values().collect();
        }
        for rep in acc {
            insert(&mut classes, rep);
        }
    }

    // scaled copies of proper solutions of m / g^2
    for g in square_divisors(f) {
        let gg = &g * &g;
        let m_inner = m / &gg;
        let inner = if m_inner.is_one() {
            vec![rep_of_unit(d)]
        } else {
            let f_inner = sub_factorization(f, |p, e| {
                let (_, removed) = g_exponents(&g, p);
                e - 2 * removed
            })?;
            let inner_spec = ProblemSpec::new(d.clone(), m_inner.clone())?;
            solve_proper(&inner_spec, &f_inner)?
        };
        for rep in inner {
            insert(
                &mut classes,
                Representation::new(&g * rep.x(), &g * rep.y(), d.clone(), m.clone()),
            );
        }
    }

    Ok(classes.into_values().collect())
}

fn g_exponents(g: &Nat, p: &Nat) -> (Nat, u32) {
    let mut rest = g.clone();
    let mut count = 0u32;
    while (&rest % p).is_zero() {
        rest /= p;
        count += 1;
    }
    (rest, count)
}

/// Factor `m` and assemble every representation class of
/// `x^2 + d*y^2 = m`, proper and improper.
pub fn solve_general(spec: &ProblemSpec) -> Result<Vec<Representation>> {
    solve_general_with_effort(spec, DEFAULT_FACTOR_EFFORT)
}

/// `solve_general` with an explicit factorization effort bound.
pub fn solve_general_with_effort(spec: &ProblemSpec, effort: u64) -> Result<Vec<Representation>> {
    let f = factorize_with_effort(spec.m(), effort)?;
    solve_general_factored(spec, &f)
}

/// Smith's construction for a prime `p = 1 (mod 4)`: scan
/// `h = 2, 3, ...` below `p/2` for the palindromic expansion of `p/h`
/// and read `x^2 + y^2 = p` off the midpoint convergents.
///
/// No quadratic-residue input is needed; the palindromic `h` is itself a
/// square root of `-1` mod `p`. The scan is linear in `p` on purpose:
/// this is a desk-scale existence argument, not a fast solver.
pub fn smith_two_squares(p: &Nat) -> Result<(Nat, Nat, Nat)> {
    if !is_prime(p) || (p % 4u32) != Nat::from(1u32) {
        return Err(Error::InvalidInput(format!(
            "smith_two_squares requires a prime p = 1 (mod 4), got {p}"
        )));
    }
    let mut h = Nat::from(2u32);
    while &(&h << 1) < p {
        let exp = Antenaresis::expand(p, &h)?;
        if exp.is_palindromic() {
            let k = exp.k();
            // a prime continuant forces an even-length palindrome
            if k % 2 == 1 {
                let s = (k as isize + 1) / 2;
                let x = exp.conv_num(s - 1).magnitude().clone();
                let y = exp.conv_num(s - 2).magnitude().clone();
                if &(&x * &x + &y * &y) == p {
                    return Ok((h, x, y));
                }
            }
        }
        h += 1u32;
    }
    Err(Error::InvalidInput(format!(
        "no palindromic expansion found below {p}/2; is p really a prime = 1 mod 4?"
    )))
}
