//! The antenaresis: Euclid's division chain with its full trace.
//!
//! Expanding `a/b` records the quotients `q_j`, the remainders `r_j`
//! (with `r_{-1} = a`, `r_0 = b`, strictly decreasing to `r_{k+1} = 0`),
//! and the convergent numerators `A_j` / denominators `B_j` of the
//! continued fraction, including the seed entries at indices -2 and -1.
//! Keeping the sentinels explicit removes the usual off-by-one traps in
//! the determinant and recovery identities.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::integer::{Int, Nat};

/// Full trace of the Euclidean algorithm applied to a pair `(a, b)`.
///
/// Immutable after construction. Indices follow the mathematical
/// convention: `quotient(j)` for `0 <= j <= k`, `remainder(j)` for
/// `-1 <= j <= k+1`, `conv_num(j)`/`conv_den(j)` for `-2 <= j <= k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Antenaresis {
    a: Nat,
    b: Nat,
    quotients: Vec<Nat>,
    remainders: Vec<Nat>, // r_{-1} .. r_{k+1}
    conv_num: Vec<Int>,   // A_{-2} .. A_k
    conv_den: Vec<Nat>,   // B_{-2} .. B_k
    k: usize,
}

impl Antenaresis {
    /// Expand `a/b` into its continued fraction; requires `b >= 2`.
    ///
    /// The expansion is the plain Euclidean one, so the last quotient is
    /// at least 2 whenever `k >= 1` (no `[..., q-1, 1]` normalization).
    pub fn expand(a: &Nat, b: &Nat) -> Result<Self> {
        if b < &Nat::from(2u32) {
            return Err(Error::InvalidInput(format!(
                "antenaresis requires b >= 2, got b = {b}"
            )));
        }
        let mut quotients = Vec::new();
        let mut remainders = vec![a.clone(), b.clone()];
        let mut conv_num = vec![Int::zero(), Int::one()];
        let mut conv_den = vec![Nat::one(), Nat::zero()];

        let mut j = 0usize;
        let k = loop {
            // r_{j-1} = q_j * r_j + r_{j+1}
            let (q, r_next) = remainders[j].div_rem(&remainders[j + 1]);
            let a_j = Int::from(q.clone()) * &conv_num[j + 1] + &conv_num[j];
            let b_j = &q * &conv_den[j + 1] + &conv_den[j];
            quotients.push(q);
            remainders.push(r_next);
            conv_num.push(a_j);
            conv_den.push(b_j);
            if remainders[j + 2].is_zero() {
                break j;
            }
            j += 1;
        };

        Ok(Antenaresis {
            a: a.clone(),
            b: b.clone(),
            quotients,
            remainders,
            conv_num,
            conv_den,
            k,
        })
    }

    pub fn a(&self) -> &Nat {
        &self.a
    }

    pub fn b(&self) -> &Nat {
        &self.b
    }

    /// Index of the last division step; `r_k = gcd(a, b)`, `r_{k+1} = 0`.
    pub fn k(&self) -> usize {
        self.k
    }

    /// `gcd(a, b)`, i.e. the last nonzero remainder.
    pub fn gcd(&self) -> &Nat {
        &self.remainders[self.k + 1]
    }

    /// Quotient `q_j` for `0 <= j <= k`.
    pub fn quotient(&self, j: usize) -> &Nat {
        &self.quotients[j]
    }

    /// All quotients `q_0 ..= q_k`.
    pub fn quotients(&self) -> &[Nat] {
        &self.quotients
    }

    /// Remainder `r_j` for `-1 <= j <= k+1`.
    pub fn remainder(&self, j: isize) -> &Nat {
        assert!(
            j >= -1 && j <= self.k as isize + 1,
            "remainder index {j} out of range"
        );
        &self.remainders[(j + 1) as usize]
    }

    /// All remainders `r_{-1} ..= r_{k+1}`.
    pub fn remainders(&self) -> &[Nat] {
        &self.remainders
    }

    /// Convergent numerator `A_j` for `-2 <= j <= k`.
    pub fn conv_num(&self, j: isize) -> &Int {
        assert!(
            j >= -2 && j <= self.k as isize,
            "convergent index {j} out of range"
        );
        &self.conv_num[(j + 2) as usize]
    }

    /// Convergent denominator `B_j` for `-2 <= j <= k`.
    pub fn conv_den(&self, j: isize) -> &Nat {
        assert!(
            j >= -2 && j <= self.k as isize,
            "convergent index {j} out of range"
        );
        &self.conv_den[(j + 2) as usize]
    }

    /// All convergent numerators `A_{-2} ..= A_k`.
    pub fn conv_nums(&self) -> &[Int] {
        &self.conv_num
    }

    /// All convergent denominators `B_{-2} ..= B_k`.
    pub fn conv_dens(&self) -> &[Nat] {
        &self.conv_den
    }

    /// Stopping index of Cornacchia's algorithm: the unique `nu` with
    /// `r_{nu+1}^2 <= m < r_nu^2`.
    ///
    /// The trace must come from a pair `(w, m)`, so `m` equals the
    /// denominator; rejects traces where no such index exists.
    pub fn find_nu(&self, m: &Nat) -> Result<usize> {
        if m != &self.b {
            return Err(Error::InvalidInput(format!(
                "find_nu: m = {m} does not match the expanded denominator {}",
                self.b
            )));
        }
        for j in 0..=(self.k as isize + 1) {
            let r = self.remainder(j);
            if &(r * r) <= m {
                if j == 0 {
                    break; // m^2 <= m cannot happen for m >= 2
                }
                return Ok((j - 1) as usize);
            }
        }
        Err(Error::InvalidInput(
            "find_nu: no index satisfies the stopping condition".into(),
        ))
    }

    /// Stopping index of Hermite's d = 1 variant: `mu` with
    /// `B_mu^2 <= m < B_{mu+1}^2`.
    ///
    /// Exists because the denominators climb from 1 to `m` when
    /// `gcd(a, m) = 1`; rejects traces where they do not.
    pub fn find_mu(&self, m: &Nat) -> Result<usize> {
        if m != &self.b {
            return Err(Error::InvalidInput(format!(
                "find_mu: m = {m} does not match the expanded denominator {}",
                self.b
            )));
        }
        for j in 0..=(self.k as isize) {
            let bj = self.conv_den(j);
            if &(bj * bj) > m {
                if j == 0 {
                    break; // B_0 = 1, so 1 > m cannot happen for m >= 2
                }
                return Ok((j - 1) as usize);
            }
        }
        Err(Error::InvalidInput(
            "find_mu: convergent denominators never exceed sqrt(m)".into(),
        ))
    }

    /// Whether the quotient sequence reads the same reversed, after
    /// dropping a leading zero quotient (present exactly when `a < b`).
    pub fn is_palindromic(&self) -> bool {
        let mut qs: &[Nat] = &self.quotients;
        if let Some(first) = qs.first() {
            if first.is_zero() {
                qs = &qs[1..];
            }
        }
        qs.iter().eq(qs.iter().rev())
    }
}

/// Checks one instance of the best-approximation bound: if
/// `|a*Q - b*P| < r_lambda` and `Q != 0`, then `B_lambda <= |Q|`.
///
/// Returns the truth of the implication; by the underlying lemma this is
/// always true, so the operation exists to let tests falsify the
/// implementation rather than the theorem. `lambda` ranges over
/// `-1 ..= k`.
pub fn lemma_bound_check(a: &Nat, b: &Nat, p: &Int, q: &Int, lambda: isize) -> Result<bool> {
    let exp = Antenaresis::expand(a, b)?;
    if lambda < -1 || lambda > exp.k() as isize {
        return Err(Error::InvalidInput(format!(
            "lemma_bound_check: lambda = {lambda} out of range -1..={}",
            exp.k()
        )));
    }
    if q.is_zero() {
        return Ok(true);
    }
    let lhs = (Int::from(a.clone()) * q - Int::from(b.clone()) * p).abs();
    let r_lambda = Int::from(exp.remainder(lambda).clone());
    if lhs >= r_lambda {
        return Ok(true);
    }
    Ok(exp.conv_den(lambda) <= q.magnitude())
}
