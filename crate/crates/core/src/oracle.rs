//! Brute-force ground truth: enumerate every solution of
//! `x^2 + d*y^2 = m` directly. All property tests compare against this,
//! and the CLI exposes it (`solve --brute`) for cross-validation, so it
//! ships in the library rather than living in test code.

use num_traits::Zero;

use crate::cornacchia::Representation;
use crate::integer::{isqrt, perfect_square, Nat};

/// Every `(x, y)` with `x^2 + d*y^2 = m`, `x, y >= 0`, sorted by
/// `(x, y)`; the proper flag is set by gcd. For `d = 1` both
/// orientations of a mixed pair appear, as the enumeration finds them.
pub fn brute_solutions(d: &Nat, m: &Nat) -> Vec<Representation> {
    assert!(!d.is_zero(), "brute_solutions requires d >= 1");
    assert!(!m.is_zero(), "brute_solutions requires m >= 1");
    let mut out = Vec::new();
    let y_max = isqrt(&(m / d));
    let mut y = Nat::zero();
    while y <= y_max {
        let rest = m - d * (&y * &y);
        if let Some(x) = perfect_square(&rest) {
            out.push(Representation::new(x, y.clone(), d.clone(), m.clone()));
        }
        y += 1u32;
    }
    out.sort_by(|a, b| (a.x(), a.y()).cmp(&(b.x(), b.y())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn n(x: u64) -> Nat {
        Nat::from(x)
    }

    fn pairs(reps: &[Representation]) -> Vec<(u64, u64, bool)> {
        use num_traits::ToPrimitive;
        reps.iter()
            .map(|r| (r.x().to_u64().unwrap(), r.y().to_u64().unwrap(), r.proper()))
            .collect()
    }

    #[test]
    fn example_one_pairs_present() {
        let sols = brute_solutions(&n(5), &n(435629));
        let got = pairs(&sols);
        assert!(got.contains(&(228, 277, true)));
        assert!(got.contains(&(123, 290, true)));
    }

    #[test]
    fn example_two_improper_only() {
        let sols = brute_solutions(&n(7), &n(36964));
        assert_eq!(pairs(&sols), vec![(26, 72, false)]);
    }

    #[test]
    fn small_case() {
        let sols = brute_solutions(&n(3), &n(13));
        assert_eq!(pairs(&sols), vec![(1, 2, true)]);
    }

    #[test]
    fn two_squares_of_25() {
        // exactly the classes {5, 0} and {3, 4}
        let sols = brute_solutions(&n(1), &n(25));
        let classes: BTreeSet<_> = sols.iter().map(|r| r.class_key()).collect();
        assert_eq!(classes, BTreeSet::from([(n(0), n(5)), (n(3), n(4))]));
        // the raw enumeration keeps both orientations
        assert_eq!(sols.len(), 4);
    }
}
