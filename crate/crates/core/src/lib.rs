//! Integer solutions of `x^2 + d*y^2 = m`.
//!
//! The solver follows Cornacchia's classical recipe: take a normalized
//! square root `w` of `-d` modulo `m`, run the Euclidean division chain
//! (the antenaresis) on `{w, m}`, and stop at the first remainder below
//! `sqrt(m)`. If the candidate pair passes the exact identity check it is
//! a proper solution; otherwise no proper solution corresponds to `w`.
//!
//! Supporting machinery lives in its own modules:
//!
//! * [`integer`]: arbitrary-precision primitives (isqrt, extended gcd,
//!   modular exponentiation),
//! * [`contfrac`]: the division chain with its full trace of quotients,
//!   remainders and convergents,
//! * [`modsqrt`]: square roots modulo primes, prime powers and composite
//!   moduli (Tonelli-Shanks, Hensel lifting, CRT),
//! * [`factor`]: primality testing and factorization (Miller-Rabin,
//!   Pollard-Brent rho),
//! * [`cornacchia`]: the core solver for `d >= 2` and Hermite's variant
//!   for `d = 1`,
//! * [`compose`]: representations of composite `m` glued from prime-power
//!   pieces via the norm identity, plus Smith's palindrome construction,
//! * [`oracle`]: a brute-force enumerator used for cross-validation.

pub mod compose;
pub mod contfrac;
pub mod cornacchia;
mod error;
pub mod factor;
pub mod integer;
pub mod modsqrt;
pub mod oracle;

pub use compose::{compose_pair, prime_power_rep, smith_two_squares, solve_general, Sign};
pub use contfrac::Antenaresis;
pub use cornacchia::{solve_proper, ProblemSpec, Representation};
pub use error::{Error, Result};
pub use factor::{factorize, is_prime, Factorization};
pub use integer::{Int, Nat};
pub use modsqrt::{sqrt_minus_d_mod_m, RootSet};
