//! Python bindings: the solver and its supporting machinery with plain
//! Python ints on the boundary (arbitrary precision both ways).

use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use quadrep::{compose, contfrac, cornacchia, factor, modsqrt, oracle};

fn to_py_err(err: quadrep::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

/// A solution of x^2 + d*y^2 = m; `proper` means gcd(x, y) = 1.
#[pyclass(frozen, module = "quadrep_py")]
struct Representation {
    inner: cornacchia::Representation,
}

#[pymethods]
impl Representation {
    #[getter]
    fn x(&self) -> BigUint {
        self.inner.x().clone()
    }

    #[getter]
    fn y(&self) -> BigUint {
        self.inner.y().clone()
    }

    #[getter]
    fn d(&self) -> BigUint {
        self.inner.d().clone()
    }

    #[getter]
    fn m(&self) -> BigUint {
        self.inner.m().clone()
    }

    #[getter]
    fn proper(&self) -> bool {
        self.inner.proper()
    }

    /// The pair as a tuple, unordered pairs (d = 1) smallest first.
    fn class_key(&self) -> (BigUint, BigUint) {
        self.inner.class_key()
    }

    fn __repr__(&self) -> String {
        format!(
            "<Representation {} ({})>",
            self.inner,
            if self.inner.proper() {
                "proper"
            } else {
                "improper"
            }
        )
    }
}

fn wrap_reps(reps: Vec<cornacchia::Representation>) -> Vec<Representation> {
    reps.into_iter()
        .map(|inner| Representation { inner })
        .collect()
}

/// All proper solutions of x^2 + d*y^2 = m.
#[pyfunction]
fn solve_proper(m: BigUint, d: BigUint) -> PyResult<Vec<Representation>> {
    let spec = cornacchia::ProblemSpec::new(d, m.clone()).map_err(to_py_err)?;
    let f = factor::factorize(&m).map_err(to_py_err)?;
    Ok(wrap_reps(
        cornacchia::solve_proper(&spec, &f).map_err(to_py_err)?,
    ))
}

/// Every solution class of x^2 + d*y^2 = m, proper and improper.
#[pyfunction]
fn solve_general(m: BigUint, d: BigUint) -> PyResult<Vec<Representation>> {
    let spec = cornacchia::ProblemSpec::new(d, m).map_err(to_py_err)?;
    Ok(wrap_reps(compose::solve_general(&spec).map_err(to_py_err)?))
}

/// Run the solver against one normalized root w of -d mod m.
#[pyfunction]
fn solve_for_root(w: BigUint, m: BigUint, d: BigUint) -> PyResult<Option<Representation>> {
    if d == BigUint::from(1u32) {
        let rep = cornacchia::solve_d1_for_root(&w, &m).map_err(to_py_err)?;
        return Ok(Some(Representation { inner: rep }));
    }
    let spec = cornacchia::ProblemSpec::new(d, m).map_err(to_py_err)?;
    Ok(cornacchia::solve_for_root(&w, &spec)
        .map_err(to_py_err)?
        .map(|inner| Representation { inner }))
}

/// Brute-force enumeration of every solution (the cross-check oracle).
#[pyfunction]
fn brute_solutions(m: BigUint, d: BigUint) -> Vec<Representation> {
    wrap_reps(oracle::brute_solutions(&d, &m))
}

/// Normalized square roots of a modulo m (a may be negative).
#[pyfunction]
fn sqrt_mod(a: BigInt, m: BigUint) -> PyResult<Vec<BigUint>> {
    let f = factor::factorize(&m).map_err(to_py_err)?;
    let roots = modsqrt::sqrt_mod(&a, &f).map_err(to_py_err)?;
    Ok(roots.roots().to_vec())
}

/// Certified prime factorization as (prime, exponent) pairs.
#[pyfunction]
fn factorize(m: BigUint) -> PyResult<Vec<(BigUint, u32)>> {
    Ok(factor::factorize(&m).map_err(to_py_err)?.factors().to_vec())
}

#[pyfunction]
fn is_prime(n: BigUint) -> bool {
    factor::is_prime(&n)
}

/// Base-2 Fermat test: False proves m composite, True means probable
/// prime only (341 fools it).
#[pyfunction]
fn fermat_base2(m: BigUint) -> PyResult<bool> {
    Ok(matches!(
        factor::fermat_base2(&m).map_err(to_py_err)?,
        factor::Primality::ProbablePrime
    ))
}

type CfTrace = (Vec<BigUint>, Vec<BigUint>, Vec<(BigInt, BigUint)>);

/// Quotients, remainders and convergents of the division chain of a/b.
#[pyfunction]
fn continued_fraction(a: BigUint, b: BigUint) -> PyResult<CfTrace> {
    let exp = contfrac::Antenaresis::expand(&a, &b).map_err(to_py_err)?;
    let convergents = (0..=exp.k() as isize)
        .map(|j| (exp.conv_num(j).clone(), exp.conv_den(j).clone()))
        .collect();
    Ok((
        exp.quotients().to_vec(),
        exp.remainders().to_vec(),
        convergents,
    ))
}

/// Smith's two-squares decomposition of a prime p = 1 (mod 4):
/// returns (h, x, y) with x^2 + y^2 = p found via the palindromic
/// expansion of p/h.
#[pyfunction]
fn smith_two_squares(p: BigUint) -> PyResult<(BigUint, BigUint, BigUint)> {
    compose::smith_two_squares(&p).map_err(to_py_err)
}

#[pymodule]
fn quadrep_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Representation>()?;
    m.add_function(wrap_pyfunction!(solve_proper, m)?)?;
    m.add_function(wrap_pyfunction!(solve_general, m)?)?;
    m.add_function(wrap_pyfunction!(solve_for_root, m)?)?;
    m.add_function(wrap_pyfunction!(brute_solutions, m)?)?;
    m.add_function(wrap_pyfunction!(sqrt_mod, m)?)?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    m.add_function(wrap_pyfunction!(fermat_base2, m)?)?;
    m.add_function(wrap_pyfunction!(continued_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(smith_two_squares, m)?)?;
    Ok(())
}
