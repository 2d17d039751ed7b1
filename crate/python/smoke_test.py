#!/usr/bin/env python3
"""Smoke test for the quadrep_py extension module.

Builds nothing itself: run `cargo build -p quadrep-py` (or --release)
first. The script locates the compiled cdylib under target/, stages it
under the importable name quadrep_py, imports it and exercises the main
entry points against hand-checked values.
"""

import shutil
import sys
import tempfile
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent


def stage_module() -> None:
    candidates = [
        REPO_ROOT / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libquadrep_py.so", "quadrep_py.so", "libquadrep_py.dylib")
    ]
    built = next((path for path in candidates if path.exists()), None)
    if built is None:
        sys.exit(
            "quadrep_py cdylib not found under target/; "
            "run `cargo build -p quadrep-py` first"
        )
    stage = Path(tempfile.mkdtemp(prefix="quadrep_py_"))
    suffix = ".so" if built.suffix == ".so" else built.suffix
    shutil.copy2(built, stage / f"quadrep_py{suffix}")
    sys.path.insert(0, str(stage))


stage_module()

import quadrep_py  # noqa: E402


def check(label: str, condition: bool) -> None:
    status = "ok" if condition else "FAIL"
    print(f"{label}: {status}")
    if not condition:
        sys.exit(1)


# proper representations of 435629 by x^2 + 5*y^2
reps = quadrep_py.solve_proper(435629, 5)
pairs = sorted((int(r.x), int(r.y)) for r in reps)
check("solve_proper(435629, 5)", pairs == [(123, 290), (228, 277)])
check("solutions are proper", all(r.proper for r in reps))

# 36964 = 4 * 9241 has no proper representation, only the scaled one
check("solve_proper(36964, 7)", quadrep_py.solve_proper(36964, 7) == [])
general = quadrep_py.solve_general(36964, 7)
check(
    "solve_general(36964, 7)",
    [(int(r.x), int(r.y), r.proper) for r in general] == [(26, 72, False)],
)

# the composed cube: 119931^2 + 5*94118^2 = 58674434381
big = quadrep_py.solve_general(58674434381, 5)
check(
    "solve_general(58674434381, 5)",
    any(int(r.x) == 119931 and int(r.y) == 94118 and r.proper for r in big),
)

# roots of -5 mod 435629 and a single-root solve
roots = quadrep_py.sqrt_mod(-5, 435629)
check("sqrt_mod(-5, 435629)", roots == [231183, 386057])
rep = quadrep_py.solve_for_root(231183, 435629, 5)
check("solve_for_root(231183, ...)", (int(rep.x), int(rep.y)) == (228, 277))

# factorization and primality
check("factorize(435629)", quadrep_py.factorize(435629) == [(367, 1), (1187, 1)])
check("factorize(36964)", quadrep_py.factorize(36964) == [(2, 2), (9241, 1)])
check("is_prime(9241)", quadrep_py.is_prime(9241))
check("is_prime(341) is False", not quadrep_py.is_prime(341))
check("fermat_base2(435629) is False", not quadrep_py.fermat_base2(435629))
check("fermat_base2(341) fooled", quadrep_py.fermat_base2(341))

# continued fraction of 367/1187 and the Bezout convergent
quotients, remainders, convergents = quadrep_py.continued_fraction(367, 1187)
check("cf quotients", quotients == [0, 3, 4, 3, 1, 2, 1, 5])
check("cf remainders", remainders == [367, 1187, 367, 86, 23, 17, 6, 5, 1, 0])
check("cf convergents", convergents[-2] == (64, 207) and convergents[-1] == (367, 1187))

# Smith's palindromic two-squares construction
check("smith_two_squares(13)", quadrep_py.smith_two_squares(13) == (5, 3, 2))
check("smith_two_squares(29)", quadrep_py.smith_two_squares(29) == (12, 5, 2))

# brute-force oracle agrees on a small case
brute = quadrep_py.brute_solutions(13, 3)
check("brute_solutions(13, 3)", [(int(r.x), int(r.y)) for r in brute] == [(1, 2)])

# arbitrary precision through the boundary: a 30-digit two-squares case
p = 10**30 + 57  # prime, 1 mod 4
reps = quadrep_py.solve_proper(p, 1)
check("solve_proper(10^30 + 57, 1)", len(reps) == 1)
x, y = int(reps[0].x), int(reps[0].y)
check("10^30 + 57 decomposed", x * x + y * y == p)

# invalid input surfaces as ValueError
try:
    quadrep_py.solve_proper(10, 5)
except ValueError:
    print("gcd(d, m) != 1 raises ValueError: ok")
else:
    sys.exit("expected ValueError for gcd(d, m) != 1")

print("all smoke checks passed")
