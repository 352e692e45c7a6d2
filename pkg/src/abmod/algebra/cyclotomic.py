"""Cyclotomic polynomials over Z and their splitting modulo p."""
from __future__ import annotations

import functools
from math import gcd

from ..errors import InputError
from . import upoly
from .gf import is_prime, prime_field
from .poly import Poly


def euler_phi(n: int) -> int:
    if n < 1:
        raise InputError("phi needs a positive integer")
    out = n
    for r in upoly._prime_factors(n):
        out -= out // r
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def multiplicative_order(a: int, n: int) -> int:
    if gcd(a, n) != 1:
        raise InputError(f"{a} is not a unit modulo {n}")
    if n == 1:
        return 1
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
    return k


def _exact_div_monic(f: tuple, g: tuple) -> tuple:
    """f / g over Z for monic g, raising if the division leaves a remainder."""
    r = list(f)
    dg = len(g) - 1
    q = [0] * (len(r) - dg)
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i]
        if c:
            q[i - dg] = c
            for j, b in enumerate(g):
                r[i - dg + j] -= c * b
    if any(r[:dg]):
        raise ArithmeticError("inexact division")
    return tuple(q)


@functools.lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> tuple:
    """Dense integer coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise InputError("cyclotomic index must be positive")
    f = (-1,) + (0,) * (n - 1) + (1,)
    for d in divisors(n)[:-1]:
        f = _exact_div_monic(f, cyclotomic_coeffs(d))
    return f


def cyclotomic(n: int, var: str = "x") -> Poly:
    return Poly.from_dense(cyclotomic_coeffs(n), var)


def cyclotomic_mod_p(n: int, p: int) -> tuple:
    F = prime_field(p)
    return upoly.trim(F, [F.from_int(c) for c in cyclotomic_coeffs(n)])


def splitting_profile(n: int, p: int) -> list[tuple[tuple, int]]:
    """Irreducible factors of Phi_n mod p with multiplicities."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    F = prime_field(p)
    return upoly.factor(F, cyclotomic_mod_p(n, p))[1]
