"""Prime fields and their extensions GF(p^k).

Elements are encoded as integers in [0, q): the coefficient vector
(c_0, ..., c_{k-1}) of c_0 + c_1 a + ... + c_{k-1} a^(k-1), read in base p,
where a is a root of the defining modulus h.  The prime subfield is therefore
exactly the integers 0..p-1, so an F_p element can be used verbatim in any
extension built with the same p.

Fields with q <= TABLE_LIMIT use exp/log and Zech tables; larger ones fall
back to polynomial arithmetic modulo h.
"""
from __future__ import annotations

import functools
import random

from ..errors import InputError
from . import upoly
from .base import Ring

TABLE_LIMIT = 1 << 16
FIELD_SEED = 1729


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for s in small:
        if n % s == 0:
            return n == s
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class GF(Ring):
    is_field = True

    def __init__(self, p: int, k: int = 1, seed: int = FIELD_SEED, modulus=None):
        if not is_prime(p):
            raise InputError(f"{p} is not prime")
        if k < 1:
            raise InputError("extension degree must be positive")
        self.p, self.k, self.q = p, k, p**k
        self.size = self.q
        self.characteristic = p
        self.seed = seed
        self.zero, self.one = 0, 1
        self._exp = self._log = self._zech = None
        if k == 1:
            self.modulus = (0, 1)
            return
        base = prime_field(p)
        if modulus is None:
            modulus = _find_irreducible(base, k, seed)
        elif len(modulus) != k + 1 or modulus[-1] != 1 or not upoly.is_irreducible(base, modulus):
            raise InputError("modulus must be a monic irreducible of degree k")
        self.modulus = tuple(modulus)
        if self.q <= TABLE_LIMIT:
            self._build_tables()

    # -- encoding -----------------------------------------------------------
    def to_vec(self, a: int) -> list[int]:
        p, out = self.p, []
        for _ in range(self.k):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_vec(self, v) -> int:
        acc = 0
        for c in reversed(list(v)[: self.k]):
            acc = acc * self.p + (c % self.p)
        return acc

    # -- slow path ------------------------------------------------------------
    def _slow_add(self, a, b):
        p = self.p
        out, mult = 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * mult
            mult *= p
        return out

    def _slow_neg(self, a):
        return self.from_vec([-c for c in self.to_vec(a)])

    def _slow_mul(self, a, b):
        base = prime_field(self.p)
        f = upoly.trim(base, self.to_vec(a))
        g = upoly.trim(base, self.to_vec(b))
        return self.from_vec(upoly.rem(base, upoly.mul(base, f, g), self.modulus))

    def _build_tables(self):
        q1 = self.q - 1
        factors = upoly._prime_factors(q1)
        for g in range(2, self.q):
            if all(self._slow_pow(g, q1 // r) != 1 for r in factors):
                break
        exp = [0] * q1
        log = [-1] * self.q
        x = 1
        for i in range(q1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, g)
        self._exp, self._log = exp, log
        if self.p != 2:
            # zech[n] = log(1 + g^n), -1 when 1 + g^n = 0
            self._zech = [log[self._slow_add(1, exp[n])] for n in range(q1)]
            self._half = q1 // 2

    def _slow_pow(self, a, n):
        result, base = 1, a
        while n:
            if n & 1:
                result = self._slow_mul(result, base)
            base = self._slow_mul(base, base)
            n >>= 1
        return result

    # -- ring protocol ---------------------------------------------------------
    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if not a:
            return b
        if not b:
            return a
        if self._zech is None:
            return self._slow_add(a, b)
        la, lb = self._log[a], self._log[b]
        q1 = self.q - 1
        z = self._zech[(lb - la) % q1]
        if z < 0:
            return 0
        return self._exp[(la + z) % q1]

    def neg(self, a):
        if self.k == 1:
            return -a % self.p
        if self.p == 2 or not a:
            return a
        if self._exp is None:
            return self._slow_neg(a)
        return self._exp[(self._log[a] + self._half) % (self.q - 1)]

    def sub(self, a, b):
        if self.k == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        if not a or not b:
            return 0
        if self._exp is None:
            return self._slow_mul(a, b)
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self._exp is None:
            return self._slow_pow(a, self.q - 2)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        if self.k == 1:
            return pow(a, n, self.p)
        if n == 0:
            return 1
        if not a:
            return 0
        if self._exp is None:
            return self._slow_pow(a, n)
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def from_int(self, n):
        return n % self.p

    def is_zero(self, a):
        return a == 0

    def elements(self):
        return iter(range(self.q))

    def generator(self) -> int:
        """The residue class of the indeterminate a (encoded as p when k > 1)."""
        return self.p if self.k > 1 else 1

    def fmt(self, a) -> str:
        if self.k == 1:
            return str(a)
        terms = []
        for i, c in reversed(list(enumerate(self.to_vec(a)))):
            if not c:
                continue
            mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))


def _find_irreducible(base: "GF", k: int, seed: int):
    rng = random.Random(seed * 1000003 + base.p * 101 + k)
    while True:
        cand = tuple(rng.randrange(base.p) for _ in range(k)) + (1,)
        if cand[0] and upoly.is_irreducible(base, cand):
            return cand


@functools.lru_cache(maxsize=None)
def prime_field(p: int) -> GF:
    return GF(p, 1)


@functools.lru_cache(maxsize=None)
def make_ext_field(p: int, k: int = 1, seed: int = FIELD_SEED) -> GF:
    """Cached context for GF(p^k); the modulus depends only on (p, k, seed)."""
    if k == 1:
        return prime_field(p)
    return GF(p, k, seed)


def embedding(src: GF, dst: GF):
    """Field embedding src -> dst (requires src.k | dst.k), as a function on encodings."""
    if src.p != dst.p or dst.k % src.k:
        raise InputError(f"{src!r} does not embed in {dst!r}")
    if src.k == 1:
        return lambda a: a
    lifted = tuple(src.modulus)  # coefficients lie in the prime field
    beta = upoly.roots(dst, lifted)[0]
    powers = [dst.pow(beta, i) for i in range(src.k)]

    def emb(a):
        acc = 0
        for c, pw in zip(src.to_vec(a), powers):
            if c:
                acc = dst.add(acc, dst.mul(c, pw))
        return acc

    return emb
