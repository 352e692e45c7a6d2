"""Conjunct normalization: padding, variable replication and the valuation-gap form.

A conjunct ``f_1 = ... = f_a = 0, g_1, ..., g_b != 0`` is padded to
n = max(a, b, 1) equations and n inequations (with 0 = 0 and 1 != 0), then
replicated into n disjoint blocks of fresh variables:

    f_i(x_j) = 0 for all i, j      and      g_k(x_k) != 0 for all k.

The gap sentence asks instead for points of the valuation ring where every
v(f_i(x_j)) lies strictly above every v(g_k(x_k)).  None of this depends on p.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra.poly import Poly
from .formula import Conjunct

POSITIVE = "Positive"
INEQUATIONS_ONLY = "InequationsOnly"
SEPARATED = "Separated"
GENERAL = "General"


def pad(c: Conjunct) -> Conjunct:
    n = max(len(c.eqs), len(c.neqs), 1)
    eqs = tuple(c.eqs) + (Poly(),) * (n - len(c.eqs))
    neqs = tuple(c.neqs) + (Poly.const(1),) * (n - len(c.neqs))
    return Conjunct(eqs, neqs, c.vars)


def is_balanced(c: Conjunct) -> bool:
    return len(c.eqs) == len(c.neqs) >= 1


def block_var(name: str, j: int) -> str:
    return f"{name}_{j}"


@dataclass(frozen=True)
class ReplicatedConjunct:
    n: int
    orig_vars: tuple
    eqs: tuple
    neqs: tuple

    @property
    def m(self) -> int:
        return len(self.orig_vars)

    def block(self, j: int) -> tuple:
        """Fresh variable names of block j (1-based)."""
        return tuple(block_var(v, j) for v in self.orig_vars)

    @property
    def variables(self) -> tuple:
        return tuple(v for j in range(1, self.n + 1) for v in self.block(j))

    def at_block(self, f: Poly, j: int) -> Poly:
        return f.rename(dict(zip(self.orig_vars, self.block(j))))

    def equation_literals(self):
        return [(i, j, self.at_block(f, j)) for i, f in enumerate(self.eqs, 1) for j in range(1, self.n + 1)]

    def inequation_literals(self):
        return [(k, self.at_block(g, k)) for k, g in enumerate(self.neqs, 1)]

    def conjunct(self) -> Conjunct:
        eqs = tuple(p for _, _, p in self.equation_literals())
        neqs = tuple(p for _, p in self.inequation_literals())
        return Conjunct(eqs, neqs, self.variables)


def replicate(c: Conjunct) -> ReplicatedConjunct:
    if not is_balanced(c):
        raise ValueError("replicate needs a padded conjunct (use pad first)")
    return ReplicatedConjunct(len(c.eqs), c.variables(), tuple(c.eqs), tuple(c.neqs))


@dataclass(frozen=True)
class GapSentence:
    """exists x_1..x_n in O:  min over (i, j) of v(f_i(x_j))  >  max over k of v(g_k(x_k))."""

    n: int
    orig_vars: tuple
    blocks: tuple  # n tuples of variable names
    upper: tuple  # ((i, j, poly), ...) with n^2 entries
    lower: tuple  # ((k, poly), ...) with n entries
    source: ReplicatedConjunct

    @property
    def m(self) -> int:
        return len(self.orig_vars)

    @property
    def variables(self) -> tuple:
        return tuple(v for b in self.blocks for v in b)

    def structure(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "blocks": [list(b) for b in self.blocks],
            "upper": [{"f": i, "block": j, "poly": p.to_str(self.variables)} for i, j, p in self.upper],
            "lower": [{"g": k, "block": k, "poly": p.to_str(self.variables)} for k, p in self.lower],
        }


def to_gap(r: ReplicatedConjunct) -> GapSentence:
    return GapSentence(
        r.n,
        r.orig_vars,
        tuple(r.block(j) for j in range(1, r.n + 1)),
        tuple(r.equation_literals()),
        tuple(r.inequation_literals()),
        r,
    )


def gap_of(c: Conjunct) -> GapSentence:
    return to_gap(replicate(pad(c)))


def classify(c: Conjunct) -> str:
    """Positive / InequationsOnly / Separated (at most one variable) / General.

    A conjunct with no literals at all counts as InequationsOnly (it is
    trivially true, like an empty list of inequations).
    """
    if not c.neqs and c.eqs:
        return POSITIVE
    if not c.eqs:
        return INEQUATIONS_ONLY
    if len(c.variables()) <= 1:
        return SEPARATED
    return GENERAL
