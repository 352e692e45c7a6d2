"""JSON encoding of verdicts, witnesses and certificates (schema ``abmod/1``).

Output is deterministic: keys are emitted in a fixed order, sets are sorted
and no timing data appears unless the caller asks for it.  Witness values
are series strings ``c*t^(a/b)`` with field elements written in the
generator ``a`` of the field's modulus (which is printed alongside).
"""
from __future__ import annotations

import json
from fractions import Fraction

from .algebra.gf import FIELD_SEED
from .algebra.poly import Poly
from .algebra.rings import fmt_poly
from .algebra.series import Valuation, series_ring
from .decider import (
    Inconclusive,
    ModPResult,
    No,
    OrdProfile,
    PolyVanishes,
    PrimeWitness,
    ResidueObstruction,
    Yes,
)
from .formula import Conjunct, to_dnf
from .reduction import gap_of, pad, replicate

SCHEMA = "abmod/1"


def _val(v: Valuation | None):
    if v is None:
        return None
    return str(v)


def _frac(q: Fraction) -> str:
    return str(q) if q.denominator != 1 else str(q.numerator)


def fmt_poly_int(h) -> str:
    return Poly.from_dense(tuple(int(c) for c in h), "x").to_str()


def witness_json(w: PrimeWitness, names: dict | None = None) -> dict:
    """``names`` maps gap variables to display names (block 1 of a single-block gap prints as the original)."""
    R = w.ring
    names = names or {}
    out = {"p": w.p, "k": w.k, "e": w.e, "M": _frac(Fraction(w.cap))}
    if R.field.k > 1:
        out["modulus"] = fmt_poly(R.field, R.field.modulus, "a")
    out["assignment"] = {names.get(v, v): R.fmt(a) for v, a in w.assignment.items()}
    lo, hi = w.margin
    out["margin"] = {"min_upper": _val(lo), "max_lower": _val(hi)}
    return out


def display_names(c: Conjunct) -> dict:
    gap = gap_of(c)
    if gap.n == 1:
        return dict(zip(gap.blocks[0], gap.orig_vars))
    return {}


def certificate_json(cert) -> dict:
    if isinstance(cert, PolyVanishes):
        return {"kind": cert.kind, "p": cert.p, "inequation": cert.index, "poly": cert.poly.to_str()}
    if isinstance(cert, ResidueObstruction):
        return {
            "kind": cert.kind,
            "p": cert.p,
            "variables": list(cert.variables),
            "equations": [f.to_str(cert.variables) for f in cert.eqs],
            "cofactors": [c.to_str(cert.variables) for c in cert.cofactors],
        }
    if isinstance(cert, OrdProfile):
        inf = lambda row: ["inf" if m is None else m for m in row]  # noqa: E731
        return {
            "kind": cert.kind,
            "p": cert.p,
            "basis": [fmt_poly_int(h) for h in cert.basis],
            "f_mults": [inf(r) for r in cert.f_mults],
            "g_mults": [inf(r) for r in cert.g_mults],
            "failing_block": cert.failing_block,
        }
    if cert is None:
        return {"kind": "none"}
    raise TypeError(f"unknown certificate {cert!r}")


def modp_json(r: ModPResult) -> dict:
    v = r.verdict
    out: dict = {"p": r.p, "verdict": v.tag, "fragment": v.fragment}
    if isinstance(v, Yes):
        c = r.conjuncts[v.conjunct].conjunct
        out["conjunct"] = v.conjunct
        out["witness"] = witness_json(v.witness, display_names(c))
    elif isinstance(v, No):
        out["certificate"] = [certificate_json(c) for c in v.certificates]
    elif isinstance(v, Inconclusive):
        out["budget"] = v.report
    return out


def all_primes_json(res) -> dict:
    c0 = res.char0
    out: dict = {
        "verdict": res.tag,
        "char0": {"verdict": c0.verdict, "fragment": c0.fragment},
        "bad_primes": c0.bad.as_list(),
        "per_prime": [modp_json(res.checked[p]) for p in sorted(res.checked)],
    }
    if res.tag == "fails_at":
        out["p"] = res.p
    if res.tag == "holds_for_all" and res.assumption:
        out["assumption"] = res.assumption
    if res.tag == "inconclusive":
        out["reason"] = res.reason
        out["unresolved"] = res.unresolved
        out["contradiction"] = res.contradiction
    else:
        out["unresolved"] = []
    return out


def reduce_json(sentence, dnf_cap: int) -> dict:
    conjuncts = to_dnf(sentence, cap=dnf_cap)
    out = []
    for c in conjuncts:
        padded = pad(c)
        rep = replicate(padded)
        gap = gap_of(c)
        order = c.variables()
        out.append(
            {
                "conjunct": str(c),
                "padded": {
                    "eqs": [f.to_str(order) for f in padded.eqs],
                    "neqs": [g.to_str(order) for g in padded.neqs],
                },
                "replicated": {
                    "n": rep.n,
                    "variables": list(rep.variables),
                    "eqs": [f.to_str(rep.variables) for _, _, f in rep.equation_literals()],
                    "neqs": [g.to_str(rep.variables) for _, g in rep.inequation_literals()],
                },
                "gap": gap.structure(),
            }
        )
    return {"variables": list(sentence.vars), "dnf": out}


def envelope(command: str, payload: dict, elapsed: float | None = None) -> dict:
    out = {"schema": SCHEMA, "command": command, **payload}
    if elapsed is not None:
        out["elapsed"] = round(elapsed, 6)
    return out


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def load_witness(obj: dict, c: Conjunct, seed=None) -> PrimeWitness:
    """Rebuild a witness from its JSON form (the inverse of :func:`witness_json`)."""
    R = series_ring(obj["p"], obj["k"], obj["e"], Fraction(obj["M"]), seed or FIELD_SEED)
    if R.field.k > 1 and fmt_poly(R.field, R.field.modulus, "a") != obj.get("modulus"):
        raise ValueError("witness field modulus differs from the rebuilt field")
    back = {v: k for k, v in display_names(c).items()}
    assignment = {back.get(v, v): R.parse(s) for v, s in obj["assignment"].items()}
    return PrimeWitness(obj["p"], obj["k"], obj["e"], R.cap, R, assignment)
