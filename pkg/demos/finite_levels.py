"""Finite pieces of Z^ab/p: cyclotomic quotients and the replication trick.

Z[zeta_N]/p is F_p[x]/(Phi_N mod p), which splits into copies of F_{p^m}
(m the order of p mod N) when p does not divide N.  A conjunct holds in a
product S^r exactly when its replicated form holds in S itself, once r is
at least the number of padded literals.

    python demos/finite_levels.py
"""
from abmod.algebra.cyclotomic import euler_phi, multiplicative_order
from abmod.algebra.gf import prime_field
from abmod.formula import parse, to_dnf
from abmod.oracle import brute_sat, build_cyclotomic_model, product_transfer_check
from abmod.reduction import pad, replicate


def splitting():
    print("Phi_{q-1} mod p splits into phi(q-1)/m factors of degree m:")
    for p, m in [(2, 2), (2, 3), (2, 4), (3, 2), (5, 2)]:
        q = p**m
        model = build_cyclotomic_model(q - 1, p)
        degs = [len(h) - 1 for h, _ in model.factors]
        print(f"  p={p} m={m}: {len(degs)} factors of degree {set(degs)}; phi({q - 1})/{m} = {euler_phi(q - 1) // m}")
    print(f"  order of 2 mod 15 = {multiplicative_order(2, 15)}")


def replication():
    text = "x*(x+1) = 0 & x != 0 & x != 1"
    (c,) = to_dnf(parse(text))
    F2 = prime_field(2)
    rc = replicate(pad(c)).conjunct()
    print(f"\n{text}")
    print(f"  replicated: {rc}")
    print(f"  F_2       sat: {brute_sat(F2, c)[0]}")
    print(f"  F_2 x F_2 sat via replication: {brute_sat(F2, rc)[0]}")
    for r in (1, 2, 3):
        print(f"  law holds for r = {r}: {product_transfer_check(F2, r, c)}")


if __name__ == "__main__":
    splitting()
    replication()
