"""x^p = 1 with x != 1: solvable mod p in Z^ab, but not in any field of characteristic p.

Over an algebraically closed field of characteristic p, x^p - 1 = (x - 1)^p,
so the only p-th root of unity is 1.  Modulo p inside Z^ab the primitive
root zeta_p survives as a unit 1 + (something nilpotent), and the decider
finds it as a truncated series.

    python demos/flagship.py
"""
from abmod.decider import acf_decide, decide_mod_p, verify_verdict
from abmod.formula import parse, to_dnf
from abmod.oracle import build_local_model, brute_sat


def main():
    for p in (2, 3, 5, 7, 11):
        text = f"exists x: x^{p} = 1 & x != 1"
        (c,) = to_dnf(parse(text))
        r = decide_mod_p(text, p)
        w = r.verdict.witness
        acf = acf_decide(c, p)
        print(f"p = {p:2d}  verdict: {r.verdict.tag}  checked: {verify_verdict(r)}")
        print(f"        witness x = {w.formatted()['x_1']}  (k = {w.k}, e = {w.e})")
        print(f"        algebraically closed field of char {p}: {'sat' if acf.sat else 'unsat'}")

    # p = 2 needs ramification: nothing in F_4 works, 1 + v does in F_2[v]/v^2
    (c,) = to_dnf(parse("x^2 = 1 & x != 1"))
    for k, e in [(2, 0), (1, 1)]:
        model = build_local_model(2, k, e)
        sat, w = brute_sat(model.ring, c)
        shown = model.ring.fmt(w["x"]) if sat else "-"
        print(f"p = 2, level k = {k}, e = {e}: sat = {sat}, x = {shown}")


if __name__ == "__main__":
    main()
