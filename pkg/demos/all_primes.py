"""Walk a few sentences through the all-primes driver.

The driver decides each sentence in residue characteristic 0, collects the
primes where that computation might not reduce cleanly, checks those (and
every prime up to 13) one by one, and reports HoldsForAll, FailsAt(p) or
Inconclusive.

    python demos/all_primes.py
"""
from abmod.transfer import decide_all_primes

SENTENCES = [
    "x^2 + x + 1 = 0",
    "2x - 1 = 0",
    "x - 1 = 0 & (x - 1)^2 != 0",
    "exists x: x^2 = 1 & x != 1",
    "x^3 + x + 1 = 0 & x != 0",
    "x*y = 1 & x != 1",
]


def describe(res) -> str:
    if res.tag == "fails_at":
        return f"fails at p = {res.p}"
    if res.tag == "holds_for_all":
        return "holds for every prime"
    return f"inconclusive ({res.reason})"


def main():
    for text in SENTENCES:
        res = decide_all_primes(text)
        bad = ", ".join(f"{d['p']} ({d['reason']})" for d in res.char0.bad.as_list()) or "none"
        per_prime = " ".join(f"{p}:{r.verdict.tag}" for p, r in sorted(res.checked.items()))
        print(text)
        print(f"  char 0 ({res.char0.fragment}): {res.char0.verdict}")
        print(f"  bad primes: {bad}")
        print(f"  checked: {per_prime}")
        print(f"  => {describe(res)}")
        print()


if __name__ == "__main__":
    main()
