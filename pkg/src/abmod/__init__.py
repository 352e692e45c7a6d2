"""abmod: existential decision procedures for Z^ab / p Z^ab.

The pipeline is parse -> DNF -> pad/replicate -> valuation-gap sentence ->
per-prime decision, with an all-primes driver on top and exhaustive
finite-ring oracles for cross-checking.
"""

__version__ = "0.1.0"
