"""Exact arithmetic kernel: finite fields, polynomials, series, CRT."""
from .base import QQ, ZZ, Ring
from .cyclotomic import cyclotomic, euler_phi, multiplicative_order
from .gf import FIELD_SEED, GF, embedding, is_prime, make_ext_field, prime_field
from .poly import Poly
from .rings import CRT, ProductRing, QuotientRing, TruncPolyRing, crt_join, crt_split, power_quotient_iso
from .series import (
    AtLeastCap,
    Finite,
    SeriesRing,
    TruncSeries,
    Valuation,
    parse_series,
    recontext,
    rescale,
    series_ring,
    series_valuation,
)
from .upoly import factor as factor_univariate

__all__ = [
    "QQ",
    "ZZ",
    "Ring",
    "cyclotomic",
    "euler_phi",
    "multiplicative_order",
    "FIELD_SEED",
    "GF",
    "embedding",
    "is_prime",
    "make_ext_field",
    "prime_field",
    "Poly",
    "CRT",
    "ProductRing",
    "QuotientRing",
    "TruncPolyRing",
    "crt_join",
    "crt_split",
    "power_quotient_iso",
    "AtLeastCap",
    "Finite",
    "SeriesRing",
    "TruncSeries",
    "Valuation",
    "parse_series",
    "recontext",
    "rescale",
    "series_ring",
    "series_valuation",
    "factor_univariate",
]
