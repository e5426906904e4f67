"""Exact rational arithmetic backend.

Every number in the engine is an arbitrary-precision rational; floating
point is never used in core computations.  Two interchangeable backends
provide the ``Rat`` type:

  * ``gmpy2.mpq`` (GMP-backed, fast) -- used when gmpy2 is importable;
  * ``fractions.Fraction`` (pure Python) -- always available.

The choice can be forced with the environment variable
``KEDGE_RATIONAL_BACKEND`` set to ``gmpy2`` or ``fraction``.  Both types
expose ``.numerator``/``.denominator`` and exact comparison, which is all
the rest of the package relies on.

Serialized form is always the string ``"p/q"`` in lowest terms (e.g.
``"21/23"``, ``"-1/21"``, ``"3/1"``); parsing accepts ``"p/q"`` and bare
integers, and -- only when explicitly requested -- decimal literals,
which are converted exactly (base-10), never through binary floats.
"""
from __future__ import annotations

import math
import os
from fractions import Fraction

_backend = os.environ.get("KEDGE_RATIONAL_BACKEND", "").strip().lower()

if _backend not in ("", "gmpy2", "fraction"):
    raise RuntimeError(
        f"KEDGE_RATIONAL_BACKEND={_backend!r}: expected 'gmpy2' or 'fraction'"
    )

if _backend in ("", "gmpy2"):
    try:
        from gmpy2 import mpq as Rat

        RAT_BACKEND = "gmpy2"
    except ImportError:
        if _backend == "gmpy2":
            raise
        Rat = Fraction
        RAT_BACKEND = "fraction"
else:
    Rat = Fraction
    RAT_BACKEND = "fraction"

#: Rational zero/one, shared to avoid repeated construction.
ZERO = Rat(0)
ONE = Rat(1)


def rat(numerator, denominator=None):
    """Build a Rat from ints, another rational, or ``p, q``."""
    if denominator is None:
        return Rat(numerator)
    return Rat(numerator) / Rat(denominator)


def sign(x) -> int:
    """Exact sign: -1, 0 or +1."""
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


class RatParseError(ValueError):
    """Input string is not an accepted exact rational literal."""


def parse_rat(text: str, accept_decimal: bool = False):
    """Parse ``"p/q"`` or an integer literal into a Rat.

    Decimal literals such as ``"0.5"`` are rejected unless
    ``accept_decimal`` is set, in which case they are converted exactly
    in base 10 (``"0.1"`` becomes 1/10, not a binary float).
    """
    s = text.strip()
    if not s:
        raise RatParseError("empty rational literal")
    if "/" in s:
        num_s, _, den_s = s.partition("/")
        try:
            num, den = int(num_s), int(den_s)
        except ValueError:
            raise RatParseError(f"malformed rational {text!r}: expected 'p/q'") from None
        if den == 0:
            raise RatParseError(f"zero denominator in {text!r}")
        return Rat(num) / Rat(den)
    if "." in s or "e" in s.lower():
        if not accept_decimal:
            raise RatParseError(
                f"{text!r} looks like a decimal; pass an exact rational 'p/q' "
                "or enable the lossy decimal flag"
            )
        try:
            return Rat(Fraction(s))
        except ValueError:
            raise RatParseError(f"malformed decimal {text!r}") from None
    try:
        return Rat(int(s))
    except ValueError:
        raise RatParseError(f"malformed rational {text!r}") from None


def format_rat(x) -> str:
    """Canonical ``"p/q"`` form in lowest terms, denominator positive."""
    return f"{x.numerator}/{x.denominator}"


def isqrt_exact(k: int) -> int | None:
    """Integer square root of ``k`` if ``k`` is a perfect square, else None."""
    if k < 0:
        return None
    r = math.isqrt(k)
    return r if r * r == k else None


def sqrt_exact(x):
    """Exact rational square root of ``x``, or None if irrational."""
    num = isqrt_exact(x.numerator)
    if num is None:
        return None
    den = isqrt_exact(x.denominator)
    if den is None:
        return None
    return Rat(num) / Rat(den)
