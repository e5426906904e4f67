"""Seed-deterministic random sampling of surfaces, angles and classes.

All randomised checks in the package draw from these generators so that a
``(seed, sample-count)`` pair pins the exact inputs byte-for-byte.  Angles
are drawn as exact rationals: denominator uniform in 1..64, numerator
uniform in 1..4*denominator, rejected until the pair lands in the ample
range (and in the extra validity range of a requested closed-form case).
"""

from __future__ import annotations

import random

from .closedforms import (
    CASE_C1_FIRST,
    CASE_C2_FIRST,
    CASE_N_GE_M,
    CASE_N_ZERO,
    classify_exceptional_case,
)
from .picard import Angles, DivisorClass, SurfaceModel, SurfaceParams, as_model
from .ratmath import Rat

MAX_DENOMINATOR = 64
MAX_VALUE = 4  # angles are drawn from (0, MAX_VALUE]

# Case families for the closed-form regression: the two section sweeps work
# for every (n, m), the exceptional-curve sweep splits into four regimes.
LEMMA_CASES = ("C1tilde", "C2tilde", CASE_N_GE_M, CASE_C1_FIRST, CASE_C2_FIRST, CASE_N_ZERO)


def sample_rational(rng: random.Random, max_value: int = MAX_VALUE) -> Rat:
    """A positive rational with denominator <= 64, value <= max_value."""
    den = rng.randint(1, MAX_DENOMINATOR)
    num = rng.randint(1, max_value * den)
    return Rat(num, den)


def sample_angles(rng: random.Random, params, max_tries: int = 10_000) -> Angles:
    """Rejection-sample an angle pair in the ample range of ``params``."""
    model = as_model(params)
    for _ in range(max_tries):
        angles = Angles(sample_rational(rng), sample_rational(rng))
        if model.ample_range_violation(angles) is None:
            return angles
    raise RuntimeError(f"could not sample ample angles for {model.params}")


def sample_surface(
    rng: random.Random, n_max: int = 6, m_max: int = 6, m_min: int = 0
) -> SurfaceParams:
    return SurfaceParams(rng.randint(0, n_max), rng.randint(m_min, m_max))


def sample_case_input(rng: random.Random, case: str, max_tries: int = 10_000):
    """(params, angles, index) in the validity domain of a closed-form case.

    ``index`` is the exceptional-curve index for the E cases (always 1; the
    marked points are interchangeable) and 0 for the section cases.
    """
    if case in ("C1tilde", "C2tilde"):
        params = sample_surface(rng)
        return params, sample_angles(rng, params), 0
    for _ in range(max_tries):
        if case == CASE_N_GE_M:
            m = rng.randint(1, 6)
            params = SurfaceParams(rng.randint(m, 6), m)
        elif case == CASE_C1_FIRST:
            n = rng.randint(2, 5)
            params = SurfaceParams(n, rng.randint(n + 1, 6))
        elif case == CASE_C2_FIRST:
            n = rng.randint(1, 5)
            params = SurfaceParams(n, rng.randint(n + 1, 6))
        elif case == CASE_N_ZERO:
            params = SurfaceParams(0, rng.randint(1, 6))
        else:
            raise ValueError(f"unknown case {case!r}")
        angles = sample_angles(rng, params)
        if classify_exceptional_case(params, angles) == case:
            return params, angles, 1
    raise RuntimeError(f"could not sample inputs for case {case!r}")


def sample_divisor_class(rng: random.Random, model: SurfaceModel) -> DivisorClass:
    """A random class, biased toward (but not restricted to) effective ones.

    Half the draws are nonnegative combinations of the candidate curves and
    the two nef generators, hence effective; the other half are raw small
    rational coordinates and may fail to be pseudoeffective, which the
    decomposition routines must report consistently.
    """

    def coeff(lo: int, hi: int) -> Rat:
        return Rat(rng.randint(lo, hi), rng.randint(1, 4))

    if rng.random() < 0.5:
        total = DivisorClass(coeff(0, 6), coeff(0, 6), (Rat(0),) * model.m)
        for curve in model.candidate_curves():
            total = total + model.class_of(curve).scale(coeff(0, 3))
        return total
    return DivisorClass(
        coeff(-1, 4), coeff(-2, 6), tuple(coeff(-2, 4) for _ in range(model.m))
    )
