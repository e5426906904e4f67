"""Shared fixtures: seeded generators and condition-locus parametrizations."""

from __future__ import annotations

import random

import pytest

from kedge.picard import Angles, SurfaceParams
from kedge.ratmath import Rat


@pytest.fixture
def rng():
    """Fresh deterministic generator per test."""
    return random.Random(20260823)


def condition_point_m0(n: int, t: Rat) -> Angles:
    """Rational point on the m=0 condition locus, parameter t in (0, 1).

    For n > 0 the locus beta1^2 - (n/3) beta1^3 = beta2^2 + (n/3) beta2^3
    is rationally parametrized by beta2 = t*beta1 with
    beta1 = 3(1-t) / (n (1 - t + t^2)); for n = 0 it is the diagonal.
    """
    t = Rat(t)
    if not 0 < t < 1:
        raise ValueError("t must lie in (0, 1)")
    if n == 0:
        return Angles(t, t)
    beta1 = 3 * (1 - t) / (n * (1 - t + t * t))
    return Angles(beta1, t * beta1)


def small_surfaces(n_max: int = 4, m_max: int = 4):
    """All (n, m) pairs up to the given bounds."""
    return [
        SurfaceParams(n, m) for n in range(n_max + 1) for m in range(m_max + 1)
    ]


def negative_definite_families():
    """The seven curve families with negative-definite Gram matrices.

    Each entry: (family number, curve builder over (n, m), constraint on
    (n, m), list of boundary (n, m) pairs violating the constraint).
    The builders use marked point i = 1 where a single fiber is involved.
    """
    from kedge.picard import C1TILDE, C2TILDE, Ei, FiTilde

    def f_all(n, m):
        return [FiTilde(i) for i in range(1, m + 1)]

    def e_all(n, m):
        return [Ei(i) for i in range(1, m + 1)]

    return [
        (1, f_all, lambda n, m: m >= 1, []),
        (2, e_all, lambda n, m: m >= 1, []),
        (3, lambda n, m: [C1TILDE, FiTilde(1)], lambda n, m: n > 1, [(1, 1)]),
        (4, lambda n, m: [C1TILDE] + f_all(n, m), lambda n, m: n > m, [(2, 2)]),
        (5, lambda n, m: [C2TILDE, FiTilde(1)], lambda n, m: n < m, [(2, 2)]),
        (6, lambda n, m: [C1TILDE, C2TILDE, FiTilde(1)], lambda n, m: 1 < n < m,
         [(1, 3), (3, 3)]),
        (7, lambda n, m: [C2TILDE, FiTilde(1)] + e_all(n, m)[1:], lambda n, m: n == 0,
         []),
    ]
