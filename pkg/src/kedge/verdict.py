"""Final statements: the angle condition, delta bounds, and K-polystability.

``condition_sign`` evaluates the sign of the angle bracket

    (beta1^2 - (n/3) beta1^3) - (beta2^2 + ((n-m)/3) beta2^3)

directly as a polynomial; it must agree with the torus-side Futaki sign
on every input, and the polystable verdict fires only when it is
exactly zero (the condition cuts a codimension-1 locus; no tolerance is
meaningful in exact arithmetic).  The verdict cross-checks the
hypotheses of the theorems it invokes and raises InconsistencyError --
the repo's loudest alarm -- rather than returning a silently wrong
answer when the two computation routes disagree.
"""
from __future__ import annotations

from dataclasses import dataclass

from .picard import C1TILDE, C2TILDE, Angles, CurveId, Ei, as_model
from .ratmath import Rat, sign
from .tvariety import DeltaReport, delta_tvariety, futaki_vanishes
from .volumes import expected_vanishing_order, log_discrepancy

KPOLYSTABLE = "KPolystable"
NOT_KPOLYSTABLE = "NotKPolystable"
OUTSIDE_AMPLE_RANGE = "OutsideAmpleRange"


class InconsistencyError(ArithmeticError):
    """The two independent computation routes (or a theorem hypothesis
    check) disagreed; results cannot be trusted."""


class NotFound(LookupError):
    """No condition point exists for the requested parameter."""


@dataclass(frozen=True)
class Verdict:
    """K-polystability verdict with the data that supports it."""

    status: str  # KPolystable | NotKPolystable | OutsideAmpleRange
    condition_sign: int
    delta: object  # Rat, or None when outside the ample range
    witnesses: tuple  # names of valuations attaining delta (empty if N/A)
    notes: tuple  # human-readable diagnostics
    report: DeltaReport | None = None

    @property
    def witness(self):
        return self.witnesses[0] if self.witnesses else None


def condition_sign(params, angles: Angles) -> int:
    """Sign of the angle bracket; 0 is the polystability condition."""
    model = as_model(params)
    n, m = model.n, model.m
    b1, b2 = angles.beta1, angles.beta2
    bracket = (b1 * b1 - Rat(n, 3) * b1**3) - (b2 * b2 + Rat(n - m, 3) * b2**3)
    return sign(bracket)


def delta_upper_bound(params, angles: Angles):
    """Minimum of A/S over C~1, C~2 and the exceptional curves
    (computed by the volume sweep), with every attaining curve.

    Returns (value, witnesses) where witnesses is a tuple of CurveId in
    the canonical order C~1, C~2, E_1..E_m.
    """
    model = as_model(params)
    model.ensure_ample(angles)
    competitors: list[CurveId] = [C1TILDE, C2TILDE] + [Ei(i) for i in range(1, model.m + 1)]
    ratios = []
    for cid in competitors:
        a = log_discrepancy(cid, model, angles)
        s = expected_vanishing_order(cid, model, angles)
        ratios.append((cid, a / s))
    best = min(r for _, r in ratios)
    witnesses = tuple(cid for cid, r in ratios if r == best)
    return best, witnesses


def _check(condition: bool, message: str):
    if not condition:
        raise InconsistencyError(message)


def _certify_polystable_branch(m: int, report: DeltaReport):
    """Verify the hypotheses of the theorems behind the delta = 1 verdict."""
    rays = [report.term("C1tilde"), report.term("C2tilde")]
    verticals = [t for t in report.terms if t.name not in ("C1tilde", "C2tilde")]
    _check(report.delta == 1, f"condition point must have delta = 1, got {report.delta}")
    for t in rays:
        _check(t.ratio == 1, f"ray term {t.name} must equal 1 at a condition point")
    if m == 0:
        for t in verticals:
            _check(t.ratio == 1, f"toric case: term {t.name} must equal 1")
    elif m == 2:
        curve_names = {f"E{i}" for i in range(1, m + 1)} | {f"F{i}tilde" for i in range(1, m + 1)}
        for t in report.terms:
            if t.name in curve_names:
                _check(t.ratio == 1, f"m=2: curve term {t.name} must equal 1")
    else:  # m >= 3
        for t in verticals:
            _check(t.ratio > 1, f"m>=3: vertical term {t.name} must exceed 1")


def k_polystable(params, angles: Angles) -> Verdict:
    """The main decision: KPolystable iff the bracket vanishes and m != 1.

    Within the ample range the verdict always carries delta and its
    witnesses from the torus route, and every branch cross-checks the
    facts it relies on (bracket sign against the Futaki sign, delta < 1
    off the condition locus and for m = 1, the term patterns at
    condition points).
    """
    model = as_model(params)
    csign = condition_sign(model, angles)
    reason = model.ample_range_violation(angles)
    if reason is not None:
        return Verdict(
            status=OUTSIDE_AMPLE_RANGE,
            condition_sign=csign,
            delta=None,
            witnesses=(),
            notes=(reason,),
        )

    _check(
        futaki_vanishes(model, angles) == csign,
        f"bracket sign {csign} disagrees with the torus-side Futaki sign",
    )
    report = delta_tvariety(model, angles)
    _check(report.delta <= 1, f"delta = {report.delta} > 1 contradicts the necessity bound")

    notes: list[str] = []
    if csign == 0 and model.m != 1:
        _certify_polystable_branch(model.m, report)
        branch = "toric (m=0)" if model.m == 0 else f"m={model.m}"
        notes.append(f"condition holds; {branch} branch hypotheses verified")
        status = KPOLYSTABLE
    elif csign == 0:
        _check(report.delta < 1, "m=1 exclusion requires delta < 1 on the condition locus")
        notes.append("m=1 exclusion: condition holds but delta < 1")
        status = NOT_KPOLYSTABLE
    else:
        _check(report.delta < 1, "delta must be < 1 off the condition locus")
        notes.append(f"bracket sign {csign:+d}; delta < 1")
        status = NOT_KPOLYSTABLE

    return Verdict(
        status=status,
        condition_sign=csign,
        delta=report.delta,
        witnesses=report.witnesses,
        notes=tuple(notes),
        report=report,
    )


@dataclass(frozen=True)
class ConditionBracket:
    """Certified bracketing interval for a condition point with n > 0.

    condition_sign(., (beta1_lo, beta2)) = sign_lo and likewise for the
    upper end; the root lies in [beta1_lo, beta1_hi].  A lucky exact hit
    collapses the interval (sign 0 at both ends).
    """

    beta2: object
    beta1_lo: object
    beta1_hi: object
    sign_lo: int
    sign_hi: int

    @property
    def width(self):
        return self.beta1_hi - self.beta1_lo


DEFAULT_BRACKET_WIDTH = Rat(1, 2**20)


def rational_condition_point(params, s, width=DEFAULT_BRACKET_WIDTH):
    """Rational points on the condition locus.

    n = 0, m >= 1: the locus is rationally parametrized; for 0 < s < 1
    the point beta2 = (3/m)(1 - s^2), beta1 = s beta2 satisfies the
    condition exactly (NotFound when it falls outside the ample range).

    n = 0, m = 0: the locus is the diagonal; returns (s, s).

    n > 0: the locus is not rationally parametrized; ``s`` is taken as
    beta2 and a ConditionBracket of width <= ``width`` around the
    matching beta1 is returned (the bracket function is strictly
    increasing in beta1 on (0, 2/n), so bisection is certified).
    """
    model = as_model(params)
    n, m = model.n, model.m
    s = Rat(s)
    if n == 0 and m == 0:
        if s <= 0:
            raise NotFound(f"need s > 0 for the diagonal point, got {s}")
        return Angles(s, s)
    if n == 0:
        if not 0 < s < 1:
            raise NotFound(f"need 0 < s < 1, got {s}")
        b2 = Rat(3, m) * (1 - s * s)
        b1 = s * b2
        angles = Angles(b1, b2)
        if not model.ample_angle_range(angles):
            raise NotFound(
                f"parametrized point ({b1}, {b2}) is outside the ample range"
            )
        if condition_sign(model, angles) != 0:
            raise InconsistencyError("parametrized point misses the condition locus")
        return angles

    # n > 0: bisection in beta1 at fixed beta2 = s
    b2 = s
    if b2 <= 0 or (n < m and (m - n) * b2 >= 2):
        raise NotFound(f"beta2 = {b2} is outside the ample range")
    rhs = b2 * b2 + Rat(n - m, 3) * b2**3
    peak = Rat(4, 3 * n * n)  # maximum of beta1^2 - (n/3) beta1^3 on [0, 2/n]
    if not 0 < rhs < peak:
        raise NotFound(
            f"no beta1 in (0, 2/{n}) balances beta2 = {b2} (target {rhs} not in (0, {peak}))"
        )

    def g(b1):
        return b1 * b1 - Rat(n, 3) * b1**3 - rhs

    lo, hi = Rat(0), Rat(2, n)
    width = Rat(width)
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = g(mid)
        if v == 0:
            return ConditionBracket(beta2=b2, beta1_lo=mid, beta1_hi=mid, sign_lo=0, sign_hi=0)
        if v < 0:
            lo = mid
        else:
            hi = mid
    return ConditionBracket(
        beta2=b2, beta1_lo=lo, beta1_hi=hi, sign_lo=sign(g(lo)), sign_hi=sign(g(hi))
    )
