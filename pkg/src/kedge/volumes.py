"""Exact volume curves x |-> vol(-K_{S,Delta} - x E) by symbolic chamber sweep.

Within a chamber the Zariski negative support is constant, the support
coefficients are affine in x, the positive part P(x) is an affine family
of classes, and the volume P(x)^2 is an honest quadratic.  The sweep
therefore never samples: it solves the orthogonality system once per
chamber with x as an indeterminate, locates the next wall as the exact
rational root of an affine wall function (P(x).C hitting 0 for a
candidate C, or a support coefficient hitting 0), and determines the
support on the far side of a wall by re-running the active-set step over
first-order jets at the wall (value, slope ordered lexicographically --
exact "x = w + epsilon" arithmetic).

The sweep ends where the quadratic vanishes: that root is the
pseudoeffective threshold tau.  A final quadratic with irrational roots
raises IrrationalThreshold instead of approximating.
"""
from __future__ import annotations

from dataclasses import dataclass

from .linalg import solve_exact
from .picard import (
    Angles,
    CurveId,
    DivisorClass,
    SurfaceModel,
    as_model,
)
from .ratmath import Rat, sqrt_exact
from .zariski import DecompositionError, curve_sort_key


class IrrationalThreshold(ArithmeticError):
    """The pseudoeffective threshold is not a rational number."""


@dataclass(frozen=True)
class Affine(object):
    """c0 + c1*t with exact rational coefficients.

    Also serves as a first-order jet: the comparison operators order
    lexicographically by (c0, c1), i.e. by the sign of c0 + c1*epsilon
    for an infinitesimal epsilon > 0.
    """

    c0: object
    c1: object

    def __post_init__(self):
        object.__setattr__(self, "c0", Rat(self.c0))
        object.__setattr__(self, "c1", Rat(self.c1))

    def __call__(self, x):
        return self.c0 + self.c1 * Rat(x)

    def __add__(self, other: "Affine") -> "Affine":
        return Affine(self.c0 + other.c0, self.c1 + other.c1)

    def __sub__(self, other: "Affine") -> "Affine":
        return Affine(self.c0 - other.c0, self.c1 - other.c1)

    def __neg__(self) -> "Affine":
        return Affine(-self.c0, -self.c1)

    def __mul__(self, t) -> "Affine":
        t = Rat(t)
        return Affine(t * self.c0, t * self.c1)

    __rmul__ = __mul__

    def _key(self):
        return (self.c0, self.c1)

    def __lt__(self, other):
        return self._key() < other._key()

    def __le__(self, other):
        return self._key() <= other._key()

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0

    def root(self):
        if self.c1 == 0:
            raise ZeroDivisionError("constant affine function has no root")
        return -self.c0 / self.c1

    def __repr__(self) -> str:
        return f"Affine({self.c0} + {self.c1} t)"


AFFINE_ZERO = Affine(0, 0)


@dataclass(frozen=True)
class AffineClass:
    """Affine family of divisor classes const + x * slope."""

    const: DivisorClass
    slope: DivisorClass

    def at(self, x) -> DivisorClass:
        return self.const + self.slope.scale(x)

    def pair(self, model: SurfaceModel, cls: DivisorClass) -> Affine:
        return Affine(model.intersect(self.const, cls), model.intersect(self.slope, cls))


@dataclass(frozen=True)
class Chamber:
    """One maximal interval with constant Zariski support.

    ``coefficients`` are the affine support coefficients a_i(x) with
    N(x) = sum a_i(x) C_i; ``positive`` is the affine positive part.
    ``q0 + q1 x + q2 x^2`` is vol = P(x)^2.
    """

    x_lo: object
    x_hi: object
    support: tuple  # CurveIds whose coefficient is not identically zero
    coefficients: tuple  # (CurveId, Affine) pairs, canonical curve order
    positive: AffineClass
    q0: object
    q1: object
    q2: object

    def volume_at(self, x):
        x = Rat(x)
        return self.q0 + self.q1 * x + self.q2 * x * x


@dataclass(frozen=True)
class QuadraticPiece:
    """Public piece of a volume curve: interval, quadratic, support."""

    x_lo: object
    x_hi: object
    q0: object
    q1: object
    q2: object
    negative_support: tuple  # CurveIds

    def value(self, x):
        x = Rat(x)
        return self.q0 + self.q1 * x + self.q2 * x * x

    def integral(self):
        """Exact integral of the quadratic over [x_lo, x_hi]."""
        lo, hi = self.x_lo, self.x_hi
        anti = lambda x: self.q0 * x + self.q1 * x * x / 2 + self.q2 * x * x * x / 3
        return anti(hi) - anti(lo)


@dataclass(frozen=True)
class PiecewiseQuadratic:
    """Exact chambered representation of x |-> vol(-K_Delta - x E) on [0, tau]."""

    pieces: tuple  # QuadraticPiece, ordered, partitioning [0, tau]

    @property
    def x_lo(self):
        return self.pieces[0].x_lo

    @property
    def x_hi(self):
        return self.pieces[-1].x_hi

    @property
    def tau(self):
        return self.x_hi

    def value(self, x):
        x = Rat(x)
        if x < self.x_lo or x > self.x_hi:
            raise ValueError(f"{x} outside [{self.x_lo}, {self.x_hi}]")
        for piece in self.pieces:
            if x <= piece.x_hi:
                return piece.value(x)
        raise AssertionError("unreachable: pieces partition the interval")

    def integral(self):
        total = Rat(0)
        for piece in self.pieces:
            total = total + piece.integral()
        return total


def _support_just_after(model: SurfaceModel, dclass: AffineClass, w) -> list:
    """Zariski support of D(x) for x infinitesimally right of w.

    Runs the active-set iteration with every quantity replaced by its
    first-order jet at w, compared lexicographically; this is exact
    arithmetic at x = w + epsilon.
    """
    jet = AffineClass(dclass.at(w), dclass.slope)
    candidates = model.candidate_curves()
    support: list[CurveId] = []
    for _ in range(4 * len(candidates) + 8):
        classes = [model.class_of(c) for c in support]
        gram = model.gram_matrix(classes)
        rhs = [jet.pair(model, cls) for cls in classes]
        coeffs = solve_exact(gram, rhs)
        if any(a < AFFINE_ZERO for a in coeffs):
            support = [c for c, a in zip(support, coeffs) if not a < AFFINE_ZERO]
            continue
        res_const, res_slope = jet.const, jet.slope
        for cls, a in zip(classes, coeffs):
            res_const = res_const - cls.scale(a.c0)
            res_slope = res_slope - cls.scale(a.c1)
        residual = AffineClass(res_const, res_slope)
        violated = [
            c
            for c in candidates
            if c not in support and residual.pair(model, model.class_of(c)) < AFFINE_ZERO
        ]
        if not violated:
            return support
        support.extend(violated)
    raise DecompositionError(f"jet active-set did not stabilize at x = {w}+")


def _solve_chamber(model: SurfaceModel, dclass: AffineClass, support):
    """Affine coefficients and positive part for a fixed support."""
    classes = [model.class_of(c) for c in support]
    gram = model.gram_matrix(classes)
    rhs = [dclass.pair(model, cls) for cls in classes]
    coeffs = solve_exact(gram, rhs)
    p_const, p_slope = dclass.const, dclass.slope
    for cls, a in zip(classes, coeffs):
        p_const = p_const - cls.scale(a.c0)
        p_slope = p_slope - cls.scale(a.c1)
    return coeffs, AffineClass(p_const, p_slope)


def _smallest_root_after(q0, q1, q2, x0, context: str):
    """Least root of q0 + q1 x + q2 x^2 strictly right of x0 (exact).

    Raises IrrationalThreshold when the root exists but is irrational.
    """
    if q2 == 0:
        if q1 == 0:
            raise DecompositionError(f"volume curve constant and positive ({context})")
        r = -q0 / q1
        if r <= x0:
            raise DecompositionError(f"volume root {r} not beyond {x0} ({context})")
        return r
    disc = q1 * q1 - 4 * q2 * q0
    if disc < 0:
        raise DecompositionError(f"volume quadratic has no real root ({context})")
    s = sqrt_exact(disc)
    if s is None:
        raise IrrationalThreshold(
            f"threshold is an irrational root of {q0} + {q1} x + {q2} x^2 ({context})"
        )
    roots = sorted({(-q1 - s) / (2 * q2), (-q1 + s) / (2 * q2)})
    for r in roots:
        if r > x0:
            return r
    raise DecompositionError(f"no volume root beyond {x0} ({context})")


def volume_sweep(E: CurveId, params, angles: Angles):
    """Chamber decomposition of x |-> vol(-K_Delta - x E) with full detail.

    Returns (chambers, tau).  The public face is ``volume_curve``; this
    keeps the affine support coefficients and positive parts for
    inspection.
    """
    model = as_model(params)
    model.ensure_ample(angles)
    direction = model.class_of(E)
    dclass = AffineClass(model.log_anticanonical(angles), -direction)
    context = f"E={E.label}, n={model.n}, m={model.m}"

    chambers: list[Chamber] = []
    x0 = Rat(0)
    support = _support_just_after(model, dclass, x0)
    guard = 0
    while True:
        guard += 1
        if guard > 16 * (2 * model.m + 2) + 64:
            raise DecompositionError(f"chamber sweep did not terminate ({context})")
        coeffs, positive = _solve_chamber(model, dclass, support)
        q2 = model.self_intersection(positive.slope)
        q1 = 2 * model.intersect(positive.const, positive.slope)
        q0 = model.self_intersection(positive.const)

        walls = []
        for c in model.candidate_curves():
            if c in support:
                continue
            f = positive.pair(model, model.class_of(c))
            if f.c1 < 0 and f.root() > x0:
                walls.append(f.root())
        for a in coeffs:
            if a.c1 < 0 and a.root() > x0:
                walls.append(a.root())
        wall = min(walls) if walls else None

        def emit(x_hi):
            named = tuple(
                sorted(
                    ((c, a) for c, a in zip(support, coeffs) if not a.is_zero()),
                    key=lambda item: curve_sort_key(item[0]),
                )
            )
            chambers.append(
                Chamber(
                    x_lo=x0,
                    x_hi=x_hi,
                    support=tuple(c for c, _ in named),
                    coefficients=named,
                    positive=positive,
                    q0=q0,
                    q1=q1,
                    q2=q2,
                )
            )

        if wall is not None:
            vol_at_wall = q0 + q1 * wall + q2 * wall * wall
            if vol_at_wall > 0:
                emit(wall)
                support = _support_just_after(model, dclass, wall)
                x0 = wall
                continue
            if vol_at_wall == 0:
                emit(wall)
                return chambers, wall
        tau = _smallest_root_after(q0, q1, q2, x0, context)
        if wall is not None and tau > wall:
            raise DecompositionError(f"volume root {tau} beyond next wall {wall} ({context})")
        emit(tau)
        return chambers, tau


def normalize_pieces(raw) -> tuple:
    """Canonical piece list: drop empty intervals, merge neighbours with
    the same quadratic and support (degenerate chamber walls vanish)."""
    pieces: list[QuadraticPiece] = []
    for piece in raw:
        if piece.x_lo == piece.x_hi:
            continue
        if pieces:
            prev = pieces[-1]
            same = (
                prev.x_hi == piece.x_lo
                and (prev.q0, prev.q1, prev.q2) == (piece.q0, piece.q1, piece.q2)
                and prev.negative_support == piece.negative_support
            )
            if same:
                pieces[-1] = QuadraticPiece(
                    x_lo=prev.x_lo,
                    x_hi=piece.x_hi,
                    q0=prev.q0,
                    q1=prev.q1,
                    q2=prev.q2,
                    negative_support=prev.negative_support,
                )
                continue
        pieces.append(piece)
    return tuple(pieces)


def _normalize(chambers) -> tuple:
    return normalize_pieces(
        QuadraticPiece(
            x_lo=ch.x_lo,
            x_hi=ch.x_hi,
            q0=ch.q0,
            q1=ch.q1,
            q2=ch.q2,
            negative_support=ch.support,
        )
        for ch in chambers
    )


def _certify_curve(model: SurfaceModel, angles: Angles, curve: PiecewiseQuadratic):
    """Cheap exact post-conditions: continuity, endpoints, monotonicity."""
    pieces = curve.pieces
    if not pieces or pieces[0].x_lo != 0:
        raise DecompositionError("volume curve must start at x = 0")
    minus_k = model.log_anticanonical(angles)
    if pieces[0].q0 != model.self_intersection(minus_k):
        raise DecompositionError("volume at x = 0 must equal (-K_Delta)^2")
    if pieces[-1].value(pieces[-1].x_hi) != 0:
        raise DecompositionError("volume must vanish at the threshold")
    for left, right in zip(pieces, pieces[1:]):
        if left.x_hi != right.x_lo:
            raise DecompositionError("pieces must partition the interval")
        if left.value(left.x_hi) != right.value(right.x_lo):
            raise DecompositionError("volume curve must be continuous across walls")
    for piece in pieces:
        # derivative q1 + 2 q2 x is affine: checking both endpoints
        # bounds it on the whole piece
        for x in (piece.x_lo, piece.x_hi):
            if piece.q1 + 2 * piece.q2 * x > 0:
                raise DecompositionError("volume curve must be nonincreasing")


def volume_curve(E: CurveId, params, angles: Angles) -> PiecewiseQuadratic:
    """Exact piecewise-quadratic x |-> vol(-K_Delta - x E) on [0, tau]."""
    model = as_model(params)
    chambers, _tau = volume_sweep(E, model, angles)
    curve = PiecewiseQuadratic(pieces=_normalize(chambers))
    _certify_curve(model, angles, curve)
    return curve


def threshold(E: CurveId, params, angles: Angles):
    """Pseudoeffective threshold tau: sup{x : -K_Delta - x E is big}."""
    _chambers, tau = volume_sweep(E, params, angles)
    return tau


def expected_vanishing_order(E: CurveId, params, angles: Angles):
    """S(E) = (1/vol(-K_Delta)) * integral_0^tau vol(-K_Delta - x E) dx."""
    model = as_model(params)
    curve = volume_curve(E, model, angles)
    return curve.integral() / curve.value(Rat(0))


def log_discrepancy(E: CurveId, params, angles: Angles):
    """A(E) = 1 minus the boundary coefficient along E.

    beta1 for C1tilde, beta2 for C2tilde, 1 for curves not in the
    boundary.  PullbackC2 is only a prime divisor when m = 0 (it is then
    the second boundary curve itself).
    """
    model = as_model(params)
    if E.kind == "C1tilde":
        return angles.beta1
    if E.kind == "C2tilde":
        return angles.beta2
    if E.kind == "PullbackC2":
        if model.m != 0:
            raise ValueError("PullbackC2 is not a prime divisor once points are blown up")
        return angles.beta2
    return Rat(1)
