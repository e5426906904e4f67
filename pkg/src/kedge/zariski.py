"""Zariski decomposition against the family's candidate negative curves.

On this surface every irreducible curve of negative self-intersection is
one of C~1, C~2, E_i, F~i, so the negative part of any pseudoeffective
class is supported there.  ``zariski_decompose`` runs an active-set
iteration (grow the support on candidates met negatively, drop curves
whose solved coefficient goes negative) and certifies the result against
the three defining conditions on every call;
``zariski_decompose_bruteforce`` enumerates all candidate subsets and is
kept as an independent oracle.
"""
from __future__ import annotations

from dataclasses import dataclass

from .linalg import SingularMatrixError, is_negative_definite_matrix, solve_exact
from .picard import CurveId, DivisorClass, SurfaceModel
from .ratmath import Rat


class NotPseudoeffective(ArithmeticError):
    """No Zariski decomposition exists within the candidate curve set."""


class DecompositionError(ArithmeticError):
    """Internal certification of a decomposition failed (should not happen)."""


_KIND_ORDER = {"C1tilde": 0, "C2tilde": 1, "Ei": 2, "FiTilde": 3}


def curve_sort_key(cid: CurveId):
    return (_KIND_ORDER[cid.kind], cid.index or 0)


@dataclass(frozen=True)
class ZariskiDecomposition:
    """D = P + N with P nef, P.N_i = 0, and negative-definite support."""

    positive: DivisorClass
    negative: tuple  # ordered tuple of (CurveId, Rat coefficient > 0)

    @property
    def support(self) -> tuple:
        return tuple(cid for cid, _ in self.negative)

    def negative_class(self, model: SurfaceModel) -> DivisorClass:
        acc = model.zero()
        for cid, coeff in self.negative:
            acc = acc + model.class_of(cid).scale(coeff)
        return acc


def is_negative_definite(model: SurfaceModel, curves) -> bool:
    """Whether the Gram matrix of the given curves is negative definite."""
    classes = [model.class_of(c) for c in curves]
    return is_negative_definite_matrix(model.gram_matrix(classes))


def _solve_support(model: SurfaceModel, d: DivisorClass, support):
    """Coefficients a_i with (D - sum a_i C_i) . C_j = 0 for all j in support."""
    classes = [model.class_of(c) for c in support]
    gram = model.gram_matrix(classes)
    rhs = [model.intersect(d, cls) for cls in classes]
    return solve_exact(gram, rhs), classes


def _certify(model: SurfaceModel, d: DivisorClass, zd: ZariskiDecomposition):
    """Check the three defining conditions; raise DecompositionError if violated."""
    p = zd.positive
    if not model.is_nef(p):
        raise DecompositionError(f"positive part not nef: {p}")
    for cid, coeff in zd.negative:
        if coeff <= 0:
            raise DecompositionError(f"nonpositive coefficient {coeff} on {cid.label}")
        if model.intersect(p, model.class_of(cid)) != 0:
            raise DecompositionError(f"positive part not orthogonal to {cid.label}")
    if zd.negative and not is_negative_definite(model, zd.support):
        raise DecompositionError("support Gram matrix not negative definite")
    if p + zd.negative_class(model) != d:
        raise DecompositionError("P + N does not reconstruct the input class")


def zariski_decompose(model: SurfaceModel, d: DivisorClass) -> ZariskiDecomposition:
    """Zariski decomposition of ``d``, or NotPseudoeffective.

    Monotone support growth: starting from the empty support, solve the
    orthogonality system on the current support and add every candidate
    the residual still meets negatively, until stable.  For a
    pseudoeffective class the grown support stays inside the support of
    the true negative part, so the system is never singular and the
    coefficients never go negative; either event therefore certifies
    that the class is not pseudoeffective (the brute-force oracle
    cross-checks this reasoning in the test suite).  Every returned
    decomposition is certified against the three defining conditions.
    """
    candidates = model.candidate_curves()
    support: list[CurveId] = []
    # The support grows strictly until the final pass, so the candidate
    # count bounds the iterations; the cap only guards against bugs.
    for _ in range(len(candidates) + 2):
        try:
            coeffs, classes = _solve_support(model, d, support)
        except SingularMatrixError:
            raise NotPseudoeffective(
                f"{d}: support system became singular, which cannot happen "
                "for a pseudoeffective class"
            ) from None
        if any(x < 0 for x in coeffs):
            raise NotPseudoeffective(
                f"{d}: orthogonality forces a negative coefficient, which "
                "cannot happen for a pseudoeffective class"
            )
        residual = d
        for cls, x in zip(classes, coeffs):
            residual = residual - cls.scale(x)
        violated = [
            c
            for c in candidates
            if c not in support and model.intersect(residual, model.class_of(c)) < 0
        ]
        if violated:
            support.extend(violated)
            continue
        if residual.a < 0:
            # Residual meets the (nef, moving) generic fiber negatively:
            # no effective class can, so d is not pseudoeffective.
            raise NotPseudoeffective(f"{d} pairs negatively with the generic fiber")
        negative = tuple(
            sorted(
                ((cid, x) for cid, x in zip(support, coeffs) if x != 0),
                key=lambda item: curve_sort_key(item[0]),
            )
        )
        zd = ZariskiDecomposition(positive=residual, negative=negative)
        _certify(model, d, zd)
        return zd
    raise DecompositionError(f"support iteration did not stabilize for {d}")


def zariski_decompose_bruteforce(model: SurfaceModel, d: DivisorClass) -> ZariskiDecomposition:
    """Oracle: try every subset of the candidate curves.

    A subset yields a valid decomposition when the orthogonality system
    is solvable with nonnegative coefficients, the resulting P is nef,
    and the positively-weighted support has negative-definite Gram
    matrix.  All passing subsets must agree after dropping zero
    coefficients; the unique decomposition is returned.
    """
    candidates = model.candidate_curves()
    k = len(candidates)
    found: ZariskiDecomposition | None = None
    for mask in range(1 << k):
        subset = [candidates[i] for i in range(k) if mask >> i & 1]
        try:
            coeffs, classes = _solve_support(model, d, subset)
        except SingularMatrixError:
            continue
        if any(x < 0 for x in coeffs):
            continue
        p = d
        for cls, x in zip(classes, coeffs):
            p = p - cls.scale(x)
        if not model.is_nef(p):
            continue
        negative = tuple(
            sorted(
                ((cid, x) for cid, x in zip(subset, coeffs) if x != 0),
                key=lambda item: curve_sort_key(item[0]),
            )
        )
        if negative and not is_negative_definite(model, [cid for cid, _ in negative]):
            continue
        zd = ZariskiDecomposition(positive=p, negative=negative)
        if found is not None and (found.positive != zd.positive or found.negative != zd.negative):
            raise DecompositionError(
                f"two distinct decompositions found for {d}: {found} vs {zd}"
            )
        found = zd
    if found is None:
        raise NotPseudoeffective(f"no candidate subset decomposes {d}")
    return found


def volume(model: SurfaceModel, d: DivisorClass):
    """vol(D) = P^2 for the Zariski positive part (= D^2 when D is nef)."""
    if model.is_nef(d):
        return model.self_intersection(d)
    zd = zariski_decompose(model, d)
    return model.self_intersection(zd.positive)
