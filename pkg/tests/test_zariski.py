"""Zariski decompositions: incremental route, brute-force oracle, volumes."""

import pytest

from conftest import negative_definite_families
from kedge.picard import (
    Angles,
    C1TILDE,
    C2TILDE,
    DivisorClass,
    Ei,
    FiTilde,
    GENERIC_FIBER,
    SurfaceParams,
    as_model,
)
from kedge.ratmath import rat
from kedge.sampling import sample_angles, sample_divisor_class, sample_surface
from kedge.zariski import (
    NotPseudoeffective,
    ZariskiDecomposition,
    is_negative_definite,
    volume,
    zariski_decompose,
    zariski_decompose_bruteforce,
)


def shifted_anticanonical(n, m, beta1, beta2, curve, x):
    """-K_{Delta} - x * curve as a DivisorClass."""
    model = as_model((n, m))
    angles = Angles(rat(*beta1) if isinstance(beta1, tuple) else beta1,
                    rat(*beta2) if isinstance(beta2, tuple) else beta2)
    return model, model.log_anticanonical(angles) - model.class_of(curve).scale(x)


class TestNegativeDefinite:
    def test_fiber_transforms_are_minus_identity(self):
        model = as_model((3, 4))
        curves = [FiTilde(i) for i in range(1, 5)]
        assert is_negative_definite(model, curves)

    def test_section_plus_fiber_degenerates_at_n1(self):
        # Gram [[-1, 1], [1, -1]] is singular, so not negative definite.
        assert not is_negative_definite(as_model((1, 1)), [C1TILDE, FiTilde(1)])
        assert is_negative_definite(as_model((2, 1)), [C1TILDE, FiTilde(1)])

    def test_both_sections_and_fiber(self):
        assert is_negative_definite(as_model((2, 3)), [C1TILDE, C2TILDE, FiTilde(1)])

    @pytest.mark.parametrize("family,builder,constraint,violations",
                             negative_definite_families())
    def test_families_under_constraints(self, family, builder, constraint, violations):
        hits = 0
        for n in range(0, 5):
            for m in range(1, 5):
                if not constraint(n, m):
                    continue
                hits += 1
                model = as_model((n, m))
                assert is_negative_definite(model, builder(n, m)), (family, n, m)
        assert hits > 0
        for n, m in violations:
            model = as_model((n, m))
            assert not is_negative_definite(model, builder(n, m)), (family, n, m)


class TestDecompose:
    def test_nef_class_is_its_own_positive_part(self):
        model = as_model((2, 2))
        d = model.log_anticanonical(Angles(rat(1, 2), rat(1, 2)))
        zd = zariski_decompose(model, d)
        assert zd.negative == ()
        assert zd.positive == d
        assert zariski_decompose_bruteforce(model, d) == zd

    def test_section_sweep_negative_parts(self):
        # Past the first wall, -K - x C1tilde picks up all fiber transforms
        # with coefficient (x - beta1), and the C2tilde sweep dually picks
        # up all exceptional curves with coefficient (x - beta2).
        model, d = shifted_anticanonical(1, 2, (1, 2), (2, 3), C1TILDE, rat(3, 4))
        zd = zariski_decompose(model, d)
        assert zd.negative == (
            (FiTilde(1), rat(1, 4)),
            (FiTilde(2), rat(1, 4)),
        )
        model, d = shifted_anticanonical(1, 2, (1, 2), (2, 3), C2TILDE, rat(5, 6))
        zd = zariski_decompose(model, d)
        assert zd.negative == ((Ei(1), rat(1, 6)), (Ei(2), rat(1, 6)))

    def test_exceptional_sweep_third_chamber(self):
        # n=2, m=1, angles (1/2, 1/2), x = 9/4 in (2-(n-1)beta1, 2]:
        # N = (beta1 - (2-x)/(n-1)) C1tilde + ((n x - 2)/(n-1)) F1tilde.
        model, d = shifted_anticanonical(2, 1, (1, 2), (1, 2), Ei(1), rat(9, 4))
        zd = zariski_decompose(model, d)
        assert zd.negative == ((C1TILDE, rat(3, 4)), (FiTilde(1), rat(5, 2)))

    def test_exceptional_sweep_last_chamber_n0(self):
        # n=0, m=2, angles (1/4, 1/2), x = 9/4 in (2, 2+beta1]:
        # N = (beta2+x-2) C2tilde + (x-beta1) F1tilde + (x-2) E2.
        model, d = shifted_anticanonical(0, 2, (1, 4), (1, 2), Ei(1), rat(9, 4))
        zd = zariski_decompose(model, d)
        assert zd.negative == (
            (C2TILDE, rat(3, 4)),
            (Ei(2), rat(1, 4)),
            (FiTilde(1), rat(2)),
        )

    def test_support_property(self):
        zd = ZariskiDecomposition(
            positive=DivisorClass(1, 1, (0,)),
            negative=((Ei(1), rat(1, 2)),),
        )
        assert zd.support == (Ei(1),)
        model = as_model((0, 1))
        assert zd.negative_class(model) == DivisorClass(0, 0, (rat(-1, 2),))

    def test_not_pseudoeffective(self):
        model = as_model((2, 1))
        minus_fiber = DivisorClass(0, -1, (0,))
        with pytest.raises(NotPseudoeffective):
            zariski_decompose(model, minus_fiber)
        with pytest.raises(NotPseudoeffective):
            zariski_decompose_bruteforce(model, minus_fiber)
        # A class meeting the generic fiber negatively can never be
        # pseudoeffective, whatever the rest looks like.
        with pytest.raises(NotPseudoeffective):
            zariski_decompose(model, DivisorClass(-1, rat(-1, 2), (0,)))

    def test_fiber_minus_too_much_exceptional(self):
        # F - 2 E_1 = F1tilde - E_1 is not pseudoeffective.
        model = as_model((2, 1))
        with pytest.raises(NotPseudoeffective):
            zariski_decompose(model, DivisorClass(0, 1, (2,)))
        with pytest.raises(NotPseudoeffective):
            zariski_decompose_bruteforce(model, DivisorClass(0, 1, (2,)))

    def test_oracle_agreement_random(self, rng):
        agreements = 0
        for _ in range(60):
            model = as_model(sample_surface(rng, n_max=4, m_max=3))
            d = sample_divisor_class(rng, model)
            try:
                fast = zariski_decompose(model, d)
            except NotPseudoeffective:
                fast = None
            try:
                slow = zariski_decompose_bruteforce(model, d)
            except NotPseudoeffective:
                slow = None
            assert fast == slow, (model.params, d)
            agreements += 1
        assert agreements == 60

    def test_postconditions_on_random_effective_classes(self, rng):
        for _ in range(60):
            model = as_model(sample_surface(rng, n_max=4, m_max=4))
            d = sample_divisor_class(rng, model)
            try:
                zd = zariski_decompose(model, d)
            except NotPseudoeffective:
                continue
            assert model.is_nef(zd.positive)
            for cid, coeff in zd.negative:
                assert coeff > 0
                assert model.intersect(zd.positive, model.class_of(cid)) == 0
            if zd.negative:
                assert is_negative_definite(model, zd.support)
            assert zd.positive + zd.negative_class(model) == d


class TestVolume:
    def test_anticanonical_volume(self):
        model = as_model((0, 2))
        d = model.log_anticanonical(Angles(rat(1, 2), rat(1, 2)))
        assert volume(model, d) == rat(7, 2)

    def test_volume_vanishes_at_threshold(self):
        model, d = shifted_anticanonical(0, 2, (1, 2), (1, 2), C1TILDE, rat(1))
        assert volume(model, d) == 0

    def test_volume_drops_after_wall(self):
        model, d = shifted_anticanonical(0, 2, (1, 2), (1, 2), C1TILDE, rat(3, 4))
        # (beta1+beta2-x)(4-(m-n)(x-beta1+beta2)) at x=3/4: (1/4)(4-2(3/4)) = 5/8.
        assert volume(model, d) == rat(5, 8)

    def test_monotone_under_effective_additions(self, rng):
        for _ in range(40):
            params = sample_surface(rng, n_max=3, m_max=3)
            model = as_model(params)
            d = model.log_anticanonical(sample_angles(rng, params))
            base = volume(model, d)
            bigger = d + model.class_of(GENERIC_FIBER).scale(rat(1, 3))
            assert volume(model, bigger) >= base
            for curve in model.candidate_curves():
                extra = d + model.class_of(curve).scale(rat(1, 4))
                assert volume(model, extra) >= base


def test_decomposition_unavailable_index():
    model = as_model((1, 1))
    with pytest.raises(ValueError):
        zariski_decompose(model, DivisorClass(1, 1, (0, 0)))
