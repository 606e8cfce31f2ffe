"""Tests for the frame model: Gram, neighbors, tightness, bounds, reconstruction."""

import math

import numpy as np
import pytest

from framecore import (
    UnitVectorSystem,
    bounds_card,
    circular_frame,
    double,
    frame_operator,
    gram,
    is_equiangular,
    is_etf,
    mub_r2,
    neighbor_count_report,
    neighbors,
    reconstruct,
    simplex_etf,
    six_in_r4,
    spans,
    spectral_data,
    tightness,
    welch_bound,
)
from framecore.errors import NormError, NotAFrame, ShapeError
from helpers import random_unit_system, tripod_example


class TestUnitVectorSystem:
    def test_rejects_far_from_unit(self):
        with pytest.raises(NormError):
            UnitVectorSystem.from_vectors([[2.0, 0.0]])

    def test_renormalizes_close_rows_with_warning(self):
        sys_ = UnitVectorSystem.from_vectors([[1.0 + 5e-7, 0.0], [0.0, 1.0]])
        assert sys_.warnings
        assert np.allclose(np.linalg.norm(sys_.vectors, axis=1), 1.0, atol=1e-15)

    def test_rejects_empty(self):
        with pytest.raises(ShapeError):
            UnitVectorSystem.from_vectors(np.zeros((0, 3)))

    def test_restrict_keeps_labels(self):
        sys_ = six_in_r4().restrict([1, 3])
        assert sys_.labels == ("x2", "x4")
        assert sys_.size == 2

    def test_immutability(self):
        sys_ = mub_r2()
        with pytest.raises(ValueError):
            sys_.vectors[0, 0] = 5.0

    def test_restrict_rejects_bad_indices(self):
        with pytest.raises(ShapeError):
            mub_r2().restrict([0, 9])
        with pytest.raises(ShapeError):
            mub_r2().restrict([])

    def test_neighbors_rejects_bad_level(self):
        with pytest.raises(ValueError):
            neighbors(mub_r2(), 0, 1.5)


class TestGram:
    def test_orthonormal_basis(self):
        gm = gram(UnitVectorSystem.from_vectors(np.eye(3)))
        assert np.allclose(gm.entries, np.eye(3))
        assert gm.coherence == 0.0

    def test_six_vector_frame(self):
        gm = gram(six_in_r4())
        off = np.abs(gm.entries[~np.eye(6, dtype=bool)])
        assert np.max(np.abs(off - 1.0 / 3.0)) <= 1e-12
        assert abs(gm.coherence - 1.0 / 3.0) <= 1e-12

    def test_circular_five(self):
        gm = gram(circular_frame(5))
        assert abs(gm.coherence - math.cos(math.pi / 5.0)) <= 1e-12


class TestNeighbors:
    def test_tripod_example(self):
        nb = neighbors(tripod_example(0.5), 0, 0.5)
        assert nb.indices == (1, 2, 3)
        assert nb.signs == (1.0, 1.0, 1.0)

    def test_orthonormal_basis_at_zero(self):
        onb = UnitVectorSystem.from_vectors(np.eye(4))
        for i in range(4):
            nb = neighbors(onb, i, 0.0)
            assert set(nb.indices) == set(range(4)) - {i}

    def test_six_vector_equiangular_full_sets(self):
        six = six_in_r4()
        nb = neighbors(six, 0, 1.0 / 3.0)
        assert nb.indices == (1, 2, 3, 4, 5)


class TestFrameOperator:
    def test_orthonormal_basis(self):
        S = frame_operator(UnitVectorSystem.from_vectors(np.eye(5)))
        assert np.allclose(S, np.eye(5))

    def test_six_vector_frame(self):
        # direct summation of rank-one terms as the reference
        V = six_in_r4().vectors
        ref = sum(np.outer(r, r) for r in V)
        S = frame_operator(six_in_r4())
        assert np.allclose(S, ref, atol=1e-15)
        assert np.allclose(S, np.diag([2.0, 4 / 3, 4 / 3, 4 / 3]), atol=1e-12)

    def test_circular_five_is_multiple_of_identity(self):
        S = frame_operator(circular_frame(5))
        assert np.max(np.abs(S - 2.5 * np.eye(2))) <= 1e-12

    def test_trace_equals_m(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            m = int(rng.integers(1, 12))
            n = int(rng.integers(1, 7))
            sys_ = random_unit_system(rng, m, n)
            assert abs(np.trace(frame_operator(sys_)) - m) <= 1e-8 * m


class TestSpans:
    def test_six_vector_drop_each_single(self):
        six = six_in_r4()
        for j in range(6):
            assert spans(six, omit={j})

    def test_six_vector_drop_first_two(self):
        assert not spans(six_in_r4(), omit={0, 1})

    def test_orthonormal_basis_drop_one(self):
        onb = UnitVectorSystem.from_vectors(np.eye(3))
        assert spans(onb)
        assert not spans(onb, omit={0})


class TestTightness:
    def test_orthonormal_basis_is_parseval(self):
        v = tightness(UnitVectorSystem.from_vectors(np.eye(3)))
        assert v.kind == "parseval"
        assert v.bound == 1.0

    def test_circular_five(self):
        v = tightness(circular_frame(5))
        assert v.kind == "tight"
        assert abs(v.bound - 2.5) <= 1e-12

    def test_six_vector_frame_not_tight(self):
        assert tightness(six_in_r4()).kind == "not_tight"

    def test_tight_bound_is_m_over_n(self):
        for sys_ in (circular_frame(7), mub_r2(), simplex_etf(4), double(mub_r2())):
            v = tightness(sys_)
            assert v.tight
            assert abs(v.bound - sys_.size / sys_.dim) <= 1e-8


class TestEquiangular:
    def test_six_vector_frame(self):
        flag, angle = is_equiangular(six_in_r4())
        assert flag and abs(angle - 1.0 / 3.0) <= 1e-12

    def test_orthonormal_basis(self):
        flag, angle = is_equiangular(UnitVectorSystem.from_vectors(np.eye(3)))
        assert flag and angle == 0.0

    def test_basis_plus_diagonal_is_not(self):
        t = np.ones(3) / np.sqrt(3.0)
        sys_ = UnitVectorSystem.from_vectors([[1, 0, 0], [0, 1, 0], [0, 0, 1], list(t)])
        flag, angle = is_equiangular(sys_)
        assert not flag and angle is None


class TestEtf:
    def test_simplex(self):
        assert is_etf(simplex_etf(3))

    def test_route_disagreement_raises(self):
        # nudge one simplex vector so tightness is lost at eq_abs while the
        # system stays equiangular and at the Welch value within 1e-7: the
        # structural and Welch-equality routes then disagree
        from framecore.errors import InconsistentVerdict

        V = simplex_etf(3).vectors.copy()
        w = np.array([1.0, 0.0, 0.0])
        w = w - (w @ V[0]) * V[0]
        w = w / np.linalg.norm(w)
        V[0] = V[0] + 3e-8 * w
        V[0] = V[0] / np.linalg.norm(V[0])
        boundary = UnitVectorSystem.from_vectors(V)
        assert not tightness(boundary).tight
        assert is_equiangular(boundary)[0]
        with pytest.raises(InconsistentVerdict):
            is_etf(boundary)

    def test_six_vector_frame_is_not(self):
        assert not is_etf(six_in_r4())

    def test_orthonormal_basis_degenerate_case(self):
        assert is_etf(UnitVectorSystem.from_vectors(np.eye(4)))


class TestBoundsCard:
    def test_welch_six_four(self):
        card = bounds_card(six_in_r4())
        assert abs(card.welch - math.sqrt(2.0 / 20.0)) <= 1e-12
        assert not card.meets_welch

    def test_welch_four_three(self):
        card = bounds_card(simplex_etf(3))
        assert abs(card.welch - 1.0 / 3.0) <= 1e-12
        assert card.meets_welch

    def test_dimension_three_constants(self):
        card = bounds_card(random_unit_system(np.random.default_rng(0), 7, 3))
        assert card.gerzon_max_m == 6
        assert abs(card.orthoplex - 0.5773502691896258) <= 1e-12
        assert card.exceeds_gerzon

    def test_welch_inapplicable_when_m_le_n(self):
        card = bounds_card(UnitVectorSystem.from_vectors(np.eye(3)))
        assert card.welch is None and card.meets_welch is None


class TestReconstruct:
    def test_orthonormal_basis(self):
        onb = UnitVectorSystem.from_vectors(np.eye(3))
        t = np.array([1.0, -2.0, 0.5])
        assert np.allclose(reconstruct(onb, t), t, atol=1e-12)

    def test_circular_five_tight_route(self):
        c5 = circular_frame(5)
        t = np.array([1.0, 0.0])
        rec = reconstruct(c5, t)
        assert np.linalg.norm(rec - t) <= 1e-7
        # the tight route is (2/5) sum <t, x_i> x_i
        V = c5.vectors
        manual = (2.0 / 5.0) * (V @ t) @ V
        assert np.allclose(rec, manual, atol=1e-12)

    def test_six_vector_frame_random_target(self):
        rng = np.random.default_rng(123)
        t = rng.standard_normal(4)
        rec = reconstruct(six_in_r4(), t)
        assert np.linalg.norm(rec - t) <= 1e-7 * np.linalg.norm(t)

    def test_rejects_nonspanning(self):
        pair = UnitVectorSystem.from_vectors(np.eye(3)[:2])
        with pytest.raises(NotAFrame):
            reconstruct(pair, np.ones(3))

    def test_identity_on_seeded_spanning_systems(self):
        rng = np.random.default_rng(77)
        for _ in range(25):
            n = int(rng.integers(1, 6))
            m = int(rng.integers(n, n + 6))
            sys_ = random_unit_system(rng, m, n)
            if not spans(sys_):
                continue
            t = rng.standard_normal(n)
            rec = reconstruct(sys_, t)
            assert np.linalg.norm(rec - t) <= 1e-7 * max(np.linalg.norm(t), 1.0)


class TestNeighborCountReport:
    def test_six_vector_frame(self):
        rep = neighbor_count_report(six_in_r4())
        assert rep.counts == (5, 5, 5, 5, 5, 5)
        assert all(status == "SKIP" for _, status, _ in rep.checks)

    def test_orthonormal_basis(self):
        rep = neighbor_count_report(UnitVectorSystem.from_vectors(np.eye(3)))
        assert rep.counts == (2, 2, 2)

    def test_mub_counts_and_parity(self):
        rep = neighbor_count_report(mub_r2())
        assert rep.counts == (2, 2, 2, 2)
        names = {name: status for name, status, _ in rep.checks}
        assert names["max_count_le_m_minus_2"] == "PASS"

    def test_circular_seven_odd_parity(self):
        rep = neighbor_count_report(circular_frame(7))
        names = {name: status for name, status, _ in rep.checks}
        assert names["max_count_le_m_minus_2"] == "PASS"
        assert names["odd_m_some_count_le_m_minus_3"] == "PASS"


class TestInvariants:
    def test_coherence_range_and_invariance(self):
        rng = np.random.default_rng(2024)
        for _ in range(20):
            m = int(rng.integers(2, 9))
            n = int(rng.integers(1, 6))
            sys_ = random_unit_system(rng, m, n)
            alpha = gram(sys_).coherence
            assert 0.0 <= alpha <= 1.0 + 1e-15
            perm = rng.permutation(m)
            assert abs(gram(UnitVectorSystem.from_vectors(sys_.vectors[perm])).coherence - alpha) <= 1e-9
            flips = np.where(rng.random(m) < 0.5, -1.0, 1.0)
            flipped = UnitVectorSystem.from_vectors(sys_.vectors * flips[:, None])
            assert abs(gram(flipped).coherence - alpha) <= 1e-9
            Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
            rotated = UnitVectorSystem.from_vectors(sys_.vectors @ Q)
            assert abs(gram(rotated).coherence - alpha) <= 1e-9

    def test_welch_inequality_on_spanning_systems(self):
        rng = np.random.default_rng(555)
        checked = 0
        for _ in range(60):
            n = int(rng.integers(2, 6))
            m = int(rng.integers(n + 1, n + 7))
            sys_ = random_unit_system(rng, m, n)
            if not spans(sys_):
                continue
            checked += 1
            assert gram(sys_).coherence >= welch_bound(m, n) - 1e-9
        assert checked >= 50

    def test_full_neighbor_count_on_tight_system_implies_etf(self):
        tight_family = [circular_frame(m) for m in range(2, 11)]
        tight_family += [mub_r2(), double(mub_r2())]
        tight_family += [simplex_etf(n) for n in range(1, 7)]
        tight_family += [double(simplex_etf(3)), double(circular_frame(5))]
        for sys_ in tight_family:
            assert tightness(sys_).tight
            rep = neighbor_count_report(sys_)
            if max(rep.counts) == sys_.size - 1:
                assert is_etf(sys_)

    def test_spectral_trace(self):
        spec = spectral_data(six_in_r4())
        assert abs(spec.eigenvalues.sum() - 6.0) <= 1e-8 * 6.0
        assert spec.top_multiplicity(1e-9) == 1
