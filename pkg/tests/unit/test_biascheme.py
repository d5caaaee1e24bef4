"""application.services.biascheme 单元测试：Q/P 构造、特殊信道实现、Ũ/Ṽ、时间扩展与三条件校验。"""

from __future__ import annotations

import numpy as np
import pytest

from application.services.biascheme import (
    _cross_check,
    build_p,
    build_q,
    build_scheme,
    build_u,
    build_v,
    fft_column_order,
    fft_frame_residual,
    fft_structure_residual,
    random_realizations,
    report_to_dict,
    special_h11,
    special_realizations,
    time_expand,
    verify,
)
from core.utils.matkernel import complex_normal, numerical_rank, singular_values
from domain.antenna import AntennaConfig
from domain.errors import DomainError, InvariantViolation, ShapeError

C1233 = AntennaConfig.of(1, 2, 3, 3)


def _small_pairs(max_n1: int) -> list[tuple[int, int]]:
    return [(m1, n1) for n1 in range(2, max_n1 + 1) for m1 in range(1, n1)]


class TestBuildQP:
    """置零矩阵 Q 与预编码 P。"""

    def test_1_2(self) -> None:
        assert np.allclose(build_q(1, 2), [[1, 1]])
        assert np.allclose(build_p(1, 2), [[1], [-1]])

    def test_shapes(self) -> None:
        assert build_q(2, 5).shape == (2, 5)
        assert build_p(2, 5).shape == (5, 3)

    @pytest.mark.parametrize("m1,n1", _small_pairs(16))
    def test_orthogonal(self, m1: int, n1: int) -> None:
        assert np.linalg.norm(build_q(m1, n1) @ build_p(m1, n1)) <= 1e-12 * n1

    @pytest.mark.parametrize("m1,n1", [(2, 2), (3, 2), (0, 2)])
    def test_invalid(self, m1: int, n1: int) -> None:
        with pytest.raises(DomainError):
            build_q(m1, n1)
        with pytest.raises(DomainError):
            build_p(m1, n1)

    @pytest.mark.parametrize("m1,n1", [(1, 2), (2, 3), (3, 7)])
    def test_fft_frame(self, m1: int, n1: int) -> None:
        assert fft_frame_residual(m1, n1) <= 1e-10


class TestBuildScheme:
    def test_1233(self) -> None:
        scheme = build_scheme(C1233)
        assert scheme.expansion == 2
        assert scheme.q_tilde.shape == (2, 4)
        assert scheme.p_tilde.shape == (6, 3)
        assert np.allclose(scheme.q_tilde @ scheme.q_tilde.conj().T, 2 * np.eye(2))

    def test_preconditions(self) -> None:
        with pytest.raises(DomainError, match="M1 < N1"):
            build_scheme(AntennaConfig.of(2, 2, 3, 3))
        with pytest.raises(DomainError, match=r"N1 < min\(M2, N2\)"):
            build_scheme(AntennaConfig.of(1, 2, 2, 3))


class TestSpecialRealization:
    """特殊信道实现：Ũ 为 N1² 点 DFT 矩阵按列置换后的主子式。"""

    def test_values(self) -> None:
        assert np.allclose(special_h11(1, 1, 2), [[1], [1]])
        assert np.allclose(special_h11(2, 1, 2), [[1], [-1j]])
        assert len(special_realizations(2, 3)) == 3

    def test_first_row_ones(self) -> None:
        for slot in special_realizations(3, 5):
            assert np.allclose(slot[0], 1.0)

    def test_slot_out_of_range(self) -> None:
        with pytest.raises(DomainError):
            special_h11(0, 1, 2)
        with pytest.raises(DomainError):
            special_h11(3, 1, 2)

    def test_u_1_2(self) -> None:
        u = build_u(build_q(1, 2), special_realizations(1, 2))
        assert np.allclose(u, [[1, 1], [1, -1j]])

    @pytest.mark.parametrize("m1,n1", _small_pairs(8))
    def test_fft_structure(self, m1: int, n1: int) -> None:
        assert fft_structure_residual(m1, n1) <= 1e-10

    def test_column_order(self) -> None:
        assert fft_column_order(2, 3) == [0, 3, 1, 4, 2, 5]

    @pytest.mark.parametrize("m1,n1", _small_pairs(6))
    def test_full_rank(self, m1: int, n1: int) -> None:
        u = build_u(build_q(m1, n1), special_realizations(m1, n1))
        assert numerical_rank(u, 1e-10) == m1 * n1

    @pytest.mark.parametrize("m1,n1", _small_pairs(5))
    def test_min_singular_value(self, m1: int, n1: int) -> None:
        u = build_u(build_q(m1, n1), special_realizations(m1, n1))
        assert singular_values(u)[-1] > 1e-6


class TestBuildU:
    def test_zero_row_of_q(self) -> None:
        rng = np.random.default_rng(0)
        q = np.array([[1, 1, 1], [0, 0, 0]], dtype=complex)
        u = build_u(q, [complex_normal(rng, 3, 2) for _ in range(3)])
        assert u.shape == (6, 6)
        assert np.allclose(u[3:, :], 0)
        assert numerical_rank(u, 1e-10) <= 3

    def test_block_layout(self) -> None:
        rng = np.random.default_rng(1)
        q = build_q(2, 3)
        slots = [complex_normal(rng, 3, 2) for _ in range(3)]
        u = build_u(q, slots)
        assert np.allclose(u[3:6, 4:6], q[1, 2] * slots[2])

    def test_wrong_slot_count(self) -> None:
        with pytest.raises(ShapeError):
            build_u(build_q(1, 2), [np.ones((2, 1))])

    def test_wrong_slot_shape_names_slot(self) -> None:
        with pytest.raises(ShapeError, match="t=2"):
            build_u(build_q(1, 2), [np.ones((2, 1)), np.ones((3, 1))])


class TestBuildV:
    def test_dft_nulls_interference(self) -> None:
        h12 = complex_normal(np.random.default_rng(2), 3, 4)
        v = build_v(build_q(1, 3), build_p(1, 3), h12)
        assert v.shape == (3, 8)
        assert np.linalg.norm(v) <= 1e-12 * 3 * max(1.0, np.linalg.norm(h12))

    def test_identity_product(self) -> None:
        h12 = complex_normal(np.random.default_rng(3), 1, 2)
        assert np.allclose(build_v([[1]], [[1]], h12), h12)

    def test_zero_h12(self) -> None:
        assert np.allclose(build_v(build_q(1, 2), np.ones((2, 1)), np.zeros((2, 3))), 0)

    def test_inner_dimension_mismatch(self) -> None:
        with pytest.raises(ShapeError):
            build_v(np.ones((1, 2)), np.ones((3, 1)), np.ones((2, 2)))

    def test_cross_check_mismatch(self) -> None:
        with pytest.raises(InvariantViolation):
            _cross_check(np.zeros((2, 2), dtype=complex), np.ones((2, 2), dtype=complex), "测试")


class TestTimeExpand:
    def test_layout(self) -> None:
        rng = np.random.default_rng(4)
        slots = random_realizations(C1233, rng)
        h12 = complex_normal(rng, 2, 3)
        h22 = complex_normal(rng, 3, 3)
        expanded = time_expand(C1233, slots, h12, h22)
        assert expanded.h11_tilde.shape == (4, 2)
        assert np.allclose(expanded.h11_tilde[2:4, 1:2], slots[1])
        assert np.allclose(expanded.h11_tilde[0:2, 1:2], 0)
        assert np.allclose(expanded.h12_tilde, np.kron(np.eye(2), h12))

    def test_expansion_reproduces_u(self) -> None:
        cfg = AntennaConfig.of(2, 3, 4, 4)
        rng = np.random.default_rng(6)
        expanded = time_expand(cfg, random_realizations(cfg, rng), complex_normal(rng, 3, 4), complex_normal(rng, 4, 4))
        scheme = build_scheme(cfg)
        assert np.allclose(scheme.q_tilde @ expanded.h11_tilde, build_u(scheme.q, expanded.h11_slots))

    def test_extra_columns_ignored(self) -> None:
        cfg = AntennaConfig.of(1, 2, 5, 3)
        rng = np.random.default_rng(5)
        h12 = complex_normal(rng, 2, 5)
        expanded = time_expand(cfg, random_realizations(cfg, rng), h12, complex_normal(rng, 3, 5))
        assert expanded.h12.shape == (2, 3)
        assert np.allclose(expanded.h12, h12[:, :3])

    def test_slot_shape_error(self) -> None:
        with pytest.raises(ShapeError, match="t=2"):
            time_expand(C1233, [np.ones((2, 1)), np.ones((2, 2))], np.ones((2, 3)), np.ones((3, 3)))

    def test_too_few_columns(self) -> None:
        with pytest.raises(ShapeError):
            time_expand(C1233, [np.ones((2, 1))] * 2, np.ones((2, 2)), np.ones((3, 3)))


class TestVerify:
    """三个充分条件的校验报告。"""

    def _h12(self, seed: int = 6) -> np.ndarray:
        return complex_normal(np.random.default_rng(seed), 2, 3)

    def test_1233_special_passes(self) -> None:
        report = verify(C1233, build_q(1, 2), build_p(1, 2), special_realizations(1, 2), self._h12())
        assert report.passed
        assert report.rank_u == 2
        assert report.rank_p_tilde == 3
        assert report.v_frobenius <= 1e-12
        assert report.rank_rel_tol == 1e-10
        assert report.nulling_tol == 1e-9

    def test_zero_q_fails(self) -> None:
        report = verify(C1233, np.zeros((1, 2)), build_p(1, 2), special_realizations(1, 2), self._h12())
        assert not report.passed
        assert report.rank_u == 0

    def test_non_orthogonal_p_fails(self) -> None:
        report = verify(C1233, build_q(1, 2), np.ones((2, 1)), special_realizations(1, 2), self._h12())
        assert not report.passed
        assert report.v_frobenius > report.v_tolerance

    def test_random_realization_passes(self) -> None:
        cfg = AntennaConfig.of(2, 3, 4, 4)
        rng = np.random.default_rng(7)
        h12 = complex_normal(rng, 3, 4)
        report = verify(cfg, build_q(2, 3), build_p(2, 3), random_realizations(cfg, rng), h12)
        assert report.passed
        assert report.rank_u == 6
        assert report.rank_p_tilde == 4

    def test_explicit_tolerances_reported(self) -> None:
        report = verify(
            C1233, build_q(1, 2), build_p(1, 2), special_realizations(1, 2), self._h12(),
            rel_tol=1e-8, nulling_tol=1e-6,
        )
        assert report.rank_rel_tol == 1e-8
        assert report.nulling_tol == 1e-6

    def test_preconditions(self) -> None:
        with pytest.raises(DomainError, match="M1 < N1"):
            verify(AntennaConfig.of(2, 2, 3, 3), np.ones((2, 2)), np.ones((2, 0)), [], np.ones((2, 3)))

    def test_shape_errors(self) -> None:
        with pytest.raises(ShapeError):
            verify(C1233, np.ones((2, 2)), build_p(1, 2), special_realizations(1, 2), self._h12())
        with pytest.raises(ShapeError):
            verify(C1233, build_q(1, 2), np.ones((2, 2)), special_realizations(1, 2), self._h12())

    def test_report_dict(self) -> None:
        report = verify(C1233, build_q(1, 2), build_p(1, 2), special_realizations(1, 2), self._h12())
        data = report_to_dict(report, C1233)
        assert data["config"] == "(1,2,3,3)"
        assert data["pass"] is True
        assert "passed" not in data
