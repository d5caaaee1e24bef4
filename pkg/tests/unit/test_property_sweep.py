"""application.use_cases.property_sweep 单元测试：配置枚举与各属性在小规模配置上的结果。"""

from __future__ import annotations

import pytest

from application.use_cases.property_sweep import (
    PROPERTIES,
    all_configs,
    check_corner,
    check_csit,
    check_equivalence,
    check_strict,
    check_zf,
    check_zic,
    run_sweep,
)
from domain.antenna import AntennaConfig
from domain.errors import DomainError


class TestAllConfigs:
    def test_count_and_order(self) -> None:
        configs = all_configs(2)
        assert len(configs) == 16
        assert configs[0].as_tuple() == (1, 1, 1, 1)
        assert configs[1].as_tuple() == (1, 1, 1, 2)
        assert configs[-1].as_tuple() == (2, 2, 2, 2)

    @pytest.mark.parametrize("k", [0, 7])
    def test_out_of_range(self, k: int) -> None:
        with pytest.raises(DomainError):
            all_configs(k)


@pytest.fixture(scope="module")
def configs() -> list[AntennaConfig]:
    return all_configs(4)


class TestProperties:
    """K = 4 时全部属性成立。"""

    def test_equivalence(self, configs) -> None:
        result = check_equivalence(configs)
        assert result.checked == sum(1 for c in configs if c.n1 <= c.n2)
        assert result.ok

    def test_strict(self, configs) -> None:
        result = check_strict(configs)
        assert result.ok and result.checked == 1

    def test_strict_without_candidates(self) -> None:
        result = check_strict(all_configs(1))
        assert result.checked == 0 and result.ok

    def test_csit(self, configs) -> None:
        result = check_csit(configs)
        assert result.checked == 256
        assert result.ok

    def test_zic(self, configs) -> None:
        assert check_zic(configs).ok

    def test_corner(self, configs) -> None:
        result = check_corner(configs)
        assert result.checked == sum(1 for c in configs if c.is_scheme_case)
        assert result.checked > 0
        assert result.ok

    def test_corner_up_to_five(self) -> None:
        result = check_corner(all_configs(5))
        assert result.checked > 0
        assert result.ok

    def test_zf(self, configs) -> None:
        result = check_zf(configs, seed=7)
        assert result.checked == sum(1 for c in configs if c.n1 >= c.n2)
        assert result.ok


class TestRunSweep:
    def test_default_order(self) -> None:
        summary = run_sweep(3)
        assert [r.name for r in summary.results] == list(PROPERTIES)
        assert summary.max_antennas == 3
        assert summary.all_passed
        assert summary.zf_seed == 7

    def test_selected_properties(self) -> None:
        summary = run_sweep(2, ["corner", "lemma3"])
        assert [r.name for r in summary.results] == ["corner", "lemma3"]
        assert summary.zf_seed is None

    def test_default_size_from_config(self) -> None:
        assert run_sweep(properties=["csit"]).max_antennas == 4

    def test_unknown_property(self) -> None:
        with pytest.raises(DomainError):
            run_sweep(2, ["nope"])
