import pytest

from feaslab import (
    Constellation,
    ConstellationPreset,
    FinitePointSet,
    LOCAL_REGION,
    Point,
    reference_constellation,
)


def singleton_constellation(m: int, at=(0.0, 0.0)) -> Constellation:
    """m copies of the one-point set {at}."""
    sets = [FinitePointSet([Point(*at)]) for _ in range(m)]
    return Constellation(sets, region=LOCAL_REGION, feasible_hint=Point(*at))


@pytest.fixture
def singleton3() -> Constellation:
    return singleton_constellation(3)


@pytest.fixture
def origin_and_four() -> Constellation:
    # C1 = {(0,0)}, C2 = {(4,0)}: infeasible pair used by several worked examples
    sets = [FinitePointSet([Point(0.0, 0.0)]), FinitePointSet([Point(4.0, 0.0)])]
    return Constellation(sets, region=LOCAL_REGION)


@pytest.fixture(scope="session")
def few_few() -> Constellation:
    return reference_constellation(ConstellationPreset.FEW_FEW)


@pytest.fixture(scope="session")
def many_few() -> Constellation:
    return reference_constellation(ConstellationPreset.MANY_FEW)
