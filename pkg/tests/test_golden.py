"""Byte-exact golden artifacts.

Each artifact is regenerated from scratch and compared against the committed
bytes; any drift in the numeric kernel, the sampler, the seeded generators, or
the serializers shows up here first.

Regenerate (after a deliberate, understood change) with:

    python3 tests/test_golden.py --write
"""

import sys
from pathlib import Path

import pytest

from feaslab import (
    AlgorithmConfig,
    AlgorithmKind,
    ConstellationPreset,
    LOCAL_REGION,
    cartographer,
    dump_constellation,
    encode_map_pgm,
    lambda_sweep,
    reference_constellation,
    write_sweep_csv,
)

GOLDEN_DIR = Path(__file__).parent / "golden"


def _constellation_json(preset: ConstellationPreset) -> bytes:
    return dump_constellation(reference_constellation(preset))


def _few_few_map_pgm() -> bytes:
    config = AlgorithmConfig(kind=AlgorithmKind.CYCP, lam=1.0)
    con = reference_constellation(ConstellationPreset.FEW_FEW)
    return encode_map_pgm(cartographer(config, con, LOCAL_REGION, 256, 256))

def _many_few_map_pgm() -> bytes:
    config = AlgorithmConfig(kind=AlgorithmKind.CYCDR, lam=1.2)
    con = reference_constellation(ConstellationPreset.MANY_FEW)
    return encode_map_pgm(cartographer(config, con, LOCAL_REGION, 128, 128))


def _few_few_sweep_csv() -> bytes:
    con = reference_constellation(ConstellationPreset.FEW_FEW)
    return write_sweep_csv(lambda_sweep(AlgorithmKind.CYCP, con, LOCAL_REGION, n_lambda=40, n_starts=250))

def _many_few_sweep_csv() -> bytes:
    con = reference_constellation(ConstellationPreset.MANY_FEW)
    return write_sweep_csv(lambda_sweep(AlgorithmKind.DR, con, LOCAL_REGION, n_lambda=40, n_starts=250))


ARTIFACTS = {
    "few_few.json": lambda: _constellation_json(ConstellationPreset.FEW_FEW),
    "few_many.json": lambda: _constellation_json(ConstellationPreset.FEW_MANY),
    "many_few.json": lambda: _constellation_json(ConstellationPreset.MANY_FEW),
    "many_many.json": lambda: _constellation_json(ConstellationPreset.MANY_MANY),
    "few_few_cycp_map_256.pgm": _few_few_map_pgm,
    "many_few_cycdr_map_128.pgm": _many_few_map_pgm,
    "few_few_cycp_sweep_40x250.csv": _few_few_sweep_csv,
    "many_few_dr_sweep_40x250.csv": _many_few_sweep_csv,
}


@pytest.mark.parametrize("name", sorted(ARTIFACTS))
def test_golden_artifact_matches(name):
    committed = (GOLDEN_DIR / name).read_bytes()
    assert ARTIFACTS[name]() == committed


if __name__ == "__main__":
    if "--write" not in sys.argv:
        sys.exit("refusing to overwrite golden files without --write")
    GOLDEN_DIR.mkdir(exist_ok=True)
    for name, build in ARTIFACTS.items():
        (GOLDEN_DIR / name).write_bytes(build())
        print(f"wrote {GOLDEN_DIR / name}")
