"""
Divertissement: the extrapolated scheme as a fractal painter
============================================================

Two closing curiosities.  First, on an infeasible constellation (two
concentric rings that share no point) every orbit runs to the cap, so the
iteration map comes out uniformly white: the map doubles as an infeasibility
certificate.  Second, the same algorithm on a perfectly ordinary feasible
instance paints fractal-like basin boundaries when lambda sits just below 1.
"""

from pathlib import Path

from feaslab import (
    AlgorithmConfig,
    AlgorithmKind,
    CircleSpec,
    ConstellationPreset,
    LOCAL_REGION,
    Ring,
    cartographer,
    circles_constellation,
    encode_map_pgm,
    reference_constellation,
)

out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

# two rings centred at the origin: radius 4 with 8 points, radius 8 with 16
rings = circles_constellation(CircleSpec([[Ring(4.0, 8)], [Ring(8.0, 16)]]))
print(f"rings: {[len(s) for s in rings.sets]} points, feasible hint: {rings.feasible_hint}")

config = AlgorithmConfig(kind=AlgorithmKind.EXPARP, lam=0.995)
imap = cartographer(config, rings, LOCAL_REGION, 200, 200)
path = out_dir / "rings_exparp.pgm"
path.write_bytes(encode_map_pgm(imap))
print(f"ring map: success {imap.success_summary().rate:.1%} (all starts exhaust the cap) -> {path.name}")

# a feasible 3-set instance at lambda just under 1: basin boundaries go wild
con = reference_constellation(ConstellationPreset.FEW_FEW)
config = AlgorithmConfig(kind=AlgorithmKind.EXPARP, lam=0.998)
imap = cartographer(config, con, LOCAL_REGION, 200, 200)
path = out_dir / "few_few_exparp_0998.pgm"
path.write_bytes(encode_map_pgm(imap))
print(f"few-few map at lambda=0.998: success {imap.success_summary().rate:.1%} -> {path.name}")
