"""
Single-orbit gallery
====================

Track one orbit of each algorithm on the few-sets/few-points reference
constellation, from the same starting point, and write one trace to CSV.
"""

from pathlib import Path

from feaslab import (
    AlgorithmConfig,
    AlgorithmKind,
    ConstellationPreset,
    Point,
    reference_constellation,
    run_orbit,
    write_trace_csv,
)

out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

con = reference_constellation(ConstellationPreset.FEW_FEW)
print(f"constellation: {con.m} sets, sizes {[len(s) for s in con.sets]}, id {con.content_id()}")

start = Point(9.0, -4.0)
print(f"start: ({start.x}, {start.y})")
print()

for kind in AlgorithmKind:
    trace = run_orbit(AlgorithmConfig(kind=kind), con, start)
    head = ", ".join(f"{e:.4f}" for e in trace.errors[:4])
    if trace.solved:
        print(f"{kind.value:7s} solved at k={trace.solved_at:4d}   d: {head}, ...")
    else:
        print(f"{kind.value:7s} exhausted {trace.iterations} iterations   d: {head}, ...")

# the cyclic pairwise scheme makes a nice plot: dump its full trace
trace = run_orbit(AlgorithmConfig(kind=AlgorithmKind.CYCDR, lam=1.2), con, start)
path = out_dir / "cycdr_orbit.csv"
path.write_bytes(write_trace_csv(trace))
print()
print(f"wrote {path} ({len(trace.errors)} rows: k, governing x/y, monitored x/y, d)")
