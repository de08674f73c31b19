"""
Iteration-count maps
====================

Rasterize how many iterations each algorithm needs as a function of the
starting point (black = instant, white = gave up at the cap), at the default
and at the tuned parameter.  The published figures use 15 million starts per
image; 160 x 160 here keeps the whole gallery under a minute.
"""

from pathlib import Path

from feaslab import (
    AlgorithmConfig,
    AlgorithmKind,
    ConstellationPreset,
    LAMBDA_BEST,
    LOCAL_REGION,
    cartographer,
    encode_map_pgm,
    reference_constellation,
)

out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

con = reference_constellation(ConstellationPreset.FEW_FEW)
size = 160

for kind in AlgorithmKind:
    for label, lam in (("default", 1.0), ("best", LAMBDA_BEST[kind])):
        imap = cartographer(AlgorithmConfig(kind=kind, lam=lam), con, LOCAL_REGION, size, size)
        rate = imap.success_summary().rate
        path = out_dir / f"map_{kind.value}_{label}.pgm"
        path.write_bytes(encode_map_pgm(imap))
        print(f"{kind.value:7s} lambda={lam:<4g} ({label:7s})  success {rate:6.1%}  -> {path.name}")

print()
print(f"view the PGMs under {out_dir} with any image viewer")
