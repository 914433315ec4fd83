"""Write SVG figures and JSON documents for the conjectured constructions.

    python scripts/figures.py figures/ 3 5 7 12 23
"""
import sys
from fractions import Fraction
from pathlib import Path

from squarepack import io
from squarepack.constructions import construct_conjectured, decompose
from squarepack.geometry import side_sum, verify

out = Path(sys.argv[1] if len(sys.argv) > 1 else "figures")
ns = [int(a) for a in sys.argv[2:]] or [3, 5, 7, 8, 12, 14, 23, 34]
out.mkdir(parents=True, exist_ok=True)
for n in ns:
    d = decompose(n)
    slack = Fraction(1, 10 * d.k) if d.c == 0 else None
    p = construct_conjectured(n, slack)
    assert verify(p).valid
    (out / f"construct_n{n}.svg").write_text(io.packing_svg(p))
    (out / f"construct_n{n}.json").write_text(io.dumps_packing(p))
    print(f"n={n}: {len(p)} squares, sum {side_sum(p)}")
