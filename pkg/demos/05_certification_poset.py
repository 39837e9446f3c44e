"""Sweep every pair of partitions of one degree and draw the SOS poset.

Black edges are the covering pairs of dominance order (all of which certify
numerically); blue edges are certified differences between *incomparable*
partitions, i.e. counterexamples to the equivalence of nonnegativity and
dominance for the homogeneous basis.  Degree 8 is where the first blue
edges appear; lower degrees reproduce the plain dominance Hasse diagram.

Usage: python 05_certification_poset.py [degree]   (default 8, ~4 minutes)
"""

import sys
import time

from symsos.posetgen import emit_dot, report_to_json, sweep
from symsos.symfunc import partitions_of

degree = int(sys.argv[1]) if len(sys.argv) > 1 else 8

start = time.monotonic()
result = sweep(degree, nvars=3, mode="numeric")
elapsed = time.monotonic() - start

counts = {}
for rep in result.report:
    counts[rep.status] = counts.get(rep.status, 0) + 1
print(f"degree {degree}: {len(result.report)} ordered pairs attempted in {elapsed:.0f}s")
print("statuses:", counts)
print()

black = [e for e in result.edges if e.kind == "dominance"]
blue = [e for e in result.edges if e.kind == "counterexample"]
print(f"{len(black)} dominance covering edges (black), {len(blue)} counterexample edges (blue)")
for e in blue:
    print(f"  blue: {e.lam} -> {e.mu}   (H_{e.mu} - H_{e.lam} certified, margin {e.margin:.2e})")
print()

dot_path = f"poset_degree{degree}.dot"
report_path = f"poset_degree{degree}_report.json"
with open(dot_path, "w") as fh:
    fh.write(emit_dot(result.edges, nodes=partitions_of(degree)))
with open(report_path, "w") as fh:
    fh.write(report_to_json(result))
    fh.write("\n")
print(f"DOT graph written to {dot_path} (render with: dot -Tpdf {dot_path} -o poset.pdf)")
print(f"per-pair report written to {report_path}")
