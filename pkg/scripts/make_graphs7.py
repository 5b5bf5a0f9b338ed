"""Write every graph on 7 vertices, up to isomorphism, as graph6 lines.

Extends each 6-vertex class by one vertex in all 64 ways and keeps one
canonical representative per class.
"""
import sys
from pathlib import Path

from copious.graphs import _extend, emit_graph6, enumerate_graphs, isomorphism_classes

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("src/copious/data/graphs7.g6")
reps = isomorphism_classes(_extend(h, s) for h in enumerate_graphs(6) for s in range(64))
with out.open("w") as fh:
    fh.write(f"# all {len(reps)} graphs on 7 vertices up to isomorphism\n")
    for g in reps:
        fh.write(emit_graph6(g) + "\n")
print(len(reps), "graphs written to", out)
