"""Independent check of the bundled 7-vertex list with networkx.

Parses every line with networkx's own graph6 reader and confirms that the
1044 graphs are pairwise non-isomorphic.  networkx is needed only here.
"""
import sys
from collections import defaultdict
from pathlib import Path

import networkx as nx

path = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("src/copious/data/graphs7.g6")
graphs = [nx.from_graph6_bytes(line.encode()) for line in path.read_text().splitlines()
          if line and not line.startswith("#")]
buckets = defaultdict(list)
for g in graphs:
    buckets[nx.weisfeiler_lehman_graph_hash(g, iterations=4)].append(g)
clashes = sum(nx.is_isomorphic(a, b) for bucket in buckets.values()
              for i, a in enumerate(bucket) for b in bucket[i + 1:])
print(f"{len(graphs)} graphs, {clashes} isomorphic pairs")
sys.exit(0 if len(graphs) == 1044 and clashes == 0 and all(g.order() == 7 for g in graphs) else 1)
