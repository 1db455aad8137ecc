"""Write every connected graph on at most 7 vertices (from the networkx graph atlas) as graph6 lines.

Usage: python3 tools/make_atlas.py OUTPUT
The SHA-256 of the output is printed and should match ``tests/data/atlas7_connected.sha256``.
"""

import hashlib
import sys

import networkx as nx


def main(path: str) -> None:
    lines = []
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() == 0 or not nx.is_connected(h):
            continue
        lines.append(nx.to_graph6_bytes(h, header=False).decode().strip())
    data = ("\n".join(lines) + "\n").encode()
    with open(path, "wb") as fh:
        fh.write(data)
    print(hashlib.sha256(data).hexdigest(), len(lines))


if __name__ == "__main__":
    main(sys.argv[1])
