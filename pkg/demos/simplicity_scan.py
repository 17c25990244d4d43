"""Scan every small graph: structural simplicity verdict against the matrix oracle."""

import sys

from leavitt.analysis import condition_L, simplicity_verdict
from leavitt.corpus import all_graphs, is_acyclic
from leavitt.oracle import acyclic_matrix_rep, brute_force_simple
from leavitt.rings import GF


def scan(max_vertices=3, max_edges=3):
    rows = {"acyclic agree": 0, "acyclic disagree": 0, "no (L)": 0, "(L), simple": 0, "(L), not simple": 0}
    for g in all_graphs(max_vertices, max_edges):
        v = simplicity_verdict(g, GF(2))
        if is_acyclic(g):
            same = v.result == brute_force_simple(acyclic_matrix_rep(g, GF(2)))
            rows["acyclic agree" if same else "acyclic disagree"] += 1
        elif condition_L(g).result is False:
            rows["no (L)"] += 1
        else:
            rows["(L), simple" if v.result is True else "(L), not simple"] += 1
    return rows


if __name__ == "__main__":
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    for k, c in scan(n, n).items():
        print(f"{k:>18}: {c}")
