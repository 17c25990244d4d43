"""Small named structures used across tests, demos and the CLI fixtures."""

from __future__ import annotations

from .structures import Graph, Ultragraph


def rose(n: int = 1) -> Graph:
    """One vertex with ``n`` loops."""
    return Graph.build(f"rose{n}", ["v"], [(f"e{i}", "v", "v") for i in range(1, n + 1)])


def line(n: int = 3) -> Graph:
    """v1 -> v2 -> ... -> vn."""
    vs = [f"v{i}" for i in range(1, n + 1)]
    return Graph.build(f"line{n}", vs, [(f"e{i}", vs[i - 1], vs[i]) for i in range(1, n)])


def parallel(n: int = 3) -> Graph:
    """n-1 parallel edges from v to w."""
    return Graph.build(f"parallel{n}", ["v", "w"], [(f"e{i}", "v", "w") for i in range(1, n)])


def isolated(n: int = 2) -> Graph:
    names = ["u", "w"] if n == 2 else [f"u{i}" for i in range(1, n + 1)]
    return Graph.build(f"isolated{n}", names, [])


def ugr1() -> Ultragraph:
    """One edge from v0 onto every other vertex of the natural numbers."""
    return Ultragraph.build("ugr1", ["v0"], [("e", "v0", ("cofinite", ["v0"]))], nat=True)


# chains hanging off v1..v4, as (source, target) pairs for edges e2..e14
_GRUGREX_CHAINS = {
    2: ("v1", "w1"),
    3: ("v2", "w2"),
    4: ("w1", "w3"),
    5: ("w3", "w4"),
    6: ("w2", "w5"),
    7: ("v3", "w6"),
    8: ("v4", "w7"),
    9: ("w6", "w8"),
    10: ("w5", "w9"),
    11: ("w4", "w10"),
    12: ("w9", "w11"),
    13: ("w8", "w12"),
    14: ("w7", "w13"),
}


def grugrex() -> Ultragraph:
    """Finite-edge model of the worked E_G example.

    e1 runs from v0 onto every vertex except v0 and w1..w13; every other edge
    e_j is a single arrow into w_{j-1}.  Vertices v0..v4 get indices 0..4,
    w1..w13 get 5..17, and every later index is another v.
    """
    ws = [f"w{i}" for i in range(1, 14)]
    vertices = ["v0", "v1", "v2", "v3", "v4"] + ws
    edges = [("e1", "v0", ("cofinite", ["v0"] + ws))]
    for j in range(2, 15):
        s, t = _GRUGREX_CHAINS[j]
        edges.append((f"e{j}", s, [t]))
    return Ultragraph.build("grugrex", vertices, edges, nat=True)


def toy() -> Ultragraph:
    """A finite ultragraph with no singular vertices."""
    return Ultragraph.build(
        "toy",
        ["v", "w"],
        [("e1", "v", ["v", "w"]), ("e2", "w", ["v"]), ("e3", "v", ["w"])],
    )


def split() -> Ultragraph:
    """e: v -> {w}, with w a sink."""
    return Ultragraph.build("split", ["v", "w"], [("e", "v", ["w"])])


CATALOG = {
    "rose1": lambda: rose(1),
    "rose2": lambda: rose(2),
    "line3": lambda: line(3),
    "parallel3": lambda: parallel(3),
    "isolated2": lambda: isolated(2),
    "ugr1": ugr1,
    "grugrex": grugrex,
    "toy": toy,
    "split": split,
}
