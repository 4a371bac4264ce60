"""DIMACS edge format: ``p edge <n> <m>`` followed by ``e <u> <v>`` (1-based)."""

from pathlib import Path

from .graph import Graph


class DimacsError(ValueError):
    pass


def dumps(g):
    lines = [f"p edge {g.n} {g.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges.tolist())
    return "\n".join(lines) + "\n"


def loads(text):
    n = m = None
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        tok = line.split()
        if not tok or tok[0] == "c":
            continue
        if tok[0] == "p":
            if len(tok) != 4 or tok[1] != "edge" or n is not None:
                raise DimacsError(f"line {lineno}: bad problem line {line!r}")
            n, m = int(tok[2]), int(tok[3])
        elif tok[0] == "e":
            if n is None:
                raise DimacsError(f"line {lineno}: edge before problem line")
            if len(tok) != 3:
                raise DimacsError(f"line {lineno}: bad edge line {line!r}")
            u, v = int(tok[1]), int(tok[2])
            if not (1 <= u <= n and 1 <= v <= n):
                raise DimacsError(f"line {lineno}: vertex out of range")
            edges.append((u - 1, v - 1))
        else:
            raise DimacsError(f"line {lineno}: unknown line type {tok[0]!r}")
    if n is None:
        raise DimacsError("missing problem line")
    if len(edges) != m:
        raise DimacsError(f"header declares {m} edges, found {len(edges)}")
    try:
        return Graph(n, edges)
    except ValueError as exc:
        raise DimacsError(str(exc)) from exc


def read(path):
    return loads(Path(path).read_text())


def write(g, path):
    Path(path).write_text(dumps(g))
