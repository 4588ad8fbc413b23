"""Text formats: INTERDICT v1 instances and TREEDEC v1 decompositions."""
from __future__ import annotations

import math
import re

from .errors import ParseError
from .graph import Graph, Instance, Kind

_DECIMAL = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")


def format_weight(x: float) -> str:
    """Shortest decimal that reads back to exactly ``x``."""
    if x.is_integer() and abs(x) < 2**53:
        return str(int(x))
    return repr(x)


def _lines(text):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield number, line.split()


class _Cursor:
    def __init__(self, text):
        self._it = _lines(text)
        self.last = 0

    def next(self, what):
        try:
            number, tokens = next(self._it)
        except StopIteration:
            raise ParseError(self.last + 1, f"unexpected end of file, expected {what}") from None
        self.last = number
        return number, tokens

    def expect_keyword(self, keyword, nargs):
        number, tokens = self.next(f"'{keyword}'")
        if tokens[0] != keyword or len(tokens) != nargs + 1:
            raise ParseError(number, f"expected '{keyword}' with {nargs} argument(s), got {' '.join(tokens)!r}")
        return number, tokens[1:]

    def at_end(self):
        for number, tokens in self._it:
            raise ParseError(number, f"trailing content {' '.join(tokens)!r}")


def _int(token, number, what, lo=0, hi=None):
    if not re.fullmatch(r"\d+", token):
        raise ParseError(number, f"{what} must be a nonnegative integer, got {token!r}")
    value = int(token)
    if value < lo or (hi is not None and value >= hi):
        raise ParseError(number, f"{what} {value} out of range")
    return value


def read_instance(text: str) -> Instance:
    """Parse an INTERDICT v1 document."""
    cur = _Cursor(text)
    number, tokens = cur.next("header")
    if tokens != ["INTERDICT", "v1"]:
        raise ParseError(number, "first line must be 'INTERDICT v1'")
    number, (kind_token,) = cur.expect_keyword("problem", 1)
    try:
        kind = Kind(kind_token)
    except ValueError:
        raise ParseError(number, f"unknown problem kind {kind_token!r}") from None

    number, (n_token,) = cur.expect_keyword("nodes", 1)
    n = _int(n_token, number, "node count")
    facility = [None] * n
    weight = [None] * n
    for _ in range(n):
        number, tokens = cur.next("node line")
        if tokens[0] != "node" or len(tokens) < 3:
            raise ParseError(number, "expected 'node <id> F' or 'node <id> C <weight>'")
        v = _int(tokens[1], number, "node id", hi=n)
        if facility[v] is not None:
            raise ParseError(number, f"node {v} listed twice")
        if tokens[2] == "F" and len(tokens) == 3:
            facility[v] = True
        elif tokens[2] == "C" and len(tokens) == 4:
            if not _DECIMAL.fullmatch(tokens[3]):
                raise ParseError(number, f"weight {tokens[3]!r} is not a decimal literal")
            facility[v] = False
            weight[v] = float(tokens[3])
        else:
            raise ParseError(number, "expected 'node <id> F' or 'node <id> C <weight>'")

    number, (m_token,) = cur.expect_keyword("edges", 1)
    m = _int(m_token, number, "edge count")
    edges = []
    seen = set()
    for _ in range(m):
        number, tokens = cur.next("edge line")
        if tokens[0] != "edge" or len(tokens) != 3:
            raise ParseError(number, "expected 'edge <u> <v>'")
        u = _int(tokens[1], number, "endpoint", hi=n)
        v = _int(tokens[2], number, "endpoint", hi=n)
        if u == v:
            raise ParseError(number, f"self-loop at node {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(number, f"duplicate edge {key}")
        seen.add(key)
        edges.append(key)

    number, (r_token,) = cur.expect_keyword("budget", 1)
    budget = _int(r_token, number, "budget")
    cur.at_end()
    return Instance(Graph(n, edges), tuple(facility), tuple(weight), budget, kind)


def bipartite_side(instance: Instance):
    """Facility ids when every edge joins a facility and a customer."""
    g = instance.graph
    if g.edge_count == 0:
        return None
    for u, v in g.edges:
        if instance.facility[u] == instance.facility[v]:
            return None
    return instance.facilities


def write_instance(instance: Instance) -> str:
    out = ["INTERDICT v1"]
    if instance.kind is Kind.FACILITY:
        side = bipartite_side(instance)
        if side is not None:
            out.append("# bipartite U=" + ",".join(map(str, side)))
    out.append(f"problem {instance.kind.value}")
    out.append(f"nodes {instance.n}")
    for v in range(instance.n):
        if instance.facility[v]:
            out.append(f"node {v} F")
        else:
            x = instance.weight[v]
            if not math.isfinite(x):
                raise ValueError(f"customer {v} has non-finite weight {x!r}")
            out.append(f"node {v} C {format_weight(x)}")
    out.append(f"edges {instance.graph.edge_count}")
    out.extend(f"edge {u} {v}" for u, v in instance.graph.edges)
    out.append(f"budget {instance.budget}")
    return "\n".join(out) + "\n"


def read_treedec(text: str):
    """Parse a TREEDEC v1 document into a :class:`TreeDecomposition`.

    Only the file structure is checked here; validate against a graph with
    :func:`interdict.treewidth.validate_decomposition` before use.
    """
    from .treewidth import TreeDecomposition

    cur = _Cursor(text)
    number, tokens = cur.next("header")
    if tokens != ["TREEDEC", "v1"]:
        raise ParseError(number, "first line must be 'TREEDEC v1'")
    number, tokens = cur.next("'bags <t> width <w>'")
    if len(tokens) != 4 or tokens[0] != "bags" or tokens[2] != "width":
        raise ParseError(number, "expected 'bags <t> width <w>'")
    t = _int(tokens[1], number, "bag count")
    declared_width = int(tokens[3]) if re.fullmatch(r"-?\d+", tokens[3]) else None
    if declared_width is None:
        raise ParseError(number, f"bad width {tokens[3]!r}")
    bags = [None] * t
    for _ in range(t):
        number, tokens = cur.next("bag line")
        if tokens[0] != "bag" or len(tokens) < 2:
            raise ParseError(number, "expected 'bag <id> <v...>'")
        b = _int(tokens[1], number, "bag id", hi=t)
        if bags[b] is not None:
            raise ParseError(number, f"bag {b} listed twice")
        members = [_int(x, number, "vertex") for x in tokens[2:]]
        if len(set(members)) != len(members):
            raise ParseError(number, f"bag {b} repeats a vertex")
        bags[b] = frozenset(members)
    links = []
    for _ in range(max(t - 1, 0)):
        number, tokens = cur.expect_keyword("link", 2)
        links.append((_int(tokens[0], number, "bag id", hi=t), _int(tokens[1], number, "bag id", hi=t)))
    root = None
    try:
        number, tokens = cur.next("root")
    except ParseError:
        pass
    else:
        if tokens[0] != "root" or len(tokens) != 2:
            raise ParseError(number, f"unexpected line {' '.join(tokens)!r}")
        root = _int(tokens[1], number, "root", hi=t)
        cur.at_end()
    width = max((len(b) for b in bags), default=0) - 1
    if width != declared_width:
        raise ParseError(2, f"declared width {declared_width} but largest bag gives {width}")
    return TreeDecomposition(tuple(bags), tuple(links), root)


def write_treedec(dec) -> str:
    out = ["TREEDEC v1", f"bags {len(dec.bags)} width {dec.width}"]
    for i, bag in enumerate(dec.bags):
        out.append(" ".join(["bag", str(i), *map(str, sorted(bag))]))
    out.extend(f"link {a} {b}" for a, b in dec.links)
    if dec.root is not None:
        out.append(f"root {dec.root}")
    return "\n".join(out) + "\n"
