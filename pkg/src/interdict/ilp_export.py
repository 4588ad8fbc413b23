"""Integer program for edge interdiction on trees, in CPLEX LP format.

The model minimizes the weight of customers that stay covered::

    min   sum_v w(v) x_v
    s.t.  x_v + sum_{e on the s-v path} y_e >= 1   for customers v, facilities s
          sum_e y_e <= r
          x, y binary

LP files have no objective constant, so the header records the total
customer weight; the interdiction objective is ``total_weight - optimum``.
The instance itself is embedded in ``\\ |`` comment lines so that solver
output can be read back without a separate instance file.
"""
from __future__ import annotations

import math
import re

from .errors import InconsistentSolution, ParseError, WrongKind
from .formats import format_weight, read_instance, write_instance
from .graph import Instance, Kind, Solution, evaluate_strategy, require_tree, rooted_order

LINE_LIMIT = 200
_EMBED = "\\ | "


def _wrap(head: str, terms: list[str], tail: str = "") -> list[str]:
    """Join ``terms`` with ``+``, breaking lines before ``LINE_LIMIT``."""
    lines = []
    current = head + terms[0]
    for t in terms[1:]:
        if len(current) + len(t) + 3 > LINE_LIMIT:
            lines.append(current)
            current = "   + " + t
        else:
            current += " + " + t
    if tail:
        if len(current) + len(tail) + 1 > LINE_LIMIT:
            lines.append(current)
            current = "  "
        current += " " + tail
    lines.append(current)
    return lines


def coverage_paths(instance: Instance):
    """``{(v, s): [edge ids on the v-s path]}`` for every customer/facility pair."""
    g = instance.graph
    paths = {}
    for s in instance.facilities:
        _, parent, parent_edge = rooted_order(g, s)
        for v in instance.customers:
            path = []
            x = v
            while x != s:
                path.append(parent_edge[x])
                x = parent[x]
            paths[(v, s)] = sorted(path)
    return paths


def export_reic_lp(instance: Instance) -> str:
    """Model text for a connected tree instance (edge kind)."""
    if instance.kind is not Kind.EDGE:
        raise WrongKind("the LP model covers edge interdiction only")
    require_tree(instance.graph)
    customers = instance.customers
    m = instance.graph.edge_count
    total = math.fsum(instance.w(v) for v in customers)
    out = [
        "\\ edge interdiction covering model",
        f"\\ total_weight = {format_weight(total)}",
        "\\ REIC objective = total_weight - model optimum",
    ]
    out += [_EMBED + line for line in write_instance(instance).splitlines()]
    out.append("Minimize")
    obj = [f"{format_weight(instance.w(v))} x_{v}" for v in customers]
    if not obj:
        obj = [f"0 y_{e}" for e in range(m)] or ["0 dummy"]
    out += _wrap(" obj: ", obj)
    out.append("Subject To")
    for (v, s), path in sorted(coverage_paths(instance).items()):
        out += _wrap(f" cov_{v}_{s}: ", [f"x_{v}"] + [f"y_{e}" for e in path], ">= 1")
    if m:
        out += _wrap(" budget: ", [f"y_{e}" for e in range(m)], f"<= {instance.budget}")
    binaries = [f"x_{v}" for v in customers] + [f"y_{e}" for e in range(m)]
    if not binaries:
        binaries = ["dummy"]
    out.append("Binary")
    out += [f" {b}" for b in binaries]
    out.append("End")
    return "\n".join(out) + "\n"


def embedded_instance(model_text: str) -> Instance:
    lines = [raw[len(_EMBED):] for raw in model_text.splitlines() if raw.startswith(_EMBED)]
    if not lines:
        raise ParseError(1, "model carries no embedded instance")
    return read_instance("\n".join(lines))


def parse_listing(text: str) -> dict:
    """``name value`` pairs, one per line; blank and ``#`` lines skipped."""
    values = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(number, f"expected 'name value', got {line!r}")
        name, token = parts
        try:
            values[name] = float(token)
        except ValueError:
            raise ParseError(number, f"value {token!r} is not a number") from None
    return values


def _binary(name, x):
    if abs(x) <= 1e-6:
        return 0
    if abs(x - 1) <= 1e-6:
        return 1
    raise InconsistentSolution(f"{name} = {x} is not binary")


def import_solution(model_text: str, output_text: str) -> Solution:
    """Read a solver's variable listing back into a :class:`Solution`.

    Variables missing from the listing count as 0. Only the ``y`` values
    define the strategy; ``x`` values must be binary and name customers but
    are otherwise ignored, since the objective is recomputed from the cuts.
    """
    instance = embedded_instance(model_text)
    values = parse_listing(output_text)
    m = instance.graph.edge_count
    removed = []
    for name, x in values.items():
        match = re.fullmatch(r"([xy])_(\d+)", name)
        if match is None:
            if name == "dummy":
                continue
            raise InconsistentSolution(f"unknown variable {name!r}")
        idx = int(match.group(2))
        bit = _binary(name, x)
        if match.group(1) == "y":
            if idx >= m:
                raise InconsistentSolution(f"{name} names no edge")
            if bit:
                removed.append(idx)
        else:
            if idx >= instance.n or instance.facility[idx]:
                raise InconsistentSolution(f"{name} names no customer")
    if len(removed) > instance.budget:
        raise InconsistentSolution(f"{len(removed)} edges cut with budget {instance.budget}")
    report = evaluate_strategy(instance, removed)
    return Solution(Kind.EDGE, frozenset(removed), report.disconnected_weight, report.disconnected)


def solve_with_highs(model_text: str) -> tuple[float, str]:
    """Solve the model with HiGHS; returns ``(optimum, listing)``.

    Raises ``ImportError`` when the ``highspy`` package is not installed.
    """
    import os
    import tempfile

    import highspy

    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    fd, path = tempfile.mkstemp(suffix=".lp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(model_text)
        h.readModel(path)
    finally:
        os.unlink(path)
    h.run()
    info = h.getInfo()
    lp = h.getLp()
    names = list(lp.col_names_)
    col_values = list(h.getSolution().col_value)
    listing = "\n".join(f"{n} {round(x)}" for n, x in zip(names, col_values))
    return float(info.objective_function_value), listing + "\n"
