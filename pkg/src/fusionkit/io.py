"""Text formats for groups, matrix groups and G-modules, and canonical JSON output.

Group file::

    degree: 4
    (1 2 3 4)
    (1 2)
    subgroup D8: (1 2 3 4); (1 3)

Matrix file (one matrix per line, rows separated by ``;``)::

    prime: 2
    rank: 2
    0 1; 1 1

Module file (W as permutations, acting on Z/n_1 + ... + Z/n_r)::

    degree: 2
    carrier: 2
    (1 2) | 1
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

import numpy as np

from . import perm as P
from .cohomology import GModule
from .groups import DEFAULT_ORDER_BOUND, Group, Subgroup
from .perm import ParseError

SCHEMA = 1

_HEADER = re.compile(r"^\s*([A-Za-z_]+)\s*:\s*(.*)$")


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


@dataclass
class GroupFile:
    group: Group
    subgroups: dict[str, Subgroup] = field(default_factory=dict)


def parse_group_file(text: str, order_bound: int = DEFAULT_ORDER_BOUND) -> GroupFile:
    degree = None
    gens = []
    named: dict[str, str] = {}
    for line in _lines(text):
        m = re.match(r"^subgroup\s+(\S+)\s*:\s*(.*)$", line)
        if m:
            named[m.group(1)] = m.group(2)
            continue
        h = _HEADER.match(line)
        if h and h.group(1).lower() == "degree":
            try:
                degree = int(h.group(2))
            except ValueError:
                raise ParseError(f"bad degree {h.group(2)!r}") from None
            if degree < 1:
                raise ParseError("degree must be positive")
            continue
        if h:
            raise ParseError(f"unknown header {h.group(1)!r}")
        if degree is None:
            raise ParseError("missing 'degree: n' header before generators")
        gens.append(P.parse_cycles(line, degree))
    if degree is None:
        raise ParseError("missing 'degree: n' header")
    G = Group(degree, gens, order_bound=order_bound)
    subs = {name: G.subgroup(gens=P.parse_generators(body, degree), name=name)
            for name, body in named.items()}
    return GroupFile(G, subs)


def format_group_file(G: Group, subgroups: dict[str, Group] | None = None) -> str:
    lines = [f"degree: {G.degree}"]
    lines += [P.to_cycles(g) for g in (G.generators or G.gens)]
    for name, H in (subgroups or {}).items():
        lines.append(f"subgroup {name}: " + "; ".join(P.to_cycles(g) for g in H.gens))
    return "\n".join(lines) + "\n"


@dataclass
class MatrixFile:
    prime: int | None
    rank: int | None
    matrices: list[tuple[tuple[int, ...], ...]]


def parse_matrix(text: str) -> tuple[tuple[int, ...], ...]:
    try:
        rows = [tuple(int(v) for v in r.replace(",", " ").split()) for r in text.split(";")]
    except ValueError:
        raise ParseError(f"non-integer matrix entry in {text!r}") from None
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ParseError(f"matrix {text!r} is not square")
    return tuple(rows)


def parse_matrix_file(text: str) -> MatrixFile:
    prime = rank = None
    mats = []
    for line in _lines(text):
        h = _HEADER.match(line)
        if h:
            key = h.group(1).lower()
            try:
                val = int(h.group(2))
            except ValueError:
                raise ParseError(f"bad value for {key!r}") from None
            if key == "prime":
                prime = val
            elif key == "rank":
                rank = val
            else:
                raise ParseError(f"unknown header {key!r}")
            continue
        mats.append(parse_matrix(line))
    if rank is not None and any(len(m) != rank for m in mats):
        raise ParseError("matrix size differs from the declared rank")
    return MatrixFile(prime, rank, mats)


def parse_module_file(text: str) -> GModule:
    degree = None
    carrier = None
    action = {}
    for line in _lines(text):
        if "|" in line:
            if degree is None or carrier is None:
                raise ParseError("'degree' and 'carrier' headers must come first")
            g, mat = line.split("|", 1)
            action[P.parse_cycles(g, degree)] = np.array(parse_matrix(mat), dtype=np.int64)
            continue
        h = _HEADER.match(line)
        if not h:
            raise ParseError(f"cannot parse line {line!r}")
        key = h.group(1).lower()
        try:
            if key == "degree":
                degree = int(h.group(2))
            elif key == "carrier":
                carrier = [int(v) for v in h.group(2).split()]
            else:
                raise ParseError(f"unknown header {key!r}")
        except ValueError:
            raise ParseError(f"bad value for {key!r}") from None
    if degree is None or carrier is None:
        raise ParseError("module file needs 'degree' and 'carrier' headers")
    W = Group(degree, list(action))
    if not action:
        action = {W.identity: np.eye(len(carrier), dtype=np.int64)}
    return GModule(W, carrier, action)


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
