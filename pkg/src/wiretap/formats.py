"""JSON file formats for problems and codes (schema version 1).

Problem::

    {"version": 1, "n1": 3, "n2": 3, "class": "II",
     "wiretap_sets": [[2, 3, 5], [1, 4, 5]]}

Code (edges keyed "1".."n1+n2"; a missing edge carries nothing; each row
lists m message coefficients then k key coefficients, reduced mod q)::

    {"version": 1, "q": 5, "m": 1, "k": 2,
     "edges": {"1": [[0, 1, 0]], "3": [[1, 1, 1]]}}
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .lincode import LinearCode
from .network import NetworkSpec, WiretapPattern, WiretapProblem

VERSION = 1


class FormatError(ValueError):
    pass


def _load(path: str | Path) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg}, line {exc.lineno})") from exc
    if not isinstance(data, dict):
        raise FormatError(f"{path}: top level must be an object")
    return data


def _field(data: dict, name: str, kind: type | tuple) -> Any:
    if name not in data:
        raise FormatError(f"missing field {name!r}")
    value = data[name]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is int:
        raise FormatError(f"field {name!r} has the wrong type")
    return value


def _check_version(data: dict) -> None:
    if data.get("version") != VERSION:
        raise FormatError(f"unsupported version {data.get('version')!r} (expected {VERSION})")


def problem_from_dict(data: dict) -> WiretapProblem:
    _check_version(data)
    n1, n2 = _field(data, "n1", int), _field(data, "n2", int)
    cls = _field(data, "class", str)
    sets = _field(data, "wiretap_sets", list)
    for s in sets:
        if not isinstance(s, list) or not all(isinstance(e, int) and not isinstance(e, bool) for e in s):
            raise FormatError("wiretap_sets must be lists of edge numbers")
    try:
        spec = NetworkSpec(n1, n2, cls)
        return WiretapProblem(spec, WiretapPattern(sets))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def problem_to_dict(p: WiretapProblem) -> dict:
    return {
        "version": VERSION,
        "n1": p.spec.n1,
        "n2": p.spec.n2,
        "class": p.spec.decoding,
        "wiretap_sets": [list(s) for s in p.pattern.sets],
    }


def load_problem(path: str | Path) -> WiretapProblem:
    return problem_from_dict(_load(path))


def code_from_dict(data: dict, n_edges: int) -> LinearCode:
    _check_version(data)
    q, m, k = _field(data, "q", int), _field(data, "m", int), _field(data, "k", int)
    raw = _field(data, "edges", dict)
    edges = {}
    for key, rows in raw.items():
        try:
            e = int(key)
        except ValueError as exc:
            raise FormatError(f"edge key {key!r} is not an integer") from exc
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise FormatError(f"edge {key}: rows must be a list of lists")
        edges[e] = rows
    try:
        return LinearCode.from_edges(q, m, k, edges, n_edges)
    except (ValueError, TypeError) as exc:
        raise FormatError(str(exc)) from exc


def code_to_dict(code: LinearCode) -> dict:
    return {
        "version": VERSION,
        "q": code.q,
        "m": code.m,
        "k": code.k,
        "edges": {str(e): [list(r) for r in mat] for e, mat in enumerate(code.edge_maps, 1) if mat},
    }


def load_code(path: str | Path, n_edges: int) -> LinearCode:
    return code_from_dict(_load(path), n_edges)
