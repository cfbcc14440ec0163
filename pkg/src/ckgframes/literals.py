"""Literal (JSON-friendly) encodings shared by config files and reports.

A matrix literal is a list of rows, each entry a 2-element list ``[re, im]``.
A space literal is a list of ``{"id", "weight", "fiber_dim"}`` objects.
A family literal is ``{"ambient_dim", "space", "ops"}``.
Infinite bounds are encoded as the string ``"inf"`` (strict JSON has no
Infinity literal).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidConfig
from .frames import FrameBounds, FrameReport, OperatorFamily
from .linalg import as_matrix
from .measure import Atom, DiscreteMeasureSpace

__all__ = [
    "matrix_to_literal",
    "matrix_from_literal",
    "space_to_literal",
    "space_from_literal",
    "family_to_literal",
    "family_from_literal",
    "bound_to_literal",
    "bound_from_literal",
    "bounds_to_literal",
    "report_to_literal",
]


def matrix_to_literal(m) -> list[list[list[float]]]:
    m = as_matrix(m)
    return [[[float(entry.real), float(entry.imag)] for entry in row] for row in m]


def matrix_from_literal(literal) -> np.ndarray:
    if not isinstance(literal, list) or not literal:
        raise InvalidConfig("matrix literal must be a non-empty list of rows")
    width = None
    rows = []
    for row in literal:
        if not isinstance(row, list):
            raise InvalidConfig("matrix literal rows must be lists")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise InvalidConfig("matrix literal rows have unequal lengths")
        entries = []
        for entry in row:
            if not (isinstance(entry, list) and len(entry) == 2):
                raise InvalidConfig("matrix entries must be [re, im] pairs")
            entries.append(complex(float(entry[0]), float(entry[1])))
        rows.append(entries)
    return as_matrix(rows)


def space_to_literal(space: DiscreteMeasureSpace) -> list[dict]:
    literal = []
    for atom in space.atoms:
        item = {
            "id": atom.atom_id,
            "weight": float(atom.weight),
            "fiber_dim": int(atom.fiber_dim),
        }
        if atom.partition is not None:
            item["partition"] = atom.partition
        literal.append(item)
    return literal


def space_from_literal(literal) -> DiscreteMeasureSpace:
    if not isinstance(literal, list):
        raise InvalidConfig("space literal must be a list of atom objects")
    atoms = []
    for item in literal:
        if not isinstance(item, dict):
            raise InvalidConfig("space literal entries must be objects")
        try:
            atoms.append(
                Atom(
                    atom_id=str(item["id"]),
                    weight=float(item["weight"]),
                    fiber_dim=int(item["fiber_dim"]),
                    partition=item.get("partition"),
                )
            )
        except KeyError as missing:
            raise InvalidConfig(f"atom object missing key {missing}") from None
    return DiscreteMeasureSpace(atoms)


def family_to_literal(fam: OperatorFamily) -> dict:
    return {
        "ambient_dim": int(fam.ambient_dim),
        "space": space_to_literal(fam.space),
        "ops": [matrix_to_literal(op) for op in fam.ops],
    }


def family_from_literal(literal) -> OperatorFamily:
    if not isinstance(literal, dict):
        raise InvalidConfig("family literal must be an object")
    for key in ("ambient_dim", "space", "ops"):
        if key not in literal:
            raise InvalidConfig(f"family literal missing key {key!r}")
    space = space_from_literal(literal["space"])
    ops = [matrix_from_literal(op) for op in literal["ops"]]
    return OperatorFamily(space=space, ops=ops, ambient_dim=int(literal["ambient_dim"]))


def bound_to_literal(value: float):
    if math.isinf(value):
        return "inf"
    return float(value)


def bound_from_literal(value) -> float:
    if value == "inf":
        return float("inf")
    return float(value)


def bounds_to_literal(bounds: FrameBounds) -> dict:
    return {"lower": bound_to_literal(bounds.lower), "upper": bound_to_literal(bounds.upper)}


def report_to_literal(report: FrameReport) -> dict:
    return {
        "bounds": bounds_to_literal(report.bounds),
        "is_bessel": report.is_bessel,
        "is_ckg_frame": report.is_ckg_frame,
        "is_tight": report.is_tight,
        "is_parseval": report.is_parseval,
        "diagnostics": list(report.diagnostics),
    }
