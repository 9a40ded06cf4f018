"""Candidate braided quantum group: data model, builders, JSON files.

A :class:`QGSpec` holds the six structure tensors of a candidate braided
quantum group over a d-dimensional space A with a fixed basis:

    product    m       : A (x) A -> A
    unit       1       : C -> A
    coproduct  phi     : A -> A (x) A
    counit     eps     : A -> C
    antipode   kappa   : A -> A
    braiding   sigma   : A (x) A -> A (x) A

Built-in instances are generated programmatically from their defining
relations (never stored as matrix literals), so the construction rules
below stay the single source of truth that the axiom checker is run
against.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .multiop import (
    DEFAULT_TOL,
    MultiOp,
    ShapeError,
    flip,
    from_entries,
    inf_norm,
)

#: role name -> (arity_in, arity_out)
TENSOR_SHAPES: dict[str, tuple[int, int]] = {
    "product": (2, 1),
    "unit": (0, 1),
    "coproduct": (1, 2),
    "counit": (1, 0),
    "antipode": (1, 1),
    "braiding": (2, 2),
}

FILE_FORMAT = "bqg/1"
FILE_EXTENSION = ".bqg.json"


class SpecFormatError(ValueError):
    """An instance file is malformed or violates a shape invariant."""


class GroupTableError(ValueError):
    """A Cayley table is not a group table."""


@dataclass(frozen=True, eq=False)
class QGSpec:
    """A candidate braided quantum group given by structure constants."""

    dim: int
    labels: tuple[str, ...]
    product: MultiOp
    unit: MultiOp
    coproduct: MultiOp
    counit: MultiOp
    antipode: MultiOp
    braiding: MultiOp
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
        if self.dim < 1:
            raise SpecFormatError(f"dim must be >= 1, got {self.dim}")
        if len(self.labels) != self.dim:
            raise SpecFormatError(
                f"expected {self.dim} basis labels, got {len(self.labels)}"
            )
        if not (self.tol > 0):
            raise SpecFormatError(f"tol must be positive, got {self.tol}")
        for name, (p, q) in TENSOR_SHAPES.items():
            op: MultiOp = getattr(self, name)
            if op.dim != self.dim or op.arity_in != p or op.arity_out != q:
                raise SpecFormatError(
                    f"{name} has shape ({op.shape_str()}), expected "
                    f"{q}<-{p} legs over dim {self.dim}"
                )
        if inf_norm(self.unit) == 0.0:
            raise SpecFormatError("unit vector is zero")
        if inf_norm(self.counit) == 0.0:
            raise SpecFormatError("counit row is zero")

    def tensors(self) -> dict[str, MultiOp]:
        return {name: getattr(self, name) for name in TENSOR_SHAPES}


# ---------------------------------------------------------------------------
# instance files
# ---------------------------------------------------------------------------


def _tensor_to_records(op: MultiOp) -> list[dict]:
    return [
        {"indices": list(idx), "re": v.real, "im": v.imag}
        for idx, v in op.nonzeros()
    ]


def save(spec: QGSpec, path) -> None:
    """Write a spec as sparse JSON triplets, full float precision."""
    doc = {
        "format": FILE_FORMAT,
        "dim": spec.dim,
        "labels": list(spec.labels),
        "tol": spec.tol,
        "tensors": {name: _tensor_to_records(op) for name, op in spec.tensors().items()},
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def load(path) -> QGSpec:
    """Read a spec file, validating shapes, bounds and duplicates."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SpecFormatError(f"{path}: top level must be an object")
    fmt = doc.get("format", FILE_FORMAT)
    if fmt != FILE_FORMAT:
        raise SpecFormatError(f"{path}: unknown format marker {fmt!r}")
    try:
        dim = int(doc["dim"])
    except (KeyError, TypeError, ValueError):
        raise SpecFormatError(f"{path}: missing or invalid 'dim'") from None
    labels = doc.get("labels")
    if labels is None:
        labels = [f"b{i}" for i in range(dim)]
    tol = float(doc.get("tol", DEFAULT_TOL))
    tensors_doc = doc.get("tensors")
    if not isinstance(tensors_doc, dict):
        raise SpecFormatError(f"{path}: missing 'tensors' object")
    ops: dict[str, MultiOp] = {}
    for name, (p, q) in TENSOR_SHAPES.items():
        if name not in tensors_doc:
            raise SpecFormatError(f"{path}: {name} missing")
        records = tensors_doc[name]
        if not isinstance(records, list):
            raise SpecFormatError(f"{path}: {name} must be a list of records")
        pairs = []
        for rec in records:
            try:
                idx = tuple(int(i) for i in rec["indices"])
                value = complex(float(rec["re"]), float(rec.get("im", 0.0)))
            except (KeyError, TypeError, ValueError):
                raise SpecFormatError(
                    f"{path}: {name} record {rec!r} is not "
                    "{{indices: [..], re, im}}"
                ) from None
            pairs.append((idx, value))
        try:
            ops[name] = from_entries(dim, p, q, pairs, name=name)
        except ShapeError as exc:
            raise SpecFormatError(f"{path}: {exc}") from exc
    extra = set(tensors_doc) - set(TENSOR_SHAPES)
    if extra:
        raise SpecFormatError(f"{path}: unknown tensors {sorted(extra)}")
    return QGSpec(dim=dim, labels=tuple(labels), tol=tol, **ops)


# ---------------------------------------------------------------------------
# built-in instances
# ---------------------------------------------------------------------------


def group_algebra(
    cayley: Sequence[Sequence[int]],
    inverse: Sequence[int] | None = None,
    identity_idx: int | None = None,
    labels: Sequence[str] | None = None,
    tol: float = DEFAULT_TOL,
) -> QGSpec:
    """The group algebra C[G] of a finite group given by its Cayley table.

    Basis = group elements; m(g,h) = gh from the table; phi(g) = g (x) g;
    eps(g) = 1; kappa(g) = g^-1; braiding = ordinary transposition.  The
    table is verified to be a group (associativity, two-sided identity,
    inverses); violations are rejected naming the offending elements.
    """
    table = np.asarray(cayley, dtype=int)
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise GroupTableError(f"Cayley table must be square, got shape {table.shape}")
    d = table.shape[0]
    if d < 1:
        raise GroupTableError("Cayley table is empty")
    if table.min() < 0 or table.max() >= d:
        raise GroupTableError("Cayley table entries must index group elements")

    if identity_idx is None:
        candidates = [
            e
            for e in range(d)
            if all(table[e, j] == j and table[j, e] == j for j in range(d))
        ]
        if not candidates:
            raise GroupTableError("table has no two-sided identity element")
        e = candidates[0]
    else:
        e = int(identity_idx)
        if not all(table[e, j] == j and table[j, e] == j for j in range(d)):
            raise GroupTableError(f"element {e} is not a two-sided identity")

    for a in range(d):
        for b in range(d):
            for c in range(d):
                if table[table[a, b], c] != table[a, table[b, c]]:
                    raise GroupTableError(
                        f"associativity fails at triple (a={a}, b={b}, c={c})"
                    )

    if inverse is None:
        inv = []
        for a in range(d):
            found = [b for b in range(d) if table[a, b] == e and table[b, a] == e]
            if not found:
                raise GroupTableError(f"element {a} has no two-sided inverse")
            inv.append(found[0])
    else:
        inv = [int(b) for b in inverse]
        if len(inv) != d:
            raise GroupTableError(f"inverse vector has length {len(inv)}, expected {d}")
        for a, b in enumerate(inv):
            if table[a, b] != e or table[b, a] != e:
                raise GroupTableError(f"inverse[{a}] = {b} is not an inverse of {a}")

    if labels is None:
        labels = [f"g{i}" if i != e else "e" for i in range(d)]

    product = from_entries(
        d, 2, 1, {(int(table[i, j]), i, j): 1.0 for i in range(d) for j in range(d)}
    )
    unit = from_entries(d, 0, 1, {(e,): 1.0})
    coproduct = from_entries(d, 1, 2, {(i, i, i): 1.0 for i in range(d)})
    counit = from_entries(d, 1, 0, {(i,): 1.0 for i in range(d)})
    antipode = from_entries(d, 1, 1, {(inv[i], i): 1.0 for i in range(d)})
    return QGSpec(d, tuple(labels), product, unit, coproduct, counit, antipode, flip(d), tol)


def z2(tol: float = DEFAULT_TOL) -> QGSpec:
    """C[Z_2], the smallest nontrivial group algebra."""
    return group_algebra([[0, 1], [1, 0]], labels=("1", "g"), tol=tol)


def s3(tol: float = DEFAULT_TOL) -> QGSpec:
    """C[S_3], a noncommutative group algebra on six basis elements."""
    perms = sorted(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[x]] for x in range(3))] for q in perms]
        for p in perms
    ]
    labels = ["".join(map(str, p)) for p in perms]
    return group_algebra(table, labels=labels, tol=tol)


def sweedler(tol: float = DEFAULT_TOL) -> QGSpec:
    """The four-dimensional algebra on {1, g, x, gx} with g^2 = 1, x^2 = 0,
    xg = -gx; phi(g) = g (x) g, phi(x) = x (x) 1 + g (x) x; kappa(x) = -gx.

    Its antipode has order four, so it exercises the non-involutive case;
    the braiding is the ordinary transposition.
    """
    d = 4  # basis order: 1, g, x, gx
    prod: dict[tuple[int, ...], complex] = {}
    for j in range(d):
        prod[(j, 0, j)] = 1.0
    for j in range(1, d):
        prod[(j, j, 0)] = 1.0
    prod[(0, 1, 1)] = 1.0   # g g = 1
    prod[(3, 1, 2)] = 1.0   # g x = gx
    prod[(2, 1, 3)] = 1.0   # g gx = x
    prod[(3, 2, 1)] = -1.0  # x g = -gx
    prod[(2, 3, 1)] = -1.0  # gx g = -x
    product = from_entries(d, 2, 1, prod)
    unit = from_entries(d, 0, 1, {(0,): 1.0})
    coproduct = from_entries(
        d,
        1,
        2,
        {
            (0, 0, 0): 1.0,
            (1, 1, 1): 1.0,
            (2, 0, 2): 1.0,
            (1, 2, 2): 1.0,
            (3, 1, 3): 1.0,
            (0, 3, 3): 1.0,
        },
    )
    counit = from_entries(d, 1, 0, {(0,): 1.0, (1,): 1.0})
    antipode = from_entries(d, 1, 1, {(0, 0): 1.0, (1, 1): 1.0, (3, 2): -1.0, (2, 3): 1.0})
    return QGSpec(
        d, ("1", "g", "x", "gx"), product, unit, coproduct, counit, antipode, flip(d), tol
    )


def clifford_rank1(tol: float = DEFAULT_TOL) -> QGSpec:
    """The rank-one braided Clifford instance on {1, e} with e^2 = 1.

    phi(e) = e (x) 1 + 1 (x) e, eps(e) = 0, kappa(e) = -e.  The braiding is
    the super-flip corrected by a multiple of 1 (x) 1:

        sigma(e (x) e) = -e (x) e - 1 (x) 1,   transposition elsewhere,

    the unique such extension making the coproduct multiplicative.  Its
    counit is not multiplicative, so the instance has no characters at all.
    """
    d = 2  # basis order: 1, e
    product = from_entries(
        d, 2, 1, {(0, 0, 0): 1.0, (1, 0, 1): 1.0, (1, 1, 0): 1.0, (0, 1, 1): 1.0}
    )
    unit = from_entries(d, 0, 1, {(0,): 1.0})
    coproduct = from_entries(d, 1, 2, {(0, 0, 0): 1.0, (1, 0, 1): 1.0, (0, 1, 1): 1.0})
    counit = from_entries(d, 1, 0, {(0,): 1.0})
    antipode = from_entries(d, 1, 1, {(0, 0): 1.0, (1, 1): -1.0})
    braiding = from_entries(
        d,
        2,
        2,
        {
            (0, 0, 0, 0): 1.0,
            (1, 0, 0, 1): 1.0,
            (0, 1, 1, 0): 1.0,
            (1, 1, 1, 1): -1.0,
            (0, 0, 1, 1): -1.0,
        },
    )
    return QGSpec(d, ("1", "e"), product, unit, coproduct, counit, antipode, braiding, tol)


def superline(tol: float = DEFAULT_TOL) -> QGSpec:
    """The super-line (Grassmann) instance on {1, e} with e^2 = 0.

    Same coproduct, counit and antipode as the rank-one Clifford instance,
    but the braiding is the plain super-flip: sigma(e (x) e) = -e (x) e.
    """
    d = 2
    product = from_entries(d, 2, 1, {(0, 0, 0): 1.0, (1, 0, 1): 1.0, (1, 1, 0): 1.0})
    unit = from_entries(d, 0, 1, {(0,): 1.0})
    coproduct = from_entries(d, 1, 2, {(0, 0, 0): 1.0, (1, 0, 1): 1.0, (0, 1, 1): 1.0})
    counit = from_entries(d, 1, 0, {(0,): 1.0})
    antipode = from_entries(d, 1, 1, {(0, 0): 1.0, (1, 1): -1.0})
    braiding = from_entries(
        d,
        2,
        2,
        {
            (0, 0, 0, 0): 1.0,
            (1, 0, 0, 1): 1.0,
            (0, 1, 1, 0): 1.0,
            (1, 1, 1, 1): -1.0,
        },
    )
    return QGSpec(d, ("1", "e"), product, unit, coproduct, counit, antipode, braiding, tol)


BUILTINS: dict[str, Callable[[], QGSpec]] = {
    "z2": z2,
    "s3": s3,
    "sweedler": sweedler,
    "clifford_rank1": clifford_rank1,
    "superline": superline,
}


def builtin(name: str) -> QGSpec:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise KeyError(
            f"unknown built-in {name!r}; available: {', '.join(sorted(BUILTINS))}"
        ) from None
