"""Named registry of the derived twisting and braid identities.

Every entry evaluates one operator identity on a valid spec plus its
derived set and is keyed by a stable catalog id of the form "2.NN"
(run ``braidcheck list`` for the full table with formulas).  Builders are
hard-coded compositions, keyed registry entries rather than an expression
DSL, to keep the trusted base small.

Notation in the descriptions: s = braiding, t = secondary braiding,
k = antipode, m = product, phi = coproduct, eps = counit, u = unit,
x = tensor product, ' = inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .multiop import MultiOp, identity, tensor
from .qgspec import QGSpec
from .derived import DerivedSet, derive
from .report import CheckReport, make_item


class _Ctx:
    """Aliases shared by all builders, computed once per catalog run."""

    def __init__(self, spec: QGSpec, der: DerivedSet):
        d = spec.dim
        self.m = spec.product
        self.u = spec.unit
        self.phi = spec.coproduct
        self.eps = spec.counit
        self.k = spec.antipode
        self.s = spec.braiding
        self.t = der.tau
        self.s_inv = der.sigma_inv
        self.t_inv = der.tau_inv
        self.I = identity(d, 1)
        self.I2 = identity(d, 2)
        self.ue = self.u @ self.eps
        self.tst = der.tau_inv @ self.s @ der.tau_inv     # t' s t'
        self.tsit = self.t @ der.sigma_inv @ self.t       # t s' t

    def L(self, op: MultiOp) -> MultiOp:
        return tensor(op, self.I)

    def R(self, op: MultiOp) -> MultiOp:
        return tensor(self.I, op)


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    ref: str
    description: str
    builder: Callable[[_Ctx], tuple[MultiOp, MultiOp]]


def _braid(a: str, b: str, c: str):
    # X(a)Y(b)X(c) = Y(c)X(b)Y(a) with X = (. x id), Y = (id x .)
    def build(o: _Ctx):
        ops = {"s": o.s, "t": o.t}
        lhs = o.L(ops[a]) @ o.R(ops[b]) @ o.L(ops[c])
        rhs = o.R(ops[c]) @ o.L(ops[b]) @ o.R(ops[a])
        return lhs, rhs

    return build


CATALOG: tuple[CatalogEntry, ...] = (
    CatalogEntry(
        "2.29", "coproduct twist, s left",
        "(phi x id) s = (id x t)(s x id)(id x phi)",
        lambda o: (o.L(o.phi) @ o.s, o.R(o.t) @ o.L(o.s) @ o.R(o.phi)),
    ),
    CatalogEntry(
        "2.30", "coproduct twist, s right",
        "(id x phi) s = (t x id)(id x s)(phi x id)",
        lambda o: (o.R(o.phi) @ o.s, o.L(o.t) @ o.R(o.s) @ o.L(o.phi)),
    ),
    CatalogEntry(
        "2.31", "coproduct twist, s left alt",
        "(phi x id) s = (id x s)(t x id)(id x phi)",
        lambda o: (o.L(o.phi) @ o.s, o.R(o.s) @ o.L(o.t) @ o.R(o.phi)),
    ),
    CatalogEntry(
        "2.32", "coproduct twist, s right alt",
        "(id x phi) s = (s x id)(id x t)(phi x id)",
        lambda o: (o.R(o.phi) @ o.s, o.L(o.s) @ o.R(o.t) @ o.L(o.phi)),
    ),
    CatalogEntry(
        "2.33", "coproduct twist, t left",
        "(phi x id) t = (id x t)(t x id)(id x phi)",
        lambda o: (o.L(o.phi) @ o.t, o.R(o.t) @ o.L(o.t) @ o.R(o.phi)),
    ),
    CatalogEntry(
        "2.34", "coproduct twist, t right",
        "(id x phi) t = (t x id)(id x t)(phi x id)",
        lambda o: (o.R(o.phi) @ o.t, o.L(o.t) @ o.R(o.t) @ o.L(o.phi)),
    ),
    CatalogEntry(
        "2.35", "product twist, t left",
        "t (m x id) = (id x m)(t x id)(id x t)",
        lambda o: (o.t @ o.L(o.m), o.R(o.m) @ o.L(o.t) @ o.R(o.t)),
    ),
    CatalogEntry(
        "2.36", "product twist, t right",
        "t (id x m) = (m x id)(id x t)(t x id)",
        lambda o: (o.t @ o.R(o.m), o.L(o.m) @ o.R(o.t) @ o.L(o.t)),
    ),
    CatalogEntry(
        "2.37", "antipode anticomultiplicativity",
        "phi k = s (k x k) phi",
        lambda o: (o.phi @ o.k, o.s @ tensor(o.k, o.k) @ o.phi),
    ),
    CatalogEntry(
        "2.38", "antipode antimultiplicativity",
        "k m = m (k x k) t s' t s' t",
        lambda o: (
            o.k @ o.m,
            o.m @ tensor(o.k, o.k) @ o.t @ o.s_inv @ o.t @ o.s_inv @ o.t,
        ),
    ),
    CatalogEntry(
        "2.39", "left absorber identity",
        "(id x m)(s x id)(k x id2)(t' s t' x id)(id x phi) = id x u eps",
        lambda o: (
            o.R(o.m) @ o.L(o.s) @ tensor(o.k, o.I2) @ o.L(o.tst) @ o.R(o.phi),
            o.R(o.ue),
        ),
    ),
    CatalogEntry(
        "2.40", "right absorber identity",
        "(m x id)(id x s)(id2 x k)(id x t' s t')(phi x id) = u eps x id",
        lambda o: (
            o.L(o.m) @ o.R(o.s) @ tensor(o.I2, o.k) @ o.R(o.tst) @ o.L(o.phi),
            o.L(o.ue),
        ),
    ),
    CatalogEntry(
        "2.41", "antipode twist, s right",
        "s (id x k) = (k x id) t s' t",
        lambda o: (o.s @ o.R(o.k), o.L(o.k) @ o.tsit),
    ),
    CatalogEntry(
        "2.42", "antipode twist, s left",
        "s (k x id) = (id x k) t s' t",
        lambda o: (o.s @ o.L(o.k), o.R(o.k) @ o.tsit),
    ),
    CatalogEntry(
        "2.43", "antipode twist, t right",
        "t (id x k) = (k x id) t",
        lambda o: (o.t @ o.R(o.k), o.L(o.k) @ o.t),
    ),
    CatalogEntry(
        "2.44", "antipode twist, t left",
        "t (k x id) = (id x k) t",
        lambda o: (o.t @ o.L(o.k), o.R(o.k) @ o.t),
    ),
    CatalogEntry(
        "2.45", "antipode pair commutes with t",
        "(k x k) t = t (k x k)",
        lambda o: (tensor(o.k, o.k) @ o.t, o.t @ tensor(o.k, o.k)),
    ),
    CatalogEntry(
        "2.46", "antipode pair commutes with s",
        "(k x k) s = s (k x k)",
        lambda o: (tensor(o.k, o.k) @ o.s, o.s @ tensor(o.k, o.k)),
    ),
    CatalogEntry("2.47", "braid relation (s,s,s)",
                 "X(s)Y(s)X(s) = Y(s)X(s)Y(s)", _braid("s", "s", "s")),
    CatalogEntry("2.48", "braid relation (t,s,s)",
                 "X(t)Y(s)X(s) = Y(s)X(s)Y(t)", _braid("t", "s", "s")),
    CatalogEntry("2.49", "braid relation (s,t,s)",
                 "X(s)Y(t)X(s) = Y(s)X(t)Y(s)", _braid("s", "t", "s")),
    CatalogEntry("2.50", "braid relation (s,s,t)",
                 "X(s)Y(s)X(t) = Y(t)X(s)Y(s)", _braid("s", "s", "t")),
    CatalogEntry("2.51", "braid relation (t,t,s)",
                 "X(t)Y(t)X(s) = Y(s)X(t)Y(t)", _braid("t", "t", "s")),
    CatalogEntry("2.52", "braid relation (t,s,t)",
                 "X(t)Y(s)X(t) = Y(t)X(s)Y(t)", _braid("t", "s", "t")),
    CatalogEntry("2.53", "braid relation (s,t,t)",
                 "X(s)Y(t)X(t) = Y(t)X(t)Y(s)", _braid("s", "t", "t")),
    CatalogEntry("2.54", "braid relation (t,t,t)",
                 "X(t)Y(t)X(t) = Y(t)X(t)Y(t)", _braid("t", "t", "t")),
)

_BY_ID: dict[str, CatalogEntry] = {e.id: e for e in CATALOG}
assert len(_BY_ID) == len(CATALOG), "catalog ids must be unique"


def list_catalog() -> list[dict]:
    """Stable listing of every catalog entry (id, ref, description)."""
    return [
        {"id": e.id, "ref": e.ref, "description": e.description} for e in CATALOG
    ]


def run_catalog(
    spec: QGSpec,
    der: DerivedSet | None = None,
    subset: list[str] | None = None,
    tol: float | None = None,
) -> CheckReport:
    """Evaluate every catalog identity (or a subset by id) as residuals."""
    tol = spec.tol if tol is None else tol
    if der is None:
        der = derive(spec, tol)
    if subset is None:
        entries = CATALOG
    else:
        unknown = [i for i in subset if i not in _BY_ID]
        if unknown:
            raise KeyError(f"unknown identity id(s): {', '.join(unknown)}")
        entries = tuple(_BY_ID[i] for i in subset)
    ctx = _Ctx(spec, der)
    items = []
    for entry in entries:
        lhs, rhs = entry.builder(ctx)
        items.append(make_item(entry.id, entry.ref, lhs, rhs, tol))
    return CheckReport(tuple(items))
