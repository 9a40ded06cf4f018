"""Decide whether a QGSpec is a braided quantum group, one residual per axiom.

Axiom items are keyed by the identity they evaluate:

    alg.*      associativity and unit laws of the product
    coalg.*    coassociativity and counit laws of the coproduct
    2.1, 2.2   braiding versus product, both orders
    2.3        multiplicativity of the coproduct relative to the braiding
    2.4        mixed coassociativity (uses the braiding inverse)
    2.8        the inverse-side mixed coassociativity
    2.5L/2.5R  antipode law, both sides
    2.7L/2.7R  braiding on unit legs
    2.10-2.12  unit is grouplike: phi(1), eps(1), kappa(1)
    *.bijective  condition-bounded invertibility of kappa and sigma

Failures never abort a run: every axiom is evaluated so a single report
localizes all broken tensors at once.
"""

from __future__ import annotations

from .multiop import (
    COND_LIMIT,
    MultiOp,
    SingularOperatorError,
    compose_chain,
    condition,
    identity,
    invert,
    tensor,
)
from .qgspec import QGSpec
from .report import CheckItem, CheckReport, failed_item, make_item


def _bijectivity_item(item_id: str, ref: str, op: MultiOp) -> CheckItem:
    try:
        cond = condition(op)
    except Exception as exc:  # non-square operators cannot occur in a QGSpec
        return failed_item(item_id, ref, COND_LIMIT, f"condition estimate failed: {exc}")
    ok = cond <= COND_LIMIT
    note = "" if ok else "singular to tolerance"
    return CheckItem(item_id, ref, cond, COND_LIMIT, ok, note)


def check_algebra(spec: QGSpec, tol: float | None = None) -> list[CheckItem]:
    """Residuals for associativity and the two unit laws of the product."""
    tol = spec.tol if tol is None else tol
    m, u = spec.product, spec.unit
    I = identity(spec.dim, 1)
    return [
        make_item("alg.assoc", "product associativity", m @ tensor(m, I), m @ tensor(I, m), tol),
        make_item("alg.unit_left", "left unit law", m @ tensor(u, I), I, tol),
        make_item("alg.unit_right", "right unit law", m @ tensor(I, u), I, tol),
    ]


def check_coalgebra(spec: QGSpec, tol: float | None = None) -> list[CheckItem]:
    """Residuals for coassociativity and the two counit laws."""
    tol = spec.tol if tol is None else tol
    phi, eps = spec.coproduct, spec.counit
    I = identity(spec.dim, 1)
    return [
        make_item(
            "coalg.coassoc", "coproduct coassociativity",
            tensor(phi, I) @ phi, tensor(I, phi) @ phi, tol,
        ),
        make_item("coalg.counit_left", "left counit law", tensor(eps, I) @ phi, I, tol),
        make_item("coalg.counit_right", "right counit law", tensor(I, eps) @ phi, I, tol),
    ]


def check_braiding_axioms(spec: QGSpec, tol: float | None = None) -> list[CheckItem]:
    """The four braiding compatibility axioms plus the inverse-side identity.

    2.1:  s(m x id) = (id x m)(s x id)(id x s)
    2.2:  s(id x m) = (m x id)(id x s)(s x id)
    2.3:  phi m = (m x m)(id x s x id)(phi x phi)
    2.4:  (s x id2)(id x phi x id)(s~ x id)(id x phi)
            = (id2 x s)(id x phi x id)(id x s~)(phi x id)   with s~ = s^-1
    2.8:  same as 2.4 with s in place of s^-1 and the sides exchanged
    """
    tol = spec.tol if tol is None else tol
    d = spec.dim
    m, phi, s = spec.product, spec.coproduct, spec.braiding
    I = identity(d, 1)
    I2 = identity(d, 2)
    items = [
        make_item(
            "2.1", "braiding over product, left",
            s @ tensor(m, I),
            compose_chain(tensor(I, m), tensor(s, I), tensor(I, s)), tol,
        ),
        make_item(
            "2.2", "braiding over product, right",
            s @ tensor(I, m),
            compose_chain(tensor(m, I), tensor(I, s), tensor(s, I)), tol,
        ),
        make_item(
            "2.3", "coproduct multiplicativity",
            phi @ m,
            compose_chain(tensor(m, m), tensor(I, s, I), tensor(phi, phi)), tol,
        ),
    ]
    try:
        s_inv = invert(s, tol=tol)
    except SingularOperatorError as exc:
        items.append(failed_item("2.4", "mixed coassociativity", tol, str(exc)))
    else:
        items.append(
            make_item(
                "2.4", "mixed coassociativity",
                compose_chain(tensor(s, I2), tensor(I, phi, I), tensor(s_inv, I), tensor(I, phi)),
                compose_chain(tensor(I2, s), tensor(I, phi, I), tensor(I, s_inv), tensor(phi, I)),
                tol,
            )
        )
    items.append(
        make_item(
            "2.8", "inverse mixed coassociativity",
            compose_chain(tensor(I2, s), tensor(I, phi, I), tensor(s, I), tensor(I, phi)),
            compose_chain(tensor(s, I2), tensor(I, phi, I), tensor(I, s), tensor(phi, I)),
            tol,
        )
    )
    return items


def check_antipode(spec: QGSpec, tol: float | None = None) -> list[CheckItem]:
    """Antipode law on both sides plus bijectivity of kappa and sigma."""
    tol = spec.tol if tol is None else tol
    m, phi, eps, u, k = spec.product, spec.coproduct, spec.counit, spec.unit, spec.antipode
    I = identity(spec.dim, 1)
    ue = u @ eps
    return [
        make_item("2.5L", "antipode law, kappa left", m @ tensor(k, I) @ phi, ue, tol),
        make_item("2.5R", "antipode law, kappa right", m @ tensor(I, k) @ phi, ue, tol),
        _bijectivity_item("kappa.bijective", "antipode invertibility", k),
        _bijectivity_item("sigma.bijective", "braiding invertibility", spec.braiding),
    ]


def check_all(spec: QGSpec, tol: float | None = None) -> CheckReport:
    """Full axiom suite plus the grouplike-unit sanity identities.

    The sanity items (2.7, 2.10-2.12) are consequences of the axioms;
    checking both sides catches checker bugs on valid specs.
    """
    tol = spec.tol if tol is None else tol
    d = spec.dim
    u, phi, eps, k, s = spec.unit, spec.coproduct, spec.counit, spec.antipode, spec.braiding
    I = identity(d, 1)
    items = (
        check_algebra(spec, tol)
        + check_coalgebra(spec, tol)
        + check_braiding_axioms(spec, tol)
        + check_antipode(spec, tol)
        + [
            make_item("2.7L", "braiding absorbs unit, left", s @ tensor(u, I), tensor(I, u), tol),
            make_item("2.7R", "braiding absorbs unit, right", s @ tensor(I, u), tensor(u, I), tol),
            make_item("2.10", "coproduct of unit", phi @ u, tensor(u, u), tol),
            make_item("2.11", "counit of unit", eps @ u, identity(d, 0), tol),
            make_item("2.12", "antipode of unit", k @ u, u, tol),
        ]
    )
    return CheckReport(tuple(items))
