"""Braid systems, their completion, the sigma_n family and the deformed
groups G_n, plus the Majid-type classification of the counit.

A braid system over the algebra of a spec is a set F of bijective
operators on A (x) A satisfying, for all alpha, beta, gamma in F,

    A1: (alpha x id)(id x beta)(gamma x id) = (id x gamma)(beta x id)(id x alpha)
    A2: alpha (id x m) = (m x id)(id x alpha)(alpha x id)
    A3: alpha (m x id) = (id x m)(alpha x id)(id x alpha)

and is complete when closed under (a, b, c) -> a b^-1 c.  For a valid
spec, {sigma, tau} is a braid system whose completion is expected to be
the family sigma_n = (s t^-1)^(n-1) s; the completion here reports the raw
closure set and matches each member against that family instead of
assuming the equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .axioms import check_all
from .catalog import run_catalog
from .derived import DerivedSet, derive
from .multiop import (
    COND_LIMIT,
    MultiOp,
    ShapeError,
    condition,
    identity,
    invert,
    residual,
    tensor,
)
from .qgspec import QGSpec
from .report import CheckItem, CheckReport, failed_item, make_item, merge


class BraidSystemError(ValueError):
    """Completion produced a set that fails re-certification."""


@dataclass(frozen=True, eq=False)
class BraidSystem:
    """A deduplicated set of A (x) A operators with closure metadata."""

    dim: int
    ops: tuple[MultiOp, ...]
    closed: bool
    depth_reached: int
    round_sizes: tuple[int, ...]
    unbounded: bool = False
    family_match: tuple[int | None, ...] | None = None


@dataclass(frozen=True, eq=False)
class GnResult:
    """The deformed group G_n with its certification report."""

    n: int
    spec_n: QGSpec
    report: CheckReport


@dataclass(frozen=True)
class MajidClassification:
    """The four equivalent counit-multiplicativity conditions.

    m1: eps m = eps x eps          ml: (eps x id) s = id x eps
    mr: (id x eps) s = eps x id    m3: s = tau

    On a valid spec the four agree; a mixed verdict means the spec fails
    the axioms or the checker is broken.
    """

    m1: bool
    ml: bool
    mr: bool
    m3: bool
    majid_type: bool | None
    mixed: bool
    residuals: dict[str, float] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# braid-system predicate and completion
# ---------------------------------------------------------------------------


def _check_ops_shape(spec: QGSpec, ops) -> list[MultiOp]:
    ops = list(ops)
    for op in ops:
        if (op.dim, op.arity_in, op.arity_out) != (spec.dim, 2, 2):
            raise ShapeError(
                f"braid-system member has shape ({op.shape_str()}), expected "
                f"2<-2 legs over dim {spec.dim}"
            )
    return ops


def is_braid_system(spec: QGSpec, ops, tol: float | None = None) -> CheckReport:
    """Per-triple A1 items plus per-member A2/A3, unit-law and bijectivity
    items for a candidate system over the spec's algebra."""
    tol = spec.tol if tol is None else tol
    ops = _check_ops_shape(spec, ops)
    d = spec.dim
    m, u = spec.product, spec.unit
    I = identity(d, 1)
    items: list[CheckItem] = []
    lifted_l = [tensor(op, I) for op in ops]
    lifted_r = [tensor(I, op) for op in ops]
    for i, op in enumerate(ops):
        try:
            cond = condition(op)
            ok = cond <= COND_LIMIT
            items.append(
                CheckItem(f"bij[{i}]", f"member {i} invertibility", cond, COND_LIMIT, ok,
                          "" if ok else "singular to tolerance")
            )
        except Exception as exc:
            items.append(failed_item(f"bij[{i}]", f"member {i} invertibility",
                                     COND_LIMIT, str(exc)))
        items.append(
            make_item(
                f"A2[{i}]", f"member {i} over product, right",
                op @ tensor(I, m), tensor(m, I) @ lifted_r[i] @ lifted_l[i], tol,
            )
        )
        items.append(
            make_item(
                f"A3[{i}]", f"member {i} over product, left",
                op @ tensor(m, I), tensor(I, m) @ lifted_l[i] @ lifted_r[i], tol,
            )
        )
        items.append(
            make_item(
                f"unitL[{i}]", f"member {i} absorbs unit, left",
                op @ tensor(u, I), tensor(I, u), tol,
            )
        )
        items.append(
            make_item(
                f"unitR[{i}]", f"member {i} absorbs unit, right",
                op @ tensor(I, u), tensor(u, I), tol,
            )
        )
    for a in range(len(ops)):
        for b in range(len(ops)):
            for c in range(len(ops)):
                items.append(
                    make_item(
                        f"A1[{a},{b},{c}]", f"mixed braid relation ({a},{b},{c})",
                        lifted_l[a] @ lifted_r[b] @ lifted_l[c],
                        lifted_r[c] @ lifted_l[b] @ lifted_r[a],
                        tol,
                    )
                )
    return CheckReport(tuple(items))


def _stack(mats: list[np.ndarray]) -> np.ndarray:
    return np.stack(mats, axis=0)


def _certify_fast(spec: QGSpec, mats: list[np.ndarray], tol: float, where: str) -> None:
    """Vectorized A1/A2/A3 re-certification used inside completion rounds."""
    d = spec.dim
    eye = np.eye(d, dtype=np.complex128)
    L = _stack([np.kron(a, eye) for a in mats])
    R = _stack([np.kron(eye, a) for a in mats])
    # A1 over all ordered triples
    P = np.einsum("bij,cjk->bcik", R, L)
    lhs = np.einsum("aij,bcjk->abcik", L, P)
    Q = np.einsum("bij,ajk->abik", L, R)
    rhs = np.einsum("cij,abjk->abcik", R, Q)
    worst = float(np.max(np.abs(lhs - rhs)))
    if worst > tol:
        raise BraidSystemError(
            f"completion {where}: mixed braid relation fails with residual {worst:.2e}"
        )
    # A2/A3 per member
    m = spec.product.to_dense()
    mI = np.kron(m, eye)
    Im = np.kron(eye, m)
    for i, a in enumerate(mats):
        lhs2 = a @ Im
        rhs2 = mI @ R[i] @ L[i]
        lhs3 = a @ mI
        rhs3 = Im @ L[i] @ R[i]
        worst = max(float(np.max(np.abs(lhs2 - rhs2))), float(np.max(np.abs(lhs3 - rhs3))))
        if worst > tol:
            raise BraidSystemError(
                f"completion {where}: member {i} fails the product compatibility "
                f"with residual {worst:.2e}"
            )


def _dedup(mats: list[np.ndarray], tol: float) -> list[np.ndarray]:
    kept: list[np.ndarray] = []
    for a in mats:
        if not any(np.max(np.abs(a - b)) <= tol for b in kept):
            kept.append(a)
    return kept


def complete(
    spec: QGSpec,
    ops,
    max_depth: int = 3,
    tol: float | None = None,
    norm_bound: float = 1e6,
) -> BraidSystem:
    """Iterate F -> {a b^-1 c}, deduplicating by residual, until closure,
    max_depth, or a norm blow-up (which flags the system as unbounded).

    Each round is re-certified against A1-A3; a certification failure is an
    internal error and raises :class:`BraidSystemError`.
    """
    tol = spec.tol if tol is None else tol
    ops = _check_ops_shape(spec, ops)
    mats = _dedup([op.to_dense() for op in ops], tol)
    _certify_fast(spec, mats, tol, "round 0")
    round_sizes = [len(mats)]
    closed = False
    unbounded = False
    depth_reached = 0
    for depth in range(1, max_depth + 1):
        try:
            invs = [np.linalg.inv(a) for a in mats]
        except np.linalg.LinAlgError as exc:
            raise BraidSystemError(
                f"completion round {depth}: a member is not invertible ({exc})"
            ) from exc
        M = _stack(mats)
        V = _stack(invs)
        prods = np.einsum("aij,bjk,ckl->abcil", M, V, M)
        candidates = prods.reshape(-1, M.shape[1], M.shape[2])
        new = []
        for cand in candidates:
            if any(np.max(np.abs(cand - b)) <= tol for b in mats):
                continue
            if any(np.max(np.abs(cand - b)) <= tol for b in new):
                continue
            new.append(cand)
        if not new:
            closed = True
            depth_reached = depth - 1
            break
        mats = mats + new
        depth_reached = depth
        round_sizes.append(len(mats))
        if max(np.max(np.abs(a)) for a in mats) > norm_bound:
            unbounded = True
            break
        _certify_fast(spec, mats, tol, f"round {depth}")
    members = tuple(MultiOp(spec.dim, 2, 2, a) for a in mats)
    return BraidSystem(
        dim=spec.dim,
        ops=members,
        closed=closed,
        depth_reached=depth_reached,
        round_sizes=tuple(round_sizes),
        unbounded=unbounded,
    )


# ---------------------------------------------------------------------------
# the sigma_n family
# ---------------------------------------------------------------------------


def _power(pos: MultiOp, neg: MultiOp, k: int, dim: int) -> MultiOp:
    """pos^k for k >= 0, neg^(-k) for k < 0 (neg must be pos^-1)."""
    out = identity(dim, 2)
    op = pos if k >= 0 else neg
    for _ in range(abs(k)):
        out = out @ op
    return out


def _sigma_n_pair(spec: QGSpec, der: DerivedSet, n: int) -> tuple[MultiOp, MultiOp]:
    s = spec.braiding
    st = der.st_inv                 # s t^-1
    ts = der.tau @ der.sigma_inv    # t s^-1 = (s t^-1)^-1
    u = der.tau_inv @ s             # t^-1 s
    ui = der.s_inv_t                # s^-1 t = (t^-1 s)^-1
    e1 = _power(st, ts, n - 1, spec.dim) @ s
    e2 = s @ _power(u, ui, n - 1, spec.dim)
    return e1, e2


def sigma_n(spec: QGSpec, der: DerivedSet | None = None, n: int = 1,
            tol: float | None = None) -> MultiOp:
    """The n-th braiding (s t^-1)^(n-1) s = s (t^-1 s)^(n-1).

    Both expressions are evaluated and compared, with the n = 1 and n = 0
    anchors (sigma and tau) certified directly.
    """
    tol = spec.tol if tol is None else tol
    if der is None:
        der = derive(spec, tol)
    e1, e2 = _sigma_n_pair(spec, der, n)
    r = residual(e1, e2)
    if r > tol:
        raise BraidSystemError(
            f"the two expressions for sigma_{n} differ by {r:.2e} (> tol {tol:.0e})"
        )
    if n == 1 and residual(e1, spec.braiding) > tol:
        raise BraidSystemError("sigma_1 does not reproduce the braiding")
    if n == 0 and residual(e1, der.tau) > tol:
        raise BraidSystemError("sigma_0 does not reproduce the secondary braiding")
    return e1


def sigma_family(spec: QGSpec, der: DerivedSet | None = None,
                 lo: int = -2, hi: int = 2, tol: float | None = None) -> dict[int, MultiOp]:
    """The family {sigma_n : lo <= n <= hi}, built by incremental products."""
    tol = spec.tol if tol is None else tol
    if der is None:
        der = derive(spec, tol)
    s = spec.braiding
    st = der.st_inv
    ts = der.tau @ der.sigma_inv
    fam: dict[int, MultiOp] = {1: s}
    op = s
    for n in range(2, hi + 1):
        op = st @ op
        fam[n] = op
    op = s
    for n in range(0, lo - 1, -1):
        op = ts @ op
        fam[n] = op
    return {n: fam[n] for n in range(lo, hi + 1) if n in fam}


def completion_scan_bound(depth: int, lo: int = 0, hi: int = 1) -> tuple[int, int]:
    """Range of family indices reachable from {sigma_lo..sigma_hi} in
    `depth` rounds of a b^-1 c words (index arithmetic a - b + c)."""
    for _ in range(depth):
        lo, hi = 2 * lo - hi, 2 * hi - lo
    return lo, hi


def match_family(system: BraidSystem, family: dict[int, MultiOp],
                 tol: float) -> BraidSystem:
    """Tag each completion member with the family index it matches, or None.

    Members outside the family are flagged (None) rather than assumed away.
    """
    matches: list[int | None] = []
    for op in system.ops:
        found = None
        for n, fam_op in family.items():
            if residual(op, fam_op) <= tol:
                found = n
                break
        matches.append(found)
    return BraidSystem(
        dim=system.dim,
        ops=system.ops,
        closed=system.closed,
        depth_reached=system.depth_reached,
        round_sizes=system.round_sizes,
        unbounded=system.unbounded,
        family_match=tuple(matches),
    )


# ---------------------------------------------------------------------------
# the deformed groups G_n
# ---------------------------------------------------------------------------


def build_Gn(spec: QGSpec, der: DerivedSet | None = None, n: int = 0,
             include_catalog: bool = True, tol: float | None = None) -> GnResult:
    """Construct G_n with product m_n = m s_n^-1 s and antipode

        k_n = (eps x k) s_n^-1 s phi = (k x eps) s_n^-1 s phi,

    certify both k_n expressions, the k_n inverse formula
    k_n^-1 k = (eps x id) s^-1 s_n phi, and run the full axiom suite (and
    identity catalog) on the resulting spec.
    """
    tol = spec.tol if tol is None else tol
    if der is None:
        der = derive(spec, tol)
    d = spec.dim
    I = identity(d, 1)
    m, phi, eps, k, s = spec.product, spec.coproduct, spec.counit, spec.antipode, spec.braiding

    e1, e2 = _sigma_n_pair(spec, der, n)
    extra: list[CheckItem] = [make_item("A6.agree", f"sigma_{n} expressions agree", e1, e2, tol)]
    sn = e1
    sn_inv = invert(sn, tol=tol)
    core = sn_inv @ s
    m_n = m @ core
    k_plus = tensor(eps, k) @ core @ phi
    k_minus = tensor(k, eps) @ core @ phi
    extra.append(make_item("A13.agree", "antipode expressions agree", k_plus, k_minus, tol))
    w1 = tensor(eps, I) @ der.sigma_inv @ sn @ phi
    w2 = tensor(I, eps) @ der.sigma_inv @ sn @ phi
    extra.append(make_item("A13.inv.agree", "antipode inverse expressions agree", w1, w2, tol))
    extra.append(make_item("A13.inv", "antipode inverse certificate", k_plus @ w1, k, tol))

    spec_n = QGSpec(
        dim=d,
        labels=spec.labels,
        product=m_n,
        unit=spec.unit,
        coproduct=phi,
        counit=eps,
        antipode=k_plus,
        braiding=sn,
        tol=tol,
    )
    parts = [extra, check_all(spec_n, tol)]
    if include_catalog:
        parts.append(run_catalog(spec_n, derive(spec_n, tol), tol=tol))
    return GnResult(n=n, spec_n=spec_n, report=merge(*parts))


# ---------------------------------------------------------------------------
# counit classification
# ---------------------------------------------------------------------------


def classify_majid(spec: QGSpec, der: DerivedSet | None = None,
                   tol: float | None = None) -> MajidClassification:
    """Evaluate the four equivalent counit conditions as residual predicates."""
    tol = spec.tol if tol is None else tol
    if der is None:
        der = derive(spec, tol)
    d = spec.dim
    eps, s = spec.counit, spec.braiding
    I = identity(d, 1)
    residuals = {
        "m1": residual(eps @ spec.product, tensor(eps, eps)),
        "ml": residual(tensor(eps, I) @ s, tensor(I, eps)),
        "mr": residual(tensor(I, eps) @ s, tensor(eps, I)),
        "m3": residual(s, der.tau),
    }
    verdicts = {key: value <= tol for key, value in residuals.items()}
    values = list(verdicts.values())
    mixed = any(values) and not all(values)
    return MajidClassification(
        m1=verdicts["m1"],
        ml=verdicts["ml"],
        mr=verdicts["mr"],
        m3=verdicts["m3"],
        majid_type=None if mixed else all(values),
        mixed=mixed,
        residuals=residuals,
    )
