"""Operators derived from a valid spec: the braided product on A (x) A,
the secondary braiding tau, and the reconstruction of sigma.

The secondary braiding is fixed by either of the two equivalent
expressions (agreement of the two is exactly the well-definedness
content of the mixed coassociativity axiom):

    tau = (id2 x eps)(id x s^-1)(phi x id) s
        = (eps x id2)(s^-1 x id)(id x phi) s

Its inverse is certified against

    tau^-1 s = (id2 x eps)(id x s)(phi x id) = (eps x id2)(s x id)(id x phi)

and the braiding itself is recoverable from the product, coproduct and
antipode alone:

    s = (m x m)(kappa x phi m x kappa)(phi x phi).
"""

from __future__ import annotations

from dataclasses import dataclass

from .multiop import (
    MultiOp,
    SingularOperatorError,
    identity,
    invert,
    residual,
    tensor,
)
from .qgspec import QGSpec
from .report import CheckItem, make_item


class DerivationError(ValueError):
    """A derived operator is ill-defined on this spec (axiom violation)."""


@dataclass(frozen=True, eq=False)
class DerivedSet:
    """Derived operators cached once so identity checks share them.

    st_inv is sigma tau^-1 and s_inv_t is sigma^-1 tau, the two bicomodule
    automorphisms every twisting identity is phrased with.
    """

    tau: MultiOp
    tau_inv: MultiOp
    sigma_inv: MultiOp
    st_inv: MultiOp
    s_inv_t: MultiOp
    braided_mult: MultiOp


def braided_product(spec: QGSpec) -> MultiOp:
    """(m x m)(id x sigma x id), the product (a x b)(c x d) = a s(b x c) d
    on A (x) A, for which 1 (x) 1 is a two-sided unit."""
    I = identity(spec.dim, 1)
    return tensor(spec.product, spec.product) @ tensor(I, spec.braiding, I)


def _tau_expressions(spec: QGSpec, sigma_inv: MultiOp) -> tuple[MultiOp, MultiOp]:
    d = spec.dim
    phi, eps, s = spec.coproduct, spec.counit, spec.braiding
    I = identity(d, 1)
    I2 = identity(d, 2)
    e1 = tensor(I2, eps) @ tensor(I, sigma_inv) @ tensor(phi, I) @ s
    e2 = tensor(eps, I2) @ tensor(sigma_inv, I) @ tensor(I, phi) @ s
    return e1, e2


def derive_tau(spec: QGSpec, sigma_inv: MultiOp | None = None,
               tol: float | None = None) -> MultiOp:
    """The secondary braiding; refuses to return a value when its two
    defining expressions disagree (rather than averaging them)."""
    tol = spec.tol if tol is None else tol
    if sigma_inv is None:
        try:
            sigma_inv = invert(spec.braiding, tol=tol)
        except SingularOperatorError as exc:
            raise DerivationError(f"braiding is not invertible: {exc}") from exc
    e1, e2 = _tau_expressions(spec, sigma_inv)
    r = residual(e1, e2)
    if r > tol:
        raise DerivationError(
            "secondary braiding is ill-defined on this spec: the two defining "
            f"expressions differ by {r:.2e} (> tol {tol:.0e}); the mixed "
            "coassociativity axiom does not hold"
        )
    return e1


def _tau_inverse_expressions(spec: QGSpec) -> tuple[MultiOp, MultiOp]:
    d = spec.dim
    phi, eps, s = spec.coproduct, spec.counit, spec.braiding
    I = identity(d, 1)
    I2 = identity(d, 2)
    e1 = tensor(I2, eps) @ tensor(I, s) @ tensor(phi, I)
    e2 = tensor(eps, I2) @ tensor(s, I) @ tensor(I, phi)
    return e1, e2


def tau_inverse(spec: QGSpec, tau: MultiOp, sigma_inv: MultiOp | None = None,
                tol: float | None = None) -> MultiOp:
    """Inverse of the secondary braiding, certified on both sides."""
    tol = spec.tol if tol is None else tol
    if sigma_inv is None:
        sigma_inv = invert(spec.braiding, tol=tol)
    e1, e2 = _tau_inverse_expressions(spec)
    r = residual(e1, e2)
    if r > tol:
        raise DerivationError(
            f"the two expressions for the tau inverse differ by {r:.2e} (> tol {tol:.0e})"
        )
    tp = e1 @ sigma_inv
    ident = identity(spec.dim, 2)
    r_right = residual(tau @ tp, ident)
    r_left = residual(tp @ tau, ident)
    if max(r_right, r_left) > tol:
        raise DerivationError(
            "tau inverse certification failed: tau tau' differs from the "
            f"identity by {max(r_right, r_left):.2e} (> tol {tol:.0e})"
        )
    return tp


def reconstruct_sigma(spec: QGSpec) -> MultiOp:
    """(m x m)(kappa x phi m x kappa)(phi x phi); equals the braiding on
    every valid spec, so a mismatch flags an inconsistency between the
    antipode and the braiding."""
    m, phi, k = spec.product, spec.coproduct, spec.antipode
    return tensor(m, m) @ tensor(k, phi @ m, k) @ tensor(phi, phi)


def derive(spec: QGSpec, tol: float | None = None) -> DerivedSet:
    """Compute and certify the full derived-operator set for a spec."""
    tol = spec.tol if tol is None else tol
    try:
        sigma_inv = invert(spec.braiding, tol=tol)
    except SingularOperatorError as exc:
        raise DerivationError(f"braiding is not invertible: {exc}") from exc
    tau = derive_tau(spec, sigma_inv, tol)
    tau_inv = tau_inverse(spec, tau, sigma_inv, tol)
    st_inv = spec.braiding @ tau_inv
    s_inv_t = sigma_inv @ tau
    r = residual(st_inv @ (tau @ sigma_inv), identity(spec.dim, 2))
    if r > tol:
        raise DerivationError(
            f"cached automorphism certification failed: residual {r:.2e}"
        )
    return DerivedSet(
        tau=tau,
        tau_inv=tau_inv,
        sigma_inv=sigma_inv,
        st_inv=st_inv,
        s_inv_t=s_inv_t,
        braided_mult=braided_product(spec),
    )


def counit_product_law(spec: QGSpec, der: DerivedSet,
                       tol: float | None = None) -> CheckItem:
    """eps m = (eps x eps) s^-1 tau, the braided multiplicativity law of
    the counit (collapses to plain multiplicativity when s = tau)."""
    tol = spec.tol if tol is None else tol
    eps = spec.counit
    return make_item(
        "2.28", "counit product law",
        eps @ spec.product, tensor(eps, eps) @ der.s_inv_t, tol,
    )


def derivation_certificates(spec: QGSpec, der: DerivedSet,
                            tol: float | None = None) -> list[CheckItem]:
    """Certificates that the derived set is internally consistent."""
    tol = spec.tol if tol is None else tol
    d = spec.dim
    I2 = identity(d, 2)
    e1, e2 = _tau_expressions(spec, der.sigma_inv)
    f1, f2 = _tau_inverse_expressions(spec)
    u, eps = spec.unit, spec.counit
    bm = der.braided_mult
    return [
        make_item("2.16.agree", "tau expressions agree", e1, e2, tol),
        make_item("2.17.agree", "tau inverse expressions agree", f1, f2, tol),
        make_item("2.17.linv", "tau' tau is the identity", der.tau_inv @ der.tau, I2, tol),
        make_item("2.17.rinv", "tau tau' is the identity", der.tau @ der.tau_inv, I2, tol),
        make_item("2.9", "braiding reconstruction", reconstruct_sigma(spec), spec.braiding, tol),
        make_item(
            "2.6.unitL", "braided product, left unit",
            bm @ tensor(u, u, I2), I2, tol,
        ),
        make_item(
            "2.6.unitR", "braided product, right unit",
            bm @ tensor(I2, u, u), I2, tol,
        ),
    ]


def structure_identities(spec: QGSpec, der: DerivedSet,
                         tol: float | None = None) -> list[CheckItem]:
    """The counit/unit/bicomodule/commutation identities tying sigma to tau.

    2.13/2.14: counit absorbed through the braiding and product.
    2.18/2.19: tau behaves like a transposition on counit and unit legs.
    2.20-2.23: tau^-1 s and tau s^-1 are bicomodule automorphisms.
    2.24-2.27: commutation relations for s tau^-1 and s^-1 tau.
    2.28: the counit product law.
    """
    tol = spec.tol if tol is None else tol
    d = spec.dim
    m, phi, eps, u, s = spec.product, spec.coproduct, spec.counit, spec.unit, spec.braiding
    t = der.tau
    I = identity(d, 1)
    tis = der.tau_inv @ s   # tau^-1 sigma
    tsi = t @ der.sigma_inv  # tau sigma^-1
    sti = der.st_inv         # sigma tau^-1
    sit = der.s_inv_t        # sigma^-1 tau

    def L(op):
        return tensor(op, I)

    def R(op):
        return tensor(I, op)

    items = [
        make_item(
            "2.13", "counit through braiding, left",
            tensor(eps, I), tensor(I, eps @ m) @ tensor(s, I) @ tensor(I, phi), tol,
        ),
        make_item(
            "2.14", "counit through braiding, right",
            tensor(I, eps), tensor(eps @ m, I) @ tensor(I, s) @ tensor(phi, I), tol,
        ),
        make_item("2.18L", "counit through tau, left", tensor(eps, I) @ t, tensor(I, eps), tol),
        make_item("2.18R", "counit through tau, right", tensor(I, eps) @ t, tensor(eps, I), tol),
        make_item("2.19L", "tau absorbs unit, left", t @ tensor(u, I), tensor(I, u), tol),
        make_item("2.19R", "tau absorbs unit, right", t @ tensor(I, u), tensor(u, I), tol),
        make_item("2.20", "left comodule map, tau^-1 s", L(phi) @ tis, R(tis) @ L(phi), tol),
        make_item("2.21", "right comodule map, tau^-1 s", R(phi) @ tis, L(tis) @ R(phi), tol),
        make_item("2.22", "left comodule map, tau s^-1", L(phi) @ tsi, R(tsi) @ L(phi), tol),
        make_item("2.23", "right comodule map, tau s^-1", R(phi) @ tsi, L(tsi) @ R(phi), tol),
        make_item("2.24", "commutation st' with st'", L(sti) @ R(sti), R(sti) @ L(sti), tol),
        make_item("2.25", "commutation st' with s't", L(sti) @ R(sit), R(sit) @ L(sti), tol),
        make_item("2.26", "commutation s't with st'", L(sit) @ R(sti), R(sti) @ L(sit), tol),
        make_item("2.27", "commutation s't with s't", L(sit) @ R(sit), R(sit) @ L(sit), tol),
        counit_product_law(spec, der, tol),
    ]
    return items
