"""braidcheck: numerical verification of braided quantum group structures.

Finite-dimensional candidates are given by structure-constant tensors
(product, unit, coproduct, counit, antipode, braiding).  The library
certifies the defining axioms, derives the secondary braiding and the
sigma_n braid-system family, builds the deformed groups G_n, and verifies
every derived identity as an operator residual against a tolerance.
"""

from .multiop import (
    COND_LIMIT,
    DEFAULT_TOL,
    MultiOp,
    ShapeError,
    SingularOperatorError,
    compose,
    condition,
    flip,
    from_entries,
    identity,
    inf_norm,
    invert,
    residual,
    tensor,
)
from .qgspec import (
    BUILTINS,
    GroupTableError,
    QGSpec,
    SpecFormatError,
    builtin,
    clifford_rank1,
    group_algebra,
    load,
    s3,
    save,
    superline,
    sweedler,
    z2,
)
from .report import CheckItem, CheckReport, merge
from .axioms import (
    check_algebra,
    check_all,
    check_antipode,
    check_braiding_axioms,
    check_coalgebra,
)
from .derived import (
    DerivationError,
    DerivedSet,
    braided_product,
    counit_product_law,
    derivation_certificates,
    derive,
    derive_tau,
    reconstruct_sigma,
    structure_identities,
    tau_inverse,
)
from .catalog import CATALOG, list_catalog, run_catalog
from .braid_systems import (
    BraidSystem,
    BraidSystemError,
    GnResult,
    MajidClassification,
    build_Gn,
    classify_majid,
    complete,
    completion_scan_bound,
    is_braid_system,
    match_family,
    sigma_family,
    sigma_n,
)

__version__ = "0.1.0"

__all__ = [
    "COND_LIMIT",
    "DEFAULT_TOL",
    "MultiOp",
    "ShapeError",
    "SingularOperatorError",
    "compose",
    "condition",
    "flip",
    "from_entries",
    "identity",
    "inf_norm",
    "invert",
    "residual",
    "tensor",
    "BUILTINS",
    "GroupTableError",
    "QGSpec",
    "SpecFormatError",
    "builtin",
    "clifford_rank1",
    "group_algebra",
    "load",
    "s3",
    "save",
    "superline",
    "sweedler",
    "z2",
    "CheckItem",
    "CheckReport",
    "merge",
    "check_algebra",
    "check_all",
    "check_antipode",
    "check_braiding_axioms",
    "check_coalgebra",
    "DerivationError",
    "DerivedSet",
    "braided_product",
    "counit_product_law",
    "derivation_certificates",
    "derive",
    "derive_tau",
    "reconstruct_sigma",
    "structure_identities",
    "tau_inverse",
    "CATALOG",
    "list_catalog",
    "run_catalog",
    "BraidSystem",
    "BraidSystemError",
    "GnResult",
    "MajidClassification",
    "build_Gn",
    "classify_majid",
    "complete",
    "completion_scan_bound",
    "is_braid_system",
    "match_family",
    "sigma_family",
    "sigma_n",
    "__version__",
]
