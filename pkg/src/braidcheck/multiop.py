"""Shape-checked rectangular operators between tensor powers of C^d.

A :class:`MultiOp` is a linear map A^(tensor p) -> A^(tensor q) on a
d-dimensional space A, stored as a d^q x d^p complex matrix.  Basis
multi-indices are packed row-major: the flat index of (i_1, ..., i_k) is
sum_j i_j * d^(k-j), so the first tensor factor is the most significant
digit.  ``numpy.kron`` respects exactly this packing, which makes
:func:`tensor` act factor-wise and :func:`compose` plain matrix product.

Entries are kept dense up to ``DENSE_ENTRY_LIMIT`` matrix entries and
switch to CSR storage above it.  Every value is immutable after
construction and every operation here is pure, so operators can be shared
freely between parallel checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np
import scipy.sparse as sp

#: default pass/fail tolerance for residuals
DEFAULT_TOL = 1e-9

#: operational bijectivity bound: condition estimates above this count as singular
COND_LIMIT = 1e12

#: matrices with more entries than this are stored as CSR triplets
DENSE_ENTRY_LIMIT = 10_000_000


class ShapeError(ValueError):
    """Operator shapes or dimensions are incompatible."""


class SingularOperatorError(ValueError):
    """An operator failed the condition-bounded bijectivity test."""

    def __init__(self, message: str, cond: float = float("inf")):
        super().__init__(message)
        self.cond = cond


def flat_index(dim: int, idx: tuple[int, ...]) -> int:
    """Pack a multi-index into its row-major flat position."""
    r = 0
    for i in idx:
        r = r * dim + int(i)
    return r


def multi_index(dim: int, arity: int, flat: int) -> tuple[int, ...]:
    """Unpack a flat position into the row-major multi-index."""
    out = []
    for _ in range(arity):
        flat, rem = divmod(flat, dim)
        out.append(rem)
    return tuple(reversed(out))


def _is_sparse(mat) -> bool:
    return sp.issparse(mat)


def _dense(mat) -> np.ndarray:
    return mat.toarray() if _is_sparse(mat) else mat


@dataclass(frozen=True, eq=False)
class MultiOp:
    """A linear map A^(tensor arity_in) -> A^(tensor arity_out) over C^dim."""

    dim: int
    arity_in: int
    arity_out: int
    mat: object  # np.ndarray or scipy CSR, normalized in __post_init__

    def __post_init__(self):
        if self.dim < 1:
            raise ShapeError(f"dim must be >= 1, got {self.dim}")
        if self.arity_in < 0 or self.arity_out < 0:
            raise ShapeError(
                f"arities must be >= 0, got in={self.arity_in} out={self.arity_out}"
            )
        shape = (self.dim**self.arity_out, self.dim**self.arity_in)
        if _is_sparse(self.mat):
            m = sp.csr_array(self.mat).astype(np.complex128)
            if m.shape != shape:
                raise ShapeError(
                    f"matrix shape {m.shape} does not match dim={self.dim}, "
                    f"arity_out={self.arity_out}, arity_in={self.arity_in} "
                    f"(expected {shape})"
                )
            if m.nnz and not np.all(np.isfinite(m.data)):
                raise ValueError("operator entries must be finite")
        else:
            m = np.array(self.mat, dtype=np.complex128, copy=True)
            if m.shape != shape:
                raise ShapeError(
                    f"matrix shape {m.shape} does not match dim={self.dim}, "
                    f"arity_out={self.arity_out}, arity_in={self.arity_in} "
                    f"(expected {shape})"
                )
            if not np.all(np.isfinite(m)):
                raise ValueError("operator entries must be finite")
            m.flags.writeable = False
        object.__setattr__(self, "mat", m)

    # -- basic views ---------------------------------------------------

    @property
    def rows(self) -> int:
        return self.dim**self.arity_out

    @property
    def cols(self) -> int:
        return self.dim**self.arity_in

    def shape_str(self) -> str:
        return f"{self.arity_out}<-{self.arity_in} legs over dim {self.dim}"

    def to_dense(self) -> np.ndarray:
        return np.asarray(_dense(self.mat))

    def entry(self, out_idx: tuple[int, ...], in_idx: tuple[int, ...]) -> complex:
        r = flat_index(self.dim, tuple(out_idx))
        c = flat_index(self.dim, tuple(in_idx))
        return complex(self.mat[r, c])

    def column(self, in_idx: tuple[int, ...]) -> np.ndarray:
        """Image of the basis vector e_{in_idx}, as a dense coefficient vector."""
        c = flat_index(self.dim, tuple(in_idx))
        return self.to_dense()[:, c].copy()

    def apply(self, vec: np.ndarray) -> np.ndarray:
        vec = np.asarray(vec, dtype=np.complex128)
        if vec.shape != (self.cols,):
            raise ShapeError(
                f"vector of length {vec.shape} does not match operator "
                f"({self.shape_str()}, expects length {self.cols})"
            )
        return np.asarray(self.mat @ vec)

    def nonzeros(self) -> Iterator[tuple[tuple[int, ...], complex]]:
        """Yield ((out..., in...), value) for exact nonzero entries, row-major."""
        if _is_sparse(self.mat):
            coo = self.mat.tocoo()
            order = np.lexsort((coo.col, coo.row))
            triples = zip(coo.row[order], coo.col[order], coo.data[order])
        else:
            rr, cc = np.nonzero(self.mat)
            triples = ((r, c, self.mat[r, c]) for r, c in zip(rr, cc))
        for r, c, v in triples:
            if v == 0:
                continue
            idx = multi_index(self.dim, self.arity_out, int(r)) + multi_index(
                self.dim, self.arity_in, int(c)
            )
            yield idx, complex(v)

    def __matmul__(self, other: "MultiOp") -> "MultiOp":
        return compose(self, other)


def _wrap(dim: int, arity_in: int, arity_out: int, mat) -> MultiOp:
    """Apply the storage policy: dense below DENSE_ENTRY_LIMIT, CSR above."""
    size = dim ** (arity_in + arity_out)
    if _is_sparse(mat):
        if size <= DENSE_ENTRY_LIMIT:
            mat = mat.toarray()
    elif size > DENSE_ENTRY_LIMIT:
        mat = sp.csr_array(mat)
    return MultiOp(dim, arity_in, arity_out, mat)


def from_entries(
    dim: int,
    arity_in: int,
    arity_out: int,
    entries: Mapping[tuple[int, ...], complex] | Iterable[tuple[tuple[int, ...], complex]],
    name: str = "operator",
) -> MultiOp:
    """Build an operator from sparse ((out..., in...), value) records.

    Index tuples list the output indices first, then the input indices.
    Raises :class:`ShapeError` naming ``name`` and the offending tuple for
    out-of-range indices or duplicates.
    """
    if isinstance(entries, Mapping):
        pairs = list(entries.items())
    else:
        pairs = list(entries)
    nlegs = arity_out + arity_in
    size = dim ** (arity_in + arity_out)
    if size > DENSE_ENTRY_LIMIT:
        mat = sp.dok_array((dim**arity_out, dim**arity_in), dtype=np.complex128)
    else:
        mat = np.zeros((dim**arity_out, dim**arity_in), dtype=np.complex128)
    seen: set[tuple[int, ...]] = set()
    for idx, value in pairs:
        idx = tuple(int(i) for i in idx)
        if len(idx) != nlegs:
            raise ShapeError(
                f"{name}[{idx}] has {len(idx)} indices, expected "
                f"{arity_out} out + {arity_in} in"
            )
        if any(i < 0 or i >= dim for i in idx):
            raise ShapeError(f"{name}[{idx}] index out of range for dim {dim}")
        if idx in seen:
            raise ShapeError(f"{name}[{idx}] duplicate entry")
        seen.add(idx)
        r = flat_index(dim, idx[:arity_out])
        c = flat_index(dim, idx[arity_out:])
        mat[r, c] = complex(value)
    if _is_sparse(mat):
        mat = sp.csr_array(mat)
    return _wrap(dim, arity_in, arity_out, mat)


def identity(dim: int, arity: int) -> MultiOp:
    """The identity on A^(tensor arity); a single scalar 1 when arity is 0."""
    n = dim**arity
    if n * n > DENSE_ENTRY_LIMIT:
        return MultiOp(dim, arity, arity, sp.csr_array(sp.identity(n, dtype=np.complex128)))
    return MultiOp(dim, arity, arity, np.eye(n, dtype=np.complex128))


def flip(dim: int) -> MultiOp:
    """The transposition a (x) b -> b (x) a on A (x) A."""
    n = dim * dim
    mat = np.zeros((n, n), dtype=np.complex128)
    for i in range(dim):
        for j in range(dim):
            mat[j * dim + i, i * dim + j] = 1.0
    return MultiOp(dim, 2, 2, mat)


def compose(f: MultiOp, g: MultiOp) -> MultiOp:
    """f after g; arities must chain (f.arity_in == g.arity_out)."""
    if f.dim != g.dim:
        raise ShapeError(
            f"compose: dim mismatch between f ({f.shape_str()}) and g ({g.shape_str()})"
        )
    if f.arity_in != g.arity_out:
        raise ShapeError(
            f"compose: f ({f.shape_str()}) cannot follow g ({g.shape_str()}): "
            f"f expects {f.arity_in} legs, g produces {g.arity_out}"
        )
    a, b = f.mat, g.mat
    if _is_sparse(a) or _is_sparse(b):
        out = sp.csr_array(a) @ sp.csr_array(b)
    else:
        out = a @ b
    return _wrap(f.dim, g.arity_in, f.arity_out, out)


def compose_chain(*ops: MultiOp) -> MultiOp:
    """Compose ops left to right (rightmost acts first), multiplying in the
    cheapest association order; sizes are known, so the classic chain DP
    applies.  Shape errors are the same as for pairwise compose."""
    if not ops:
        raise ShapeError("compose_chain() needs at least one operator")
    if len(ops) == 1:
        return ops[0]
    for f, g in zip(ops, ops[1:]):
        if f.dim != g.dim or f.arity_in != g.arity_out:
            # delegate for the error message
            compose(f, g)
    n = len(ops)
    dims = [op.rows for op in ops] + [ops[-1].cols]
    cost = [[0.0] * n for _ in range(n)]
    split = [[0] * n for _ in range(n)]
    for span in range(1, n):
        for i in range(n - span):
            j = i + span
            best, arg = None, i
            for k in range(i, j):
                c = cost[i][k] + cost[k + 1][j] + dims[i] * dims[k + 1] * dims[j + 1]
                if best is None or c < best:
                    best, arg = c, k
            cost[i][j] = best
            split[i][j] = arg

    def mul(i: int, j: int) -> MultiOp:
        if i == j:
            return ops[i]
        k = split[i][j]
        return compose(mul(i, k), mul(k + 1, j))

    return mul(0, n - 1)


def tensor(*ops: MultiOp) -> MultiOp:
    """Tensor product of operators; arities add, Kronecker on matrices."""
    if not ops:
        raise ShapeError("tensor() needs at least one operator")
    out = ops[0]
    for g in ops[1:]:
        if out.dim != g.dim:
            raise ShapeError(
                f"tensor: dim mismatch between ({out.shape_str()}) and ({g.shape_str()})"
            )
        p = out.arity_in + g.arity_in
        q = out.arity_out + g.arity_out
        if out.dim ** (p + q) > DENSE_ENTRY_LIMIT or _is_sparse(out.mat) or _is_sparse(g.mat):
            mat = sp.kron(sp.csr_array(out.mat), sp.csr_array(g.mat), format="csr")
            mat = sp.csr_array(mat)
        else:
            mat = np.kron(out.mat, g.mat)
        out = _wrap(out.dim, p, q, mat)
    return out


def residual(f: MultiOp, g: MultiOp) -> float:
    """Max absolute entrywise difference; zero iff the operators are equal."""
    if (f.dim, f.arity_in, f.arity_out) != (g.dim, g.arity_in, g.arity_out):
        raise ShapeError(
            f"residual: shape mismatch between ({f.shape_str()}) and ({g.shape_str()})"
        )
    a, b = f.mat, g.mat
    if _is_sparse(a) or _is_sparse(b):
        d = sp.csr_array(a) - sp.csr_array(b)
        if d.nnz == 0:
            return 0.0
        return float(np.abs(d.data).max())
    return float(np.max(np.abs(a - b)))


def inf_norm(f: MultiOp) -> float:
    """Largest absolute entry."""
    if _is_sparse(f.mat):
        return float(np.abs(f.mat.data).max()) if f.mat.nnz else 0.0
    return float(np.max(np.abs(f.mat)))


def condition(f: MultiOp) -> float:
    """2-norm condition estimate of a square operator."""
    if f.arity_in != f.arity_out:
        raise ShapeError(f"condition: operator is not square ({f.shape_str()})")
    return float(np.linalg.cond(f.to_dense()))


def invert(f: MultiOp, tol: float | None = None, cond_limit: float | None = None) -> MultiOp:
    """Inverse of a square operator, rejected beyond the condition bound.

    The returned operator satisfies residual(f @ inv, id) <= tol; failure of
    either guard raises :class:`SingularOperatorError` rather than returning
    a garbage inverse.
    """
    tol = DEFAULT_TOL if tol is None else tol
    cond_limit = COND_LIMIT if cond_limit is None else cond_limit
    if f.arity_in != f.arity_out:
        raise ShapeError(f"invert: operator is not square ({f.shape_str()})")
    a = f.to_dense()
    cond = float(np.linalg.cond(a))
    if not np.isfinite(cond) or cond > cond_limit:
        raise SingularOperatorError(
            f"operator ({f.shape_str()}) is singular to tolerance: "
            f"condition estimate {cond:.2e} exceeds bound {cond_limit:.0e}",
            cond,
        )
    inv = np.linalg.inv(a)
    eye = np.eye(a.shape[0])
    err = max(
        float(np.max(np.abs(a @ inv - eye))),
        float(np.max(np.abs(inv @ a - eye))),
    )
    if err > tol:
        raise SingularOperatorError(
            f"inverse of ({f.shape_str()}) fails the round-trip check: "
            f"residual {err:.2e} > tol {tol:.0e}",
            cond,
        )
    return _wrap(f.dim, f.arity_in, f.arity_out, inv)
