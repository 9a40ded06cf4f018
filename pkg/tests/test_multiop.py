import numpy as np
import pytest

import braidcheck as bc
from braidcheck import multiop
from braidcheck.multiop import (
    MultiOp,
    ShapeError,
    SingularOperatorError,
    compose,
    compose_chain,
    flip,
    identity,
    invert,
    residual,
    tensor,
)
from conftest import random_op


def test_identity_degenerate_and_small():
    assert identity(2, 0).to_dense().tolist() == [[1.0]]
    assert np.array_equal(identity(2, 2).to_dense(), np.eye(4))
    assert np.array_equal(identity(3, 1).to_dense(), np.eye(3))


def test_flip_matrix():
    # flip sends e_i (x) e_j to e_j (x) e_i
    expected = np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    )
    assert np.array_equal(flip(2).to_dense(), expected)
    assert residual(flip(3) @ flip(3), identity(3, 2)) == 0.0


def test_compose_identity_and_counit_unit(builtins):
    for spec in builtins.values():
        sigma = spec.braiding
        assert residual(compose(identity(spec.dim, 2), sigma), sigma) == 0.0
        # eps(1) = 1 as a 0 -> 0 operator
        assert compose(spec.counit, spec.unit).to_dense().tolist() == [[1.0]]


def test_compose_shape_errors_name_both_shapes():
    f = identity(2, 2)
    g = identity(2, 1)
    with pytest.raises(ShapeError, match=r"2<-2.*1<-1"):
        compose(f, g)
    with pytest.raises(ShapeError, match="dim"):
        compose(identity(2, 1), identity(3, 1))


def test_tensor_layout_matches_factorwise_action():
    rng = np.random.default_rng(7)
    a = random_op(rng, 2, 1, 1)
    b = random_op(rng, 2, 1, 1)
    ab = tensor(a, b)
    assert ab.arity_in == 2 and ab.arity_out == 2
    for i in range(2):
        for j in range(2):
            vec = np.kron(a.column((i,)), b.column((j,)))
            assert np.allclose(ab.column((i, j)), vec)


def test_tensor_identities_merge():
    assert residual(tensor(identity(3, 1), identity(3, 1)), identity(3, 2)) == 0.0


def test_tensor_dim_mismatch():
    with pytest.raises(ShapeError, match="dim"):
        tensor(identity(2, 1), identity(3, 1))


def test_counit_tensor_identity_collapses_coproduct(builtins):
    for spec in builtins.values():
        I = identity(spec.dim, 1)
        lhs = tensor(spec.counit, I) @ spec.coproduct
        assert residual(lhs, I) <= 1e-12


def test_antipode_pair_commutes_with_flip():
    spec = bc.z2()
    kk = tensor(spec.antipode, spec.antipode)
    f = flip(2)
    assert residual(f @ kk, kk @ f) == 0.0


def test_compose_and_tensor_associative():
    rng = np.random.default_rng(11)
    for _ in range(10):
        d = int(rng.integers(2, 4))
        a = random_op(rng, d, 1, 2)
        b = random_op(rng, d, 2, 1)
        c = random_op(rng, d, 1, 2)
        assert residual((a @ b) @ c, a @ (b @ c)) < 1e-10
        x = random_op(rng, d, 1, 1)
        y = random_op(rng, d, 2, 0)
        z = random_op(rng, d, 0, 1)
        assert residual(tensor(tensor(x, y), z), tensor(x, y, z)) == 0.0


def test_interchange_law():
    # tensor(f, g) o tensor(h, k) = tensor(f o h, g o k)
    rng = np.random.default_rng(13)
    for _ in range(10):
        d = int(rng.integers(2, 5))
        f = random_op(rng, d, 1, 2)
        h = random_op(rng, d, 2, 1)
        g = random_op(rng, d, 2, 1)
        k = random_op(rng, d, 1, 2)
        lhs = tensor(f, g) @ tensor(h, k)
        rhs = tensor(f @ h, g @ k)
        assert residual(lhs, rhs) < 1e-10


def test_compose_chain_matches_pairwise():
    rng = np.random.default_rng(17)
    ops = [
        random_op(rng, 2, 2, 2),
        random_op(rng, 2, 3, 2),
        random_op(rng, 2, 1, 3),
        random_op(rng, 2, 2, 1),
    ]
    lhs = compose_chain(*ops)
    rhs = ops[0] @ ops[1] @ ops[2] @ ops[3]
    assert residual(lhs, rhs) < 1e-10
    with pytest.raises(ShapeError):
        compose_chain(ops[0], ops[2])


def test_residual_is_a_metric_on_fixed_shape():
    rng = np.random.default_rng(19)
    for _ in range(10):
        a = random_op(rng, 3, 1, 2)
        b = random_op(rng, 3, 1, 2)
        c = random_op(rng, 3, 1, 2)
        assert residual(a, a) == 0.0
        assert residual(a, b) == residual(b, a)
        assert residual(a, c) <= residual(a, b) + residual(b, c) + 1e-12
    with pytest.raises(ShapeError, match="shape mismatch"):
        residual(identity(2, 1), identity(2, 2))


def test_invert_flip_and_clifford_braiding():
    assert residual(invert(flip(4)), flip(4)) <= 1e-12
    sigma = bc.clifford_rank1().braiding
    # this braiding squares to the identity, so it is its own inverse
    assert np.allclose(sigma.to_dense() @ sigma.to_dense(), np.eye(4))
    assert residual(invert(sigma), sigma) <= 1e-12


def test_invert_sweedler_antipode_is_its_cube():
    kappa = bc.sweedler().antipode.to_dense()
    assert not np.allclose(np.linalg.matrix_power(kappa, 2), np.eye(4))
    assert np.allclose(np.linalg.matrix_power(kappa, 4), np.eye(4))
    inv = invert(bc.sweedler().antipode).to_dense()
    assert np.allclose(inv, np.linalg.matrix_power(kappa, 3))


def test_invert_round_trips(builtins):
    for spec in builtins.values():
        for op in (spec.antipode, spec.braiding):
            inv = invert(op)
            assert residual(op @ inv, identity(spec.dim, op.arity_in)) <= 1e-12
            assert residual(inv @ op, identity(spec.dim, op.arity_in)) <= 1e-12


def test_invert_singular_and_nonsquare():
    zero = MultiOp(2, 1, 1, np.zeros((2, 2)))
    with pytest.raises(SingularOperatorError):
        invert(zero)
    with pytest.raises(ShapeError):
        invert(identity(2, 1) @ MultiOp(2, 2, 1, np.ones((2, 4))))


def test_nonfinite_entries_rejected():
    bad = np.eye(2)
    bad[0, 0] = np.nan
    with pytest.raises(ValueError, match="finite"):
        MultiOp(2, 1, 1, bad)


def test_entry_column_apply_nonzeros():
    sigma = bc.clifford_rank1().braiding
    assert sigma.entry((0, 0), (1, 1)) == -1.0
    assert sigma.column((1, 1)).tolist() == [-1.0, 0.0, 0.0, -1.0]
    vec = np.zeros(4, dtype=complex)
    vec[3] = 1.0
    assert np.allclose(sigma.apply(vec), sigma.column((1, 1)))
    entries = dict(sigma.nonzeros())
    assert entries[(0, 0, 1, 1)] == -1.0
    assert len(entries) == 5


def test_sparse_backend_equivalent(monkeypatch):
    dense_id = identity(2, 2).to_dense()
    sigma = bc.clifford_rank1().braiding
    dense_result = (sigma @ identity(2, 2)).to_dense()
    monkeypatch.setattr(multiop, "DENSE_ENTRY_LIMIT", 8)
    ident = identity(2, 2)
    assert multiop._is_sparse(ident.mat)
    assert np.array_equal(ident.to_dense(), dense_id)
    composed = sigma @ ident
    assert np.array_equal(composed.to_dense(), dense_result)
    big = tensor(identity(2, 1), identity(2, 1))
    assert multiop._is_sparse(big.mat)
    assert residual(big, ident) == 0.0
    assert residual(invert(composed), invert(sigma)) <= 1e-12
    assert dict(composed.nonzeros()) == dict(sigma.nonzeros())
    entries = dict(sigma.nonzeros())
    rebuilt = multiop.from_entries(2, 2, 2, entries)
    assert multiop._is_sparse(rebuilt.mat)
    assert residual(rebuilt, sigma) == 0.0
