import dataclasses

import pytest

import braidcheck as bc

BUILTIN_NAMES = ("z2", "s3", "sweedler", "clifford_rank1", "superline")
FLIP_BRAIDED = ("z2", "s3", "sweedler")
SMALL_BUILTINS = ("z2", "clifford_rank1", "superline")  # d = 2


@pytest.fixture(scope="session")
def builtins():
    return {name: bc.builtin(name) for name in BUILTIN_NAMES}


@pytest.fixture(scope="session")
def derived_sets(builtins):
    return {name: bc.derive(spec) for name, spec in builtins.items()}


def perturb(spec, tensor_name, r, c, delta=1e-3):
    """Copy of spec with one structure-constant entry shifted by delta."""
    op = getattr(spec, tensor_name)
    mat = op.to_dense().copy()
    mat[r, c] += delta
    return dataclasses.replace(
        spec, **{tensor_name: bc.MultiOp(op.dim, op.arity_in, op.arity_out, mat)}
    )


def replace_tensor(spec, tensor_name, mat):
    op = getattr(spec, tensor_name)
    return dataclasses.replace(
        spec, **{tensor_name: bc.MultiOp(op.dim, op.arity_in, op.arity_out, mat)}
    )


def random_op(rng, dim, arity_in, arity_out):
    shape = (dim**arity_out, dim**arity_in)
    mat = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return bc.MultiOp(dim, arity_in, arity_out, mat)
