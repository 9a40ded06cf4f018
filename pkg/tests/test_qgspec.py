import json

import numpy as np
import pytest

import braidcheck as bc
from braidcheck.multiop import MultiOp, residual
from braidcheck.qgspec import GroupTableError, SpecFormatError, TENSOR_SHAPES


def test_save_load_round_trip_is_exact(tmp_path):
    spec = bc.sweedler()
    path = tmp_path / "sweedler.bqg.json"
    bc.save(spec, path)
    back = bc.load(path)
    assert back.dim == spec.dim
    assert back.labels == spec.labels
    assert back.tol == spec.tol
    for name in TENSOR_SHAPES:
        a, b = getattr(spec, name), getattr(back, name)
        assert residual(a, b) == 0.0
        assert list(a.nonzeros()) == list(b.nonzeros())


def _doc(tmp_path, mutate):
    path = tmp_path / "spec.bqg.json"
    bc.save(bc.z2(), path)
    doc = json.loads(path.read_text())
    mutate(doc)
    path.write_text(json.dumps(doc))
    return path


def test_load_rejects_out_of_range_index(tmp_path):
    path = _doc(
        tmp_path,
        lambda d: d["tensors"]["product"].append(
            {"indices": [0, 0, 2], "re": 1.0, "im": 0.0}
        ),
    )
    with pytest.raises(SpecFormatError, match=r"product\[\(0, 0, 2\)\] index out of range"):
        bc.load(path)


def test_load_rejects_missing_tensor(tmp_path):
    path = _doc(tmp_path, lambda d: d["tensors"].pop("antipode"))
    with pytest.raises(SpecFormatError, match="antipode missing"):
        bc.load(path)


def test_load_rejects_duplicate_entry(tmp_path):
    path = _doc(
        tmp_path,
        lambda d: d["tensors"]["counit"].append(dict(d["tensors"]["counit"][0])),
    )
    with pytest.raises(SpecFormatError, match="duplicate"):
        bc.load(path)


def test_load_rejects_garbage_and_unknown_tensor(tmp_path):
    path = tmp_path / "broken.bqg.json"
    path.write_text("{not json")
    with pytest.raises(SpecFormatError, match="not valid JSON"):
        bc.load(path)
    path2 = _doc(tmp_path, lambda d: d["tensors"].update(extra=[]))
    with pytest.raises(SpecFormatError, match="unknown tensors"):
        bc.load(path2)


def test_group_algebra_rejects_broken_tables():
    z3 = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
    bc.group_algebra(z3)  # sanity: the honest table is fine
    broken = [[0, 1, 2], [1, 2, 0], [2, 0, 2]]
    with pytest.raises(GroupTableError, match=r"a=1, b=1, c=2"):
        bc.group_algebra(broken)
    with pytest.raises(GroupTableError, match="identity"):
        bc.group_algebra([[0, 0], [0, 0]])
    with pytest.raises(GroupTableError, match="no two-sided inverse"):
        bc.group_algebra([[0, 1], [1, 1]])
    with pytest.raises(GroupTableError, match="not a two-sided identity"):
        bc.group_algebra([[0, 1], [1, 0]], identity_idx=1)
    with pytest.raises(GroupTableError, match="not an inverse"):
        bc.group_algebra([[0, 1], [1, 0]], inverse=[0, 0])


def test_z2_and_s3_group_algebras():
    z2 = bc.z2()
    assert z2.dim == 2
    assert bc.residual(z2.braiding, bc.flip(2)) == 0.0
    s3 = bc.s3()
    assert s3.dim == 6
    kappa = s3.antipode.to_dense()
    assert np.allclose(kappa @ kappa, np.eye(6))
    # noncommutative: some product columns differ under argument swap
    m = s3.product.to_dense()
    swapped = m[:, [i * 6 + j for j in range(6) for i in range(6)]]
    assert not np.allclose(m, swapped)


def test_sweedler_structure():
    sw = bc.sweedler()
    kappa = sw.antipode.to_dense()
    assert not np.allclose(np.linalg.matrix_power(kappa, 2), np.eye(4))
    assert np.allclose(np.linalg.matrix_power(kappa, 4), np.eye(4))
    # x g = -gx, x^2 = 0 (basis order 1, g, x, gx)
    assert sw.product.column((2, 1)).tolist() == [0, 0, 0, -1]
    assert sw.product.column((2, 2)).tolist() == [0, 0, 0, 0]
    assert sw.product.column((1, 1)).tolist() == [1, 0, 0, 0]


def test_clifford_rank1_structure():
    cl = bc.clifford_rank1()
    expected_sigma = np.array(
        [[1, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, -1]], dtype=complex
    )
    assert np.array_equal(cl.braiding.to_dense(), expected_sigma)
    # counit is not multiplicative: eps(e e) = 1 while eps(e)^2 = 0
    eps_m = cl.counit @ cl.product
    assert eps_m.entry((), (1, 1)) == 1.0
    assert cl.counit.entry((), (1,)) == 0.0


def test_superline_structure():
    sl = bc.superline()
    assert sl.product.column((1, 1)).tolist() == [0, 0]
    assert sl.braiding.column((1, 1)).tolist() == [0, 0, 0, -1]


def test_builtin_registry():
    assert set(bc.BUILTINS) == {"z2", "s3", "sweedler", "clifford_rank1", "superline"}
    with pytest.raises(KeyError, match="unknown built-in"):
        bc.builtin("nope")


def test_spec_invariants_enforced():
    cl = bc.clifford_rank1()
    with pytest.raises(SpecFormatError, match="unit vector is zero"):
        bc.QGSpec(
            cl.dim, cl.labels, cl.product,
            MultiOp(2, 0, 1, np.zeros((2, 1))),
            cl.coproduct, cl.counit, cl.antipode, cl.braiding,
        )
    with pytest.raises(SpecFormatError, match="counit row is zero"):
        bc.QGSpec(
            cl.dim, cl.labels, cl.product, cl.unit, cl.coproduct,
            MultiOp(2, 1, 0, np.zeros((1, 2))),
            cl.antipode, cl.braiding,
        )
    with pytest.raises(SpecFormatError, match="labels"):
        bc.QGSpec(
            cl.dim, ("1",), cl.product, cl.unit, cl.coproduct,
            cl.counit, cl.antipode, cl.braiding,
        )
    with pytest.raises(SpecFormatError, match="antipode has shape"):
        bc.QGSpec(
            cl.dim, cl.labels, cl.product, cl.unit, cl.coproduct,
            cl.counit, cl.braiding, cl.braiding,
        )
