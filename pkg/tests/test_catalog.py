import dataclasses

import pytest

import braidcheck as bc
from braidcheck.multiop import flip, residual, tensor
from conftest import BUILTIN_NAMES

EXPECTED_IDS = [f"2.{k}" for k in range(29, 55)]
BRAID_IDS = [f"2.{k}" for k in range(47, 55)]


def test_catalog_has_26_uniquely_keyed_entries():
    listing = bc.list_catalog()
    assert [e["id"] for e in listing] == EXPECTED_IDS
    assert len({id(e.builder) for e in bc.CATALOG}) == len(bc.CATALOG)
    assert all(e["description"] for e in listing)


def test_subset_selection():
    spec = bc.clifford_rank1()
    rep = bc.run_catalog(spec, subset=["2.47"])
    assert [it.id for it in rep.items] == ["2.47"]
    with pytest.raises(KeyError, match="2.99"):
        bc.run_catalog(spec, subset=["2.99"])


def test_every_entry_passes_on_every_builtin(builtins, derived_sets):
    for name in BUILTIN_NAMES:
        rep = bc.run_catalog(builtins[name], derived_sets[name])
        assert len(rep.items) == 26
        assert rep.overall, (name, rep.failing())
        assert max(it.residual for it in rep.items) <= 1e-12, name


def test_metamorphic_sigma_to_tau_on_majid_specs(builtins, derived_sets):
    # when sigma = tau, swapping them changes nothing
    for name in ("sweedler", "superline"):
        spec = builtins[name]
        der = derived_sets[name]
        swapped = dataclasses.replace(spec, braiding=der.tau)
        rep1 = bc.run_catalog(spec, der)
        rep2 = bc.run_catalog(swapped, bc.derive(swapped))
        for a, b in zip(rep1.items, rep2.items):
            assert a.id == b.id
            assert abs(a.residual - b.residual) <= 1e-12


def test_sweedler_antimultiplicativity_degenerates_to_classical(builtins):
    # with sigma = tau = flip the twisted antimultiplicativity law reduces
    # to k m = m (k x k) flip
    spec = builtins["sweedler"]
    k, m = spec.antipode, spec.product
    assert residual(k @ m, m @ tensor(k, k) @ flip(4)) <= 1e-12


def test_braid_subset_for_deformed_braidings(builtins, derived_sets):
    spec = builtins["clifford_rank1"]
    der = derived_sets["clifford_rank1"]
    for n in (-2, -1, 0, 1, 2):
        g = bc.build_Gn(spec, der=der, n=n, include_catalog=False)
        rep = bc.run_catalog(g.spec_n, subset=BRAID_IDS)
        assert rep.overall, (n, rep.failing())
        assert max(it.residual for it in rep.items) <= 1e-12
