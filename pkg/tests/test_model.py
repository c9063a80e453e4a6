import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nubots import grid
from nubots.model import Bond, Configuration, bond_key

from oracles import random_config


def line(n, state="a", bond=Bond.RIGID):
    c = Configuration()
    for i in range(n):
        c.add_monomer((i, 0), state)
        if i:
            c.set_bond((i - 1, 0), (i, 0), bond)
    return c


def test_bond_key_is_unordered():
    assert bond_key((1, 0), (0, 0)) == bond_key((0, 0), (1, 0))


def test_add_remove_and_bond_bookkeeping():
    c = Configuration()
    c.add_monomer((0, 0), "a")
    c.add_monomer((1, 0), "b")
    c.set_bond((0, 0), (1, 0), Bond.FLEXIBLE)
    assert c.bond((1, 0), (0, 0)) is Bond.FLEXIBLE
    c.remove_monomer((1, 0))
    assert (1, 0) not in c
    assert not c.bonds
    with pytest.raises(ValueError):
        c.add_monomer((0, 0), "x")
    with pytest.raises(ValueError):
        c.add_monomer((2, 0), "")


def test_bonds_require_adjacent_occupied_endpoints():
    c = line(2)
    with pytest.raises(ValueError):
        c.set_bond((0, 0), (2, 0), Bond.RIGID)
    with pytest.raises(ValueError):
        c.set_bond((0, 0), (0, 1), Bond.RIGID)


def test_set_bond_none_clears():
    c = line(2)
    c.set_bond((0, 0), (1, 0), None)
    assert c.bond((0, 0), (1, 0)) is None


def test_translate_set_moves_bonds():
    c = line(3)
    c.translate_set({(1, 0), (2, 0)}, (1, 0))
    assert sorted(c.monomers) == [(0, 0), (2, 0), (3, 0)]
    # the 0-1 bond broke (no longer adjacent), the internal one moved
    assert c.bonds == {bond_key((2, 0), (3, 0)): Bond.RIGID}


def test_translate_set_keeps_flexible_boundary_bond():
    c = line(2, bond=Bond.FLEXIBLE)
    c.translate_set({(1, 0)}, (-1, 1))
    assert c.bond((0, 0), (0, 1)) is Bond.FLEXIBLE


def test_translate_set_collision_raises():
    c = line(3)
    with pytest.raises(ValueError):
        c.translate_set({(0, 0)}, (1, 0))


def test_components_rigid_versus_all():
    c = line(3)
    c.set_bond((1, 0), (2, 0), Bond.FLEXIBLE)
    assert sorted(map(len, c.components())) == [3]
    assert sorted(map(len, c.components(rigid_only=True))) == [1, 2]
    c.set_bond((0, 0), (1, 0), None)
    assert sorted(map(len, c.components())) == [1, 2]


def test_canonicalize_translation_invariant():
    rng = np.random.default_rng(7)
    for _ in range(50):
        c = random_config(rng)
        v = (int(rng.integers(-5, 6)), int(rng.integers(-5, 6)))
        shifted = Configuration(
            {grid.add(p, v): s for p, s in c.monomers.items()},
            {bond_key(grid.add(a, v), grid.add(b, v)): t
             for (a, b), t in c.bonds.items()})
        assert c.canonicalize() == shifted.canonicalize()
        assert min(c.canonicalize().monomers) == (0, 0)


@given(st.integers(0, 1000))
def test_signature_equality_and_hash(seed):
    rng = np.random.default_rng(seed)
    c = random_config(rng)
    d = c.copy()
    assert c == d and hash(c) == hash(d) and c.signature() == d.signature()
    p = sorted(c.monomers)[0]
    d.set_state(p, d.state(p) + "x")
    assert c != d


def test_bounding_box():
    c = Configuration({(2, -1): "a", (-3, 4): "b"})
    assert c.bounding_box() == (-3, -1, 2, 4)
