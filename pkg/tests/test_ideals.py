"""Saturated hereditary sets: closure, lattice, quotients."""

import pytest

from corpus import CORPUS, entered_loop
from kpalg import (
    KGraphError,
    SatHerSet,
    chain,
    enumerate_sat_her,
    grid,
    is_sat_her,
    quotient,
    sat_her_closure,
    two_loops_plus_exit,
    validate,
)
from oracles import brute_sat_her


def test_closure_pulls_in_sources():
    g = two_loops_plus_exit()
    # w is closed on its own: heredity follows edges out of the set's
    # ranges, and nothing ranges at w except c whose source is v
    assert sat_her_closure(g, ["w"]).as_set() == {"v", "w"}
    assert sat_her_closure(g, []).as_set() == set()


def test_closure_saturation_forces_vertices():
    g = entered_loop()
    assert sat_her_closure(g, ["w"]).as_set() == {"w"}
    # v sits on its own loop, so heredity drags in w via c and then all of v
    assert sat_her_closure(g, ["v"]).as_set() == {"v", "w"}


def test_closure_saturation_on_chain():
    g = chain(3)
    # v2 is the only feeder of v1, and v1 of v0: saturation forces both
    assert sat_her_closure(g, ["v2"]).as_set() == {"v0", "v1", "v2"}
    assert sat_her_closure(g, ["v0"]).as_set() == {"v0", "v1", "v2"}


def test_closure_rejects_unknown_vertex():
    with pytest.raises(KGraphError):
        sat_her_closure(chain(3), ["nope"])


def test_is_sat_her_matches_membership():
    g = entered_loop()
    assert is_sat_her(g, set())
    assert is_sat_her(g, {"w"})
    assert is_sat_her(g, {"v", "w"})
    assert not is_sat_her(g, {"v"})


def test_lattice_on_entered_loop():
    lat = enumerate_sat_her(entered_loop())
    got = [tuple(h) for h in lat.sets]
    assert got == [(), ("w",), ("v", "w")]
    # covers form the 3-chain
    assert set(lat.covers) == {(0, 1), (1, 2)}


def test_lattice_is_trivial_on_strongly_connected_graphs():
    for name in ["e2", "t2", "cycle3", "two_loops_plus_exit"]:
        g = dict(CORPUS)[name]()
        lat = enumerate_sat_her(g)
        assert len(lat) == 2
        assert len(lat.sets[0]) == 0
        assert lat.sets[-1].as_set() == set(g.vertices)


def test_lattice_matches_brute_force_on_corpus():
    for name, mk in CORPUS:
        g = mk()
        expected = brute_sat_her(g)
        got = {frozenset(h.as_set()) for h in enumerate_sat_her(g).sets}
        assert got == expected, name


def test_lattice_covers_are_inclusions_without_middle():
    g = grid((2, 1))
    lat = enumerate_sat_her(g)
    sets = [h.as_set() for h in lat.sets]
    for i, j in lat.covers:
        assert sets[i] < sets[j]
        assert not any(
            sets[i] < sets[m] < sets[j] for m in range(len(sets))
        )


def test_quotient_removes_ideal_and_validates():
    g = entered_loop()
    q = quotient(g, SatHerSet(("w",)))
    assert list(q.vertices) == ["v"]
    assert set(q.edges) == {"a"}
    assert validate(q).ok


def test_quotient_by_empty_set_is_same_presentation():
    g = grid((1, 1))
    q = quotient(g, SatHerSet(()))
    assert set(q.edges) == set(g.edges)
    assert list(q.vertices) == list(g.vertices)


def test_quotient_rejects_non_sat_her():
    g = entered_loop()
    with pytest.raises(KGraphError):
        quotient(g, SatHerSet(("v",)))


def test_all_corpus_quotients_validate():
    for name, mk in CORPUS:
        g = mk()
        for h in enumerate_sat_her(g).sets:
            if len(h) == len(list(g.vertices)):
                continue
            assert validate(quotient(g, h)).ok, (name, tuple(h))
