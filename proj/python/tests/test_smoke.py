import os
from pathlib import Path

import pytest

import defcol

DATA = Path(__file__).resolve().parents[2] / "data"


def test_c4_two_colorable():
    r = defcol.solve(defcol.named.cycle(4), "0,0")
    assert r["status"] == "sat"
    assert sorted(r["coloring"].values()) == [0, 0, 1, 1]


def test_solver_matches_brute_force_on_k4():
    g = defcol.named.complete(4)
    for spec in ["0,0", "1,0", "1,1", "0,0,0"]:
        assert defcol.solve(g, spec)["status"] == defcol.brute_force_solve(g, spec)["status"]


def test_parse_round_trip():
    g = defcol.Graph.parse("graph p\nv 0\nv 1\ne 0 1\nt x 0\n")
    assert defcol.Graph.parse(g.serialize()).serialize() == g.serialize()
    assert g.terminal("x") == 0


def test_analysis():
    assert defcol.girth(defcol.named.cycle(7)) == 7
    assert defcol.mad(defcol.named.complete(4)) == "3"
    assert defcol.degeneracy(defcol.named.cycle(5)) == 2
    assert defcol.is_planar(defcol.named.complete(4))
    assert not defcol.is_planar(defcol.named.complete(5))


def test_g4_unsat_and_H_manifest():
    g = defcol.gadget_g4(1, 0)
    assert defcol.solve(g.graph, "1,0")["status"] == "unsat"
    assert all(outcome in ("verified", "unchecked") for outcome, _ in defcol.gadget_H(1, 0).verify())


def test_forced_state_on_T():
    t = defcol.gadget_g7()["T"].graph
    assert defcol.forced_states(t, "2,0", "w", "x=1:0,y=1:0,z=1:0") == {(1, 2)}


def test_reduce_3col_on_triangle():
    epp = defcol.gadget_E_family(1)["Epp"]
    out = defcol.reduce_3col(defcol.named.complete(3), 1, epp)
    assert defcol.solve(out.graph, "0,0,0")["status"] == "sat"
    assert len(out.trace.splitlines()) == 3


def test_reduce_k0_with_mock():
    m = defcol.find_minimal_with_2vertex("2,0", 10)
    fg = defcol.derive_forcing_gadget(m, "2,0", "path")
    for g in [defcol.named.cycle(5), defcol.named.complete(4)]:
        out = defcol.reduce_k0(g, 2, fg)
        assert (defcol.solve(g, "1,0")["status"] == "sat") == (defcol.solve(out.graph, "2,0")["status"] == "sat")


def test_non_minimal_rejected():
    with pytest.raises(ValueError):
        defcol.derive_forcing_gadget(defcol.named.complete(4), "1,0", "pendant")


def test_replay_s_chain():
    os.environ.setdefault("DEFCOL_DATA_DIR", str(DATA))
    r = defcol.replay(str(DATA / "scripts" / "s_chain.replay"))
    assert r["verified"]
