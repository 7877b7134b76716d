"""The twelve acceptance criteria, one test each, with a one-line verdict."""

import time

import pytest

from cyclic_linf import cli, suite
from cyclic_linf.report import PASS


@pytest.fixture
def verdict(capsys):
    def emit(label, report, seconds, limit=None, extra=""):
        ok = report.status == PASS and (limit is None or seconds < limit)
        budget = "" if limit is None else " (limit %ss)" % limit
        with capsys.disabled():
            print("\n[%s] %s: %s in %.2fs%s%s" % ("pass" if ok else "FAIL", label, report.status,
                                                 seconds, budget, extra))
        return ok
    return emit


def timed(fn, *args):
    t0 = time.perf_counter()
    r = fn(*args)
    return r, time.perf_counter() - t0


def test_c01_jacobi_coderivation_equivalence(verdict):
    r, dt = timed(suite.criterion1)
    assert verdict("C1 jacobi <=> coderivation", r, dt, 10,
                   ", %d valid / %d corrupted" % (r.details["valid"], r.details["corrupted"]))
    assert (r.details["valid"], r.details["corrupted"]) == (20, 20)
    valid, corrupted = suite.criterion1_structures()
    structures = valid + [c[0] for c in corrupted]
    assert all(L.space.dim <= 8 and L.arity_cap == 4 for L in structures)


def test_c02_transfer_soundness(verdict):
    r, dt = timed(suite.criterion2)
    assert verdict("C2 transfer soundness", r, dt, 5, ", %d fixtures" % r.details["fixtures"])


def test_c03_superpotential_split(verdict):
    r, dt = timed(suite.criterion3)
    assert verdict("C3 superpotential split", r, dt, extra=", %d pairs" % r.details["pairs"])
    assert r.details["pairs"] == 10


def test_c04_milnor_grid(verdict):
    r, dt = timed(suite.criterion4)
    assert verdict("C4 Milnor grid", r, dt, 30, ", %d germs" % r.details["germs"])
    assert r.details["germs"] == 25 + 27


def test_c05_thom_sebastiani(verdict):
    r, dt = timed(suite.criterion5)
    assert verdict("C5 Thom-Sebastiani", r, dt,
                   extra=", %d grid + %d mixed pairs" % (r.details["grid_pairs"],
                                                         r.details["mixed_pairs"]))
    assert (r.details["grid_pairs"], r.details["mixed_pairs"]) == (625, 10)


def test_c06_behrend_values(verdict):
    r, dt = timed(suite.criterion6)
    assert verdict("C6 Behrend values", r, dt)
    assert [q.details["nu"] for q in r.parts] == [1, 1, 4]


def test_c07_blowup_formula(verdict):
    r, dt = timed(suite.criterion7)
    assert verdict("C7 blow-up formula", r, dt)
    assert len(r.parts) == 2


def test_c08_joyce_song_product(verdict):
    r, dt = timed(suite.criterion8)
    assert verdict("C8 Joyce-Song product formula", r, dt,
                   extra=", %d combinations" % r.details["combos"])
    assert r.details["combos"] >= 12


def test_c09_joyce_song_exchange(verdict):
    r, dt = timed(suite.criterion9)
    assert verdict("C9 Joyce-Song exchange formula", r, dt)
    assert [q.check for q in r.parts] == ["empty", "symmetric", "rank_1_0"]


def test_c10_a_campo(verdict):
    r, dt = timed(suite.criterion10)
    assert verdict("C10 motivic vs A'Campo", r, dt)
    assert [q.details["euler"] for q in r.parts] == [0, -1]


def test_c11_motivic_ts_shadow(verdict):
    r, dt = timed(suite.criterion11)
    assert verdict("C11 motivic TS shadow", r, dt)
    assert len(r.parts) == 2


def test_c12_determinism(verdict):
    def render(threads):
        return cli.run_suite_text(threads, as_json=True)[0]
    r, dt = timed(suite.criterion12, render)
    assert verdict("C12 determinism", r, dt, extra=", %d bytes x 3 runs" % r.details["bytes"])
