from fractions import Fraction

import pytest

import oracles

from ehcert.certificates import verify_certificate
from ehcert.constants import constants_sheet
from ehcert.construct import complete_graph, cycle_graph, empty_graph, path_graph, random_graph, swiss_army
from ehcert.errors import PreconditionError
from ehcert.fixtures import planted_swiss
from ehcert.graph import is_sparse_graph, is_stable, mask_of
from ehcert.pipeline import (
    EXIT_INCONCLUSIVE, EXIT_VERIFIED, Outcome, RunTrace, eh_certify, good_y_descent, greedy_stable, rodl_split,
)

QUARTER = Fraction(1, 4)


def test_rodl_edgeless_is_direct_whole():
    r = rodl_split(empty_graph(20), complete_graph(3), QUARTER, check_free=False)
    assert r.side == "direct" and r.vertices == tuple(range(20))


def test_rodl_complete_is_complement_whole():
    r = rodl_split(complete_graph(20), complete_graph(3), QUARTER, check_free=False)
    assert r.side == "complement" and r.vertices == tuple(range(20))


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_rodl_random_side_is_sparse(seed):
    g = random_graph(80, 0.5, seed)
    r = rodl_split(g, complete_graph(6), QUARTER, check_free=False)
    host = g.complement() if r.side == "complement" else g
    assert r.vertices
    assert is_sparse_graph(host, QUARTER, mask_of(host, r.vertices))


def test_rodl_copy_short_circuit():
    g = random_graph(80, 0.5, 0)
    h = path_graph(3)
    r = rodl_split(g, h, QUARTER)
    assert r.side == "copy"
    assert oracles.is_induced_copy(h, list(r.vertices), g)


def test_greedy_stable_floor():
    g = cycle_graph(9)
    s = greedy_stable(g, g.full_mask)
    assert is_stable(g, s) and len(s) >= 9 // 3


def test_descent_edgeless_takes_steps_then_window():
    sheet = constants_sheet(1, 2, 2, overrides={"eta": "1/4", "c": "1/2"})
    log = []
    d = good_y_descent(empty_graph(40), range(40), sheet, path_graph(3), trace=log)
    assert d.terminal and d.certificate.kind == "StableSet"
    assert d.history == (Fraction(1, 4), Fraction(1, 32))
    assert len(d.certificate["S"]) == 40
    assert [e["outcome"] for e in log if e["stage"] == "y-descent"] == ["descend", "window"]


def test_descent_default_sheet_hits_window_at_once():
    sheet = constants_sheet(1, 2, 2)
    d = good_y_descent(empty_graph(40), range(40), sheet, swiss_army(path_graph(2), 1, 2))
    assert d.terminal and len(d.history) == 1
    assert not verify_certificate(d.certificate, empty_graph(40))


def test_descent_out_of_reach_is_reported():
    sheet = constants_sheet(1, 2, 2, overrides={"eta": "1/4", "c": "1/2"})
    d = good_y_descent(empty_graph(40), range(40), sheet, swiss_army(path_graph(2), 1, 2))
    assert d.next_failed and not d.terminal and d.certificate is None


def test_descent_preconditions():
    sheet = constants_sheet(1, 2, 2)
    with pytest.raises(PreconditionError):
        good_y_descent(empty_graph(5), [], sheet, path_graph(3))
    with pytest.raises(PreconditionError):
        good_y_descent(complete_graph(5), range(5), sheet, path_graph(3))


@pytest.mark.parametrize("g,kind", [
    (complete_graph(50), "Clique"),
    (empty_graph(50), "StableSet"),
    (planted_swiss(path_graph(2), 1, 2, 30), "InducedCopy"),
    (random_graph(60, 0.5, 1), None),
])
def test_certify_kinds(g, kind):
    out = eh_certify(g, path_graph(2), 1, 2, seed=0)
    assert isinstance(out, Outcome)
    assert out.exit_code == EXIT_VERIFIED and not out.inconclusive
    assert not verify_certificate(out.certificate, g)
    if kind:
        assert out.certificate.kind == kind


def test_certify_trace_is_deterministic():
    g = random_graph(40, 0.3, 5)
    a = eh_certify(g, path_graph(2), 1, 1, seed=7)
    b = eh_certify(g, path_graph(2), 1, 1, seed=7)
    assert a.trace.to_json() == b.trace.to_json()
    stages = [s["stage"] for s in a.trace.stages]
    assert stages[0] == "setup" and stages[-1] == "result"


def test_inconclusive_exit_code():
    out = Outcome(None, RunTrace(0, {}, []), "nothing")
    assert out.inconclusive and out.exit_code == EXIT_INCONCLUSIVE
