"""End-to-end certification for the pair {F^s_t, complement of F^s_t}.

:func:`eh_certify` walks the proof as a state machine: look for either
pattern directly, split off a side on which the graph (or its complement) is
sparse, descend through sparsity levels, grow a handset, and try to complete
it with a rainbow copy of the forest.  Each stage logs what happened to a
:class:`RunTrace`.  Stages that cannot fire at the given size log the reason
and hand over to the next; the run ends with the best verified clique or
stable set, or an inconclusive outcome when no search could finish.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import certificates as C
from .anticomplete import useanticom
from .bits import as_fraction, from_iter, iter_bits, popcount, to_list
from .cliques import max_clique, max_stable, ramsey_extract
from .constants import constants_sheet
from .construct import swiss_army
from .errors import BoundDidNotFire, EhcertError, Inconclusive, PreconditionError
from .foxsudakov import strengthening_dichotomy
from .graph import induced
from .handset import HandsetResult, composition_certificate, gethandset
from .limits import DEFAULT
from .numerics import Power, ceil_of, exact, real_text
from .patterns import find_copy
from .sparse_dense import DensePairSequence, sparse_dense_sequence

EXIT_VERIFIED, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2


def _plain(x):
    """JSON-ready copy of a trace value; exact numbers become text."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return real_text(as_fraction(x))
    return real_text(x)


@dataclass
class RunTrace:
    """Ordered stage log of one run; contains no timings, so reruns match exactly."""

    seed: int = 0
    params: dict = field(default_factory=dict)
    stages: list = field(default_factory=list)

    def log(self, stage, **info):
        self.stages.append({"stage": stage, **info})

    def extend(self, entries):
        self.stages.extend(entries)

    def to_dict(self):
        return {"seed": self.seed, "params": _plain(self.params), "stages": _plain(self.stages)}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)


@dataclass
class Outcome:
    certificate: object
    trace: RunTrace
    reason: str = ""

    @property
    def inconclusive(self):
        return self.certificate is None

    @property
    def exit_code(self):
        return EXIT_INCONCLUSIVE if self.inconclusive else EXIT_VERIFIED


# -- Rödl split substitute --------------------------------------------------

@dataclass(frozen=True)
class RodlSplit:
    side: str
    vertices: tuple
    method: str
    copy: object = None


def _max_deg(g, mask):
    return max((popcount(g.adj[v] & mask) for v in iter_bits(mask)), default=0)


def _is_sparse(g, mask, eps):
    return _max_deg(g, mask) <= eps * popcount(mask)


def _peel(g, mask, eps):
    """Drop a vertex of largest degree (larger id on ties) until the rest is ``eps``-sparse."""
    while mask and not _is_sparse(g, mask, eps):
        worst = max(iter_bits(mask), key=lambda v: (popcount(g.adj[v] & mask), v))
        mask &= ~(1 << worst)
    return mask


def rodl_split(g, h, eps, limits=DEFAULT, check_free=True, trace=None):
    """A vertex set on which ``g`` (side ``direct``) or its complement (side
    ``complement``) has every degree at most ``eps`` times its size.

    Strengthening dichotomies run alternately on ``g`` and its complement: a
    sparse set narrows the search on the same side, a dense pair moves it to
    the other.  When counting is out of reach, or the alternation stalls,
    greedy peeling finishes the job, so the result always verifies.  With
    ``check_free``, a copy of ``h`` or its complement short-circuits with side ``copy``.
    """
    eps = as_fraction(eps)
    log = trace if trace is not None else []
    gc = g.complement()
    if check_free:
        for side, host in (("direct", g), ("complement", gc)):
            cm = find_copy(h, host, limits)
            if cm is not None:
                log.append({"stage": "rodl", "outcome": "copy", "in": side})
                return RodlSplit("copy", cm.map, side)
    graphs = {"direct": g, "complement": gc}
    other = {"direct": "complement", "complement": "direct"}
    side, mask = "direct", g.full_mask
    method = "strengthening"
    for _ in range(2 * max(1, g.n.bit_length())):
        for sd in (side, other[side]):
            if _is_sparse(graphs[sd], mask, eps):
                log.append({"stage": "rodl", "outcome": sd, "size": popcount(mask), "method": method})
                return RodlSplit(sd, tuple(to_list(mask)), method)
        sub, back = induced(graphs[side], to_list(mask))
        try:
            res = strengthening_dichotomy(sub, h, min(eps, Fraction(1, 4)), limits)
        except EhcertError as exc:
            log.append({"stage": "rodl", "dichotomy": type(exc).__name__, "detail": str(exc)})
            break
        log.append({"stage": "rodl", "dichotomy": res.kind, "side": side, "size": sub.n})
        if res.kind == "SparseSet":
            nxt = from_iter(back[v] for v in res["S"])
        else:
            nxt = from_iter(back[v] for v in res["W1"] + res["W2"])
            side = other[side]
        if nxt == mask:
            break
        mask = nxt
    method = "peeling"
    best = None
    for sd in ("direct", "complement"):
        m = _peel(graphs[sd], mask, eps)
        if best is None or popcount(m) > popcount(best[1]):
            best = (sd, m)
    log.append({"stage": "rodl", "outcome": best[0], "size": popcount(best[1]), "method": method})
    return RodlSplit(best[0], tuple(to_list(best[1])), method)


# -- good-y descent ---------------------------------------------------------

@dataclass(frozen=True)
class YDescent:
    y: object
    vertices: tuple
    terminal: bool
    certificate: object = None
    sequence: object = None
    next_failed: bool = False
    history: tuple = ()


def greedy_stable(g, mask):
    """Minimum-degree greedy stable set; reaches ``|S| / (maxdeg + 1)``."""
    out = []
    while mask:
        v = min(iter_bits(mask), key=lambda u: (popcount(g.adj[u] & mask), u))
        out.append(v)
        mask &= ~(g.adj[v] | (1 << v))
    return out


def good_y_descent(g, vertices, sheet, h, limits=DEFAULT, trace=None):
    """Descend ``y -> y^2/2`` from ``eta`` while the sparse-dense step hands back
    a sparser witness set.

    Stops with the dense-pair sequence at the last good ``y``, or, once ``y``
    is at most ``|G|^-c``, with the greedy stable set of the current witness
    set (terminal).  A copy of ``h`` met on the way is terminal as well.
    """
    log = trace if trace is not None else []
    n = g.n
    c = sheet["c"]
    y = exact(sheet["eta"])
    mask = from_iter(vertices)
    if not mask:
        raise PreconditionError("starting set is empty")
    if not _is_sparse(g, mask, y):
        raise PreconditionError("G[S] is not eta-sparse")
    history = [y]
    window = Power(1, n, -c)
    while True:
        size = popcount(mask)
        if sheet.pristine and Power(1, n, c) >= 2:
            assert y * size >= 2
        if y <= window:
            stable = greedy_stable(g, mask)
            floor = Fraction(size, _max_deg(g, mask) + 1)
            log.append({"stage": "y-descent", "outcome": "window", "y": y, "stable": len(stable),
                        "inverse_y_met": len(stable) >= 1 / y})
            cert = C.stable_set(stable, min_size=ceil_of(floor), source="window")
            return YDescent(y, tuple(to_list(mask)), True, cert, history=tuple(history))
        sub, back = induced(g, to_list(mask))
        try:
            res = sparse_dense_sequence(sub, h, y, sheet, limits, trace=log)
        except EhcertError as exc:
            log.append({"stage": "y-descent", "outcome": type(exc).__name__, "y": y, "detail": str(exc)})
            return YDescent(y, tuple(to_list(mask)), False, next_failed=True, history=tuple(history))
        if isinstance(res, DensePairSequence):
            lifted = DensePairSequence([([back[v] for v in a], [back[v] for v in b]) for a, b in res.pairs],
                                       res.y, res.h, dict(res.bounds))
            log.append({"stage": "y-descent", "outcome": "sequence", "y": y, "pairs": len(res)})
            return YDescent(y, tuple(to_list(mask)), False, sequence=lifted, history=tuple(history))
        if res.kind == "InducedCopy":
            cert = res.with_(mapping=[back[v] for v in res.mapping])
            log.append({"stage": "y-descent", "outcome": "copy", "y": y})
            return YDescent(y, tuple(to_list(mask)), True, cert, history=tuple(history))
        nxt_y = y * y / 2
        nxt = from_iter(back[v] for v in res["S"])
        if not _is_sparse(g, nxt, nxt_y):
            log.append({"stage": "y-descent", "outcome": "next-level-not-sparse", "y": y})
            return YDescent(y, tuple(to_list(mask)), False, next_failed=True, history=tuple(history))
        log.append({"stage": "y-descent", "outcome": "descend", "y": y, "next": nxt_y, "size": popcount(nxt)})
        y, mask = nxt_y, nxt
        history.append(y)


# -- assembly ---------------------------------------------------------------

def _swiss_payload(f, s, t, complement):
    return {"forest_n": f.n, "forest_edges": [list(e) for e in f.edges()], "s": s, "t": t,
            "complement": complement}


def _as_host(cert, complement, f, s, t):
    """Translate a certificate found in the working graph back to ``g``."""
    if not complement:
        return cert
    if cert.kind == "StableSet":
        return C.clique(cert["S"], min_size=cert.bounds.get("min_size"), **cert.extra)
    if cert.kind == "Clique":
        return C.stable_set(cert["K"], min_size=cert.bounds.get("min_size"), **cert.extra)
    if cert.kind == "InducedCopy":
        return C.induced_copy(cert.pattern.complement(), cert.mapping, swiss=_swiss_payload(f, s, t, True))
    raise ValueError(f"cannot translate {cert.kind}")


def _extremal(g, need, limits, trace):
    """Largest clique or stable set the configured searches reach."""
    if g.n <= limits.final_exact_vertices:
        k, a = max_clique(g, limits=limits), max_stable(g, limits=limits)
        trace.log("extremal", method="exact", omega=len(k), alpha=len(a))
    else:
        t = 2
        while (t + 1) ** (t + 1) <= g.n:
            t += 1
        res = ramsey_extract(g, t, t)
        k = list(res["K"]) if res.kind == "Clique" else []
        a = list(res["S"]) if res.kind == "StableSet" else []
        trace.log("extremal", method="ramsey", t=t, found=res.kind)
    if len(k) >= len(a):
        return C.clique(k, min_size=need) if len(k) >= need else None
    return C.stable_set(a, min_size=need) if len(a) >= need else None


def eh_certify(g, f, s, t, sheet=None, seed=0, limits=DEFAULT, oracle=None):
    """Certify the Erdős–Hajnal dichotomy on ``g`` for ``H = F^s_t``.

    Returns an :class:`Outcome` whose certificate is an induced copy of ``H``
    or of its complement, a clique, or a stable set of size at least
    ``|G|^c``; ``None`` marks an inconclusive run.  Every certificate is
    verified against ``g`` before it is returned.
    """
    h = swiss_army(f, s, t)
    sheet = sheet if sheet is not None else constants_sheet(s, t, f.n)
    trace = RunTrace(seed, {"n": g.n, "m": g.m, "s": s, "t": t, "forest_n": f.n, "forest_edges": f.edges(),
                            "pattern_n": h.n, "overrides": dict(sheet.overrides)})
    c = sheet["c"]
    need = ceil_of(Power(1, g.n, c))
    trace.log("setup", c=c, need=need, eta=sheet["eta"])

    def done(cert, complement=False):
        cert = _as_host(cert, complement, f, s, t)
        bad = C.verify_certificate(cert, g)
        if bad:
            raise AssertionError(f"internal certificate failed verification: {bad[:3]}")
        trace.log("result", kind=cert.kind, size=len(cert.vertices()))
        return Outcome(cert, trace)

    gc = g.complement()
    payload = _swiss_payload(f, s, t, False)
    for complement, host, pattern in ((False, g, h), (True, g, h.complement())):
        try:
            cm = find_copy(pattern, host, limits)
        except EhcertError as exc:
            trace.log("find-copy", complement=complement, outcome=type(exc).__name__)
            continue
        trace.log("find-copy", complement=complement, outcome="found" if cm else "none")
        if cm is not None:
            return done(C.induced_copy(pattern, cm.map, swiss={**payload, "complement": complement}))

    staged = None
    try:
        staged = _stages(g, gc, f, s, t, h, sheet, need, limits, oracle, trace)
    except (EhcertError, AssertionError) as exc:
        trace.log("stages", outcome=type(exc).__name__, detail=str(exc))
    if staged is not None:
        cert, complement = staged
        if cert.kind == "InducedCopy" or len(cert.vertices()) >= need:
            return done(cert.with_(bounds={**cert.bounds, "min_size": need})
                        if cert.kind != "InducedCopy" else cert, complement)
    try:
        cert = _extremal(g, need, limits, trace)
    except EhcertError as exc:
        trace.log("extremal", outcome=type(exc).__name__)
        cert = None
    if cert is not None:
        return done(cert)
    trace.log("result", kind="Inconclusive")
    return Outcome(None, trace, "no stage produced a certificate of the required size")


def _stages(g, gc, f, s, t, h, sheet, need, limits, oracle, trace):
    eps = sheet["eta"] / 2
    log = []
    split = rodl_split(g, h, eps, limits, check_free=False, trace=log)
    trace.extend(log)
    complement = split.side == "complement"
    work = gc if complement else g
    log = []
    desc = good_y_descent(work, split.vertices, sheet, h, limits, trace=log)
    trace.extend(log)
    trace.log("y-history", values=list(desc.history))
    if desc.certificate is not None:
        return desc.certificate, complement
    if desc.sequence is None:
        return None
    log = []
    res = gethandset(work, desc.vertices, desc.y, s, t, h, sheet, oracle, limits, trace=log)
    trace.extend(log)
    if not isinstance(res, HandsetResult):
        trace.log("gethandset", outcome=res.kind)
        if res.kind in ("InducedCopy",):
            return res, complement
        if res.kind == "CriticalityWitness":
            return C.stable_set(res["S"]), complement
        return None
    log = []
    anti = useanticom(work, res.blockade, f, sheet, desc.y, oracle, limits, trace=log)
    trace.extend(log)
    if anti.kind != "RainbowCopy":
        return C.stable_set(anti["S"]), complement
    cert = composition_certificate(res.handset, f, anti.mapping)
    trace.log("composition", outcome="copy")
    return cert, complement


__all__ = [
    "EXIT_ERROR",
    "EXIT_INCONCLUSIVE",
    "EXIT_VERIFIED",
    "Inconclusive",
    "BoundDidNotFire",
    "Outcome",
    "RodlSplit",
    "RunTrace",
    "YDescent",
    "constants_sheet",
    "eh_certify",
    "good_y_descent",
    "greedy_stable",
    "rodl_split",
]
