"""Numba kernels over uint64 word arrays.

Host adjacency arrives as two ``(n, W)`` arrays: ``adjw`` (neighbours) and
``nonw`` (non-neighbours, excluding the vertex itself).  A pattern arrives as a
``(k, k)`` int8 relation matrix and ``init``, a ``(k, W)`` array of per-level
candidate restrictions.  Since every later pattern vertex is constrained by
each earlier one through ``adjw`` or ``nonw``, candidate sets automatically
exclude vertices already used, so every enumerated map is injective.
"""

import numpy as np
from numba import njit

_U0 = np.uint64(0)
_U1 = np.uint64(1)
_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_S1 = np.uint64(1)
_S2 = np.uint64(2)
_S4 = np.uint64(4)
_S56 = np.uint64(56)


@njit(cache=True, inline="always")
def _pc(x):
    x = x - ((x >> _S1) & _M1)
    x = (x & _M2) + ((x >> _S2) & _M2)
    x = (x + (x >> _S4)) & _M4
    return np.int64((x * _H01) >> _S56)


@njit(cache=True)
def _pop_lowest(rem, level):
    """Remove and return the least vertex of ``rem[level]``; -1 if empty."""
    for w in range(rem.shape[1]):
        x = rem[level, w]
        if x != _U0:
            low = x & (~x + _U1)
            rem[level, w] = x ^ low
            return w * 64 + _pc(low - _U1)
    return -1


@njit(cache=True)
def _fill(adjw, nonw, rel, init, phi, nl, out):
    for w in range(adjw.shape[1]):
        c = init[nl, w]
        for j in range(nl):
            if rel[j, nl]:
                c &= adjw[phi[j], w]
            else:
                c &= nonw[phi[j], w]
        out[w] = c


@njit(cache=True)
def _above(out, v):
    """Clear every bit <= v."""
    wv = v // 64
    for w in range(min(wv, out.shape[0])):
        out[w] = _U0
    if wv < out.shape[0]:
        b = v % 64
        if b == 63:
            out[wv] = _U0
        else:
            out[wv] &= ~((_U1 << np.uint64(b + 1)) - _U1)


@njit(cache=True)
def search(adjw, nonw, rel, init, first_only, prev):
    """Count injective induced maps, or locate the lexicographically first one.

    ``prev[L] >= 0`` forces ``phi[L] > phi[prev[L]]`` (used to count one
    representative per ordering of a twin class).  Returns ``(count, phi)``;
    with ``first_only`` the count is 0 or 1 and ``phi`` holds the first map
    (or -1 entries when there is none).
    """
    k = rel.shape[0]
    nw = adjw.shape[1]
    phi = np.full(k, -1, dtype=np.int64)
    if k == 0:
        return 1, phi
    rem = np.zeros((k, nw), dtype=np.uint64)
    tmp = np.zeros(nw, dtype=np.uint64)
    for w in range(nw):
        rem[0, w] = init[0, w]
    if k == 1 and not first_only:
        total = 0
        for w in range(nw):
            total += _pc(init[0, w])
        return total, phi
    total = 0
    level = 0
    while level >= 0:
        v = _pop_lowest(rem, level)
        if v < 0:
            level -= 1
            continue
        phi[level] = v
        if level == k - 1:
            return 1, phi
        nl = level + 1
        _fill(adjw, nonw, rel, init, phi, nl, tmp)
        if prev[nl] >= 0:
            _above(tmp, phi[prev[nl]])
        if nl == k - 1 and not first_only:
            for w in range(nw):
                total += _pc(tmp[w])
            continue
        for w in range(nw):
            rem[nl, w] = tmp[w]
        level = nl
    if first_only:
        for i in range(k):
            phi[i] = -1
        return 0, phi
    return total, phi


@njit(cache=True)
def _pair_stats(adjw, nonw, pset, qset):
    """(|P|, |Q|, ordered adjacent pairs P x Q, ordered nonadjacent distinct pairs)."""
    nw = adjw.shape[1]
    np_ = 0
    nq = 0
    for w in range(nw):
        np_ += _pc(pset[w])
        nq += _pc(qset[w])
    x = 0
    y = 0
    for w in range(nw):
        word = pset[w]
        while word != _U0:
            low = word & (~word + _U1)
            word ^= low
            u = w * 64 + _pc(low - _U1)
            for z in range(nw):
                x += _pc(adjw[u, z] & qset[z])
                y += _pc(nonw[u, z] & qset[z])
    return np_, nq, x, y


@njit(cache=True)
def _cd_nonedges(nonw, pset, half):
    """Split P into its ``half`` least vertices C and the rest D; nonedges between them."""
    nw = nonw.shape[1]
    cset = np.zeros(nw, dtype=np.uint64)
    dset = np.zeros(nw, dtype=np.uint64)
    seen = 0
    for w in range(nw):
        word = pset[w]
        while word != _U0:
            low = word & (~word + _U1)
            word ^= low
            if seen < half:
                cset[w] |= low
            else:
                dset[w] |= low
            seen += 1
    non = 0
    for w in range(nw):
        word = cset[w]
        while word != _U0:
            low = word & (~word + _U1)
            word ^= low
            u = w * 64 + _pc(low - _U1)
            for z in range(nw):
                non += _pc(nonw[u, z] & dset[z])
    return non


@njit(cache=True)
def royal_search(adjw, nonw, rel_j, rel_p, rel_q, ind_i, n, k, eps_num, eps_den):
    """First royal copy of J (lexicographic) whose P, Q yield a pair with
    nonedges < eps * |W1||W2|.

    ``rel_p[j]`` / ``rel_q[j]`` give the relation of p / q to the j-th vertex of
    J.  A copy psi is royal when ``2 * x(psi) * n**(k-2) >= ind_i``.  Returns
    ``(found, psi, scanned, royal_seen)``.
    """
    kj = rel_j.shape[0]
    nw = adjw.shape[1]
    psi = np.full(kj, -1, dtype=np.int64)
    scale = 1
    for _ in range(k - 2):
        scale *= n
    full = np.zeros(nw, dtype=np.uint64)
    for v in range(n):
        full[v // 64] |= _U1 << np.uint64(v % 64)
    init = np.zeros((max(kj, 1), nw), dtype=np.uint64)
    for i in range(kj):
        for w in range(nw):
            init[i, w] = full[w]
    rem = np.zeros((max(kj, 1), nw), dtype=np.uint64)
    pset = np.zeros(nw, dtype=np.uint64)
    qset = np.zeros(nw, dtype=np.uint64)
    scanned = 0
    royal = 0
    level = 0
    if kj > 0:
        for w in range(nw):
            rem[0, w] = full[w]
    while True:
        complete = False
        if kj == 0:
            complete = True
        else:
            v = _pop_lowest(rem, level)
            if v < 0:
                level -= 1
                if level < 0:
                    break
                continue
            psi[level] = v
            if level == kj - 1:
                complete = True
            else:
                nl = level + 1
                _fill(adjw, nonw, rel_j, init, psi, nl, rem[nl])
                level = nl
        if complete:
            scanned += 1
            for w in range(nw):
                pc = full[w]
                qc = full[w]
                for j in range(kj):
                    pc &= adjw[psi[j], w] if rel_p[j] else nonw[psi[j], w]
                    qc &= adjw[psi[j], w] if rel_q[j] else nonw[psi[j], w]
                pset[w] = pc
                qset[w] = qc
            npn, nqn, x, _y = _pair_stats(adjw, nonw, pset, qset)
            if x > 0 and 2 * x * scale >= ind_i:
                royal += 1
                same = True
                for w in range(nw):
                    if pset[w] != qset[w]:
                        same = False
                if same:
                    half = npn // 2
                    non = _cd_nonedges(nonw, pset, half)
                    if non * eps_den < eps_num * half * (npn - half):
                        return True, psi, scanned, royal
                else:
                    non = npn * nqn - x
                    if non * eps_den < eps_num * npn * nqn:
                        return True, psi, scanned, royal
            if kj == 0:
                break
    return False, psi, scanned, royal


@njit(cache=True)
def find_first(adjw, nonw, rel, init, budget):
    """First induced map found by forward checking.

    The next pattern vertex is the unplaced one with the fewest remaining
    candidates (ties to the lower index), host candidates ascend, and a
    placement is rejected as soon as some unplaced vertex runs out of
    candidates.  Returns ``(status, phi)`` with ``phi`` indexed by pattern
    vertex; status is 1 when found, 0 when there is no map, and -1 when more
    than ``budget`` placements were tried.
    """
    k = rel.shape[0]
    nw = adjw.shape[1]
    phi = np.full(k, -1, dtype=np.int64)
    if k == 0:
        return 1, phi
    dom = np.zeros((k + 1, k, nw), dtype=np.uint64)
    for i in range(k):
        for w in range(nw):
            dom[0, i, w] = init[i, w]
    var = np.full(k, -1, dtype=np.int64)
    placed = np.zeros(k, dtype=np.bool_)
    rem = np.zeros((k, nw), dtype=np.uint64)

    best = -1
    bc = -1
    for i in range(k):
        c = 0
        for w in range(nw):
            c += _pc(dom[0, i, w])
        if best < 0 or c < bc:
            best, bc = i, c
    var[0] = best
    for w in range(nw):
        rem[0, w] = dom[0, best, w]
    depth = 0
    tried = 0
    while depth >= 0:
        x = var[depth]
        v = _pop_lowest(rem, depth)
        if v < 0:
            placed[x] = False
            phi[x] = -1
            depth -= 1
            continue
        tried += 1
        if tried > budget:
            for i in range(k):
                phi[i] = -1
            return -1, phi
        phi[x] = v
        placed[x] = True
        ok = True
        nxt = -1
        nc = -1
        for u in range(k):
            if placed[u]:
                continue
            c = 0
            for w in range(nw):
                if rel[x, u]:
                    d = dom[depth, u, w] & adjw[v, w]
                else:
                    d = dom[depth, u, w] & nonw[v, w]
                dom[depth + 1, u, w] = d
                c += _pc(d)
            if c == 0:
                ok = False
                break
            if nxt < 0 or c < nc:
                nxt, nc = u, c
        if not ok:
            continue
        if nxt < 0:
            return 1, phi
        depth += 1
        var[depth] = nxt
        for w in range(nw):
            rem[depth, w] = dom[depth, nxt, w]
    for i in range(k):
        phi[i] = -1
    return 0, phi
