"""Hot combinatorial kernels: the (star) closure check and the classical-point search.

Each kernel exists twice: a numba loop nest (``*_nb``) and a numpy/Python
version (``*_np``). ``star_witness`` and ``enumerate_maps`` dispatch on
``_accel.USE_NUMBA``. Both variants return identical results; the numpy
versions are the reference.
"""
import numpy as np

from . import _accel
from ._accel import njit

NO_WITNESS = (-1, -1, -1, -1, -1, -1)


@njit(cache=True)
def star_witness_nb(allowed):
    n = allowed.shape[0]
    out = np.full(6, -1, np.int64)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if allowed[i, j, k, l]:
                        continue
                    for r in range(n):
                        for s in range(n):
                            if allowed[i, j, r, s] and allowed[r, s, k, l]:
                                out[0] = i
                                out[1] = j
                                out[2] = k
                                out[3] = l
                                out[4] = r
                                out[5] = s
                                return out
    return out


def star_witness_np(allowed):
    n = allowed.shape[0]
    flat = allowed.reshape(n * n, n * n).astype(np.int64)
    # (flat @ flat)[ij, kl] counts the pairs (r, s) that connect ij to kl
    paths = flat @ flat
    bad = (flat == 0) & (paths > 0)
    if not bad.any():
        return np.array(NO_WITNESS, dtype=np.int64)
    ij, kl = divmod(int(np.flatnonzero(bad)[0]), n * n)
    rs = int(np.flatnonzero(flat[ij] & flat[:, kl])[0])
    i, j = divmod(ij, n)
    k, l = divmod(kl, n)
    r, s = divmod(rs, n)
    return np.array((i, j, k, l, r, s), dtype=np.int64)


def star_witness(allowed):
    """Lexicographically smallest (i,j,k,l,r,s) violating (star), or None.

    ``allowed`` is the boolean rule array indexed ``[a, b, x, y]`` with all
    four axes of equal length.
    """
    allowed = np.ascontiguousarray(allowed, dtype=np.bool_)
    fn = star_witness_nb if _accel.USE_NUMBA else star_witness_np
    w = tuple(int(v) for v in fn(allowed))
    return None if w[0] < 0 else w


def compatibility(allowed):
    """``compat[x, a, y, b]``: assigning x->a and y->b breaks no rule in either order."""
    allowed = np.asarray(allowed, dtype=np.bool_)
    return np.ascontiguousarray(
        allowed.transpose(2, 0, 3, 1) & allowed.transpose(3, 1, 2, 0)
    )


@njit(cache=True)
def enumerate_maps_nb(compat, invertible):
    n_in = compat.shape[0]
    n_out = compat.shape[1]
    cap = 64
    out = np.empty((cap, n_in), np.int64)
    count = 0
    if n_in == 0:
        return out[:0]
    dom = np.zeros((n_in + 1, n_in, n_out), np.bool_)
    for x in range(n_in):
        for a in range(n_out):
            dom[0, x, a] = compat[x, a, x, a]
    choice = np.full(n_in, -1, np.int64)
    used = np.zeros(n_out, np.bool_)
    depth = 0
    while depth >= 0:
        prev = choice[depth]
        if prev >= 0 and invertible:
            used[prev] = False
        a = prev + 1
        while a < n_out and (not dom[depth, depth, a] or (invertible and used[a])):
            a += 1
        if a == n_out:
            choice[depth] = -1
            depth -= 1
            continue
        choice[depth] = a
        if invertible:
            used[a] = True
        if depth == n_in - 1:
            if count == cap:
                grown = np.empty((2 * cap, n_in), np.int64)
                grown[:cap] = out
                out = grown
                cap *= 2
            out[count] = choice
            count += 1
            continue
        ok = True
        for y in range(depth + 1, n_in):
            alive = False
            for b in range(n_out):
                v = dom[depth, y, b] and compat[depth, a, y, b]
                dom[depth + 1, y, b] = v
                if v and not (invertible and used[b]):
                    alive = True
            if not alive:
                ok = False
                break
        if ok:
            depth += 1
    return out[:count]


def enumerate_maps_np(compat, invertible):
    n_in, n_out = compat.shape[0], compat.shape[1]
    found = []
    if n_in == 0:
        return np.empty((0, 0), dtype=np.int64)
    diag = np.array([[compat[x, a, x, a] for a in range(n_out)] for x in range(n_in)])
    choice = [0] * n_in
    used = np.zeros(n_out, dtype=bool)

    def extend(depth, dom):
        for a in np.flatnonzero(dom[depth]):
            if invertible and used[a]:
                continue
            choice[depth] = int(a)
            if depth == n_in - 1:
                found.append(tuple(choice))
                continue
            nxt = dom & compat[depth, a]
            live = nxt[depth + 1:]
            if invertible:
                used[a] = True
                live = live & ~used
            if live.any(axis=1).all():
                extend(depth + 1, nxt)
            if invertible:
                used[a] = False

    extend(0, diag)
    return np.array(found, dtype=np.int64).reshape(len(found), n_in)


def enumerate_maps(compat, invertible):
    """All maps x -> f(x) with ``compat[x, f(x), y, f(y)]`` for every x, y.

    Rows come out in lexicographic order. ``invertible`` restricts to injective
    maps (bijections when the index sets have equal size).
    """
    compat = np.ascontiguousarray(compat, dtype=np.bool_)
    fn = enumerate_maps_nb if _accel.USE_NUMBA else enumerate_maps_np
    return fn(compat, bool(invertible))
