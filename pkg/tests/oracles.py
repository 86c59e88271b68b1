"""Independent brute-force oracles. None of these call into the code under test
beyond plain data constructors."""
import itertools

import numpy as np


def graph_lambda(n, edges):
    """lambda of the endomorphism game straight from its definition."""
    adj = {frozenset(e) for e in edges}

    def lam(a, b, x, y):
        if x == y:
            return int(a == b)
        if frozenset((x, y)) in adj and frozenset((a, b)) not in adj:
            return 0
        return 1

    return lam


def table_lambda(forbidden):
    forbidden = set(forbidden)
    return lambda a, b, x, y: int((a, b, x, y) not in forbidden)


def closed(lam):
    return lambda a, b, x, y: lam(a, b, x, y) * lam(b, a, y, x)


def count_forbidden(n_in, n_out, lam):
    return sum(
        1
        for a, b in itertools.product(range(n_out), repeat=2)
        for x, y in itertools.product(range(n_in), repeat=2)
        if lam(a, b, x, y) == 0
    )


def star_witness(n, lam):
    for i, j, k, l, r, s in itertools.product(range(n), repeat=6):
        if lam(i, j, k, l) == 0 and lam(i, j, r, s) == 1 and lam(r, s, k, l) == 1:
            return (i, j, k, l, r, s)
    return None


def homomorphisms(n, edges):
    edges = [tuple(e) for e in edges]
    adj = {frozenset(e) for e in edges}
    return [
        f
        for f in itertools.product(range(n), repeat=n)
        if all(frozenset((f[u], f[v])) in adj and f[u] != f[v] for u, v in edges)
    ]


def automorphisms(n, edges):
    edges = [tuple(e) for e in edges]
    adj = {frozenset(e) for e in edges}
    return [
        f
        for f in itertools.permutations(range(n))
        if all(frozenset((f[u], f[v])) in adj for u, v in edges)
    ]


def game_points(n_in, n_out, lam):
    return [
        f
        for f in itertools.product(range(n_out), repeat=n_in)
        if all(lam(f[x], f[y], x, y) for x in range(n_in) for y in range(n_in))
    ]


def reduced_basis_words(n_in, n_out, degree):
    """Words of exactly ``degree`` letters, no letter with output 0, no equal adjacent inputs."""
    letters = [(x, a) for x in range(n_in) for a in range(n_out)]
    out = []
    for word in itertools.product(letters, repeat=degree):
        if any(a == 0 for _, a in word):
            continue
        if any(word[t][0] == word[t + 1][0] for t in range(degree - 1)):
            continue
        out.append(word)
    return out


def spectral(m):
    return float(np.linalg.svd(np.asarray(m), compute_uv=False)[0]) if np.asarray(m).size else 0.0
