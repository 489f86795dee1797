"""numpy implementations of the compiled kernels (same signatures and results)."""

from __future__ import annotations

import math

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from torsionbound.errors import EnumerationCapExceeded

BITMAP_LIMIT = 1 << 28


def closure(gens, n: int, cap: int) -> np.ndarray:
    g = np.asarray(gens, dtype=np.int64).reshape(-1, 4)
    n2 = n * n
    n4 = n2 * n2
    ident = n2 * n + 1
    use_bitmap = n4 <= BITMAP_LIMIT
    if use_bitmap:
        seen = np.zeros(n4, dtype=bool)
        seen[ident] = True
    else:
        seen_codes = np.array([ident], dtype=np.int64)
    found = [np.array([ident], dtype=np.int64)]
    total = 1
    frontier = found[0]
    while frontier.size:
        d = frontier % n
        c = (frontier // n) % n
        b = (frontier // n2) % n
        a = frontier // (n2 * n)
        products = []
        for s0, s1, s2, s3 in g:
            e0 = (a * s0 + b * s2) % n
            e1 = (a * s1 + b * s3) % n
            e2 = (c * s0 + d * s2) % n
            e3 = (c * s1 + d * s3) % n
            products.append(((e0 * n + e1) * n + e2) * n + e3)
        cand = np.unique(np.concatenate(products))
        if use_bitmap:
            cand = cand[~seen[cand]]
            seen[cand] = True
        else:
            cand = cand[~np.isin(cand, seen_codes, assume_unique=True)]
            seen_codes = np.union1d(seen_codes, cand)
        total += cand.size
        if total > cap:
            raise EnumerationCapExceeded(cap, total)
        found.append(cand)
        frontier = cand
    out = np.concatenate(found)
    out.sort()
    return out


def components(images) -> np.ndarray:
    img = np.asarray(images, dtype=np.int64)
    img = img.reshape(-1, img.shape[-1])
    m = img.shape[1]
    rows = np.tile(np.arange(m, dtype=np.int64), img.shape[0])
    graph = coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, img.ravel())), shape=(m, m))
    _, comp = connected_components(graph, directed=True, connection="weak")
    least = np.full(comp.max() + 1 if m else 0, m, dtype=np.int64)
    np.minimum.at(least, comp, np.arange(m, dtype=np.int64))
    return least[comp]


def prime_pi(x: int) -> int:
    x = int(x)
    if x < 2:
        return 0
    r = math.isqrt(x)
    small = np.arange(-1, r, dtype=np.int64)
    small[0] = 0
    idx = np.arange(1, r + 1, dtype=np.int64)
    large = np.concatenate(([0], x // idx - 1)).astype(np.int64)
    for p in range(2, r + 1):
        if small[p] == small[p - 1]:
            continue
        sp = small[p - 1]
        p2 = p * p
        lim = min(r, x // p2)
        i = idx[:lim]
        q = i * p
        inner = q <= r
        sub = np.empty(lim, dtype=np.int64)
        sub[inner] = large[q[inner]]
        sub[~inner] = small[x // q[~inner]]
        large[1:lim + 1] -= sub - sp
        if r >= p2:
            v = np.arange(p2, r + 1, dtype=np.int64)
            small[p2:r + 1] -= small[v // p] - sp
    return int(large[1])


def totients(limit: int) -> np.ndarray:
    phi = np.arange(limit + 1, dtype=np.int64)
    if limit >= 0:
        phi[0] = 0
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    for p in np.flatnonzero(sieve):
        phi[p::p] -= phi[p::p] // p
    return phi
