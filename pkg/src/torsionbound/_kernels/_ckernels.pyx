# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: matrix-group closure, orbit components, Lucy prime counting."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t, uint16_t, uint64_t
from libc.math cimport sqrt
from libcpp.vector cimport vector
from libcpp.unordered_set cimport unordered_set

from torsionbound.errors import EnumerationCapExceeded

cnp.import_array()

cdef int64_t BITMAP_LIMIT = 1LL << 33
cdef int64_t MAX_MODULUS = 1 << 16


def closure(gens, int64_t n, int64_t cap):
    """Codes of the subgroup generated by ``gens`` (k x 4 residues), sorted."""
    cdef cnp.ndarray[int64_t, ndim=2] g = np.ascontiguousarray(gens, dtype=np.int64).reshape(-1, 4)
    cdef Py_ssize_t k = g.shape[0]
    cdef uint64_t un = <uint64_t>n
    cdef int64_t n2 = n * n
    cdef int64_t n4 = n2 * n2
    cdef bint use_bitmap = n4 <= BITMAP_LIMIT
    cdef vector[uint64_t] seen
    cdef unordered_set[int64_t] seen_set
    cdef vector[uint64_t] gen
    cdef vector[uint16_t] entries
    cdef vector[int64_t] codes
    cdef uint64_t a, b, c, d, e0, e1, e2, e3
    cdef int64_t nxt
    cdef Py_ssize_t head = 0, j

    if n >= MAX_MODULUS:
        raise ValueError("modulus too large for the compiled closure kernel")
    for j in range(k):
        gen.push_back(<uint64_t>(g[j, 0] % n))
        gen.push_back(<uint64_t>(g[j, 1] % n))
        gen.push_back(<uint64_t>(g[j, 2] % n))
        gen.push_back(<uint64_t>(g[j, 3] % n))

    nxt = n2 * n + 1
    if use_bitmap:
        seen.resize((n4 >> 6) + 1, 0)
        seen[nxt >> 6] |= (<uint64_t>1) << (nxt & 63)
    else:
        seen_set.insert(nxt)
    codes.push_back(nxt)
    entries.push_back(1)
    entries.push_back(0)
    entries.push_back(0)
    entries.push_back(1)

    while head < <Py_ssize_t>codes.size():
        a = entries[4 * head]
        b = entries[4 * head + 1]
        c = entries[4 * head + 2]
        d = entries[4 * head + 3]
        head += 1
        for j in range(k):
            e0 = (a * gen[4 * j] + b * gen[4 * j + 2]) % un
            e1 = (a * gen[4 * j + 1] + b * gen[4 * j + 3]) % un
            e2 = (c * gen[4 * j] + d * gen[4 * j + 2]) % un
            e3 = (c * gen[4 * j + 1] + d * gen[4 * j + 3]) % un
            nxt = <int64_t>(((e0 * un + e1) * un + e2) * un + e3)
            if use_bitmap:
                if seen[nxt >> 6] & ((<uint64_t>1) << (nxt & 63)):
                    continue
                seen[nxt >> 6] |= (<uint64_t>1) << (nxt & 63)
            else:
                if seen_set.count(nxt):
                    continue
                seen_set.insert(nxt)
            codes.push_back(nxt)
            entries.push_back(<uint16_t>e0)
            entries.push_back(<uint16_t>e1)
            entries.push_back(<uint16_t>e2)
            entries.push_back(<uint16_t>e3)
        if <int64_t>codes.size() > cap:
            raise EnumerationCapExceeded(cap, codes.size())

    cdef cnp.ndarray[int64_t, ndim=1] out = np.empty(codes.size(), dtype=np.int64)
    cdef int64_t* op = <int64_t*> out.data
    for j in range(<Py_ssize_t>codes.size()):
        op[j] = codes[j]
    out.sort()
    return out


cdef inline int64_t _find(int64_t* parent, int64_t i) nogil:
    cdef int64_t root = i, nxt
    while parent[root] != root:
        root = parent[root]
    while parent[i] != root:
        nxt = parent[i]
        parent[i] = root
        i = nxt
    return root


def components(images):
    """Label each point by the least point of its connected component.

    ``images`` is a (k, m) array; row j is the permutation of range(m) induced by
    generator j.
    """
    arr = np.asarray(images, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=2] img = np.ascontiguousarray(arr.reshape(-1, arr.shape[arr.ndim - 1]))
    cdef Py_ssize_t k = img.shape[0], m = img.shape[1], i, j
    cdef cnp.ndarray[int64_t, ndim=1] parent = np.arange(m, dtype=np.int64)
    cdef int64_t* par = <int64_t*> parent.data
    cdef int64_t ra, rb
    for j in range(k):
        for i in range(m):
            ra = _find(par, i)
            rb = _find(par, img[j, i])
            if ra < rb:
                par[rb] = ra
            elif rb < ra:
                par[ra] = rb
    for i in range(m):
        par[i] = _find(par, i)
    return parent


def prime_pi(int64_t x):
    """Number of primes <= x (Lucy's dynamic programme, O(x^(3/4)))."""
    if x < 2:
        return 0
    cdef int64_t r = <int64_t>sqrt(<double>x)
    while r * r > x:
        r -= 1
    while (r + 1) * (r + 1) <= x:
        r += 1
    # small[v] = S(v) for v <= r; large[i] = S(x // i) for 1 <= i <= r
    cdef vector[int64_t] small, large
    small.resize(r + 1)
    large.resize(r + 1)
    cdef int64_t v, i, p, sp, p2, lim, q
    for v in range(r + 1):
        small[v] = v - 1 if v >= 1 else 0
    for i in range(1, r + 1):
        large[i] = x // i - 1
    for p in range(2, r + 1):
        if small[p] == small[p - 1]:
            continue
        sp = small[p - 1]
        p2 = p * p
        lim = r if x // p2 >= r else x // p2
        for i in range(1, lim + 1):
            q = i * p
            if q <= r:
                large[i] -= large[q] - sp
            else:
                large[i] -= small[x // q] - sp
        if r >= p2:
            for v in range(r, p2 - 1, -1):
                small[v] -= small[v // p] - sp
    return large[1]


def totients(int64_t limit):
    """phi(0..limit) via a linear sieve; phi(0) is reported as 0."""
    cdef cnp.ndarray[int64_t, ndim=1] phi = np.zeros(limit + 1, dtype=np.int64)
    cdef vector[int64_t] primes
    cdef int64_t i, j, p, ip
    if limit >= 1:
        phi[1] = 1
    for i in range(2, limit + 1):
        if phi[i] == 0:
            phi[i] = i - 1
            primes.push_back(i)
        for j in range(<int64_t>primes.size()):
            p = primes[j]
            ip = i * p
            if ip > limit:
                break
            if i % p == 0:
                phi[ip] = phi[i] * p
                break
            phi[ip] = phi[i] * (p - 1)
    return phi
