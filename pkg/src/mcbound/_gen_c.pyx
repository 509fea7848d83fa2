# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for topology canonicalization and layer extension.

Same interface and byte-for-byte behavior as mcbound._gen_py; gate sides
are bit masks and a topology is encoded as the bytes L1 R1 L2 R2 ...
"""

from itertools import permutations as _permutations

from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.string cimport memcmp, memcpy

BACKEND = "c"

MAX_GATES = 7

# Flat permutation tables: _perm_store[s] holds s! blocks of s positions.
cdef int _perm_store[8][35280]
cdef int _perm_count[8]


def _init_perms():
    cdef int s, c, t
    for s in range(1, 8):
        perms = list(_permutations(range(s)))
        _perm_count[s] = len(perms)
        c = 0
        for p in perms:
            for t in range(s):
                _perm_store[s][c * s + t] = p[t]
            c += 1


_init_perms()


cdef inline int _subset(int a, int b):
    return (a & ~b) == 0


cdef int _canon_core(int q, int* L, int* R, int nlayers, int* lsizes,
                     unsigned char* best_any, unsigned char* best_min):
    """Fill best_any/best_min with the least encodings; returns 1 if a
    variant passing the per-gate minimality conditions was seen."""
    cdef int starts[8]
    cdef int pi[8]
    cdef int cidx[8]
    cdef unsigned char enc[16]
    cdef int pos = 0, m, s, t, base, i, j
    cdef int a, b, tmp, shared, minimal
    cdef int have_any = 0, have_min = 0
    cdef int enc_len = 2 * q
    cdef const int* block

    for m in range(nlayers):
        starts[m] = pos
        pos += lsizes[m]
        cidx[m] = 0

    while True:
        for m in range(nlayers):
            s = lsizes[m]
            base = starts[m]
            block = &_perm_store[s][cidx[m] * s]
            for t in range(s):
                pi[base + t] = base + block[t]
        minimal = 1
        for i in range(q):
            a = 0
            m = L[i]
            j = 0
            while m:
                if m & 1:
                    a |= 1 << pi[j]
                m >>= 1
                j += 1
            b = 0
            m = R[i]
            j = 0
            while m:
                if m & 1:
                    b |= 1 << pi[j]
                m >>= 1
                j += 1
            if b < a:
                tmp = a
                a = b
                b = tmp
            if minimal:
                if a and _subset(a, b):
                    minimal = 0
                elif b and _subset(b, a):
                    minimal = 0
                else:
                    shared = a & b
                    if shared and not (shared < (a & ~b) and shared < (b & ~a)):
                        minimal = 0
            j = 2 * pi[i]
            enc[j] = <unsigned char> a
            enc[j + 1] = <unsigned char> b
        if not have_any or memcmp(enc, best_any, enc_len) < 0:
            memcpy(best_any, enc, enc_len)
            have_any = 1
        if minimal and (not have_min or memcmp(enc, best_min, enc_len) < 0):
            memcpy(best_min, enc, enc_len)
            have_min = 1
        # odometer over the per-layer permutation indices
        m = nlayers - 1
        while m >= 0:
            cidx[m] += 1
            if cidx[m] < _perm_count[lsizes[m]]:
                break
            cidx[m] = 0
            m -= 1
        if m < 0:
            break
    return have_min


def canonical_keys(pairs, layer_sizes):
    """Least encodings of a well-layered topology over gate relabelings.

    Returns (key_any, key_min) as in the pure-Python kernel.
    """
    cdef int q = len(pairs)
    if q == 0:
        return b"", b""
    if q > MAX_GATES:
        raise ValueError(f"kernel supports at most {MAX_GATES} gates, got {q}")
    cdef int L[8]
    cdef int R[8]
    cdef int lsizes[8]
    cdef unsigned char best_any[16]
    cdef unsigned char best_min[16]
    cdef int i = 0, total = 0
    cdef int nlayers = len(layer_sizes)
    if nlayers > 8:
        raise ValueError("too many layers")
    for i in range(q):
        L[i] = pairs[i][0]
        R[i] = pairs[i][1]
    for i in range(nlayers):
        lsizes[i] = layer_sizes[i]
        total += lsizes[i]
    if total != q:
        raise ValueError("layer sizes do not cover the gate list")
    cdef int have_min = _canon_core(q, L, R, nlayers, lsizes, best_any, best_min)
    key_any = PyBytes_FromStringAndSize(<char*> best_any, 2 * q)
    key_min = PyBytes_FromStringAndSize(<char*> best_min, 2 * q) if have_min else None
    return key_any, key_min


def extend(bytes enc, int k):
    """All one-new-layer extensions of a partial topology, as canonical keys.

    Same guard, search and output as the pure-Python kernel: sorted
    (key_any, key_min) pairs.
    """
    cdef int q = len(enc) // 2
    if q == 0:
        raise ValueError("cannot extend an empty topology")
    if k > MAX_GATES:
        raise ValueError(f"kernel supports at most {MAX_GATES} gates, got k={k}")
    cdef int L[8]
    cdef int R[8]
    cdef int lsizes[9]
    cdef int i, t
    for i in range(q):
        L[i] = enc[2 * i]
        R[i] = enc[2 * i + 1]

    # greedy maximal layering of the parent
    cdef int nlayers = 0, cur = 0
    cdef int last = 0
    for i in range(q):
        if cur & (L[i] | R[i]):
            lsizes[nlayers] = _popcount(cur)
            nlayers += 1
            cur = 0
        cur |= 1 << i
    last = cur
    lsizes[nlayers] = _popcount(cur)
    nlayers += 1

    # guarded candidate pairs, ascending
    cdef int full = (1 << q) - 1
    cdef int candL[4096]
    cdef int candR[4096]
    cdef int ncand = 0
    cdef int left, right
    for left in range(1, full + 1):
        if not left & last:
            continue
        for right in range(full + 1):
            if _subset(left, right):
                continue
            if right and _subset(right, left):
                continue
            candL[ncand] = left
            candR[ncand] = right
            ncand += 1

    out = {}
    cdef int CL[8]
    cdef int CR[8]
    cdef int idx[8]
    cdef int width, child_q, pos
    cdef int have_min
    cdef unsigned char best_any[16]
    cdef unsigned char best_min[16]
    for i in range(q):
        CL[i] = L[i]
        CR[i] = R[i]
    if ncand == 0:
        return []
    for width in range(1, k - q + 1):
        child_q = q + width
        lsizes[nlayers] = width
        for t in range(width):
            idx[t] = 0
        while True:
            for t in range(width):
                CL[q + t] = candL[idx[t]]
                CR[q + t] = candR[idx[t]]
            have_min = _canon_core(child_q, CL, CR, nlayers + 1, lsizes, best_any, best_min)
            key_any = PyBytes_FromStringAndSize(<char*> best_any, 2 * child_q)
            if have_min:
                out[key_any] = PyBytes_FromStringAndSize(<char*> best_min, 2 * child_q)
            else:
                out[key_any] = None
            # next non-decreasing index tuple
            t = width - 1
            while t >= 0 and idx[t] == ncand - 1:
                t -= 1
            if t < 0:
                break
            idx[t] += 1
            for pos in range(t + 1, width):
                idx[pos] = idx[t]
    return sorted(out.items())


cdef inline int _popcount(int m):
    cdef int c = 0
    while m:
        m &= m - 1
        c += 1
    return c
