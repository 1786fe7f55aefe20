# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search backend; same contract as _engine_py.

One relation state ("frame") packs all successor rows into a single word:
the row of agent k at world u occupies bits [(k*n+u)*n, (k*n+u)*n + n).
Node results are memoised per (node, interned frame id); the memo tables are
stamped with a per-model counter instead of being cleared.
"""
from libc.stdint cimport uint64_t
from libc.stdlib cimport calloc, free, malloc
from libc.string cimport memset

from .kripke_core import KripkitError

NAME = "c"

cdef enum:
    FCAP = 256          # max distinct frames per model
    MAXN = 7            # frame packing needs n*n*nag <= 62
    MAXATOMS = 16

cdef uint64_t* g_mval = NULL
cdef uint64_t* g_mstamp = NULL
cdef size_t g_cap = 0
cdef uint64_t g_cur = 0

cdef uint64_t g_frames[FCAP]


cdef struct Ctx:
    int n
    int nag
    int nnodes
    int* kinds
    long long* a1
    long long* a2
    long long* a3
    uint64_t* vals
    uint64_t full
    int nframes
    int err                 # 1 definition-mismatch, 2 frame overflow, 3 empty group


cdef int _ensure_cap(int nnodes) except -1:
    global g_mval, g_mstamp, g_cap
    cdef size_t need = <size_t>nnodes * FCAP
    if need <= g_cap:
        return 0
    if g_mval != NULL:
        free(g_mval)
        free(g_mstamp)
    g_mval = <uint64_t*>malloc(need * sizeof(uint64_t))
    g_mstamp = <uint64_t*>calloc(need, sizeof(uint64_t))
    if g_mval == NULL or g_mstamp == NULL:
        raise MemoryError()
    g_cap = need
    return 0


cdef inline int _intern(Ctx* c, uint64_t fr) nogil:
    cdef int i
    for i in range(c.nframes):
        if g_frames[i] == fr:
            return i
    if c.nframes >= FCAP:
        c.err = 2
        return 0
    g_frames[c.nframes] = fr
    c.nframes += 1
    return c.nframes - 1


cdef uint64_t _ev(Ctx* c, int node, int fid) nogil:
    cdef size_t slot = <size_t>node * FCAP + <size_t>fid
    if g_mstamp[slot] == g_cur:
        return g_mval[slot]
    cdef int n = c.n, nag = c.nag
    cdef uint64_t full = c.full
    cdef uint64_t fr = g_frames[fid]
    cdef int k = c.kinds[node]
    cdef uint64_t out = 0, sub, dr, chi, co, cut, row, srow, irow, nf
    cdef uint64_t fi[MAXN]
    cdef uint64_t ko[MAXN]
    cdef uint64_t ds[MAXN]
    cdef long long g, s
    cdef int u, v, kk, jj, nid

    if k == 0:
        out = c.vals[c.a1[node]]
    elif k == 1:
        out = full & ~_ev(c, <int>c.a1[node], fid)
    elif k == 2:
        out = _ev(c, <int>c.a1[node], fid) & _ev(c, <int>c.a2[node], fid)
    elif k == 3:
        g = c.a1[node]
        if g == 0:
            c.err = 3
            return 0
        sub = _ev(c, <int>c.a2[node], fid)
        for u in range(n):
            dr = full
            for kk in range(nag):
                if (g >> kk) & 1:
                    dr &= (fr >> ((kk * n + u) * n)) & full
            if dr & ~sub == 0:
                out |= <uint64_t>1 << u
    elif k == 4:
        nf = 0
        for u in range(n):
            dr = full
            for kk in range(nag):
                dr &= (fr >> ((kk * n + u) * n)) & full
            ds[u] = dr
        for kk in range(nag):
            for u in range(n):
                nf |= ds[u] << ((kk * n + u) * n)
        nid = _intern(c, nf)
        if c.err:
            return 0
        out = _ev(c, <int>c.a1[node], nid)
    elif k == 5:
        s = c.a1[node]
        if s == 0:
            out = _ev(c, <int>c.a2[node], fid)
        else:
            for u in range(n):
                dr = full
                for kk in range(nag):
                    if (s >> kk) & 1:
                        dr &= (fr >> ((kk * n + u) * n)) & full
                ds[u] = dr
            nf = 0
            for kk in range(nag):
                for u in range(n):
                    row = (fr >> ((kk * n + u) * n)) & full
                    nf |= (row & ds[u]) << ((kk * n + u) * n)
            nid = _intern(c, nf)
            if c.err:
                return 0
            out = _ev(c, <int>c.a2[node], nid)
    elif k == 6:
        s = c.a1[node]
        chi = _ev(c, <int>c.a2[node], fid)
        co = full & ~chi
        for u in range(n):
            if (chi >> u) & 1:
                fi[u] = co
                ko[u] = chi
            else:
                fi[u] = chi
                ko[u] = co
            dr = full
            if s != 0:
                for kk in range(nag):
                    if (s >> kk) & 1:
                        dr &= (fr >> ((kk * n + u) * n)) & full
            ds[u] = dr
        nf = 0
        for kk in range(nag):
            for u in range(n):
                row = (fr >> ((kk * n + u) * n)) & full
                cut = 0
                for jj in range(nag):
                    if (s >> jj) & 1:
                        cut |= (full & ~((fr >> ((jj * n + u) * n)) & full)) & fi[u]
                srow = row & ~cut
                irow = row & (ds[u] | ko[u])
                if srow != irow:
                    c.err = 1
                    return 0
                nf |= srow << ((kk * n + u) * n)
        nid = _intern(c, nf)
        if c.err:
            return 0
        out = _ev(c, <int>c.a3[node], nid)
    else:
        c.err = 4
        return 0

    g_mstamp[slot] = g_cur
    g_mval[slot] = out
    return out


cdef inline uint64_t _decode_frame(uint64_t idx, int B, int n, int nag) nogil:
    cdef uint64_t frame = 0
    cdef int k, u, v, pos
    for k in range(nag):
        for u in range(n):
            for v in range(n):
                pos = k * n * n + u * n + v
                frame |= ((idx >> (B - 1 - pos)) & 1) << ((k * n + u) * n + v)
    return frame


cdef inline void _decode_vals(Ctx* c, uint64_t idx, int B, int nat) nogil:
    cdef int t, u, off = c.n * c.n * c.nag
    cdef uint64_t val
    for t in range(nat):
        val = 0
        for u in range(c.n):
            val |= ((idx >> (B - 1 - (off + t * c.n + u))) & 1) << u
        c.vals[t] = val


cdef int _setup(Ctx* c, object kinds, object a1, object a2, object a3,
                int n, int nag, int nat) except -1:
    cdef int nn = len(kinds)
    if n < 1 or n > MAXN or n * n * nag > 62 or nat > MAXATOMS:
        raise KripkitError("bounds-too-large",
                           "model shape exceeds the compiled backend's packing")
    _ensure_cap(nn)
    c.n = n
    c.nag = nag
    c.nnodes = nn
    c.kinds = <int*>malloc(nn * sizeof(int))
    c.a1 = <long long*>malloc(nn * sizeof(long long))
    c.a2 = <long long*>malloc(nn * sizeof(long long))
    c.a3 = <long long*>malloc(nn * sizeof(long long))
    c.vals = <uint64_t*>malloc(MAXATOMS * sizeof(uint64_t))
    if (c.kinds == NULL or c.a1 == NULL or c.a2 == NULL or c.a3 == NULL
            or c.vals == NULL):
        raise MemoryError()
    cdef int i
    for i in range(nn):
        c.kinds[i] = kinds[i]
        c.a1[i] = a1[i]
        c.a2[i] = a2[i]
        c.a3[i] = a3[i]
    memset(c.vals, 0, MAXATOMS * sizeof(uint64_t))
    c.full = (<uint64_t>1 << n) - 1
    c.nframes = 0
    c.err = 0
    return 0


cdef void _teardown(Ctx* c) nogil:
    free(c.kinds)
    free(c.a1)
    free(c.a2)
    free(c.a3)
    free(c.vals)


cdef int _raise_err(int err) except -1:
    if err == 1:
        raise KripkitError("definition-mismatch",
                           "subtractive and intersection forms disagree")
    if err == 2:
        raise KripkitError("bounds-too-large", "too many frames in one model")
    if err == 3:
        raise KripkitError("empty-group", "D node with empty mask")
    raise KripkitError("unknown-schema", "bad node kind")


def check_range(kinds, a1, a2, a3, root, n, nag, nat, start, stop):
    """Scan indices [start, stop); return (first failing index, its smallest
    failing world, models checked) or (-1, -1, checked)."""
    global g_cur
    cdef Ctx c
    _setup(&c, kinds, a1, a2, a3, n, nag, nat)
    cdef int B = n * n * nag + n * nat
    cdef uint64_t lo = start, hi = stop, idx
    cdef uint64_t mask, frame
    cdef int rt = root, u, cn = n, cnat = nat
    cdef long long checked = 0
    cdef int fail_world = -1
    cdef long long fail_idx = -1
    with nogil:
        idx = lo
        while idx < hi:
            g_cur += 1
            c.nframes = 0
            frame = _decode_frame(idx, B, cn, c.nag)
            _decode_vals(&c, idx, B, cnat)
            mask = _ev(&c, rt, _intern(&c, frame))
            checked += 1
            if c.err:
                break
            if mask != c.full:
                for u in range(cn):
                    if not (mask >> u) & 1:
                        fail_world = u
                        break
                fail_idx = <long long>idx
                break
            idx += 1
    cdef int err = c.err
    _teardown(&c)
    if err:
        _raise_err(err)
    if fail_idx >= 0:
        return fail_idx, fail_world, checked
    return -1, -1, checked


def check_one(kinds, a1, a2, a3, root, n, nag, nat, idx):
    """Smallest world where the root fails on model idx, or -1."""
    global g_cur
    cdef Ctx c
    _setup(&c, kinds, a1, a2, a3, n, nag, nat)
    cdef int B = n * n * nag + n * nat
    cdef uint64_t ix = idx
    cdef uint64_t mask, frame
    cdef int u, out = -1
    g_cur += 1
    frame = _decode_frame(ix, B, n, c.nag)
    _decode_vals(&c, ix, B, nat)
    mask = _ev(&c, root, _intern(&c, frame))
    cdef int err = c.err
    if not err and mask != c.full:
        for u in range(n):
            if not (mask >> u) & 1:
                out = u
                break
    _teardown(&c)
    if err:
        _raise_err(err)
    return out
