"""Pure-Python search backend.

Mirrors the compiled backend bit for bit: same node encoding, same model
index layout, same results. Frames (relation states) are tuples of successor
rows; node results are memoised per (node, frame) within one model.

Model index layout, most significant bit first:
  relation bit for agent k, pair (u, v): position k*n*n + u*n + v
  valuation bit for atom t, world u:     position n*n*nag + t*n + u
Index 0 is the all-empty model.
"""
from __future__ import annotations

from .kripke_core import KripkitError

NAME = "pure"


def _decode(idx, n, nag, nat):
    B = n * n * nag + n * nat
    rows = [0] * (nag * n)
    for k in range(nag):
        for u in range(n):
            row = 0
            base = k * n * n + u * n
            for v in range(n):
                row |= ((idx >> (B - 1 - (base + v))) & 1) << v
            rows[k * n + u] = row
    vals = [0] * nat
    off = n * n * nag
    for t in range(nat):
        val = 0
        for u in range(n):
            val |= ((idx >> (B - 1 - (off + t * n + u))) & 1) << u
        vals[t] = val
    return tuple(rows), tuple(vals)


def _eval(kinds, a1, a2, a3, node, frame, n, nag, vals, memo):
    key = (node, frame)
    got = memo.get(key)
    if got is not None:
        return got
    full = (1 << n) - 1
    k = kinds[node]
    if k == 0:  # atom
        out = vals[a1[node]]
    elif k == 1:  # not
        out = full & ~_eval(kinds, a1, a2, a3, a1[node], frame, n, nag, vals, memo)
    elif k == 2:  # and
        out = (_eval(kinds, a1, a2, a3, a1[node], frame, n, nag, vals, memo)
               & _eval(kinds, a1, a2, a3, a2[node], frame, n, nag, vals, memo))
    elif k == 3:  # D over agent mask a1
        g = a1[node]
        if g == 0:
            raise KripkitError("empty-group", "D node with empty mask")
        sub = _eval(kinds, a1, a2, a3, a2[node], frame, n, nag, vals, memo)
        out = 0
        for u in range(n):
            dr = full
            m, kk = g, 0
            while m:
                if m & 1:
                    dr &= frame[kk * n + u]
                m >>= 1
                kk += 1
            if dr & ~sub == 0:
                out |= 1 << u
    elif k == 4:  # eee
        dag = []
        for u in range(n):
            dr = full
            for kk in range(nag):
                dr &= frame[kk * n + u]
            dag.append(dr)
        out = _eval(kinds, a1, a2, a3, a1[node], tuple(dag) * nag,
                    n, nag, vals, memo)
    elif k == 5:  # see over sender mask a1
        s = a1[node]
        if s == 0:
            nf = frame
        else:
            sr = []
            for u in range(n):
                dr = full
                m, kk = s, 0
                while m:
                    if m & 1:
                        dr &= frame[kk * n + u]
                    m >>= 1
                    kk += 1
                sr.append(dr)
            nf = tuple(frame[kk * n + u] & sr[u]
                       for kk in range(nag) for u in range(n))
        out = _eval(kinds, a1, a2, a3, a2[node], nf, n, nag, vals, memo)
    elif k == 6:  # sse: sender mask a1, topic a2, body a3
        s = a1[node]
        chi = _eval(kinds, a1, a2, a3, a2[node], frame, n, nag, vals, memo)
        co = full & ~chi
        fi = [co if (chi >> u) & 1 else chi for u in range(n)]
        ko = [chi if (chi >> u) & 1 else co for u in range(n)]
        ds = []
        for u in range(n):
            dr = full
            m, kk = s, 0
            while m:
                if m & 1:
                    dr &= frame[kk * n + u]
                m >>= 1
                kk += 1
            ds.append(dr)
        nf = []
        for kk in range(nag):
            for u in range(n):
                cut = 0
                m, jj = s, 0
                while m:
                    if m & 1:
                        cut |= (full & ~frame[jj * n + u]) & fi[u]
                    m >>= 1
                    jj += 1
                sub_row = frame[kk * n + u] & ~cut
                int_row = frame[kk * n + u] & (ds[u] | ko[u])
                if sub_row != int_row:
                    raise KripkitError("definition-mismatch",
                                       "subtractive and intersection forms disagree")
                nf.append(sub_row)
        out = _eval(kinds, a1, a2, a3, a3[node], tuple(nf), n, nag, vals, memo)
    else:
        raise KripkitError("unknown-schema", f"bad node kind {k}")
    memo[key] = out
    return out


def check_range(kinds, a1, a2, a3, root, n, nag, nat, start, stop):
    """Scan indices [start, stop); return (first failing index, its smallest
    failing world, models checked) or (-1, -1, checked)."""
    full = (1 << n) - 1
    checked = 0
    for idx in range(start, stop):
        frame, vals = _decode(idx, n, nag, nat)
        mask = _eval(kinds, a1, a2, a3, root, frame, n, nag, vals, {})
        checked += 1
        if mask != full:
            for u in range(n):
                if not (mask >> u) & 1:
                    return idx, u, checked
    return -1, -1, checked


def check_one(kinds, a1, a2, a3, root, n, nag, nat, idx):
    """Smallest world where the root fails on model idx, or -1."""
    full = (1 << n) - 1
    frame, vals = _decode(idx, n, nag, nat)
    mask = _eval(kinds, a1, a2, a3, root, frame, n, nag, vals, {})
    if mask == full:
        return -1
    for u in range(n):
        if not (mask >> u) & 1:
            return u
    return -1
