"""Satisfaction over the full language, including the dynamic modalities.

Truth sets are computed as world bitmasks. Dynamic subformulas recurse on a
transformed model; the sse topic is evaluated on the incoming model before
the relations change.
"""
from __future__ import annotations

from .formula import (And, Atom, Bot, D, Dhat, Eee, Formula, Iff, Implies, K,
                      Not, Or, See, Sse, Top, agents_of, atoms_of)
from .kripke_core import Model, distributed_rows, group_mask
from .transforms import eee_rows, knowing_only_rows, see_rows, sse_rows


def check_rosters(model: Model, phi: Formula) -> None:
    """Every atom and agent the formula mentions must exist in the model."""
    for at in sorted(atoms_of(phi)):
        model.atom_index(at)
    for ag in sorted(agents_of(phi)):
        model.agent_index(ag)


def truth_mask(model: Model, phi: Formula) -> int:
    check_rosters(model, phi)
    return _eval(model, phi, {})


def truth_set(model: Model, phi: Formula) -> frozenset:
    """World names where phi holds."""
    mask = truth_mask(model, phi)
    return frozenset(w for i, w in enumerate(model.worlds) if (mask >> i) & 1)


def satisfies(model: Model, world, phi: Formula) -> bool:
    w = model.world_index(world)
    return bool((truth_mask(model, phi) >> w) & 1)


def _box(drows, submask: int) -> int:
    out = 0
    for w, row in enumerate(drows):
        if row & ~submask == 0:
            out |= 1 << w
    return out


def _eval(model: Model, phi: Formula, memo: dict) -> int:
    key = (model, phi)
    got = memo.get(key)
    if got is not None:
        return got
    full = (1 << model.n) - 1
    if isinstance(phi, Atom):
        out = model.atom_mask(phi.name)
    elif isinstance(phi, Top):
        out = full
    elif isinstance(phi, Bot):
        out = 0
    elif isinstance(phi, Not):
        out = full & ~_eval(model, phi.sub, memo)
    elif isinstance(phi, And):
        out = _eval(model, phi.left, memo) & _eval(model, phi.right, memo)
    elif isinstance(phi, Or):
        out = _eval(model, phi.left, memo) | _eval(model, phi.right, memo)
    elif isinstance(phi, Implies):
        out = (full & ~_eval(model, phi.left, memo)) | _eval(model, phi.right, memo)
    elif isinstance(phi, Iff):
        out = full & ~(_eval(model, phi.left, memo) ^ _eval(model, phi.right, memo))
    elif isinstance(phi, K):
        out = _box(distributed_rows(model, 1 << model.agent_index(phi.agent)),
                   _eval(model, phi.sub, memo))
    elif isinstance(phi, D):
        out = _box(distributed_rows(model, group_mask(model, phi.group)),
                   _eval(model, phi.sub, memo))
    elif isinstance(phi, Dhat):
        ko = knowing_only_rows(model.n, _eval(model, phi.topic, memo))
        drows = distributed_rows(model, group_mask(model, phi.group))
        out = _box([d & k for d, k in zip(drows, ko)],
                   _eval(model, phi.sub, memo))
    elif isinstance(phi, Eee):
        out = _eval(model.with_rows(eee_rows(model)), phi.sub, memo)
    elif isinstance(phi, See):
        moved = model.with_rows(see_rows(model, group_mask(model, phi.group)))
        out = _eval(moved, phi.sub, memo)
    elif isinstance(phi, Sse):
        chi = _eval(model, phi.topic, memo)
        moved = model.with_rows(sse_rows(model, group_mask(model, phi.group), chi))
        out = _eval(moved, phi.sub, memo)
    else:
        raise TypeError(type(phi))
    memo[key] = out
    return out
