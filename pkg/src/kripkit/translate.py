"""Reduction of dynamic formulas to the static language.

Input is first desugared to the core constructors, then rewritten clause by
clause. Every recursive call must strictly decrease the lexicographic
(ndc, nsc) measure; a call that would not raises measure-violation. The
result is a static core formula and the rewrite is idempotent on its output.
"""
from __future__ import annotations

from dataclasses import dataclass

from .formula import (And, Atom, D, Dhat, Eee, Formula, Not, See, Sse,
                      agents_of, c_greater, desugar, ndc)
from .kripke_core import KripkitError


@dataclass(frozen=True)
class TraceStep:
    formula: Formula
    clause: str
    calls: tuple
    result: Formula


@dataclass(frozen=True)
class TranslationTrace:
    steps: tuple

    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)


def _imp_core(a: Formula, b: Formula) -> Formula:
    return Not(And(a, Not(b)))


def _dhat_core(group, chi: Formula, psi: Formula) -> Formula:
    """Core expansion of the conditional distributed-knowledge operator."""
    return And(_imp_core(chi, D(group, _imp_core(chi, psi))),
               _imp_core(Not(chi), D(group, _imp_core(Not(chi), psi))))


def _rewrap(op: Formula, sub: Formula) -> Formula:
    if isinstance(op, Eee):
        return Eee(sub)
    if isinstance(op, See):
        return See(op.group, sub)
    return Sse(op.group, op.topic, sub)


def translate(phi: Formula, agents=None) -> Formula:
    return translate_traced(phi, agents)[0]


def translate_traced(phi: Formula, agents=None):
    """Returns (static formula, TranslationTrace).

    agents: full roster, needed when a distributed modality sits under the
    everything-broadcast; inferred from the formula when omitted.
    """
    mentioned = agents_of(phi)
    if agents is None:
        roster = mentioned
    else:
        roster = frozenset(agents)
        if not mentioned <= roster:
            missing = ", ".join(sorted(mentioned - roster))
            raise KripkitError("unknown-agent",
                               f"formula mentions agents outside roster: {missing}")
    steps = []
    result = _tau(desugar(phi), roster, steps)
    assert ndc(result) == 0
    return result, TranslationTrace(tuple(steps))


def _tau(f: Formula, roster, steps: list) -> Formula:
    entry = len(steps)
    steps.append(None)
    calls = []

    def call(g: Formula) -> Formula:
        if not c_greater(f, g):
            raise KripkitError("measure-violation",
                               f"no (ndc, nsc) decrease from {f} to {g}")
        calls.append(g)
        return _tau(g, roster, steps)

    result, clause = _step(f, roster, call)
    steps[entry] = TraceStep(f, clause, tuple(calls), result)
    return result


def _step(f: Formula, roster, call):
    if isinstance(f, Atom):
        return f, "atom"
    if isinstance(f, Not):
        return Not(call(f.sub)), "not"
    if isinstance(f, And):
        return And(call(f.left), call(f.right)), "and"
    if isinstance(f, D):
        return D(f.group, call(f.sub)), "dist"
    if isinstance(f, Dhat):
        # expand around the two already-reduced components; the expansion
        # itself is static, so no further call on it
        return _dhat_core(f.group, call(f.topic), call(f.sub)), "dhat"
    if isinstance(f, (Eee, See, Sse)):
        inner = f.sub
        if isinstance(inner, Atom):
            return call(inner), "dyn-atom"
        if isinstance(inner, Not):
            return call(Not(_rewrap(f, inner.sub))), "dyn-not"
        if isinstance(inner, And):
            return call(And(_rewrap(f, inner.left),
                            _rewrap(f, inner.right))), "dyn-and"
        if isinstance(inner, D):
            if isinstance(f, Eee):
                if not roster:
                    raise KripkitError("empty-group",
                                       "roster needed to push D past [eee]")
                return call(D(roster, Eee(inner.sub))), "eee-dist"
            if isinstance(f, See):
                return call(D(f.group | inner.group,
                              See(f.group, inner.sub))), "see-dist"
            moved = Sse(f.group, f.topic, inner.sub)
            return call(And(D(f.group | inner.group, moved),
                            Dhat(inner.group, f.topic, moved))), "sse-dist"
        if isinstance(inner, (Eee, See, Sse)):
            return call(_rewrap(f, call(inner))), "dyn-dyn"
    raise KripkitError("measure-violation", f"no clause applies to {f}")
