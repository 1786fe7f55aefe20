"""Bundled demonstration models and the machine-checked claim ledger.

Five hand-encoded models and every concrete semantic claim made about them:
point claims (a formula expected true or false at a pointed model), expected
transformation results compared by full model equality, and expected truth
sets. run_claims() re-checks everything against the reference semantics.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .formula import (And, Atom, Bot, D, Eee, Formula, Iff, K, Not, Or, See,
                      Sse, print_formula)
from .kripke_core import Model, PointedModel, pairs_to_rows, serialize_model
from .semantics import satisfies, truth_set
from .transforms import apply_eee, apply_see, apply_sse


def _sym(pairs):
    out = set()
    for u, v in pairs:
        out.add((u, v))
        out.add((v, u))
    return out


def _loops(worlds):
    return {(w, w) for w in worlds}


@lru_cache(maxsize=None)
def model_m1() -> Model:
    """Four worlds; each agent knows one atom and nothing about the others."""
    W = ("w0", "w1", "w2", "w3")
    return Model.build(
        W, ("a", "b", "c"), ("p", "q", "r"),
        {"a": _loops(W) | _sym([("w0", "w1"), ("w0", "w2"), ("w1", "w2")]),
         "b": _loops(W) | _sym([("w0", "w2"), ("w0", "w3"), ("w2", "w3")]),
         "c": _loops(W) | _sym([("w0", "w1"), ("w0", "w3"), ("w1", "w3")])},
        {"p": {"w0", "w1", "w2"}, "q": {"w0", "w2", "w3"},
         "r": {"w0", "w1", "w3"}})


@lru_cache(maxsize=None)
def model_m2() -> Model:
    """Four worlds; individually known disjunctions, jointly inconsistent."""
    W = ("w0", "w1", "w2", "w3")
    return Model.build(
        W, ("a", "b", "c"), ("p", "q", "r"),
        {"a": _loops(W) | _sym([("w0", "w1"), ("w0", "w3"), ("w1", "w3")]),
         "b": _loops(W) | _sym([("w0", "w2"), ("w0", "w3"), ("w2", "w3")]),
         "c": _loops(W) | _sym([("w0", "w3")])},
        {"p": {"w0", "w1"}, "q": {"w0", "w3"}, "r": {"w0", "w2"}})


@lru_cache(maxsize=None)
def model_m3() -> Model:
    """Five worlds, directed edges out of w0, no loop there: both agents are
    misled, and together their pooled information is inconsistent."""
    W = ("w0", "w1", "w2", "w3", "w4")
    rest = W[1:]
    return Model.build(
        W, ("a", "b"), ("p", "q"),
        {"a": _loops(rest) | {("w0", "w1"), ("w0", "w2")} | _sym([("w3", "w4")]),
         "b": _loops(rest) | {("w0", "w3"), ("w0", "w4")} | _sym([("w1", "w2")])},
        {"p": {"w0", "w1", "w2", "w3"}, "q": {"w0", "w1", "w3", "w4"}})


@lru_cache(maxsize=None)
def model_cube() -> Model:
    """Eight worlds over three message atoms; per-agent equivalence relations
    with two-world cells."""
    W = tuple(f"w{i}" for i in range(8))
    return Model.build(
        W, ("a", "b", "c"), ("m_a", "m_b", "m_c"),
        {"a": _loops(W) | _sym([("w0", "w2"), ("w1", "w3"), ("w4", "w6")]),
         "b": _loops(W) | _sym([("w0", "w1"), ("w2", "w3"), ("w6", "w7")]),
         "c": _loops(W) | _sym([("w0", "w4"), ("w2", "w6"), ("w3", "w7")])},
        {"m_a": {"w2", "w3", "w6", "w7"},
         "m_b": {"w0", "w2", "w4", "w6"},
         "m_c": {"w0", "w1", "w2", "w3"}})


@lru_cache(maxsize=None)
def model_sse_fixpoint() -> Model:
    """Three worlds the topic broadcast of p by {a,b} leaves unchanged."""
    return Model.build(
        ("w0", "w1", "w2"), ("a", "b"), ("p",),
        {"a": {("w0", "w2")}, "b": {("w0", "w2"), ("w0", "w1")}},
        {"p": {"w2"}})


# -- record types --

@dataclass(frozen=True)
class Claim:
    id: str
    pointed_model: PointedModel
    formula: Formula
    expected: bool
    source: str


@dataclass(frozen=True)
class ModelCheck:
    id: str
    actual: Model
    expected: Model
    source: str


@dataclass(frozen=True)
class TruthSetCheck:
    id: str
    model: Model
    formula: Formula
    expected: frozenset
    source: str


@dataclass(frozen=True)
class ClaimResult:
    id: str
    kind: str
    expected: str
    got: str
    passed: bool


@dataclass(frozen=True)
class ClaimReport:
    results: tuple

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def n_passed(self) -> int:
        return sum(r.passed for r in self.results)


# -- formula shorthand --

def _and(*fs):
    out = fs[0]
    for f in fs[1:]:
        out = And(out, f)
    return out


def _or(*fs):
    out = fs[0]
    for f in fs[1:]:
        out = Or(out, f)
    return out


def _kboth(i, f):
    return Or(K(i, f), K(i, Not(f)))


def _kneither(i, f):
    return And(Not(K(i, f)), Not(K(i, Not(f))))


def _g(*agents):
    return frozenset(agents)


_P, _Q, _R = Atom("p"), Atom("q"), Atom("r")
_MA, _MB, _MC = Atom("m_a"), Atom("m_b"), Atom("m_c")


def _chi_a():
    return _kboth("a", _MA)


def _chi_b():
    return _kboth("b", _MB)


def _chi_c():
    return _kboth("c", _MC)


def _chi_or():
    return _or(_chi_a(), _chi_b(), _chi_c())


def _edges(model: Model, agent: str) -> set:
    return {(model.worlds[u], model.worlds[v])
            for (u, v) in model.relation(agent)}


def _with_edges(base: Model, edges: dict) -> Model:
    """Hand-transcribed expected result: same worlds/valuation, fresh edges."""
    n = base.n
    rows = []
    for ag in base.agents:
        pairs = {(base.world_index(u), base.world_index(v))
                 for (u, v) in edges[ag]}
        rows.extend(pairs_to_rows(pairs, n))
    return base.with_rows(rows)


@lru_cache(maxsize=None)
def claims() -> tuple:
    """Point claims: (pointed model, formula, expected truth value)."""
    m1, m2, m3 = model_m1(), model_m2(), model_m3()
    cube, fix = model_cube(), model_sse_fixpoint()
    p, q, r = _P, _Q, _R
    pqr = _and(p, q, r)
    chi_a, chi_b, chi_c, chi_or = _chi_a(), _chi_b(), _chi_c(), _chi_or()
    out = []

    def claim(cid, model, world, formula, expected, source):
        out.append(Claim(cid, PointedModel(model, model.world_index(world)),
                         formula, expected, source))

    src1 = "demo suite: one-secret-each model"
    claim("m1.know.a", m1, "w0",
          _and(K("a", p), _kneither("a", q), _kneither("a", r)), True, src1)
    claim("m1.know.b", m1, "w0",
          _and(_kneither("b", p), K("b", q), _kneither("b", r)), True, src1)
    claim("m1.know.c", m1, "w0",
          _and(_kneither("c", p), _kneither("c", q), K("c", r)), True, src1)
    inner = _and(_kboth("a", p), _kboth("b", q), _kboth("c", r))
    claim("m1.know.meta", m1, "w0",
          _and(K("a", inner), K("b", inner), K("c", inner)), True, src1)
    claim("m1.dist", m1, "w0",
          _and(D(_g("a", "b"), And(p, q)), D(_g("a", "c"), And(p, r)),
               D(_g("b", "c"), And(q, r)), D(_g("a", "b", "c"), _and(p, q, r))),
          True, src1)

    src2 = "demo suite: jointly-inconsistent-hints model"
    claim("m2.know.a", m2, "w0",
          _and(K("a", Or(p, q)), _kneither("a", p), _kneither("a", q)), True, src2)
    claim("m2.know.b", m2, "w0",
          _and(K("b", Or(q, r)), _kneither("b", q), _kneither("b", r)), True, src2)
    claim("m2.know.c", m2, "w0",
          _and(_kneither("c", p), K("c", q), _kneither("c", r)), True, src2)
    claim("m2.dist", m2, "w0",
          _and(D(_g("a", "b"), q), D(_g("a", "c"), q), D(_g("b", "c"), q),
               Not(D(_g("a", "b", "c"), And(p, r)))), True, src2)

    src3 = "demo suite: misleading-information model"
    claim("m3.know", m3, "w0",
          _and(K("a", p), _kneither("a", q), _kneither("b", p), K("b", q)),
          True, src3)
    claim("m3.nested", m3, "w0",
          And(K("a", And(K("b", p), _kneither("b", q))),
              K("b", And(_kneither("a", p), K("a", q)))), True, src3)
    claim("m3.dist.bot", m3, "w0", D(_g("a", "b"), Bot()), True, src3)

    srce = "demo suite: broadcast-everything results"
    claim("eee.m1", m1, "w0",
          And(D(_g("a", "b", "c"), pqr),
              Eee(_and(K("a", pqr), K("b", pqr), K("c", pqr)))), True, srce)
    claim("eee.m2", m2, "w0",
          And(D(_g("a", "b", "c"), q),
              Eee(_and(K("a", q), K("b", q), K("c", q)))), True, srce)
    claim("eee.m3", m3, "w0",
          And(D(_g("a", "b"), Bot()),
              Eee(And(K("a", Bot()), K("b", Bot())))), True, srce)
    claim("eee.moore", m1, "w0",
          And(D(_g("a", "b", "c"), Not(K("b", p))),
              Not(Eee(K("a", Not(K("b", p)))))), True,
          "demo suite: unreachable knowledge under broadcast-everything")

    srcs = "demo suite: sender-group broadcast results"
    claim("see.m1", m1, "w0",
          And(And(D(_g("a", "b"), And(p, q)), K("c", r)),
              See(_g("a", "b"),
                  _and(And(K("a", And(p, q)), _kneither("a", r)),
                       And(K("b", And(p, q)), _kneither("b", r)),
                       K("c", pqr)))), True, srcs)
    for i, phi in enumerate([K("a", q), D(_g("b", "c"), Or(p, r)),
                             _kneither("c", p)]):
        claim(f"see.m2.inst{i}", m2, "w0",
              And(Iff(See(_g("a", "b"), phi), See(_g("c"), phi)),
                  Iff(See(_g("a", "b"), phi), Eee(phi))), True,
              "demo suite: different senders, same update")
    claim("see.moore", m1, "w0",
          And(D(_g("a", "b"), Not(K("b", p))),
              Not(See(_g("a", "b"), K("a", Not(K("b", p)))))), True,
          "demo suite: unreachable knowledge under sender-group broadcast")

    claim("sse.m1.whether", apply_sse(m1, _g("a", "b", "c"), p), "w0",
          K("a", And(_kboth("b", p), _kboth("c", p))), True,
          "demo suite: after broadcasting about p, everyone knows the others "
          "know whether p (interpretation of a prose remark)")

    srcf = "demo suite: fixpoint model for the topic broadcast"
    claim("sse.fix.dist", fix, "w0", D(_g("a", "b"), p), True, srcf)
    claim("sse.fix.fail", fix, "w0",
          Sse(_g("a", "b"), p, K("b", p)), False, srcf)

    ag = _g("a", "b", "c")
    claim("cube.repeat.pos", cube, "w2",
          Sse(ag, chi_or, Sse(ag, chi_or, chi_a)), True,
          "demo suite: repeating the broadcast is not idempotent")
    claim("cube.repeat.neg", cube, "w2", Sse(ag, chi_or, chi_a), False,
          "demo suite: repeating the broadcast is not idempotent")
    claim("cube.repeat.refl", cube, "w2",
          And(D(ag, Not(chi_or)),
              Not(Sse(ag, Not(chi_or), K("a", Not(chi_or))))), True,
          "demo suite: reflexive variant of the repetition effect")
    claim("cube.order.pos", cube, "w3",
          Sse(_g("a"), chi_a, Sse(_g("b", "c"), chi_c, chi_c)), True,
          "demo suite: broadcasts do not commute")
    claim("cube.order.neg", cube, "w3",
          Sse(_g("b", "c"), chi_c, Sse(_g("a"), chi_a, chi_c)), False,
          "demo suite: broadcasts do not commute")
    claim("cube.split.pos", cube, "w2",
          Sse(_g("a", "b"), chi_or, Sse(_g("c"), chi_or, chi_a)), True,
          "demo suite: splitting the sender group changes the outcome")
    claim("cube.split.neg", cube, "w2", Sse(ag, chi_or, chi_a), False,
          "demo suite: splitting the sender group changes the outcome")
    claim("cube.topics.pos", cube, "w3",
          Sse(ag, chi_a, Sse(ag, chi_c, chi_b)), True,
          "demo suite: two topics beat their conjunction")
    claim("cube.topics.neg", cube, "w3",
          Sse(ag, And(chi_a, chi_c), chi_b), False,
          "demo suite: two topics beat their conjunction")
    return tuple(out)


@lru_cache(maxsize=None)
def truth_set_checks() -> tuple:
    m1, cube = model_m1(), model_cube()
    p, q, r = _P, _Q, _R
    chi_a, chi_b, chi_c = _chi_a(), _chi_b(), _chi_c()
    chi_or = _chi_or()
    out = []

    def ts(cid, model, formula, worlds, source):
        out.append(TruthSetCheck(cid, model, formula, frozenset(worlds), source))

    src = "demo suite: topic cells of the one-secret-each model"
    ts("m1.cell.p", m1, p, {"w0", "w1", "w2"}, src)
    ts("m1.cell.q", m1, q, {"w0", "w2", "w3"}, src)
    ts("m1.cell.r", m1, r, {"w0", "w1", "w3"}, src)
    ts("m1.cell.pq", m1, And(p, q), {"w0", "w2"}, src)
    ts("m1.cell.pr", m1, And(p, r), {"w0", "w1"}, src)
    ts("m1.cell.qr", m1, And(q, r), {"w0", "w3"}, src)

    src = "demo suite: knowing-whether cells of the cube model"
    ts("cube.cell.a", cube, chi_a, {"w5", "w7"}, src)
    ts("cube.cell.b", cube, chi_b, {"w4", "w5"}, src)
    ts("cube.cell.c", cube, chi_c, {"w1", "w5"}, src)
    ts("cube.cell.or", cube, chi_or, {"w1", "w4", "w5", "w7"}, src)
    ts("cube.cell.ac", cube, And(chi_a, chi_c), {"w5"}, src)

    src = "demo suite: cells after one broadcast step"
    f2 = apply_sse(cube, frozenset(cube.agents), chi_or)
    ts("cube.chain.cell.or2", f2, chi_or,
       set(cube.worlds) - {"w2"}, src)
    fp2 = apply_sse(cube, _g("a"), chi_a)
    ts("cube.chain.cell.c", fp2, chi_c, {"w1", "w3", "w5", "w7"}, src)
    fpp2 = apply_sse(cube, _g("b", "c"), chi_c)
    ts("cube.chain.cell.a", fpp2, chi_a, {"w1", "w3", "w5", "w7"}, src)
    return tuple(out)


@lru_cache(maxsize=None)
def model_checks() -> tuple:
    m1, m2, m3 = model_m1(), model_m2(), model_m3()
    cube, fix = model_cube(), model_sse_fixpoint()
    W4 = m1.worlds
    W5 = m3.worlds
    W8 = cube.worlds
    p, q, r = _P, _Q, _R
    chi_a, chi_c, chi_or = _chi_a(), _chi_c(), _chi_or()
    ag3 = _g("a", "b", "c")
    out = []

    def mc(cid, actual, expected, source):
        out.append(ModelCheck(cid, actual, expected, source))

    src = "demo suite: broadcast-everything result models"
    mc("model.eee.m1", apply_eee(m1),
       _with_edges(m1, {a: _loops(W4) for a in "abc"}), src)
    e2 = _loops(W4) | _sym([("w0", "w3")])
    mc("model.eee.m2", apply_eee(m2), _with_edges(m2, {a: e2 for a in "abc"}), src)
    mc("model.eee.m3", apply_eee(m3),
       _with_edges(m3, {a: _loops(W5[1:]) for a in "ab"}), src)

    src = "demo suite: sender-group broadcast result models"
    mc("model.see.m1", apply_see(m1, _g("a", "b")),
       _with_edges(m1, {"a": _loops(W4) | _sym([("w0", "w2")]),
                        "b": _loops(W4) | _sym([("w0", "w2")]),
                        "c": _loops(W4)}), src)
    mc("model.see.m2.c", apply_see(m2, _g("a", "b")),
       apply_see(m2, _g("c")), src)
    mc("model.see.m2.eee", apply_see(m2, _g("a", "b")), apply_eee(m2), src)

    src = "demo suite: topic broadcast result models"
    sse_expected = {
        ("model.sse.m1.p", ag3, p):
            {"a": [("w0", "w1"), ("w0", "w2"), ("w1", "w2")],
             "b": [("w0", "w2")], "c": [("w0", "w1")]},
        ("model.sse.m1.q", ag3, q):
            {"a": [("w0", "w2")],
             "b": [("w0", "w2"), ("w0", "w3"), ("w2", "w3")],
             "c": [("w0", "w3")]},
        ("model.sse.m1.r", ag3, r):
            {"a": [("w0", "w1")], "b": [("w0", "w3")],
             "c": [("w0", "w1"), ("w0", "w3"), ("w1", "w3")]},
        ("model.sse.m1.pq", _g("a", "b"), And(p, q)):
            {"a": [("w0", "w2")], "b": [("w0", "w2")], "c": [("w1", "w3")]},
        ("model.sse.m1.pr", _g("a", "b"), And(p, r)):
            {"a": [("w0", "w1"), ("w0", "w2")],
             "b": [("w0", "w2"), ("w2", "w3")], "c": [("w0", "w1")]},
        ("model.sse.m1.qr", _g("a", "b"), And(q, r)):
            {"a": [("w0", "w2"), ("w1", "w2")],
             "b": [("w0", "w2"), ("w0", "w3")], "c": [("w0", "w3")]},
    }
    for (cid, senders, topic), extra in sse_expected.items():
        mc(cid, apply_sse(m1, senders, topic),
           _with_edges(m1, {a: _loops(W4) | _sym(extra[a]) for a in "abc"}), src)
    mc("model.sse.fix", apply_sse(fix, _g("a", "b"), p), fix,
       "demo suite: fixpoint model is unchanged by the broadcast")

    src = "demo suite: chained-broadcast intermediate models"
    f2 = apply_sse(cube, ag3, chi_or)
    mc("cube.chain.step1", f2,
       _with_edges(cube, {"a": _loops(W8) | _sym([("w0", "w2")]),
                          "b": _loops(W8) | _sym([("w2", "w3")]),
                          "c": _loops(W8) | _sym([("w2", "w6")])}), src)
    mc("cube.chain.step2", apply_sse(f2, ag3, chi_or),
       _with_edges(cube, {a: _loops(W8) for a in "abc"}), src)
    mc("cube.chain.sym", apply_sse(cube, ag3, Not(chi_or)), f2,
       "demo suite: broadcasting a topic equals broadcasting its negation")

    fp2 = apply_sse(cube, _g("a"), chi_a)
    mc("cube.chain.order.step1", fp2,
       _with_edges(cube,
                   {"a": _edges(cube, "a"),
                    "b": _edges(cube, "b") - _sym([("w6", "w7")]),
                    "c": _edges(cube, "c") - _sym([("w3", "w7")])}), src)
    fp3 = apply_sse(fp2, _g("b", "c"), chi_c)
    mc("cube.chain.order.step2", fp3,
       _with_edges(cube, {"a": _loops(W8) | _sym([("w0", "w2"), ("w1", "w3"),
                                                  ("w4", "w6")]),
                          "b": _loops(W8),
                          "c": _loops(W8) | _sym([("w0", "w4"), ("w2", "w6")])}),
       src)
    fpp2 = apply_sse(cube, _g("b", "c"), chi_c)
    mc("cube.chain.order.alt1", fpp2,
       _with_edges(cube,
                   {"a": _edges(cube, "a") - _sym([("w1", "w3")]),
                    "b": _edges(cube, "b") - _sym([("w0", "w1")]),
                    "c": _edges(cube, "c")}), src)
    mc("cube.chain.order.alt2", apply_sse(fpp2, _g("a"), chi_a),
       _with_edges(cube, {"a": _loops(W8) | _sym([("w0", "w2"), ("w4", "w6")]),
                          "b": _loops(W8),
                          "c": _loops(W8) | _sym([("w0", "w4"), ("w2", "w6"),
                                                  ("w3", "w7")])}), src)
    mc("cube.chain.split.ab", apply_sse(cube, _g("a", "b"), chi_or), f2, src)
    mc("cube.chain.split.then.c", apply_sse(f2, _g("c"), chi_or),
       _with_edges(cube, {"a": _loops(W8), "b": _loops(W8),
                          "c": _loops(W8) | _sym([("w2", "w6")])}), src)
    mc("cube.chain.topics.a", apply_sse(cube, ag3, chi_a), fp2, src)
    mc("cube.chain.topics.c", apply_sse(fp2, ag3, chi_c), fp3, src)
    mc("cube.chain.topics.noop", apply_sse(cube, ag3, And(chi_a, chi_c)), cube,
       "demo suite: broadcasting the conjunction moves nothing")
    return tuple(out)


def run_claims() -> ClaimReport:
    results = []
    for c in claims():
        got = satisfies(c.pointed_model.model, c.pointed_model.world, c.formula)
        results.append(ClaimResult(c.id, "satisfies", str(c.expected).lower(),
                                   str(got).lower(), got == c.expected))
    for t in truth_set_checks():
        got = truth_set(t.model, t.formula)
        results.append(ClaimResult(
            t.id, "truth-set",
            "{" + ",".join(sorted(t.expected)) + "}",
            "{" + ",".join(sorted(got)) + "}",
            got == t.expected))
    for m in model_checks():
        same = m.actual == m.expected
        results.append(ClaimResult(m.id, "model-equality", "equal",
                                   "equal" if same else "differs", same))
    return ClaimReport(tuple(results))


def export(claim: Claim) -> dict:
    """Claim as plain text, for cross-checking outside the package."""
    return {
        "id": claim.id,
        "model": serialize_model(claim.pointed_model.model,
                                 claim.pointed_model.world),
        "world": claim.pointed_model.model.worlds[claim.pointed_model.world],
        "formula": print_formula(claim.formula),
        "expected": claim.expected,
        "source": claim.source,
    }
