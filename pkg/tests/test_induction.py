import pytest

import oracles
from omtense import (
    Classification,
    EmptyRestriction,
    IdentityElseConstant,
    OperatorQuadruple,
    UnknownTimePoint,
    check_star_inequalities,
    classify_inducibility,
    indicator_proposition,
    induce_R1,
    induce_R2,
    induce_R3,
    roundtrip_frame,
)
from omtense.fixtures import example2_quadruple, example_props
from omtense.report import EXHAUSTIVE, SAMPLED

T5 = ("1", "2", "3", "4", "5")

# the 5-point worked quadruple induces these relations (index pairs)
EX2_R1 = {(0, 0)} | {(1, t) for t in range(5)} | \
    {(s, t) for s in (2, 3, 4) for t in (0, 2, 3, 4)}
EX2_R2 = {(0, t) for t in range(5)} | {(1, 1)} | \
    {(s, t) for s in (2, 3, 4) for t in (1, 2, 3, 4)}
EX2_R3 = {(0, 0), (1, 1)} | {(s, t) for s in (2, 3, 4) for t in (2, 3, 4)}


def test_worked_quadruple_relations(oml10, ex2_quad):
    r1 = induce_R1(oml10, T5, ex2_quad.P, ex2_quad.F)
    r2 = induce_R2(oml10, T5, ex2_quad.H, ex2_quad.G)
    r3 = induce_R3(oml10, T5, ex2_quad)
    assert r1.mode == r2.mode == r3.mode == EXHAUSTIVE
    assert r1.samples == 10 ** 5
    assert set(r1.pairs) == EX2_R1
    assert set(r2.pairs) == EX2_R2
    assert set(r3.pairs) == EX2_R3


def test_worked_quadruple_star_rows(oml10, ex2_quad, names):
    r3 = induce_R3(oml10, T5, ex2_quad)
    starred = OperatorQuadruple.from_frame(oml10, r3.frame())
    p = example_props(oml10)["p"]
    assert names(oml10, ex2_quad.P(p)) == ("1", "b'", "1", "1", "1")
    assert names(oml10, ex2_quad.F(p)) == ("c'", "1", "1", "1", "1")
    assert names(oml10, starred.P(p)) == ("c'", "b'", "1", "1", "1")
    assert names(oml10, starred.F(p)) == ("c'", "b'", "1", "1", "1")


def test_witnesses_violate_and_cover_excluded_pairs(oml10, ex2_quad):
    r1 = induce_R1(oml10, T5, ex2_quad.P, ex2_quad.F)
    excluded = {(s, t) for s in range(5) for t in range(5)} - set(r1.pairs)
    assert set(r1.witnesses) == excluded
    for (s, t), w in r1.witnesses.items():
        assert not oml10.leq[w.lhs, w.rhs]
        if w.inequality == "q(s) <= P(q)(t)":
            assert (w.lhs, w.rhs) == (w.q[s], ex2_quad.P(w.q)[t])
        else:
            assert (w.lhs, w.rhs) == (w.q[t], ex2_quad.F(w.q)[s])


def _apply_ops(quad):
    return (lambda q: quad.P(q), lambda q: quad.F(q),
            lambda q: quad.H(q), lambda q: quad.G(q))


@pytest.mark.parametrize("frame_name", ["le2", "nonserial2"])
def test_relations_match_literal_quantifier(cube2, frame_name, request):
    # small enough for the plain-loop oracle to sweep every proposition
    frame = request.getfixturevalue(frame_name)
    quad = OperatorQuadruple.from_frame(cube2, frame)
    props = oracles.all_props(cube2.n, frame.n)
    leq = [[bool(cube2.leq[x, y]) for y in range(cube2.n)] for x in range(cube2.n)]
    P, F, H, G = _apply_ops(quad)
    want_r1 = oracles.induced_R1(props, leq, P, F, frame.n)
    want_r2 = oracles.induced_R2(props, leq, H, G, frame.n)
    assert set(induce_R1(cube2, frame.points, quad.P, quad.F).pairs) == want_r1
    assert set(induce_R2(cube2, frame.points, quad.H, quad.G).pairs) == want_r2


def test_witness_minimality_against_oracle(cube2, le2):
    # arbitrary non-frame ops: identity at point 1, constant a elsewhere
    a = cube2.index_of("a")
    op = IdentityElseConstant(cube2, 2, frozenset({0}), a, label="S")
    quad = OperatorQuadruple(op, op, op, op)
    report = induce_R1(cube2, le2.points, quad.P, quad.F)
    props = oracles.all_props(cube2.n, 2)
    # oracle enumeration must be rebased to odometer order (bottom first)
    order = [cube2.bottom] + [i for i in range(cube2.n) if i != cube2.bottom]
    odometer = [(order[i], order[j]) for i in range(cube2.n) for j in range(cube2.n)]
    for (s, t), w in report.witnesses.items():
        first = next(q for q in odometer
                     if not (cube2.leq[q[s], op(q)[t]] and cube2.leq[q[t], op(q)[s]]))
        assert w.q == first


def test_frame_induced_ops_recover_the_frame(oml10, le3, blocks5, nonserial2):
    for frame in (le3, blocks5, nonserial2):
        quad = OperatorQuadruple.from_frame(oml10, frame)
        for report in (induce_R1(oml10, frame.points, quad.P, quad.F),
                       induce_R2(oml10, frame.points, quad.H, quad.G),
                       induce_R3(oml10, frame.points, quad)):
            assert set(report.pairs) == frame.rel
            assert report.frame() == frame


def test_indicator_proposition(oml10):
    q = indicator_proposition(oml10, T5, "3")
    assert q == (0, 0, oml10.top, 0, 0)
    with pytest.raises(UnknownTimePoint):
        indicator_proposition(oml10, T5, "9")


def test_point_count_mismatch_rejected(oml10, ex2_quad):
    with pytest.raises(UnknownTimePoint):
        induce_R1(oml10, ("1", "2"), ex2_quad.P, ex2_quad.F)


def test_classify_frame_quadruple(oml10, le3):
    quad = OperatorQuadruple.from_frame(oml10, le3)
    got = classify_inducibility(oml10, le3.points, quad)
    assert isinstance(got, Classification)
    assert got.verdict == "frame-induced" and got.frame_induced
    assert got.witness is None
    assert got.relation.frame() == le3


def test_classify_worked_quadruple(oml10, ex2_quad):
    got = classify_inducibility(oml10, T5, ex2_quad)
    assert got.verdict == "not-frame-inducible" and not got.frame_induced
    w = got.witness
    assert w.kind == "op-mismatch" and w.law == "frame-inducibility"
    # all-bottom is already a counterexample: P sends it to top off the
    # special point, the frame-induced candidate keeps it at bottom
    assert w.props == (("q", (0, 0, 0, 0, 0)),)
    assert dict(w.ops)["P"] == "P"
    assert (w.point, w.lhs, w.rhs) == (0, oml10.top, oml10.bottom)


def test_classify_empty_relation_quadruple(oml10, le3):
    bottom = IdentityElseConstant(oml10, 3, frozenset(), oml10.bottom, label="B")
    quad = OperatorQuadruple(bottom, bottom, bottom, bottom)
    got = classify_inducibility(oml10, le3.points, quad)
    assert got.verdict == "not-frame-inducible"
    assert not got.relation.pairs
    with pytest.raises(EmptyRestriction):
        got.relation.frame()
    # H over the empty relation is constantly top, the given H constantly bottom
    assert dict(got.witness.ops)["H"] == "H"


def test_sampled_relation_is_a_superset(oml10, ex2_quad):
    exact = induce_R3(oml10, T5, ex2_quad)
    sampled = induce_R3(oml10, T5, ex2_quad, budget=3000)
    assert sampled.mode == SAMPLED
    assert set(sampled.pairs) >= set(exact.pairs)


def test_enlarging_P_enlarges_R1(oml10, le3):
    quad = OperatorQuadruple.from_frame(oml10, le3)
    top = IdentityElseConstant(oml10, 3, frozenset(), oml10.top, label="T")
    small = induce_R1(oml10, le3.points, quad.P, quad.F)
    large = induce_R1(oml10, le3.points, top, top)
    assert set(large.pairs) >= set(small.pairs)
    assert set(large.pairs) == {(s, t) for s in range(3) for t in range(3)}


def test_star_inequalities_on_worked_quadruple(oml10, ex2_quad):
    report = check_star_inequalities(oml10, T5, ex2_quad)
    assert report.suite == "cor1" and report.verdict == "pass"
    by_id = {law.law: law for law in report.laws}
    assert set(by_id) == {
        "P* <= P [R1]", "F* <= F [R1]", "H <= H* [R2]", "G <= G* [R2]",
        "P* <= P [R3]", "F* <= F [R3]", "H <= H* [R3]", "G <= G* [R3]"}
    assert all(law.verdict == "pass" for law in report.laws)
    # the worked point: every starred operator genuinely differs
    assert all(law.detail == "strict" for law in report.laws)


def test_star_inequalities_frame_case_is_equality(oml10, le3):
    quad = OperatorQuadruple.from_frame(oml10, le3)
    report = check_star_inequalities(oml10, le3.points, quad)
    assert report.verdict == "pass"
    assert all(law.detail == "equality" for law in report.laws)


def test_roundtrip_verdicts(oml10, le3, nonserial2):
    for frame in (le3, nonserial2):
        report = roundtrip_frame(oml10, frame)
        assert report.suite == "thm4-roundtrip"
        assert report.verdict == "pass"
        assert {law.law for law in report.laws} == {
            "relation-roundtrip", "P-coincides", "F-coincides",
            "H-coincides", "G-coincides"}
