"""Time-preference relations induced by a quadruple of tense operators.

Given operators P, F, H, G on propositions over points T, three candidate
relations arise by asking which pairs (s, t) respect the operators for every
proposition q:

    R1: q(s) <= P(q)(t)  and  q(t) <= F(q)(s)
    R2: H(q)(t) <= q(s)  and  G(q)(s) <= q(t)
    R3: both, i.e. R1 intersected with R2

The quantifier over q runs exhaustively in odometer order below the budget
(then every excluded pair carries its first violating proposition), and
one-sidedly over a seeded sample above it (the reported relation is then a
superset of the true one). No axioms are assumed of the operators; arbitrary
quadruples are accepted and simply reported on.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExceeded, EmptyRestriction, UnknownTimePoint
from .frames import TimeFrame
from .lattice import Oml
from .report import (
    EXHAUSTIVE,
    FAIL,
    ONE_SIDED,
    PASS,
    SAMPLED,
    LawResult,
    ReplayContext,
    VerifyReport,
    Witness,
    aggregate,
)
from .tense import (
    DEFAULT_CHUNK,
    DEFAULT_SEED,
    FrameInduced,
    OperatorQuadruple,
    Prop,
    TenseOperator,
    ops_equal,
    partition_ranges,
    proposition_block,
    proposition_count,
    resolve_budget,
    sampled_block,
)

_R1_INEQS = ("q(s) <= P(q)(t)", "q(t) <= F(q)(s)")
_R2_INEQS = ("H(q)(t) <= q(s)", "G(q)(s) <= q(t)")


@dataclass(frozen=True)
class PairWitness:
    """First proposition violating one of the pair's two inequalities."""

    q: Prop
    inequality: str
    lhs: int
    rhs: int
    index: int  # position in the enumeration (or sample draw) order


@dataclass
class InducedRelationReport:
    which: str                      # "R1" | "R2" | "R3"
    points: tuple[str, ...]
    pairs: frozenset[tuple[int, int]]
    witnesses: dict[tuple[int, int], PairWitness]
    mode: str                       # exhaustive | sampled
    samples: int
    lattice: Oml = field(repr=False)

    def frame(self, name: str | None = None) -> TimeFrame:
        """The induced relation as a time frame; empty relations do not form one."""
        if not self.pairs:
            raise EmptyRestriction(
                f"induced relation {self.which} over {self.points} is empty")
        return TimeFrame(name or f"{self.which.lower()}-induced", self.points, self.pairs)

    def pair_names(self) -> list[tuple[str, str]]:
        return [(self.points[s], self.points[t]) for s, t in sorted(self.pairs)]


def _pair_checks(which: str, batch: np.ndarray, quadruple: OperatorQuadruple,
                 leq: np.ndarray):
    """Yield (ineq_id, ok_matrix_fn) helpers bound to evaluated operator columns."""
    if which == "R1":
        pv = quadruple.P.apply_batch(batch)
        fv = quadruple.F.apply_batch(batch)
        return lambda s, t: (leq[batch[:, s], pv[:, t]], leq[batch[:, t], fv[:, s]])
    hv = quadruple.H.apply_batch(batch)
    gv = quadruple.G.apply_batch(batch)
    return lambda s, t: (leq[hv[:, t], batch[:, s]], leq[gv[:, s], batch[:, t]])


def _ineq_values(which: str, lattice: Oml, quadruple: OperatorQuadruple,
                 q: Prop, s: int, t: int, side: int) -> tuple[int, int]:
    if which == "R1":
        if side == 0:
            return q[s], quadruple.P(q)[t]
        return q[t], quadruple.F(q)[s]
    if side == 0:
        return quadruple.H(q)[t], q[s]
    return quadruple.G(q)[s], q[t]


def _scan_chunk(payload):
    """For each pair, the first violating (index, side) inside [lo, hi); picklable."""
    which, lattice, points, quadruple, lo, hi, step = payload
    n_points = len(points)
    found: dict[tuple[int, int], tuple[int, int]] = {}
    pending = [(s, t) for s in range(n_points) for t in range(n_points)]
    for start in range(lo, hi, step):
        stop = min(start + step, hi)
        batch = proposition_block(lattice, n_points, start, stop)
        checks = _pair_checks(which, batch, quadruple, lattice.leq)
        done = []
        for (s, t) in pending:
            ok0, ok1 = checks(s, t)
            bad = ~(ok0 & ok1)
            if bad.any():
                i = int(np.argmax(bad))
                side = 0 if not ok0[i] else 1
                found[(s, t)] = (start + i, side)
                done.append((s, t))
        if done:
            gone = set(done)
            pending = [pair for pair in pending if pair not in gone]
        if not pending:
            break
    return found


def _induce(which: str, lattice: Oml, points, quadruple: OperatorQuadruple, *,
            budget: int | None = None, seed: int = DEFAULT_SEED, jobs: int = 1,
            chunk: int = DEFAULT_CHUNK) -> InducedRelationReport:
    points = tuple(points)
    n_points = len(points)
    if quadruple.n_points != n_points:
        raise UnknownTimePoint(
            f"operators are bound to {quadruple.n_points} points, got {n_points}")
    budget = resolve_budget(budget)
    space = proposition_count(lattice, n_points)
    ineq_names = _R1_INEQS if which == "R1" else _R2_INEQS

    if space <= budget:
        if jobs <= 1:
            found = _scan_chunk((which, lattice, points, quadruple, 0, space, chunk))
        else:
            ranges = partition_ranges(space, jobs * 4)
            payloads = [(which, lattice, points, quadruple, lo, hi, chunk)
                        for lo, hi in ranges]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_scan_chunk, payloads))
            found = {}
            for part in results:
                for pair, hit in part.items():
                    if pair not in found or hit[0] < found[pair][0]:
                        found[pair] = hit
        mode, samples = EXHAUSTIVE, space
        decode = lambda i: tuple(
            int(x) for x in proposition_block(lattice, n_points, i, i + 1)[0])
    else:
        block = sampled_block(lattice, n_points, budget, seed)
        checks = _pair_checks(which, block, quadruple, lattice.leq)
        found = {}
        for s in range(n_points):
            for t in range(n_points):
                ok0, ok1 = checks(s, t)
                bad = ~(ok0 & ok1)
                if bad.any():
                    i = int(np.argmax(bad))
                    found[(s, t)] = (i, 0 if not ok0[i] else 1)
        mode, samples = SAMPLED, budget
        decode = lambda i: tuple(int(x) for x in block[i])

    witnesses = {}
    for pair, (index, side) in sorted(found.items()):
        q = decode(index)
        lhs, rhs = _ineq_values(which, lattice, quadruple, q, pair[0], pair[1], side)
        witnesses[pair] = PairWitness(q, ineq_names[side], lhs, rhs, index)
    pairs = frozenset((s, t) for s in range(n_points) for t in range(n_points)
                      if (s, t) not in found)
    return InducedRelationReport(which, points, pairs, witnesses, mode, samples, lattice)


def induce_R1(lattice: Oml, points, P: TenseOperator, F: TenseOperator, *,
              budget: int | None = None, seed: int = DEFAULT_SEED,
              jobs: int = 1) -> InducedRelationReport:
    """Pairs (s, t) with q(s) <= P(q)(t) and q(t) <= F(q)(s) for all q."""
    quadruple = OperatorQuadruple(P, F, P, F)  # H, G unused by the R1 scan
    return _induce("R1", lattice, points, quadruple, budget=budget, seed=seed, jobs=jobs)


def induce_R2(lattice: Oml, points, H: TenseOperator, G: TenseOperator, *,
              budget: int | None = None, seed: int = DEFAULT_SEED,
              jobs: int = 1) -> InducedRelationReport:
    """Pairs (s, t) with H(q)(t) <= q(s) and G(q)(s) <= q(t) for all q."""
    quadruple = OperatorQuadruple(H, G, H, G)  # P, F unused by the R2 scan
    return _induce("R2", lattice, points, quadruple, budget=budget, seed=seed, jobs=jobs)


def induce_R3(lattice: Oml, points, quadruple: OperatorQuadruple, *,
              budget: int | None = None, seed: int = DEFAULT_SEED,
              jobs: int = 1) -> InducedRelationReport:
    """Intersection of R1 and R2; witnesses taken from the earlier violation."""
    r1 = induce_R1(lattice, points, quadruple.P, quadruple.F,
                   budget=budget, seed=seed, jobs=jobs)
    r2 = induce_R2(lattice, points, quadruple.H, quadruple.G,
                   budget=budget, seed=seed, jobs=jobs)
    pairs = r1.pairs & r2.pairs
    witnesses: dict[tuple[int, int], PairWitness] = {}
    n_points = len(r1.points)
    for s in range(n_points):
        for t in range(n_points):
            if (s, t) in pairs:
                continue
            w1 = r1.witnesses.get((s, t))
            w2 = r2.witnesses.get((s, t))
            if w1 is not None and w2 is not None:
                witnesses[(s, t)] = w1 if w1.index <= w2.index else w2
            else:
                witnesses[(s, t)] = w1 or w2
    mode = EXHAUSTIVE if r1.mode == r2.mode == EXHAUSTIVE else SAMPLED
    return InducedRelationReport("R3", r1.points, pairs, witnesses, mode,
                                 max(r1.samples, r2.samples), lattice)


def indicator_proposition(lattice: Oml, points, u: str) -> Prop:
    """Top at the named point, bottom everywhere else."""
    points = tuple(points)
    if u not in points:
        raise UnknownTimePoint(f"no point {u!r} among {points}")
    return tuple(lattice.top if p == u else lattice.bottom for p in points)


def _first_op_difference(lattice: Oml, n_points: int, given: TenseOperator,
                         other: TenseOperator, budget: int, seed: int):
    """First (q, point, got, want) where the operators differ, plus the mode."""
    space = proposition_count(lattice, n_points)
    if space <= budget:
        blocks = ((proposition_block(lattice, n_points, lo, min(lo + DEFAULT_CHUNK, space))
                   for lo in range(0, space, DEFAULT_CHUNK)), EXHAUSTIVE, space)
    else:
        blocks = (iter([sampled_block(lattice, n_points, budget, seed)]), SAMPLED, budget)
    chunks, mode, samples = blocks
    for block in chunks:
        got = given.apply_batch(block)
        want = other.apply_batch(block)
        same = got == want
        rows = same.all(axis=1)
        if not rows.all():
            i = int(np.argmin(rows))
            point = int(np.argmin(same[i]))
            q = tuple(int(x) for x in block[i])
            return (q, point, int(got[i, point]), int(want[i, point])), mode, samples
    return None, mode, samples


def roundtrip_frame(lattice: Oml, frame: TimeFrame, *, budget: int | None = None,
                    seed: int = DEFAULT_SEED, jobs: int = 1) -> VerifyReport:
    """Induce operators from the frame, recover the relation, compare both ways.

    The recovered R3 must equal the frame's relation, and the operators
    re-induced from the recovered relation must coincide with the originals.
    """
    budget = resolve_budget(budget)
    quadruple = OperatorQuadruple.from_frame(lattice, frame)
    report = induce_R3(lattice, frame.points, quadruple,
                       budget=budget, seed=seed, jobs=jobs)
    laws: list[LawResult] = []
    mode = report.mode
    if report.pairs == frame.rel:
        laws.append(LawResult("relation-roundtrip", PASS if mode == EXHAUSTIVE else ONE_SIDED,
                              mode=mode, samples=report.samples))
    else:
        extra = sorted(report.pairs - frame.rel)
        missing = sorted(frame.rel - report.pairs)
        pairs = tuple(("extra", frame.points[s], frame.points[t]) for s, t in extra)
        pairs += tuple(("missing", frame.points[s], frame.points[t]) for s, t in missing)
        laws.append(LawResult(
            "relation-roundtrip", FAIL, mode=mode, samples=report.samples,
            witness=Witness(kind="relation-mismatch", law="relation-roundtrip",
                            pairs=pairs, note="induced R3 differs from the frame relation")))

    rel_frame = TimeFrame(frame.name + "|reinduced", frame.points, report.pairs,
                          _allow_empty=True)
    reinduced = OperatorQuadruple.from_frame(lattice, rel_frame)
    for label, given, again in (("P", quadruple.P, reinduced.P),
                                ("F", quadruple.F, reinduced.F),
                                ("H", quadruple.H, reinduced.H),
                                ("G", quadruple.G, reinduced.G)):
        diff, mode, samples = _first_op_difference(lattice, frame.n, given, again,
                                                   budget, seed)
        if diff is None:
            verdict = PASS if mode == EXHAUSTIVE else ONE_SIDED
            laws.append(LawResult(f"{label}-coincides", verdict,
                                  ops=((label, label),), mode=mode, samples=samples))
        else:
            q, point, got, want = diff
            laws.append(LawResult(
                f"{label}-coincides", FAIL, ops=((label, label),),
                mode=mode, samples=samples,
                witness=Witness(kind="op-mismatch", law=f"{label}-coincides",
                                ops=((label, label), (label + "*", label + "*")),
                                props=(("q", q),), point=point, lhs=got, rhs=want,
                                note=f"{label}(q) and the reinduced {label}*(q) differ")))
    verdict = aggregate([law.verdict for law in laws])
    replay_ops: dict[str, TenseOperator] = dict(quadruple.as_dict())
    for label, op in reinduced.as_dict().items():
        replay_ops[label + "*"] = op
    return VerifyReport(
        suite="thm4-roundtrip",
        instance=f"lattice={lattice.name} frame={frame.name} budget={budget}",
        verdict=verdict, laws=laws, budget=budget, seed=seed,
        context=ReplayContext(lattice=lattice, points=frame.points, ops=replay_ops))


@dataclass
class Classification:
    verdict: str                            # "frame-induced" | "not-frame-inducible"
    relation: InducedRelationReport
    witness: Witness | None = None

    @property
    def frame_induced(self) -> bool:
        return self.verdict == "frame-induced"


def classify_inducibility(lattice: Oml, points, quadruple: OperatorQuadruple, *,
                          budget: int | None = None, seed: int = DEFAULT_SEED,
                          jobs: int = 1) -> Classification:
    """Recover R3 from the quadruple and test whether it reproduces the operators.

    The witness on the negative verdict is the first differing
    (operator, proposition, point) in P, F, H, G then odometer order.
    """
    budget = resolve_budget(budget)
    report = induce_R3(lattice, points, quadruple, budget=budget, seed=seed, jobs=jobs)
    rel_frame = TimeFrame("candidate", report.points, report.pairs, _allow_empty=True)
    candidate = OperatorQuadruple.from_frame(lattice, rel_frame)
    n_points = len(report.points)
    space = proposition_count(lattice, n_points)
    exhaustive = space <= budget
    for label, given, induced in (("P", quadruple.P, candidate.P),
                                  ("F", quadruple.F, candidate.F),
                                  ("H", quadruple.H, candidate.H),
                                  ("G", quadruple.G, candidate.G)):
        if exhaustive:
            blocks = ((lo, proposition_block(lattice, n_points, lo, min(lo + DEFAULT_CHUNK, space)))
                      for lo in range(0, space, DEFAULT_CHUNK))
        else:
            blocks = ((0, sampled_block(lattice, n_points, budget, seed)),)
        for base, block in blocks:
            got = given.apply_batch(block)
            want = induced.apply_batch(block)
            same = got == want
            rows = same.all(axis=1)
            if not rows.all():
                i = int(np.argmin(rows))
                point = int(np.argmin(same[i]))
                q = tuple(int(x) for x in block[i])
                witness = Witness(
                    kind="op-mismatch", law="frame-inducibility",
                    ops=((label, label), (label + "*", label + "*")),
                    props=(("q", q),), point=point,
                    lhs=int(got[i, point]), rhs=int(want[i, point]),
                    note=f"{label}(q) and {label}*(q) first differ at index {base + i}")
                return Classification("not-frame-inducible", report, witness)
    return Classification("frame-induced", report)


def check_star_inequalities(lattice: Oml, points, quadruple: OperatorQuadruple, *,
                            budget: int | None = None, seed: int = DEFAULT_SEED,
                            jobs: int = 1) -> VerifyReport:
    """Operators induced from the recovered relations bound the given ones.

    From the R1 relation: P* <= P and F* <= F. From the R2 relation: H <= H*
    and G <= G*. From R3: all four at once. Strictness (whether the starred
    operator actually differs) is reported per law.
    """
    from .laws import App, Law, PVar, build_witness, check_law

    budget = resolve_budget(budget)
    points = tuple(points)
    r1 = induce_R1(lattice, points, quadruple.P, quadruple.F,
                   budget=budget, seed=seed, jobs=jobs)
    r2 = induce_R2(lattice, points, quadruple.H, quadruple.G,
                   budget=budget, seed=seed, jobs=jobs)
    r3pairs = r1.pairs & r2.pairs

    laws: list[LawResult] = []
    for which, pairs in (("R1", r1.pairs), ("R2", r2.pairs), ("R3", r3pairs)):
        star_frame = TimeFrame(f"{which.lower()}-star", points, pairs, _allow_empty=True)
        starred = OperatorQuadruple.from_frame(lattice, star_frame)
        if which == "R1":
            checks = (("P* <= P", starred.P, quadruple.P, "P"),
                      ("F* <= F", starred.F, quadruple.F, "F"))
        elif which == "R2":
            checks = (("H <= H*", quadruple.H, starred.H, "H"),
                      ("G <= G*", quadruple.G, starred.G, "G"))
        else:
            checks = (("P* <= P", starred.P, quadruple.P, "P"),
                      ("F* <= F", starred.F, quadruple.F, "F"),
                      ("H <= H*", quadruple.H, starred.H, "H"),
                      ("G <= G*", quadruple.G, starred.G, "G"))
        for text, lo_op, hi_op, label in checks:
            law = Law(f"{text} [{which}]", "leq", App("lo", PVar("q")),
                      App("hi", PVar("q")), ("q",))
            ops = {"lo": lo_op, "hi": hi_op}
            outcome = check_law(law, lattice, len(points), ops,
                                budget=budget, seed=seed, jobs=jobs)
            names = {"lo": text.split(" <= ")[0], "hi": text.split(" <= ")[1]}
            witness = None
            if outcome.verdict == FAIL:
                witness = build_witness(law, lattice, outcome.witness_env,
                                        len(points), ops, names)
            detail = ""
            if outcome.verdict == PASS:
                try:
                    strict = not ops_equal(lo_op, hi_op, budget=budget)
                    detail = "strict" if strict else "equality"
                except BudgetExceeded:
                    detail = "strictness undetermined"
            laws.append(LawResult(law.id, outcome.verdict, witness=witness,
                                  mode=outcome.mode, samples=outcome.checked,
                                  detail=detail))
    verdict = aggregate([law.verdict for law in laws])
    return VerifyReport(
        suite="cor1",
        instance=f"lattice={lattice.name} points={len(points)} budget={budget}",
        verdict=verdict, laws=laws, budget=budget, seed=seed,
        context=ReplayContext(lattice=lattice, points=points, ops=quadruple.as_dict()))
