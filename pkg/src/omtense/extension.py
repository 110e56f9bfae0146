"""Extending a time frame with a synthetic past and future copy of itself.

Every point s gains a past copy s1 (related to s) and a future copy s2
(reachable from s); the original relation survives unchanged in the middle.
A proposition q extends to the copies through a chosen operator pair: the
PF variant places P(q) on the past copies and F(q) on the future ones, the
HG variant uses H(q) and G(q). Over the relation induced by the chosen
operators, the extended frame's own P and F (or H and G) restrict back to
the given ones on the original points; check_extension_* verifies exactly
that, proposition by proposition.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import NameCollision
from .frames import TimeFrame, restrict
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
from .induction import induce_R1, induce_R2
from .tense import (
    DEFAULT_CHUNK,
    DEFAULT_SEED,
    FrameInduced,
    Prop,
    TenseOperator,
    partition_ranges,
    proposition_block,
    proposition_count,
    resolve_budget,
    sampled_block,
)

PAST = "past"
BASE = "base"
FUTURE = "future"


@dataclass(frozen=True, eq=False)
class ExtendedFrame:
    """Base frame plus the three-zone extension; bar points are past+base+future."""

    base: TimeFrame
    bar: TimeFrame
    zones: tuple[str, ...]

    @property
    def n(self) -> int:
        return self.base.n

    def zone(self, bar_index: int) -> str:
        return self.zones[bar_index]

    def base_slice(self) -> slice:
        return slice(self.n, 2 * self.n)

    def restrict_to_base(self, qbar: Prop) -> Prop:
        return tuple(qbar[self.base_slice()])


def extend_frame(frame: TimeFrame) -> ExtendedFrame:
    """Build the extended frame; copy names append 1 and 2 to the point name."""
    n = frame.n
    past = tuple(p + "1" for p in frame.points)
    future = tuple(p + "2" for p in frame.points)
    names = past + frame.points + future
    if len(set(names)) != 3 * n:
        seen: set[str] = set()
        for name in names:
            if name in seen:
                raise NameCollision(f"extended point name {name!r} collides")
            seen.add(name)
    pairs = [(s, n + s) for s in range(n)]
    pairs += [(n + s, n + t) for s, t in frame.rel]
    pairs += [(n + s, 2 * n + s) for s in range(n)]
    bar = TimeFrame(frame.name + "-bar", names, pairs)
    zones = (PAST,) * n + (BASE,) * n + (FUTURE,) * n
    return ExtendedFrame(frame, bar, zones)


def extend_prop_PF(lattice: Oml, q: Prop, P: TenseOperator, F: TenseOperator) -> Prop:
    """P(q) on the past copies, q in the middle, F(q) on the future copies."""
    return tuple(P(q)) + tuple(q) + tuple(F(q))


def extend_prop_HG(lattice: Oml, q: Prop, H: TenseOperator, G: TenseOperator) -> Prop:
    """H(q) on the past copies, q in the middle, G(q) on the future copies."""
    return tuple(H(q)) + tuple(q) + tuple(G(q))


def _ext_chunk(payload):
    """First (index, op side, point) where a restriction fails; -1 index if none."""
    lattice, n_points, lo_op, hi_op, barA, barB, lo, hi, step = payload
    for start in range(lo, hi, step):
        stop = min(start + step, hi)
        block = proposition_block(lattice, n_points, start, stop)
        bad = _ext_block_bad(lattice, n_points, lo_op, hi_op, barA, barB, block)
        if bad is not None:
            i, side, point = bad
            return (start + i, side, point)
    return (-1, 0, 0)


def _ext_block_bad(lattice, n_points, op_a, op_b, bar_a, bar_b, block):
    """Compare restricted bar evaluations with the direct ones on one block."""
    a_vals = op_a.apply_batch(block)
    b_vals = op_b.apply_batch(block)
    qbar = np.concatenate([a_vals, block, b_vals], axis=1)
    mid = slice(n_points, 2 * n_points)
    for side, (bar_op, want) in enumerate(((bar_a, a_vals), (bar_b, b_vals))):
        got = bar_op.apply_batch(qbar)[:, mid]
        same = got == want
        rows = same.all(axis=1)
        if not rows.all():
            i = int(np.argmin(rows))
            return (i, side, int(np.argmin(same[i])))
    return None


def _check_extension(lattice: Oml, points, op_a: TenseOperator, op_b: TenseOperator,
                     relation_report, suite: str, labels: tuple[str, str], *,
                     budget: int | None, seed: int, jobs: int) -> VerifyReport:
    budget = resolve_budget(budget)
    points = tuple(points)
    n_points = len(points)
    base = relation_report.frame()  # EmptyRestriction on adversarial operators
    ext = extend_frame(base)
    bar_a = FrameInduced(lattice, ext.bar, labels[0])
    bar_b = FrameInduced(lattice, ext.bar, labels[1])

    laws: list[LawResult] = []
    if restrict(ext.bar, base.points) == base:
        laws.append(LawResult("relation-restriction", PASS))
    else:
        laws.append(LawResult(
            "relation-restriction", FAIL,
            witness=Witness(kind="relation-mismatch", law="relation-restriction",
                            note="restricting the extended relation does not recover the base")))

    space = proposition_count(lattice, n_points)
    if space <= budget:
        if jobs <= 1:
            first = _ext_chunk((lattice, n_points, op_a, op_b, bar_a, bar_b,
                                0, space, DEFAULT_CHUNK))
        else:
            ranges = partition_ranges(space, jobs * 4)
            payloads = [(lattice, n_points, op_a, op_b, bar_a, bar_b, lo, hi, DEFAULT_CHUNK)
                        for lo, hi in ranges]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_ext_chunk, payloads))
            hits = [r for r in results if r[0] >= 0]
            first = min(hits) if hits else (-1, 0, 0)
        mode, samples = EXHAUSTIVE, space
        decode = lambda i: tuple(
            int(x) for x in proposition_block(lattice, n_points, i, i + 1)[0])
    else:
        block = sampled_block(lattice, n_points, budget, seed)
        bad = _ext_block_bad(lattice, n_points, op_a, op_b, bar_a, bar_b, block)
        first = (-1, 0, 0) if bad is None else bad
        mode, samples = SAMPLED, budget
        decode = lambda i: tuple(int(x) for x in block[i])

    for side, label in enumerate(labels):
        law_id = f"{label}bar-restriction"
        if first[0] >= 0 and first[1] == side:
            q = decode(first[0])
            op = (op_a, op_b)[side]
            bar_op = (bar_a, bar_b)[side]
            qbar = tuple(op_a(q)) + tuple(q) + tuple(op_b(q))
            got = bar_op(qbar)[n_points + first[2]]
            want = op(q)[first[2]]
            laws.append(LawResult(
                law_id, FAIL, mode=mode, samples=samples,
                witness=Witness(
                    kind="op-mismatch", law=law_id,
                    ops=((label + "bar", label + "bar"), (label, label)),
                    props=(("q", q), ("qbar", qbar)), point=first[2],
                    lhs=int(got), rhs=int(want),
                    note=f"restricted {label}bar(qbar) differs from {label}(q)")))
        else:
            verdict = PASS if mode == EXHAUSTIVE else ONE_SIDED
            laws.append(LawResult(law_id, verdict, mode=mode, samples=samples))

    verdict = aggregate([law.verdict for law in laws])
    return VerifyReport(
        suite=suite,
        instance=f"lattice={lattice.name} points={len(points)} budget={budget}",
        verdict=verdict, laws=laws, budget=budget, seed=seed,
        context=ReplayContext(lattice=lattice, points=points,
                              ops={labels[0]: op_a, labels[1]: op_b,
                                   labels[0] + "bar": bar_a, labels[1] + "bar": bar_b}))


def check_extension_PF(lattice: Oml, points, P: TenseOperator, F: TenseOperator, *,
                       budget: int | None = None, seed: int = DEFAULT_SEED,
                       jobs: int = 1) -> VerifyReport:
    """Extended-frame P and F restrict to the given P and F over the R1 relation."""
    report = induce_R1(lattice, points, P, F, budget=budget, seed=seed, jobs=jobs)
    return _check_extension(lattice, points, P, F, report, "ext-pf", ("P", "F"),
                            budget=budget, seed=seed, jobs=jobs)


def check_extension_HG(lattice: Oml, points, H: TenseOperator, G: TenseOperator, *,
                       budget: int | None = None, seed: int = DEFAULT_SEED,
                       jobs: int = 1) -> VerifyReport:
    """Extended-frame H and G restrict to the given H and G over the R2 relation."""
    report = induce_R2(lattice, points, H, G, budget=budget, seed=seed, jobs=jobs)
    return _check_extension(lattice, points, H, G, report, "ext-hg", ("H", "G"),
                            budget=budget, seed=seed, jobs=jobs)
