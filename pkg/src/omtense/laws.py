"""Pointwise operator laws as small expression trees, plus the quantifier.

A law states lhs <= rhs (or lhs = rhs) for all propositions bound to its
variables, optionally guarded by a side condition (used for monotonicity,
whose claim only applies to ordered pairs). Expressions evaluate two ways:

  eval_batch   numpy arrays of shape (rows, points), for the quantifiers
  eval_trace   one proposition at a time, recording every intermediate value,
               for witness replays

Quantification is exhaustive in odometer order below the budget and falls
back to deterministic seeded sampling above it (one-sided verdict). Pair
laws quantify over the pair-index space p-major, capped by the pair budget
with stratified sampling beyond. Work splits into contiguous chunks; chunk
results merge by minimum failing index, so parallel runs report exactly what
a sequential run reports.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .lattice import Oml
from .report import EXHAUSTIVE, FAIL, ONE_SIDED, PASS, SAMPLED, Witness
from .sasaki import (
    prop_sasaki_and,
    prop_sasaki_imp,
    sasaki_and_batch,
    sasaki_imp_batch,
)
from .tense import (
    DEFAULT_CHUNK,
    DEFAULT_PAIR_BUDGET,
    DEFAULT_SEED,
    Prop,
    TenseOperator,
    enumeration_order,
    partition_ranges,
    proposition_block,
    proposition_count,
    resolve_budget,
    sampled_block,
)


# -- expressions ----------------------------------------------------------

@dataclass(frozen=True)
class PVar:
    name: str


@dataclass(frozen=True)
class ConstProp:
    which: str  # "bottom" | "top"


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Join:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Meet:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class SAnd:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class SImp:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class App:
    slot: str
    arg: "Expr"


Expr = PVar | ConstProp | Neg | Join | Meet | SAnd | SImp | App


def render(expr: Expr, names: dict[str, str] | None = None) -> str:
    """ASCII rendering: v, ^, * (Sasaki and), ->, postfix ' for complement."""
    names = names or {}
    match expr:
        case PVar(name):
            return name
        case ConstProp(which):
            return "0" if which == "bottom" else "1"
        case Neg(arg):
            # binary forms already parenthesize themselves
            return render(arg, names) + "'"
        case Join(a, b):
            return f"({render(a, names)} v {render(b, names)})"
        case Meet(a, b):
            return f"({render(a, names)} ^ {render(b, names)})"
        case SAnd(a, b):
            return f"({render(a, names)} * {render(b, names)})"
        case SImp(a, b):
            return f"({render(a, names)} -> {render(b, names)})"
        case App(slot, arg):
            return f"{names.get(slot, slot)}({render(arg, names)})"
    raise TypeError(f"not an expression: {expr!r}")


def eval_batch(expr: Expr, lattice: Oml, env: dict[str, np.ndarray],
               ops: dict[str, TenseOperator], shape: tuple[int, int]) -> np.ndarray:
    match expr:
        case PVar(name):
            return env[name]
        case ConstProp(which):
            value = lattice.bottom if which == "bottom" else lattice.top
            return np.full(shape, value, dtype=np.int16)
        case Neg(arg):
            return lattice.comp[eval_batch(arg, lattice, env, ops, shape)]
        case Join(a, b):
            return lattice.join_table[eval_batch(a, lattice, env, ops, shape),
                                      eval_batch(b, lattice, env, ops, shape)]
        case Meet(a, b):
            return lattice.meet_table[eval_batch(a, lattice, env, ops, shape),
                                      eval_batch(b, lattice, env, ops, shape)]
        case SAnd(a, b):
            return sasaki_and_batch(lattice, eval_batch(a, lattice, env, ops, shape),
                                    eval_batch(b, lattice, env, ops, shape))
        case SImp(a, b):
            return sasaki_imp_batch(lattice, eval_batch(a, lattice, env, ops, shape),
                                    eval_batch(b, lattice, env, ops, shape))
        case App(slot, arg):
            return ops[slot].apply_batch(eval_batch(arg, lattice, env, ops, shape))
    raise TypeError(f"not an expression: {expr!r}")


def eval_trace(expr: Expr, lattice: Oml, env: dict[str, Prop], n_points: int,
               ops: dict[str, TenseOperator], names: dict[str, str],
               trace: list[tuple[str, Prop]]) -> Prop:
    """Evaluate one proposition, appending (rendered subterm, value) post-order.

    Leaves (variables, constants) stay out of the trace; replays print the
    bound propositions separately.
    """
    match expr:
        case PVar(name):
            return env[name]
        case ConstProp(which):
            value = lattice.bottom if which == "bottom" else lattice.top
            return tuple([value] * n_points)
        case Neg(arg):
            out = tuple(int(lattice.comp[x]) for x in
                        eval_trace(arg, lattice, env, n_points, ops, names, trace))
        case Join(a, b):
            out = tuple(lattice.join(x, y) for x, y in
                        zip(eval_trace(a, lattice, env, n_points, ops, names, trace),
                            eval_trace(b, lattice, env, n_points, ops, names, trace)))
        case Meet(a, b):
            out = tuple(lattice.meet(x, y) for x, y in
                        zip(eval_trace(a, lattice, env, n_points, ops, names, trace),
                            eval_trace(b, lattice, env, n_points, ops, names, trace)))
        case SAnd(a, b):
            out = prop_sasaki_and(lattice,
                                  eval_trace(a, lattice, env, n_points, ops, names, trace),
                                  eval_trace(b, lattice, env, n_points, ops, names, trace))
        case SImp(a, b):
            out = prop_sasaki_imp(lattice,
                                  eval_trace(a, lattice, env, n_points, ops, names, trace),
                                  eval_trace(b, lattice, env, n_points, ops, names, trace))
        case App(slot, arg):
            out = ops[slot](eval_trace(arg, lattice, env, n_points, ops, names, trace))
        case _:
            raise TypeError(f"not an expression: {expr!r}")
    trace.append((render(expr, names), out))
    return out


# -- laws -----------------------------------------------------------------

@dataclass(frozen=True)
class Law:
    """lhs <relation> rhs for all bindings of vars, under an optional guard."""

    id: str
    relation: str  # "leq" | "eq"
    lhs: Expr
    rhs: Expr
    vars: tuple[str, ...]
    guard: tuple[Expr, Expr] | None = None  # guard_lhs <= guard_rhs

    def describe(self, names: dict[str, str] | None = None) -> str:
        symbol = "<=" if self.relation == "leq" else "="
        text = f"{render(self.lhs, names)} {symbol} {render(self.rhs, names)}"
        if self.guard is not None:
            gl, gr = self.guard
            text += f" whenever {render(gl, names)} <= {render(gr, names)}"
        return text


@dataclass(frozen=True)
class LawOutcome:
    verdict: str                   # pass | fail | one-sided
    mode: str                      # exhaustive | sampled
    checked: int
    witness_env: dict[str, Prop] | None = None
    witness_point: int | None = None


def _rows_ok(law: Law, lattice: Oml, env: dict[str, np.ndarray],
             ops: dict[str, TenseOperator], shape: tuple[int, int]) -> np.ndarray:
    lhs = eval_batch(law.lhs, lattice, env, ops, shape)
    rhs = eval_batch(law.rhs, lattice, env, ops, shape)
    if law.relation == "leq":
        ok = lattice.leq[lhs, rhs]
    else:
        ok = lhs == rhs
    rows = ok.all(axis=1)
    if law.guard is not None:
        gl = eval_batch(law.guard[0], lattice, env, ops, shape)
        gr = eval_batch(law.guard[1], lattice, env, ops, shape)
        rows |= ~lattice.leq[gl, gr].all(axis=1)
    return rows


def _env_for_range(law: Law, lattice: Oml, n_points: int,
                   lo: int, hi: int) -> dict[str, np.ndarray]:
    if len(law.vars) == 1:
        return {law.vars[0]: proposition_block(lattice, n_points, lo, hi)}
    count = proposition_count(lattice, n_points)
    idx = np.arange(lo, hi, dtype=np.int64)
    left = _rows_at(lattice, n_points, idx // count)
    right = _rows_at(lattice, n_points, idx % count)
    return {law.vars[0]: left, law.vars[1]: right}


def _rows_at(lattice: Oml, n_points: int, indices: np.ndarray) -> np.ndarray:
    order = enumeration_order(lattice)
    idx = indices.copy()
    out = np.empty((len(idx), n_points), dtype=np.int16)
    for j in range(n_points - 1, -1, -1):
        out[:, j] = order[idx % lattice.n]
        idx //= lattice.n
    return out


def _law_chunk(payload) -> int:
    """First failing global index in [lo, hi), or -1. Top level for pickling."""
    law, lattice, ops, n_points, lo, hi, step = payload
    for start in range(lo, hi, step):
        stop = min(start + step, hi)
        env = _env_for_range(law, lattice, n_points, start, stop)
        shape = (stop - start, n_points)
        rows = _rows_ok(law, lattice, env, ops, shape)
        if not rows.all():
            return start + int(np.argmin(rows))
    return -1


def _decode_env(law: Law, lattice: Oml, n_points: int, index: int) -> dict[str, Prop]:
    if len(law.vars) == 1:
        row = proposition_block(lattice, n_points, index, index + 1)[0]
        return {law.vars[0]: tuple(int(x) for x in row)}
    count = proposition_count(lattice, n_points)
    i, j = divmod(index, count)
    return {
        law.vars[0]: tuple(int(x) for x in proposition_block(lattice, n_points, i, i + 1)[0]),
        law.vars[1]: tuple(int(x) for x in proposition_block(lattice, n_points, j, j + 1)[0]),
    }


def _failing_point(law: Law, lattice: Oml, env: dict[str, Prop], n_points: int,
                   ops: dict[str, TenseOperator]) -> tuple[int, int, int]:
    """(point, lhs value, rhs value) at the first point where the law breaks."""
    trace: list[tuple[str, Prop]] = []
    lhs = eval_trace(law.lhs, lattice, env, n_points, ops, {}, trace)
    rhs = eval_trace(law.rhs, lattice, env, n_points, ops, {}, trace)
    for s, (x, y) in enumerate(zip(lhs, rhs)):
        bad = (not lattice.le(x, y)) if law.relation == "leq" else (x != y)
        if bad:
            return s, x, y
    raise AssertionError("witness does not fail the law")  # engine bug if reached


def check_law(law: Law, lattice: Oml, n_points: int, ops: dict[str, TenseOperator], *,
              budget: int | None = None, pair_budget: int = DEFAULT_PAIR_BUDGET,
              seed: int = DEFAULT_SEED, jobs: int = 1,
              chunk: int = DEFAULT_CHUNK) -> LawOutcome:
    """Quantify the law over all (or sampled) propositions."""
    budget = resolve_budget(budget)
    count = proposition_count(lattice, n_points)
    arity = len(law.vars)

    if arity == 0:
        env: dict[str, np.ndarray] = {}
        rows = _rows_ok(law, lattice, env, ops, (1, n_points))
        if bool(rows.all()):
            return LawOutcome(PASS, EXHAUSTIVE, 1)
        point, lhs, rhs = _failing_point(law, lattice, {}, n_points, ops)
        return LawOutcome(FAIL, EXHAUSTIVE, 1, witness_env={}, witness_point=point)

    if arity == 1:
        space, cap = count, budget
    else:
        space, cap = count * count, min(pair_budget, budget * budget)

    if space <= cap:
        first_bad = _run_exhaustive(law, lattice, ops, n_points, space, jobs, chunk)
        if first_bad < 0:
            return LawOutcome(PASS, EXHAUSTIVE, space)
        env = _decode_env(law, lattice, n_points, first_bad)
        point, _, _ = _failing_point(law, lattice, env, n_points, ops)
        return LawOutcome(FAIL, EXHAUSTIVE, space, witness_env=env, witness_point=point)

    return _run_sampled(law, lattice, ops, n_points, count, cap, seed)


def _run_exhaustive(law: Law, lattice: Oml, ops, n_points: int, space: int,
                    jobs: int, chunk: int) -> int:
    if jobs <= 1:
        return _law_chunk((law, lattice, ops, n_points, 0, space, chunk))
    ranges = partition_ranges(space, jobs * 4)
    payloads = [(law, lattice, ops, n_points, lo, hi, chunk) for lo, hi in ranges]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_law_chunk, payloads))
    bad = [r for r in results if r >= 0]
    return min(bad) if bad else -1


def _run_sampled(law: Law, lattice: Oml, ops, n_points: int, count: int,
                 cap: int, seed: int) -> LawOutcome:
    arity = len(law.vars)
    if arity == 1:
        block = sampled_block(lattice, n_points, cap, seed)
        env = {law.vars[0]: block}
        rows = _rows_ok(law, lattice, env, ops, block.shape)
        if bool(rows.all()):
            return LawOutcome(ONE_SIDED, SAMPLED, cap)
        i = int(np.argmin(rows))
        wenv = {law.vars[0]: tuple(int(x) for x in block[i])}
    else:
        # stratified over the pair-index space when it is addressable, else
        # independent uniform draws per side
        if count <= 2 ** 31:
            total = count * count
            q, r = divmod(total, cap)
            i = np.arange(cap, dtype=np.int64)
            starts = i * q + np.minimum(i, r)
            widths = q + (i < r)
            rng = np.random.default_rng(seed)
            ks = starts + rng.integers(0, widths)
            left = _rows_at(lattice, n_points, ks // count)
            right = _rows_at(lattice, n_points, ks % count)
        else:
            left = sampled_block(lattice, n_points, cap, seed)
            right = sampled_block(lattice, n_points, cap, seed + 1)
        env = {law.vars[0]: left, law.vars[1]: right}
        rows = _rows_ok(law, lattice, env, ops, left.shape)
        if bool(rows.all()):
            return LawOutcome(ONE_SIDED, SAMPLED, len(left))
        i = int(np.argmin(rows))
        wenv = {law.vars[0]: tuple(int(x) for x in left[i]),
                law.vars[1]: tuple(int(x) for x in right[i])}
    point, _, _ = _failing_point(law, lattice, wenv, n_points, ops)
    return LawOutcome(FAIL, SAMPLED, cap, witness_env=wenv, witness_point=point)


def build_witness(law: Law, lattice: Oml, env: dict[str, Prop], n_points: int,
                  ops: dict[str, TenseOperator], op_names: dict[str, str]) -> Witness:
    point, lhs, rhs = _failing_point(law, lattice, env, n_points, ops)
    return Witness(
        kind="law",
        law=law.id,
        ops=tuple(sorted(op_names.items())),
        props=tuple((name, env[name]) for name in law.vars),
        point=point,
        lhs=lhs,
        rhs=rhs,
        note=law.describe(op_names),
    )
