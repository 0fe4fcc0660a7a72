"""Brute-force semantic oracle over rank-bounded hereditarily finite sets.

Classical Tarskian semantics; quantifiers range over the whole universe.
Values that would exceed the rank bound raise Overflow, which the sweep
drivers treat as "skip this environment" (the logic itself stays two-valued).

Term evaluation is three-valued at the harness level: a value, BIG (the true
value definitely has rank above the bound, e.g. a pair of two in-universe
sets that is one rank too high), or UNKNOWN (the value could not be
determined, e.g. a separation whose body was undecidable).  Atoms decide
wherever soundness allows: equality against a BIG value is false unless both
sides are BIG; a BIG value is never a member of an in-universe one.  Without
this the pair-building existential inside the list-length abbreviation would
overflow in every environment.  Everything else propagates Overflow, and
evaluation never short-circuits, so overflow behaves identically in both
evaluation engines.

Two independent engines are provided and cross-checked in the test suite:

  * eval_term / eval_formula — plain recursion on canonical HFSet values;
  * a vectorized sweep engine used by check_valid / check_equivalence, which
    exploits the fact that a full universe V_k enumerated in Ackermann order
    has element index == Ackermann code, so membership and the term
    constructors become table lookups.

The sweep over omega is truncated: omega denotes {0, ..., k-1}, so the
infinity axiom is NOT modeled and absence of a counterexample is never a
proof.  Counterexamples are always genuine.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import subst1
from .set_syntax import (And, Bot, Empty, Eq, Exists, Forall, Imp, Mem, Omega,
                         Or, Pair, Pow, Sep, SetFormula, SetTerm, Union, Var)

MAX_RANK = 4
_MAX_CELLS = 20_000_000


class Overflow(Exception):
    """A value escaped the rank-bounded universe."""


class EvalError(Exception):
    pass


@dataclass(frozen=True, eq=False)
class HFSet:
    """Canonical hereditarily finite set: children sorted by Ackermann code."""
    children: tuple["HFSet", ...]
    code: int
    rank: int

    def __eq__(self, other):
        return isinstance(other, HFSet) and self.code == other.code

    def __hash__(self):
        return hash(self.code)

    def __lt__(self, other):
        return self.code < other.code

    def __repr__(self):
        return f"HFSet({print_hf(self)})"

    def has_member(self, x: "HFSet") -> bool:
        return any(c.code == x.code for c in self.children)


def make_hf(children) -> HFSet:
    uniq: dict[int, HFSet] = {}
    for c in children:
        uniq[c.code] = c
    kids = tuple(sorted(uniq.values()))
    code = sum(1 << c.code for c in kids)
    rank = 1 + max((c.rank for c in kids), default=-1)
    return HFSet(kids, code, rank)


EMPTY = make_hf(())


def nat(n: int) -> HFSet:
    s = EMPTY
    for _ in range(n):
        s = make_hf(s.children + (s,))
    return s


def print_hf(s: HFSet) -> str:
    return "{" + ",".join(print_hf(c) for c in s.children) + "}"


def parse_hf(text: str) -> HFSet:
    s, rest = _parse_hf(text.strip())
    if rest.strip():
        raise ValueError(f"trailing input in set literal: {rest!r}")
    return s


def _parse_hf(text: str) -> tuple[HFSet, str]:
    text = text.lstrip()
    if not text.startswith("{"):
        raise ValueError(f"expected '{{' in set literal at {text[:20]!r}")
    text = text[1:].lstrip()
    kids = []
    while not text.startswith("}"):
        c, text = _parse_hf(text)
        kids.append(c)
        text = text.lstrip()
        if text.startswith(","):
            text = text[1:].lstrip()
        elif not text.startswith("}"):
            raise ValueError("expected ',' or '}' in set literal")
    return make_hf(kids), text[1:]


def parse_env(text: str) -> dict[str, HFSet]:
    """Parse an environment literal like "x={},y={{}}"."""
    env: dict[str, HFSet] = {}
    if not text.strip():
        return env
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    for part in parts:
        name, _, lit = part.partition("=")
        if not _ == "=":
            raise ValueError(f"expected name=value in env entry {part!r}")
        env[name.strip()] = parse_hf(lit)
    return env


class Universe:
    """All HF sets of rank <= k, in Ackermann order (index == code)."""

    def __init__(self, k: int):
        if k > MAX_RANK:
            raise ValueError(f"rank {k} too large (max {MAX_RANK})")
        self.k = k
        level = [EMPTY]
        for _ in range(k):
            level = [make_hf(level[j] for j in range(len(level)) if (mask >> j) & 1)
                     for mask in range(1 << len(level))]
            level.sort()
        self.elements: list[HFSet] = level
        assert [s.code for s in self.elements] == list(range(len(level)))
        self.omega = make_hf(nat(i) for i in range(k))
        self._tables = None

    def __len__(self):
        return len(self.elements)

    def index_of(self, s: HFSet) -> int:
        if s.code >= len(self.elements):
            raise Overflow(f"value of rank {s.rank} not in V_{self.k}")
        return s.code

    def admit(self, s: HFSet) -> HFSet:
        if s.rank > self.k:
            raise Overflow(f"value of rank {s.rank} exceeds rank bound {self.k}")
        return s

    def tables(self):
        if self._tables is None:
            n = len(self.elements)
            mem = np.zeros((n, n), dtype=bool)
            for i in range(n):
                for j in range(n):
                    mem[i, j] = bool((j >> i) & 1)
            pair = np.full((n, n), -1, dtype=np.int64)
            for i in range(n):
                for j in range(n):
                    c = (1 << i) | (1 << j)
                    if c < n:
                        pair[i, j] = c
            union = np.zeros(n, dtype=np.int64)
            for i in range(n):
                c = 0
                for j in range(n):
                    if (i >> j) & 1:
                        c |= j
                union[i] = c
            pw = np.full(n, -1, dtype=np.int64)
            for i in range(n):
                bits = [j for j in range(n) if (i >> j) & 1]
                c = 0
                for r in range(len(bits) + 1):
                    for comb in itertools.combinations(bits, r):
                        sub = 0
                        for j in comb:
                            sub |= 1 << j
                        c += 1 << sub
                        if c >= 1 << n:
                            break
                pw[i] = c if c < n else -1
            members = [tuple(j for j in range(n) if (i >> j) & 1) for i in range(n)]
            self._tables = (mem, pair, union, pw, members)
        return self._tables


@lru_cache(maxsize=None)
def enumerate_universe(k: int) -> Universe:
    return Universe(k)


Env = dict[str, HFSet]


# -- reference recursive evaluator ---------------------------------------------

class _Marker:
    def __init__(self, tag):
        self.tag = tag

    def __repr__(self):
        return self.tag


BIG = _Marker("BIG")          # true value definitely of rank above the bound
UNKNOWN = _Marker("UNKNOWN")  # value undetermined


def _eval(t: SetTerm, env: Env, U: Universe, strict: bool = False):
    match t:
        case Var(x):
            try:
                return env[x]
            except KeyError:
                raise EvalError(f"unbound variable {x!r}") from None
        case Empty():
            return EMPTY
        case Omega():
            return U.omega
        case Pair(a, b):
            va, vb = _eval(a, env, U, strict), _eval(b, env, U, strict)
            if va is BIG or vb is BIG:
                return BIG  # a pair with a too-big member is itself too big
            if va is UNKNOWN or vb is UNKNOWN:
                return UNKNOWN
            if max(va.rank, vb.rank) + 1 > U.k:
                return BIG
            return make_hf((va, vb))
        case Union(a):
            va = _eval(a, env, U, strict)
            if va is BIG or va is UNKNOWN:
                return UNKNOWN  # a union can drop back below the bound
            return make_hf(c for m in va.children for c in m.children)
        case Pow(a):
            va = _eval(a, env, U, strict)
            if va is BIG:
                return BIG
            if va is UNKNOWN:
                return UNKNOWN
            if (va.rank + 1 if va.children else 1) > U.k:
                return BIG
            subs = []
            for r in range(len(va.children) + 1):
                for comb in itertools.combinations(va.children, r):
                    subs.append(make_hf(comb))
            return make_hf(subs)
        case Sep(x, bound, body):
            vb = _eval(bound, env, U, strict)
            if vb is BIG or vb is UNKNOWN:
                return UNKNOWN
            kept = []
            for m in vb.children:
                try:
                    keep = eval_formula(body, {**env, x: m}, U, strict)
                except Overflow:
                    return UNKNOWN  # subset of an in-universe set, but unidentified
                if keep:
                    kept.append(m)
            return make_hf(kept)
        case _:
            raise TypeError(f"not a core set term: {t!r}")


def eval_term(t: SetTerm, env: Env, U: Universe) -> HFSet:
    v = _eval(t, env, U)
    if v is BIG:
        raise Overflow("value exceeds the rank bound")
    if v is UNKNOWN:
        raise Overflow("value could not be determined within the rank bound")
    return v


def eval_formula(f: SetFormula, env: Env, U: Universe, strict: bool = False) -> bool:
    """Classical evaluation; `strict` makes every atom touching an escaping
    value overflow instead of deciding the decidable cases."""
    match f:
        case Bot():
            return False
        case Eq(a, b):
            va, vb = _eval(a, env, U, strict), _eval(b, env, U, strict)
            if strict and (va is BIG or vb is BIG or va is UNKNOWN or vb is UNKNOWN):
                raise Overflow("value escapes the rank bound")
            if va is UNKNOWN or vb is UNKNOWN or (va is BIG and vb is BIG):
                raise Overflow("equality undetermined at this rank")
            if va is BIG or vb is BIG:
                return False
            return va == vb
        case Mem(a, b):
            va, vb = _eval(a, env, U, strict), _eval(b, env, U, strict)
            if strict and (va is BIG or vb is BIG or va is UNKNOWN or vb is UNKNOWN):
                raise Overflow("value escapes the rank bound")
            if vb is BIG or vb is UNKNOWN or va is UNKNOWN:
                raise Overflow("membership undetermined at this rank")
            if va is BIG:
                return False
            return vb.has_member(va)
        case And(l, r):
            vl, vr = eval_formula(l, env, U, strict), eval_formula(r, env, U, strict)
            return vl and vr
        case Or(l, r):
            vl, vr = eval_formula(l, env, U, strict), eval_formula(r, env, U, strict)
            return vl or vr
        case Imp(l, r):
            vl, vr = eval_formula(l, env, U, strict), eval_formula(r, env, U, strict)
            return (not vl) or vr
        case Forall(x, body):
            vals = [eval_formula(body, {**env, x: el}, U, strict) for el in U.elements]
            return all(vals)
        case Exists(x, body):
            vals = [eval_formula(body, {**env, x: el}, U, strict) for el in U.elements]
            return any(vals)
        case _:
            raise TypeError(f"not a core set formula: {f!r}")


# -- vectorized sweep engine ----------------------------------------------------
#
# A term denotes an integer array over the grid of its free variables (entry =
# element index, -1 = overflow); a formula denotes a (truth, overflow) pair of
# boolean arrays.  Dimension name tuples are kept sorted, so an array's axes
# always appear in the same order as any enclosing grid's.

def _expand(dims: tuple[str, ...], arr: np.ndarray, target: tuple[str, ...]) -> np.ndarray:
    if dims == target:
        return arr
    shape = []
    di = 0
    for t in target:
        if di < len(dims) and dims[di] == t:
            shape.append(arr.shape[di])
            di += 1
        else:
            shape.append(1)
    return arr.reshape(shape)


def _join(n: int, *dimsets) -> tuple[str, ...]:
    target = tuple(sorted(set().union(*dimsets)))
    if n ** len(target) > _MAX_CELLS:
        raise MemoryError(f"sweep grid over {len(target)} variables exceeds engine capacity")
    return target


class _SweepEngine:
    def __init__(self, U: Universe, strict: bool = False):
        self.U = U
        self.strict = strict
        self.n = len(U.elements)
        self.mem, self.pair, self.union, self.pow, self.members = U.tables()

    def term(self, t: SetTerm):
        n = self.n
        match t:
            case Var(x):
                return (x,), np.arange(n, dtype=np.int64)
            case Empty():
                return (), np.full((), 0, dtype=np.int64)
            case Omega():
                return (), np.full((), self.U.index_of(self.U.omega), dtype=np.int64)
            case Pair(a, b):
                da, va = self.term(a)
                db, vb = self.term(b)
                dims = _join(n, da, db)
                va, vb = _expand(da, va, dims), _expand(db, vb, dims)
                out = self.pair[np.where(va < 0, 0, va), np.where(vb < 0, 0, vb)]
                out = np.where((va == -2) | (vb == -2), -2, out)
                return dims, np.where((va == -1) | (vb == -1), -1, out)
            case Union(a):
                da, va = self.term(a)
                return da, np.where(va < 0, -2, self.union[np.where(va < 0, 0, va)])
            case Pow(a):
                da, va = self.term(a)
                out = np.where(va == -2, -2, self.pow[np.where(va < 0, 0, va)])
                return da, np.where(va == -1, -1, out)
            case Sep(x, bound, body):
                return self._sep(x, bound, body)
            case _:
                raise TypeError(f"not a core set term: {t!r}")

    def _sep(self, x: str, bound: SetTerm, body: SetFormula):
        n = self.n
        db, vb = self.term(bound)
        df, tr, ov = self.formula(body)
        out_dims = _join(n, db, set(df) - {x})
        full = _join(n, out_dims, {x})
        xpos = full.index(x)
        shape_out = (n,) * len(out_dims)
        B = np.broadcast_to(_expand(db, vb, out_dims), shape_out)
        T = np.broadcast_to(_expand(df, tr, full), (n,) * len(full))
        O = np.broadcast_to(_expand(df, ov, full), (n,) * len(full))
        out = np.empty(shape_out, dtype=np.int64)
        pos_of = [full.index(d) for d in out_dims]
        for ix in np.ndindex(*shape_out):
            b = B[ix]
            if b < 0:
                out[ix] = -2
                continue
            coord = [0] * len(full)
            for p, v in zip(pos_of, ix):
                coord[p] = v
            code = 0
            bad = False
            for m in self.members[b]:
                coord[xpos] = m
                c = tuple(coord)
                if O[c]:
                    bad = True
                    break
                if T[c]:
                    code |= 1 << m
            out[ix] = -2 if bad else code
        return out_dims, out

    def formula(self, f: SetFormula):
        n = self.n
        match f:
            case Bot():
                return (), np.full((), False), np.full((), False)
            case Eq(a, b):
                da, va = self.term(a)
                db, vb = self.term(b)
                dims = _join(n, da, db)
                va, vb = _expand(da, va, dims), _expand(db, vb, dims)
                if self.strict:
                    ov = (va < 0) | (vb < 0)
                else:
                    ov = (va == -2) | (vb == -2) | ((va == -1) & (vb == -1))
                return dims, (va == vb) & (va >= 0), ov
            case Mem(a, b):
                da, va = self.term(a)
                db, vb = self.term(b)
                dims = _join(n, da, db)
                va, vb = _expand(da, va, dims), _expand(db, vb, dims)
                tr = self.mem[np.where(va < 0, 0, va), np.where(vb < 0, 0, vb)]
                if self.strict:
                    ov = (va < 0) | (vb < 0)
                else:
                    ov = (vb < 0) | (va == -2)
                return dims, tr & (va >= 0) & (vb >= 0), ov
            case And(l, r) | Or(l, r) | Imp(l, r):
                dl, tl, ol = self.formula(l)
                dr, tr, orr = self.formula(r)
                dims = _join(n, dl, dr)
                tl, ol = _expand(dl, tl, dims), _expand(dl, ol, dims)
                tr, orr = _expand(dr, tr, dims), _expand(dr, orr, dims)
                if isinstance(f, And):
                    t = tl & tr
                elif isinstance(f, Or):
                    t = tl | tr
                else:
                    t = ~tl | tr
                return dims, t, ol | orr
            case Forall(x, body) | Exists(x, body):
                db, tb, ob = self.formula(body)
                if x not in db:
                    return db, tb, ob
                ax = db.index(x)
                dims = tuple(d for d in db if d != x)
                red = np.all if isinstance(f, Forall) else np.any
                return dims, red(tb, axis=ax), np.any(ob, axis=ax)
            case _:
                raise TypeError(f"not a core set formula: {f!r}")


@dataclass(frozen=True)
class SweepReport:
    ok: bool
    counterexample: Env | None
    skipped: int
    total: int

    @property
    def checked(self) -> int:
        return self.total - self.skipped


def _sweep_arrays(f: SetFormula, variables: tuple[str, ...], U: Universe,
                  strict: bool = False):
    eng = _SweepEngine(U, strict)
    dims, tr, ov = eng.formula(f)
    missing = set(dims) - set(variables)
    if missing:
        raise EvalError(f"free variables {sorted(missing)} not among sweep variables")
    full = tuple(sorted(variables))
    shape = (len(U.elements),) * len(full)
    tr = np.broadcast_to(_expand(dims, tr, full), shape)
    ov = np.broadcast_to(_expand(dims, ov, full), shape)
    return full, tr, ov


def _first_env(mask: np.ndarray, variables: tuple[str, ...], U: Universe) -> Env:
    ix = np.argwhere(mask)[0]
    return {v: U.elements[i] for v, i in zip(variables, ix)}


def check_valid(f: SetFormula, variables, U: Universe,
                strict: bool = False) -> SweepReport:
    """True in every environment over `variables` that does not overflow."""
    variables = tuple(sorted(set(variables)))
    if len(U.elements) <= 16:
        full, tr, ov = _sweep_arrays(f, variables, U, strict)
        bad = ~tr & ~ov
        total = int(np.prod([len(U.elements)] * len(full), dtype=np.int64)) if full else 1
        if bad.any():
            return SweepReport(False, _first_env(bad, full, U), int(ov.sum()), total)
        return SweepReport(True, None, int(ov.sum()), total)
    return _check_valid_slow(f, variables, U, strict)


def _check_valid_slow(f: SetFormula, variables, U: Universe,
                      strict: bool = False) -> SweepReport:
    skipped = total = 0
    for combo in itertools.product(U.elements, repeat=len(variables)):
        total += 1
        env = dict(zip(variables, combo))
        try:
            val = eval_formula(f, env, U, strict)
        except Overflow:
            skipped += 1
            continue
        if not val:
            return SweepReport(False, env, skipped, total)
    return SweepReport(True, None, skipped, total)


def check_equivalence(f: SetFormula, g: SetFormula, variables, U: Universe) -> SweepReport:
    """Exhaustively compare truth values; overflowing environments are skipped."""
    variables = tuple(sorted(set(variables)))
    if len(U.elements) <= 16:
        full1, t1, o1 = _sweep_arrays(f, variables, U)
        _, t2, o2 = _sweep_arrays(g, variables, U)
        skip = o1 | o2
        diff = (t1 != t2) & ~skip
        total = int(np.prod([len(U.elements)] * len(full1), dtype=np.int64)) if full1 else 1
        if diff.any():
            return SweepReport(False, _first_env(diff, full1, U), int(skip.sum()), total)
        return SweepReport(True, None, int(skip.sum()), total)
    skipped = total = 0
    for combo in itertools.product(U.elements, repeat=len(variables)):
        total += 1
        env = dict(zip(variables, combo))
        try:
            v1 = eval_formula(f, env, U)
            v2 = eval_formula(g, env, U)
        except Overflow:
            skipped += 1
            continue
        if v1 != v2:
            return SweepReport(False, env, skipped, total)
    return SweepReport(True, None, skipped, total)


def standard_axioms() -> list[tuple[str, SetFormula]]:
    """Open forms of the extensionality/empty/pairing/union/powerset/separation
    axioms, used as a standing sanity suite for the oracle."""
    x, y, z, w = Var("x"), Var("y"), Var("z"), Var("w")
    iff = lambda a, b: And(Imp(a, b), Imp(b, a))
    axioms = [
        ("extensionality",
         Imp(Forall("z", iff(Mem(Var("z"), x), Mem(Var("z"), y))), Eq(x, y))),
        ("empty-set", Imp(Mem(x, Empty()), Bot())),
        ("pairing", iff(Mem(x, Pair(y, z)), Or(Eq(x, y), Eq(x, z)))),
        ("union", iff(Mem(x, Union(y)), Exists("z", And(Mem(x, Var("z")), Mem(Var("z"), y))))),
        ("powerset", iff(Mem(x, Pow(y)), Forall("z", Imp(Mem(Var("z"), x), Mem(Var("z"), y))))),
    ]
    for tag, body in [("bot", Bot()), ("refl", Eq(x, x)), ("mem", Mem(x, w))]:
        sep = Sep("x", y, body)
        inst = iff(Mem(z, sep), And(Mem(z, y), subst1(body, "x", z)))
        axioms.append((f"separation-{tag}", inst))
    return axioms
