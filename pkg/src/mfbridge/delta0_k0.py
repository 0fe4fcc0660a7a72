"""Certificate-checked bounded-formula classes with definable bounds.

A K0 derivation witnesses that a formula is built like a bounded formula
except that quantifier bounds may be definable elements: each bounded step
carries a witness formula `delta` that must pick out exactly one value of a
fresh variable z under the ambient hypothesis gamma.  That uniqueness
condition is a provability side condition, so the checker returns it as a
proof obligation; obligations are discharged *semantically* at a finite rank
(a necessary condition, recorded as such, never claimed as a proof).

The bound-erasing map sends a checked derivation to a bounded formula whose
quantifier bounds are the variables z, which remain free in the output and
are reported as leftovers.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .core import FreshNames, Node, alpha_eq, free_vars
from .hf import Env, Overflow, SweepReport, Universe, check_valid, eval_formula
from .set_syntax import (And, Bot, Eq, Exists, ExistsUnique, Forall, Imp, Mem,
                         Or, SetFormula, Var, elaborate, is_delta0)
from .set_syntax import TheoryFlavor

PLAIN_MARK = "_"


class K0Node(Node):
    pass


K0Node.var_cls = Var


@dataclass(frozen=True)
class K0Atom(K0Node):
    formula: SetFormula
    binding = ((),)


@dataclass(frozen=True)
class K0Conn(K0Node):
    kind: str  # "and" | "or" | "imp"
    left: K0Node
    right: K0Node
    binding = ("X", (), ())


@dataclass(frozen=True)
class K0Bounded(K0Node):
    kind: str  # "existsIn" | "forallIn" | "plain"
    z: str
    delta: SetFormula
    bound_var: str  # "_" for plain steps
    body: K0Node
    binding = ("X", "X", (), "X", ())


K0_CLASSES = (K0Atom, K0Conn, K0Bounded)

_CONN = {"and": And, "or": Or, "imp": Imp}


@dataclass(frozen=True)
class Obligation:
    z: str
    delta: SetFormula
    formula: SetFormula  # gamma -> exactly one z with delta
    status: str = "unchecked"  # "unchecked" | "hf_verified" | "refuted"
    rank: int | None = None
    counterexample: Env | None = None


@dataclass(frozen=True)
class Mismatch:
    path: str
    reason: str


@dataclass(frozen=True)
class ReconstructResult:
    ok: bool
    obligations: tuple[Obligation, ...] = ()
    mismatch: Mismatch | None = None


def derived_formula(d: K0Node) -> SetFormula:
    """The formula a derivation claims to derive."""
    match d:
        case K0Atom(a):
            return a
        case K0Conn(kind, l, r):
            return _CONN[kind](derived_formula(l), derived_formula(r))
        case K0Bounded("plain", z, delta, _, body):
            return Exists(z, And(delta, derived_formula(body)))
        case K0Bounded("existsIn", z, delta, y, body):
            inner = Exists(y, And(Mem(Var(y), Var(z)), derived_formula(body)))
            return Exists(z, And(delta, inner))
        case K0Bounded("forallIn", z, delta, y, body):
            inner = Forall(y, Imp(Mem(Var(y), Var(z)), derived_formula(body)))
            return Exists(z, And(delta, inner))
        case _:
            raise TypeError(f"not a K0 derivation node: {d!r}")


def _atom_ok(f: SetFormula) -> bool:
    match f:
        case Bot() | Eq(Var(_), Var(_)) | Mem(Var(_), Var(_)):
            return True
        case _:
            return False


def k0_reconstruct(phi: SetFormula, gamma: SetFormula, d: K0Node) -> ReconstructResult:
    """Check that d derives exactly phi under gamma; return the uniqueness
    obligations of its bounded steps (in outermost-first order)."""
    loose = free_vars(phi) - free_vars(gamma)
    if loose:
        return ReconstructResult(False, mismatch=Mismatch(
            "root", f"free variables {sorted(loose)} of the formula are not free in gamma"))
    obligations: list[Obligation] = []
    seen_z: set[str] = set()
    fresh = FreshNames.for_nodes(phi, gamma, d)

    def fail(path: str, reason: str) -> Mismatch:
        return Mismatch(path, reason)

    def go(phi: SetFormula, d: K0Node, path: str) -> Mismatch | None:
        match d:
            case K0Atom(a):
                if not _atom_ok(a):
                    return fail(path, "atoms must be falsum or equality/membership of variables")
                if not alpha_eq(phi, a):
                    return fail(path, "formula does not match the atom certificate")
                return None
            case K0Conn(kind, l, r):
                cls = _CONN.get(kind)
                if cls is None:
                    return fail(path, f"unknown connective kind {kind!r}")
                if not isinstance(phi, cls):
                    return fail(path, f"expected a {kind} connective")
                return go(phi.left, l, path + ".left") or go(phi.right, r, path + ".right")
            case K0Bounded(kind, z, delta, y, body):
                if z in seen_z:
                    return fail(path, f"bound witness variable {z!r} reused")
                if z in free_vars(gamma):
                    return fail(path, f"witness variable {z!r} is not fresh for gamma")
                stray = free_vars(delta) - free_vars(gamma) - {z}
                if stray:
                    return fail(path, f"witness formula mentions {sorted(stray)} beyond gamma and {z!r}")
                seen_z.add(z)
                if not isinstance(phi, Exists):
                    return fail(path, "expected an existential over the witness variable")
                if phi.binder != z:
                    if z in free_vars(phi.body):
                        return fail(path, f"cannot align binder: {z!r} already occurs")
                    phi = Exists(z, _rename(phi.body, phi.binder, z, fresh))
                if not isinstance(phi.body, And):
                    return fail(path, "expected (witness /\\ rest) under the existential")
                dl, rest = phi.body.left, phi.body.right
                if not alpha_eq(dl, delta):
                    return fail(path, "witness formula differs from the certificate")
                obligations.append(_make_obligation(gamma, z, delta))
                if kind == "plain":
                    return go(rest, body, path + ".body")
                if kind == "existsIn":
                    if not isinstance(rest, Exists):
                        return fail(path, "expected a bounded existential")
                    if rest.binder != y:
                        if y in free_vars(rest.body):
                            return fail(path, f"cannot align binder: {y!r} already occurs")
                        rest = Exists(y, _rename(rest.body, rest.binder, y, fresh))
                    match rest.body:
                        case And(Mem(Var(yv), Var(zv)), sub) if yv == y and zv == z:
                            return go(sub, body, path + ".body")
                    return fail(path, "bounded existential must have shape ex y. y in z /\\ ...")
                if kind == "forallIn":
                    if not isinstance(rest, Forall):
                        return fail(path, "expected a bounded universal")
                    if rest.binder != y:
                        if y in free_vars(rest.body):
                            return fail(path, f"cannot align binder: {y!r} already occurs")
                        rest = Forall(y, _rename(rest.body, rest.binder, y, fresh))
                    match rest.body:
                        case Imp(Mem(Var(yv), Var(zv)), sub) if yv == y and zv == z:
                            return go(sub, body, path + ".body")
                    return fail(path, "bounded universal must have shape all y. y in z -> ...")
                return fail(path, f"unknown bounded-step kind {kind!r}")
            case _:
                return fail(path, f"not a derivation node: {d!r}")

    mism = go(phi, d, "root")
    if mism:
        return ReconstructResult(False, mismatch=mism)
    return ReconstructResult(True, obligations=tuple(obligations))


def _rename(f: SetFormula, old: str, new: str, fresh: FreshNames) -> SetFormula:
    from .core import subst1
    return subst1(f, old, Var(new), fresh)


def _make_obligation(gamma: SetFormula, z: str, delta: SetFormula) -> Obligation:
    fresh = FreshNames.for_nodes(gamma, delta)
    formula = elaborate(Imp(gamma, ExistsUnique(z, delta)), fresh)
    return Obligation(z, delta, formula)


def discharge_obligations(obligations, rank: int) -> tuple[Obligation, ...]:
    """Model-check each uniqueness obligation over V_rank.  A pass is recorded
    as hf_verified at that rank, which is necessary, not sufficient.  Checked
    in strict mode: an environment where the witness escapes the universe is
    skipped, not counted against the obligation."""
    from .hf import enumerate_universe
    U = enumerate_universe(rank)
    out = []
    for ob in obligations:
        rep = check_valid(ob.formula, free_vars(ob.formula), U, strict=True)
        if rep.ok:
            out.append(replace(ob, status="hf_verified", rank=rank))
        else:
            out.append(replace(ob, status="refuted", rank=rank,
                               counterexample=rep.counterexample))
    return tuple(out)


class SigmaError(ValueError):
    pass


@dataclass(frozen=True)
class SigmaResult:
    formula: SetFormula
    leftover_bounds: tuple[str, ...]  # witness variables left free in the output

    def is_delta0_with_leftovers_free(self, flavor: TheoryFlavor = TheoryFlavor.IZF) -> bool:
        return is_delta0(self.formula, flavor)


def sigma(d: K0Node, obligations) -> SigmaResult:
    """Erase definable bounds: each bounded step becomes a plain bounded
    quantifier over its witness variable, which stays free in the output."""
    bad = [ob for ob in obligations if ob.status != "hf_verified"]
    if bad:
        raise SigmaError(f"obligation for {bad[0].z!r} is {bad[0].status}; "
                         "all obligations must be hf_verified")
    leftovers: list[str] = []

    def go(d: K0Node) -> SetFormula:
        match d:
            case K0Atom(a):
                return a
            case K0Conn(kind, l, r):
                return _CONN[kind](go(l), go(r))
            case K0Bounded("plain", _, _, _, body):
                return go(body)
            case K0Bounded("existsIn", z, _, y, body):
                leftovers.append(z)
                return Exists(y, And(Mem(Var(y), Var(z)), go(body)))
            case K0Bounded("forallIn", z, _, y, body):
                leftovers.append(z)
                return Forall(y, Imp(Mem(Var(y), Var(z)), go(body)))

    return SigmaResult(go(d), tuple(leftovers))


def check_separation_lemma(d: K0Node, gamma: SetFormula, rank: int,
                           var: str = "x") -> SweepReport:
    """Model-check that the derived formula admits separation: under gamma,
    every set has a subset of exactly the members satisfying the formula."""
    from .hf import enumerate_universe
    phi = derived_formula(d)
    fresh = FreshNames.for_nodes(phi, gamma)
    v, vp = fresh("v"), fresh("v")
    member = And(Imp(Mem(Var(var), Var(vp)), And(Mem(Var(var), Var(v)), phi)),
                 Imp(And(Mem(Var(var), Var(v)), phi), Mem(Var(var), Var(vp))))
    claim = Imp(gamma, Forall(v, Exists(vp, Forall(var, member))))
    U = enumerate_universe(rank)
    return check_valid(claim, free_vars(claim), U)


def unique_witness(delta: SetFormula, z: str, env: Env, U: Universe):
    """The unique value for z satisfying delta under env, or None if evaluation
    overflowed or the value is not unique."""
    hits = []
    for el in U.elements:
        try:
            if eval_formula(delta, {**env, z: el}, U):
                hits.append(el)
        except Overflow:
            return None
    return hits[0] if len(hits) == 1 else None


@dataclass(frozen=True)
class AgreementReport:
    ok: bool
    envs_checked: int
    envs_skipped: int
    counterexample: Env | None = None


def check_sigma_agreement(d: K0Node, gamma: SetFormula, rank: int) -> AgreementReport:
    """In every environment satisfying gamma, extending by the unique
    witnesses, the derived formula and its bound-erased image agree."""
    import itertools
    from .hf import enumerate_universe
    U = enumerate_universe(rank)
    phi = derived_formula(d)
    res = k0_reconstruct(phi, gamma, d)
    if not res.ok:
        raise SigmaError(f"derivation does not reconstruct: {res.mismatch}")
    sg = sigma(d, discharge_obligations(res.obligations, rank))
    steps = [(ob.z, ob.delta) for ob in res.obligations]
    gvars = tuple(sorted(free_vars(gamma)))
    checked = skipped = 0
    for combo in itertools.product(U.elements, repeat=len(gvars)):
        env = dict(zip(gvars, combo))
        try:
            if not eval_formula(gamma, env, U):
                continue
        except Overflow:
            skipped += 1
            continue
        wenv = dict(env)
        bad = False
        for z, delta in steps:
            w = unique_witness(delta, z, wenv, U)
            if w is None:
                bad = True
                break
            wenv[z] = w
        if bad:
            skipped += 1
            continue
        try:
            lhs = eval_formula(phi, env, U)
            rhs = eval_formula(sg.formula, wenv, U)
        except Overflow:
            skipped += 1
            continue
        checked += 1
        if lhs != rhs:
            return AgreementReport(False, checked, skipped, wenv)
    return AgreementReport(True, checked, skipped)
