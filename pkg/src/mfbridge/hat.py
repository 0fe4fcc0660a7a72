"""Translation from pre-syntax back into the set language.

Three mutually recursive maps over one AST, all producing core set formulas
over the reserved placeholder variable `u`:

  eta(A)    describes the elements of a pre-collection as a class over u;
  delta(a)  pins down the value of a pre-term as the unique u satisfying it;
  hat(phi)  renders a pre-proposition as a closed-over-its-variables formula.

Pre-contexts translate to the conjunction of their entries' eta images.

The placeholder u is banned from input.  Auxiliary variables are drawn from
one fresh-name counter threaded through the whole run, so a translation is
reproducible and nested clause instances never collide.  All sugar used by
the clauses (ordered pairs, subset, binary union, singletons, projections,
list length, 0) is elaborated immediately: outputs are always core.
"""
from __future__ import annotations

from .core import FreshNames, all_names, free_vars, subst
from . import emtt_syntax as pre
from . import set_syntax as fol
from .set_syntax import (And, Bot, Empty, Eq, Exists, Forall, Imp, Mem, Omega,
                         Sep, SetFormula, Union, Var)
from .tilde import TranslationError

PLACEHOLDER = "u"
U = Var(PLACEHOLDER)


def _conj(*fs: SetFormula) -> SetFormula:
    out = fs[0]
    for f in fs[1:]:
        out = And(out, f)
    return out


class HatTranslator:
    """One translation run: a fresh-name context shared by every clause."""

    def __init__(self, fresh: FreshNames | None = None, *seed_nodes):
        self.fresh = fresh if fresh is not None else FreshNames.for_nodes(*seed_nodes)

    def _check_input(self, node) -> None:
        if PLACEHOLDER in all_names(node):
            raise TranslationError(f"input contains the reserved placeholder {PLACEHOLDER!r}")

    def _elab(self, node: fol.SetNode) -> SetFormula:
        return fol.elaborate(node, self.fresh)

    def _sub(self, f: SetFormula, mapping: dict[str, fol.SetTerm]) -> SetFormula:
        return subst(f, mapping, self.fresh)

    # -- entry points ----------------------------------------------------------

    def eta(self, A: pre.PreCollection) -> SetFormula:
        self._check_input(A)
        return self._eta(A)

    def delta(self, a: pre.PreTerm) -> SetFormula:
        self._check_input(a)
        return self._delta(a)

    def hat(self, phi: pre.PreProposition) -> SetFormula:
        self._check_input(phi)
        return self._hat(phi)

    def hat_context(self, ctx: pre.PreContext) -> SetFormula:
        out: SetFormula = Imp(Bot(), Bot())
        for x, A in ctx:
            self._check_input(A)
            if x == PLACEHOLDER:
                raise TranslationError(f"context declares the reserved placeholder {PLACEHOLDER!r}")
            out = And(out, self._sub(self._eta(A), {PLACEHOLDER: Var(x)}))
        return out

    # -- pre-propositions --------------------------------------------------------

    def _hat(self, phi: pre.PreProposition) -> SetFormula:
        match phi:
            case pre.BotP():
                return Bot()
            case pre.EpsTerm(a, b):
                v = self.fresh("v")
                da, db = self._delta(a), self._delta(b)
                body = _conj(da, self._sub(db, {PLACEHOLDER: Var(v)}), Mem(U, Var(v)))
                return Exists(PLACEHOLDER, Exists(v, body))
            case pre.EpsCol(a, A):
                return Exists(PLACEHOLDER, And(self._delta(a), self._eta(A)))
            case pre.EqP(A, a, b):
                return Exists(PLACEHOLDER, _conj(self._delta(a), self._delta(b), self._eta(A)))
            case pre.AndP(l, r):
                return And(self._hat(l), self._hat(r))
            case pre.OrP(l, r):
                return fol.Or(self._hat(l), self._hat(r))
            case pre.ImpP(l, r):
                return Imp(self._hat(l), self._hat(r))
            case pre.ForallP(x, A, body):
                guard = self._sub(self._eta(A), {PLACEHOLDER: Var(x)})
                return Forall(x, Imp(guard, self._hat(body)))
            case pre.ExistsP(x, A, body):
                guard = self._sub(self._eta(A), {PLACEHOLDER: Var(x)})
                return Exists(x, And(guard, self._hat(body)))
            case _:
                raise TranslationError(f"not a pre-proposition: {phi!r}")

    # -- pre-collections ----------------------------------------------------------

    def _eta(self, A: pre.PreCollection) -> SetFormula:
        match A:
            case pre.N0():
                return Bot()
            case pre.N1():
                return Eq(U, Empty())
            case pre.Sigma(x, dom, body):
                v, w = self.fresh("v"), self.fresh("w")
                ea = self._sub(self._eta(dom), {PLACEHOLDER: Var(v)})
                eb = self._sub(self._eta(body), {x: Var(v), PLACEHOLDER: Var(w)})
                pair = self._elab(fol.OrderedPair(Var(v), Var(w)))
                return Exists(v, Exists(w, _conj(ea, eb, Eq(U, pair))))
            case pre.Pi(x, dom, body):
                return self._eta_pi(x, dom, body)
            case pre.Sum(l, r):
                v, w = self.fresh("v"), self.fresh("w")
                el = self._sub(self._eta(l), {PLACEHOLDER: Var(v)})
                er = self._sub(self._eta(r), {PLACEHOLDER: Var(w)})
                lp = self._elab(fol.OrderedPair(fol.Zero(), Var(v)))
                rp = self._elab(fol.OrderedPair(fol.One(), Var(w)))
                return fol.Or(Exists(v, And(el, Eq(U, lp))),
                              Exists(w, And(er, Eq(U, rp))))
            case pre.ListC(elem):
                return self._eta_list(elem)
            case pre.Quot(base, x, y, rel):
                w, v = self.fresh("w"), self.fresh("v")
                ew = self._sub(self._eta(base), {PLACEHOLDER: Var(w)})
                ev = self._sub(self._eta(base), {PLACEHOLDER: Var(v)})
                hr = self._sub(self._hat(rel), {x: Var(w), y: Var(v)})
                member = self._elab(fol.Iff(Mem(Var(v), U), And(ev, hr)))
                return Exists(w, And(ew, Forall(v, member)))
            case pre.PowOne():
                return self._elab(fol.Subset(U, fol.Singleton(fol.Zero())))
            case pre.FunPowOne(dom):
                x = self.fresh("x")
                return self._eta_pi(x, dom, pre.PowOne())
            case pre.UnivV():
                return Eq(U, U)
            case pre.PropAsCol(phi):
                return And(Eq(U, Empty()), self._hat(phi))
            case pre.Compr(x, phi):
                return self._sub(self._hat(phi), {x: U})
            case _:
                raise TranslationError(f"not a pre-collection: {A!r}")

    def _eta_pi(self, x: str, dom: pre.PreCollection, body: pre.PreCollection) -> SetFormula:
        v, w, wp, wpp = (self.fresh("v"), self.fresh("w"),
                         self.fresh("w"), self.fresh("w"))
        ea = self._eta(dom)
        eb = self._eta(body)
        pair_w_wp = self._elab(fol.OrderedPair(Var(w), Var(wp)))
        pair_w_wpp = self._elab(fol.OrderedPair(Var(w), Var(wpp)))
        rel = Forall(v, Imp(
            Mem(Var(v), U),
            Exists(w, Exists(wp, _conj(
                Eq(Var(v), pair_w_wp),
                self._sub(ea, {PLACEHOLDER: Var(w)}),
                self._sub(eb, {x: Var(w), PLACEHOLDER: Var(wp)}))))))
        svl = Forall(w, Forall(wp, Forall(wpp, Imp(
            And(Mem(pair_w_wp, U), Mem(pair_w_wpp, U)),
            Eq(Var(wp), Var(wpp))))))
        tot = Forall(w, Imp(self._sub(ea, {PLACEHOLDER: Var(w)}),
                            Exists(wp, Mem(pair_w_wp, U))))
        return _conj(rel, svl, tot)

    def _eta_list(self, elem: pre.PreCollection) -> SetFormula:
        n, v, w, wp, wpp = (self.fresh("n"), self.fresh("v"), self.fresh("w"),
                            self.fresh("w"), self.fresh("w"))
        ea = self._eta(elem)
        pair_w_wp = self._elab(fol.OrderedPair(Var(w), Var(wp)))
        pair_w_wpp = self._elab(fol.OrderedPair(Var(w), Var(wpp)))
        shape = Forall(v, self._elab(fol.Iff(
            Mem(Var(v), U),
            Exists(w, Exists(wp, _conj(
                Mem(Var(w), Var(n)),
                self._sub(ea, {PLACEHOLDER: Var(wp)}),
                Eq(Var(v), pair_w_wp)))))))
        svl = Forall(w, Forall(wp, Forall(wpp, Imp(
            And(Mem(pair_w_wp, U), Mem(pair_w_wpp, U)),
            Eq(Var(wp), Var(wpp))))))
        tot = Forall(w, Imp(Mem(Var(w), Var(n)),
                            Exists(wp, Mem(pair_w_wp, U))))
        return Exists(n, _conj(Mem(Var(n), Omega()), shape, svl, tot))

    # -- pre-terms -------------------------------------------------------------------

    def _delta(self, a: pre.PreTerm) -> SetFormula:
        match a:
            case pre.Var(x):
                return Eq(U, Var(x))
            case pre.TrueT() | pre.Star() | pre.Eps() | pre.Emp0(_):
                return Eq(U, Empty())
            case pre.ElN1(_, b):
                return self._delta(b)
            case pre.PairT(l, r):
                v, w = self.fresh("v"), self.fresh("w")
                dl = self._sub(self._delta(l), {PLACEHOLDER: Var(v)})
                dr = self._sub(self._delta(r), {PLACEHOLDER: Var(w)})
                pair = self._elab(fol.OrderedPair(Var(v), Var(w)))
                return Exists(v, Exists(w, _conj(dl, dr, Eq(U, pair))))
            case pre.ElSigma(s, x, y, body):
                v = self.fresh("v")
                ds = self._sub(self._delta(s), {PLACEHOLDER: Var(v)})
                db = self._delta(body)
                db = self._elab(self._sub(db, {x: fol.P1of(Var(v)), y: fol.P2of(Var(v))}))
                return Exists(v, And(ds, db))
            case pre.Lam(x, annot, body):
                v, w, wp = self.fresh("v"), self.fresh("w"), self.fresh("w")
                ea = self._sub(self._eta(annot), {PLACEHOLDER: Var(w)})
                db = self._sub(self._delta(body), {x: Var(w), PLACEHOLDER: Var(wp)})
                pair = self._elab(fol.OrderedPair(Var(w), Var(wp)))
                graph = Exists(w, Exists(wp, _conj(ea, db, Eq(Var(v), pair))))
                return Forall(v, self._elab(fol.Iff(Mem(Var(v), U), graph)))
            case pre.Ap(f, b):
                v, w, z = self.fresh("v"), self.fresh("w"), self.fresh("z")
                df = self._sub(self._delta(f), {PLACEHOLDER: Var(v)})
                db = self._sub(self._delta(b), {PLACEHOLDER: Var(w)})
                sel = Sep(z, Var(v), self._elab(Eq(fol.P1of(Var(z)), Var(w))))
                val = self._elab(Eq(U, fol.P2of(Union(sel))))
                return Exists(v, Exists(w, _conj(df, db, val)))
            case pre.Inl(b):
                v = self.fresh("v")
                dv = self._sub(self._delta(b), {PLACEHOLDER: Var(v)})
                pair = self._elab(fol.OrderedPair(fol.Zero(), Var(v)))
                return Exists(v, And(dv, Eq(U, pair)))
            case pre.Inr(b):
                v = self.fresh("v")
                dv = self._sub(self._delta(b), {PLACEHOLDER: Var(v)})
                pair = self._elab(fol.OrderedPair(fol.One(), Var(v)))
                return Exists(v, And(dv, Eq(U, pair)))
            case pre.ElPlus(s, x, bl, y, br):
                v = self.fresh("v")
                ds = self._sub(self._delta(s), {PLACEHOLDER: Var(v)})
                dl = self._elab(self._sub(self._delta(bl), {x: fol.P2of(Var(v))}))
                dr = self._elab(self._sub(self._delta(br), {y: fol.P2of(Var(v))}))
                tagl = self._elab(Eq(fol.P1of(Var(v)), fol.Zero()))
                tagr = self._elab(Eq(fol.P1of(Var(v)), fol.One()))
                return Exists(v, And(ds, fol.Or(And(tagl, dl), And(tagr, dr))))
            case pre.Cons(l, b):
                v, w = self.fresh("v"), self.fresh("w")
                dl = self._sub(self._delta(l), {PLACEHOLDER: Var(v)})
                db = self._sub(self._delta(b), {PLACEHOLDER: Var(w)})
                snoc = self._elab(fol.Cup(Var(v), fol.Singleton(
                    fol.OrderedPair(fol.Len(Var(v)), Var(w)))))
                return Exists(v, Exists(w, _conj(dl, db, Eq(U, snoc))))
            case pre.ElList():
                return self._delta_el_list(a)
            case pre.EqCls(b, annot, x, y, rel):
                w, v = self.fresh("w"), self.fresh("v")
                db = self._sub(self._delta(b), {PLACEHOLDER: Var(w)})
                ev = self._sub(self._eta(annot), {PLACEHOLDER: Var(v)})
                hr = self._sub(self._hat(rel), {x: Var(w), y: Var(v)})
                member = self._elab(fol.Iff(Mem(Var(v), U), And(ev, hr)))
                return Exists(w, And(db, Forall(v, member)))
            case pre.ElQuot(_, _, _, _, s, x, body):
                v, w = self.fresh("v"), self.fresh("w")
                ds = self._sub(self._delta(s), {PLACEHOLDER: Var(v)})
                db = self._sub(self._delta(body), {x: Var(w)})
                return Exists(v, _conj(ds,
                                       Exists(w, Mem(Var(w), Var(v))),
                                       Forall(w, Imp(Mem(Var(w), Var(v)), db))))
            case pre.PropIntoP1(phi):
                v = self.fresh("v")
                member = self._elab(fol.Iff(Mem(Var(v), U),
                                            And(Eq(Var(v), Empty()), self._hat(phi))))
                return Forall(v, member)
            case pre.Name(A):
                v = self.fresh("v")
                ev = self._sub(self._eta(A), {PLACEHOLDER: Var(v)})
                return Forall(v, self._elab(fol.Iff(Mem(Var(v), U), ev)))
            case pre.EmptyV():
                return Eq(U, Empty())
            case pre.OmegaV():
                return Eq(U, Omega())
            case pre.PairV(l, r):
                v, w = self.fresh("v"), self.fresh("w")
                dl = self._sub(self._delta(l), {PLACEHOLDER: Var(v)})
                dr = self._sub(self._delta(r), {PLACEHOLDER: Var(w)})
                return Exists(v, Exists(w, _conj(dl, dr, Eq(U, fol.Pair(Var(v), Var(w))))))
            case pre.UnionV(b):
                v = self.fresh("v")
                dv = self._sub(self._delta(b), {PLACEHOLDER: Var(v)})
                return Exists(v, And(dv, Eq(U, Union(Var(v)))))
            case pre.PowV(b):
                v, w = self.fresh("v"), self.fresh("w")
                dv = self._sub(self._delta(b), {PLACEHOLDER: Var(v)})
                member = self._elab(fol.Iff(Mem(Var(w), U), fol.Subset(Var(w), Var(v))))
                return Exists(v, And(dv, Forall(w, member)))
            case pre.SepV(x, bound, phi):
                v = self.fresh("v")
                db = self._sub(self._delta(bound), {PLACEHOLDER: Var(v)})
                member = self._elab(fol.Iff(Mem(Var(x), U),
                                            And(Mem(Var(x), Var(v)), self._hat(phi))))
                return Exists(v, And(db, Forall(x, member)))
            case _:
                raise TranslationError(f"not a pre-term: {a!r}")

    def _delta_el_list(self, node: pre.ElList) -> SetFormula:
        f = self.fresh("f")
        w, w1, w2, w3 = self.fresh("w"), self.fresh("w"), self.fresh("w"), self.fresh("w")
        v, wp = self.fresh("v"), self.fresh("w")
        eta_list = self._eta(pre.ListC(node.annot))
        eta_elem = self._eta(node.annot)
        fvar, uvar = Var(f), U

        pair = lambda a, b: self._elab(fol.OrderedPair(a, b))
        lst = lambda t: self._sub(eta_list, {PLACEHOLDER: t})

        shape = Forall(w, Imp(
            Mem(Var(w), fvar),
            Exists(w1, Exists(w2, And(lst(Var(w1)), Eq(Var(w), pair(Var(w1), Var(w2))))))))
        svl = Forall(w1, Forall(w2, Forall(w3, Imp(
            And(Mem(pair(Var(w1), Var(w2)), fvar), Mem(pair(Var(w1), Var(w3)), fvar)),
            Eq(Var(w2), Var(w3))))))
        tot = Forall(w1, Imp(lst(Var(w1)), Exists(w2, Mem(pair(Var(w1), Var(w2)), fvar))))
        db = self._sub(self._delta(node.base), {PLACEHOLDER: Var(v)})
        base = Exists(v, And(db, Mem(pair(Empty(), Var(v)), fvar)))
        dc = self._sub(self._delta(node.step),
                       {node.b1: Var(w1), node.b2: Var(w2), node.b3: Var(w3),
                        PLACEHOLDER: Var(v)})
        snoc = self._elab(fol.Cup(Var(w1), fol.Singleton(
            fol.OrderedPair(fol.Len(Var(w1)), Var(w2)))))
        closure = Forall(w1, Forall(w2, Forall(w3, Forall(v, Imp(
            _conj(Mem(pair(Var(w1), Var(w3)), fvar),
                  self._sub(eta_elem, {PLACEHOLDER: Var(w2)}),
                  dc),
            Mem(pair(snoc, Var(v)), fvar))))))
        da = self._sub(self._delta(node.scrut), {PLACEHOLDER: Var(wp)})
        result = Exists(wp, And(da, Mem(pair(Var(wp), uvar), fvar)))
        return Exists(f, _conj(shape, svl, tot, base, closure, result))


# -- convenience single-shot entry points -----------------------------------------

def eta(A: pre.PreCollection, fresh: FreshNames | None = None) -> SetFormula:
    return HatTranslator(fresh, A).eta(A)


def delta(a: pre.PreTerm, fresh: FreshNames | None = None) -> SetFormula:
    return HatTranslator(fresh, a).delta(a)


def hat(phi: pre.PreProposition, fresh: FreshNames | None = None) -> SetFormula:
    return HatTranslator(fresh, phi).hat(phi)


def hat_context(ctx: pre.PreContext, fresh: FreshNames | None = None) -> SetFormula:
    tr = HatTranslator(fresh, *(col for _, col in ctx))
    return tr.hat_context(ctx)
