"""ASCII pretty-printers for both languages.

Printing is a pure function of the AST (no state), parenthesizes by
precedence only where re-parsing would otherwise differ, and round-trips
through the parsers: parse(print(x)) == x structurally.

Connective precedence (loose to tight): <->  ->  \\/  /\\  not; quantifiers
extend maximally to the right and parenthesize as operands.
"""
from __future__ import annotations

from . import emtt_syntax as pre
from . import set_syntax as fol

# -- set language ----------------------------------------------------------------

_IFF, _IMP, _OR, _AND, _NOT, _ATOM = 1, 2, 3, 4, 5, 6


def print_set_term(t: fol.SetTerm) -> str:
    match t:
        case fol.Var(x):
            return x
        case fol.Empty():
            return "empty"
        case fol.Omega():
            return "omega"
        case fol.Zero():
            return "0"
        case fol.One():
            return "1"
        case fol.Pair(a, b):
            return f"{{{print_set_term(a)}, {print_set_term(b)}}}"
        case fol.Union(a):
            return f"Un({print_set_term(a)})"
        case fol.Pow(a):
            return f"Pow({print_set_term(a)})"
        case fol.Sep(x, a, phi):
            return f"{{{x} in {print_set_term(a)} | {_pf(phi, 0)}}}"
        case fol.Singleton(a):
            return f"sing({print_set_term(a)})"
        case fol.OrderedPair(a, b):
            return f"op({print_set_term(a)},{print_set_term(b)})"
        case fol.Cup(a, b):
            return f"cup({print_set_term(a)},{print_set_term(b)})"
        case fol.P1of(a):
            return f"p1({print_set_term(a)})"
        case fol.P2of(a):
            return f"p2({print_set_term(a)})"
        case fol.Len(a):
            return f"len({print_set_term(a)})"
        case _:
            raise TypeError(f"not a set term: {t!r}")


def _pf(f: fol.SetFormula, prec: int) -> str:
    def wrap(p: int, s: str) -> str:
        return f"({s})" if p < prec else s

    match f:
        case fol.Bot():
            return "false"
        case fol.Top():
            return "true"
        case fol.Eq(a, b):
            return f"{print_set_term(a)} = {print_set_term(b)}"
        case fol.Mem(a, b):
            return f"{print_set_term(a)} in {print_set_term(b)}"
        case fol.Subset(a, b):
            return f"{print_set_term(a)} sub {print_set_term(b)}"
        case fol.Neg(a):
            return wrap(_NOT, f"not {_pf(a, _NOT)}")
        case fol.And(l, r):
            return wrap(_AND, f"{_pf(l, _AND)} /\\ {_pf(r, _AND + 1)}")
        case fol.Or(l, r):
            return wrap(_OR, f"{_pf(l, _OR)} \\/ {_pf(r, _OR + 1)}")
        case fol.Imp(l, r):
            return wrap(_IMP, f"{_pf(l, _IMP + 1)} -> {_pf(r, _IMP)}")
        case fol.Iff(l, r):
            return wrap(_IFF, f"{_pf(l, _IFF)} <-> {_pf(r, _IFF + 1)}")
        case fol.Forall(x, body):
            return wrap(0, f"all {x}. {_pf(body, 0)}")
        case fol.Exists(x, body):
            return wrap(0, f"ex {x}. {_pf(body, 0)}")
        case fol.ExistsUnique(x, body):
            return wrap(0, f"ex! {x}. {_pf(body, 0)}")
        case fol.BForall(x, t, body):
            return wrap(0, f"all {x} in {print_set_term(t)}. {_pf(body, 0)}")
        case fol.BExists(x, t, body):
            return wrap(0, f"ex {x} in {print_set_term(t)}. {_pf(body, 0)}")
        case _:
            raise TypeError(f"not a set formula: {f!r}")


def print_set_formula(f: fol.SetFormula) -> str:
    return _pf(f, 0)


def print_set(node: fol.SetNode) -> str:
    if isinstance(node, fol.SetTerm):
        return print_set_term(node)
    return print_set_formula(node)


# -- pre-syntax --------------------------------------------------------------------

_CBIND, _CSUM, _CATOM = 0, 1, 2


def print_collection(A: pre.PreCollection, prec: int = 0) -> str:
    def wrap(p: int, s: str) -> str:
        return f"({s})" if p < prec else s

    match A:
        case pre.N0():
            return "N0"
        case pre.N1():
            return "N1"
        case pre.PowOne():
            return "P1"
        case pre.UnivV():
            return "V"
        case pre.ListC(a):
            return f"List({print_collection(a)})"
        case pre.FunPowOne(a):
            return f"Fun({print_collection(a)}, P1)"
        case pre.Sum(l, r):
            return wrap(_CSUM, f"{print_collection(l, _CSUM)} + {print_collection(r, _CSUM + 1)}")
        case pre.Sigma(x, dom, body):
            return wrap(0, f"Sig {x}:{print_collection(dom, _CATOM)}. {print_collection(body)}")
        case pre.Pi(x, dom, body):
            return wrap(0, f"Pi {x}:{print_collection(dom, _CATOM)}. {print_collection(body)}")
        case pre.Quot(base, x, y, rel):
            return wrap(0, f"{print_collection(base, _CSUM)} / ({x},{y}). {print_prop(rel)}")
        case pre.Compr(x, phi):
            return f"{{ {x} | {print_prop(phi)} }}"
        case pre.PropAsCol(phi):
            return f"[prop {print_prop(phi)}]"
        case _:
            raise TypeError(f"not a pre-collection: {A!r}")


def print_term(t: pre.PreTerm) -> str:
    pt, pc, pp = print_term, print_collection, print_prop
    match t:
        case pre.Var(x):
            return x
        case pre.Star():
            return "star"
        case pre.Eps():
            return "eps"
        case pre.TrueT():
            return "tt"
        case pre.EmptyV():
            return "emptyV"
        case pre.OmegaV():
            return "omegaV"
        case pre.Emp0(a):
            return f"emp0({pt(a)})"
        case pre.ElN1(a, b):
            return f"elN1({pt(a)},{pt(b)})"
        case pre.Cons(a, b):
            return f"cons({pt(a)},{pt(b)})"
        case pre.ElList(A, a, b, x, y, z, c):
            return f"elList[{pc(A)}]({pt(a)},{pt(b)},({x},{y},{z}){pt(c)})"
        case pre.Inl(a):
            return f"inl({pt(a)})"
        case pre.Inr(a):
            return f"inr({pt(a)})"
        case pre.ElPlus(a, x, b, y, c):
            return f"elPlus({pt(a)},({x}){pt(b)},({y}){pt(c)})"
        case pre.PairT(a, b):
            return f"<{pt(a)},{pt(b)}>"
        case pre.ElSigma(a, x, y, b):
            return f"elSig({pt(a)},({x},{y}){pt(b)})"
        case pre.Lam(x, A, b):
            return f"lam {x}:{pc(A, _CATOM)}. {pt(b)}"
        case pre.Ap(a, b):
            return f"ap({pt(a)},{pt(b)})"
        case pre.EqCls(a, A, x, y, phi):
            return f"cls[{pc(A)},({x},{y}){pp(phi)}]({pt(a)})"
        case pre.ElQuot(A, x, y, phi, a, z, b):
            return f"elQ[{pc(A)},({x},{y}){pp(phi)}]({pt(a)},({z}){pt(b)})"
        case pre.PropIntoP1(phi):
            return f"pr({pp(phi)})"
        case pre.Name(A):
            return f"name({pc(A)})"
        case pre.PairV(a, b):
            return f"{{{pt(a)},{pt(b)}}}V"
        case pre.UnionV(a):
            return f"UnV({pt(a)})"
        case pre.PowV(a):
            return f"PowV({pt(a)})"
        case pre.SepV(x, a, phi):
            return f"{{{x} eps {pt(a)} | {pp(phi)}}}"
        case _:
            raise TypeError(f"not a pre-term: {t!r}")


def print_prop(p: pre.PreProposition, prec: int = 0) -> str:
    def wrap(pr: int, s: str) -> str:
        return f"({s})" if pr < prec else s

    match p:
        case pre.BotP():
            return "bot"
        case pre.EpsTerm(a, b):
            return f"{print_term(a)} eps {print_term(b)}"
        case pre.EpsCol(a, A):
            return f"{print_term(a)} eps {print_collection(A, _CSUM)}"
        case pre.EqP(A, a, b):
            return f"{print_term(a)} =[{print_collection(A)}] {print_term(b)}"
        case pre.AndP(l, r):
            return wrap(_AND, f"{print_prop(l, _AND)} /\\ {print_prop(r, _AND + 1)}")
        case pre.OrP(l, r):
            return wrap(_OR, f"{print_prop(l, _OR)} \\/ {print_prop(r, _OR + 1)}")
        case pre.ImpP(l, r):
            return wrap(_IMP, f"{print_prop(l, _IMP + 1)} -> {print_prop(r, _IMP)}")
        case pre.ForallP(x, A, body):
            return wrap(0, f"all {x}:{print_collection(A, _CATOM)}. {print_prop(body)}")
        case pre.ExistsP(x, A, body):
            return wrap(0, f"ex {x}:{print_collection(A, _CATOM)}. {print_prop(body)}")
        case _:
            raise TypeError(f"not a pre-proposition: {p!r}")


def print_context(ctx: pre.PreContext) -> str:
    if not len(ctx):
        return "[]"
    entries = ", ".join(f"{x}:{print_collection(A, _CSUM)}" for x, A in ctx)
    return f"[{entries}]"


def print_emtt(node) -> str:
    if isinstance(node, pre.PreContext):
        return print_context(node)
    if isinstance(node, pre.PreCollection):
        return print_collection(node)
    if isinstance(node, pre.PreTerm):
        return print_term(node)
    return print_prop(node)
