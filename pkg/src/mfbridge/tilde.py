"""Structure-preserving translation from the set language into pre-syntax.

Terms map to the V-constructors, membership/equality become the atomic
pre-propositions (equality annotated with V), and quantifiers become bounded
quantifiers over V.  Input must be core (sugar elaborated) and normalized;
variable names are preserved verbatim.
"""
from __future__ import annotations

from . import emtt_syntax as pre
from . import set_syntax as fol
from .set_syntax import is_core


class TranslationError(ValueError):
    pass


def tilde_term(t: fol.SetTerm) -> pre.PreTerm:
    match t:
        case fol.Var(x):
            return pre.Var(x)
        case fol.Empty():
            return pre.EmptyV()
        case fol.Omega():
            return pre.OmegaV()
        case fol.Pair(a, b):
            return pre.PairV(tilde_term(a), tilde_term(b))
        case fol.Union(a):
            return pre.UnionV(tilde_term(a))
        case fol.Pow(a):
            return pre.PowV(tilde_term(a))
        case fol.Sep(x, a, phi):
            return pre.SepV(x, tilde_term(a), tilde_formula(phi))
        case _:
            raise TranslationError(f"not a core set term: {t!r}")


def tilde_formula(f: fol.SetFormula) -> pre.PreProposition:
    match f:
        case fol.Bot():
            return pre.BotP()
        case fol.Eq(a, b):
            return pre.EqP(pre.UnivV(), tilde_term(a), tilde_term(b))
        case fol.Mem(a, b):
            return pre.EpsTerm(tilde_term(a), tilde_term(b))
        case fol.And(l, r):
            return pre.AndP(tilde_formula(l), tilde_formula(r))
        case fol.Or(l, r):
            return pre.OrP(tilde_formula(l), tilde_formula(r))
        case fol.Imp(l, r):
            return pre.ImpP(tilde_formula(l), tilde_formula(r))
        case fol.Forall(x, body):
            return pre.ForallP(x, pre.UnivV(), tilde_formula(body))
        case fol.Exists(x, body):
            return pre.ExistsP(x, pre.UnivV(), tilde_formula(body))
        case _:
            raise TranslationError(f"not a core set formula: {f!r}")


def tilde(node: fol.SetNode) -> pre.EmttNode:
    if not is_core(node):
        raise TranslationError("input contains sugar; elaborate first")
    if isinstance(node, fol.SetTerm):
        return tilde_term(node)
    return tilde_formula(node)
