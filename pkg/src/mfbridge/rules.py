"""Machine-readable catalog of the added rule schemas, with an instance checker.

The catalog ships as a text asset (rules/emtt_T.rules, s-expression syntax)
so every schema can be audited line by line.  This is NOT a derivation
checker: the base type theory's rules are not present, so the only question
ever answered is whether a concrete judgment list is an instance of one
catalogued schema.  Abbreviated side formulas (transitivity of omega, the
relation/single-valued/total function clauses, the two collection schemas)
are stored fully expanded.

Schema files use `?name` for metavariables; the rule header declares each
metavariable's kind (col, term, prop, props, var) and whether it must be
instantiated freshly.  `(subst X ((t x) ...))` denotes textual substitution,
performed at instantiation time.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from . import emtt_syntax as pre
from .core import alpha_eq, alpha_eq_under, free_vars
from .emtt_syntax import subst_emtt_many
from .sexp import SexpError, read_all
from .set_syntax import TheoryFlavor

KINDS = ("col", "term", "prop", "props", "var")
JUDGMENT_KINDS = ("col", "set", "prop", "props")


class RulesError(ValueError):
    pass


# -- pattern-only nodes -------------------------------------------------------------

@dataclass(frozen=True)
class MCol(pre.PreCollection):
    name: str
    binding = ("X",)


@dataclass(frozen=True)
class MTerm(pre.PreTerm):
    name: str
    binding = ("X",)


@dataclass(frozen=True)
class MProp(pre.PreProposition):
    name: str
    binding = ("X",)


@dataclass(frozen=True)
class SubstCol(pre.PreCollection):
    target: pre.PreCollection
    pairs: tuple  # ((replacement-pattern, var-meta-name), ...)
    binding = ((), "X")


@dataclass(frozen=True)
class SubstProp(pre.PreProposition):
    target: pre.PreProposition
    pairs: tuple
    binding = ((), "X")


@dataclass(frozen=True)
class Judgment:
    form: str     # "is" | "eqtype" | "elem" | "eqelem" | "holds"
    parts: tuple  # form-specific: patterns and kind strings
    ctx: tuple = ()  # ((binder, collection-pattern), ...)


@dataclass(frozen=True)
class RuleSchema:
    id: str
    flavors: frozenset
    metas: tuple  # ((name, kind, fresh), ...)
    premises: tuple
    conclusion: Judgment
    derived: bool = False

    def meta_kind(self, name: str) -> str:
        for n, k, _ in self.metas:
            if n == name:
                return k
        raise RulesError(f"{self.id}: undeclared metavariable ?{name}")


@dataclass(frozen=True)
class RuleInstance:
    schema_id: str
    flavor: TheoryFlavor
    substitution: dict
    premises: tuple
    conclusion: Judgment


@dataclass(frozen=True)
class MatchReport:
    ok: bool
    detail: str = ""


# -- reading the s-expression vocabulary ------------------------------------------------

_COL_ATOMS = {"V": pre.UnivV, "N0": pre.N0, "N1": pre.N1, "P1": pre.PowOne}
_TERM_ATOMS = {"star": pre.Star, "eps": pre.Eps, "tt": pre.TrueT,
               "emptyv": pre.EmptyV, "omegav": pre.OmegaV}


def _is_meta(tree) -> bool:
    return isinstance(tree, str) and tree.startswith("?")


def _binder(tree) -> str:
    if not isinstance(tree, str):
        raise RulesError(f"expected a binder atom, found {tree!r}")
    return tree


def _col(tree):
    if _is_meta(tree):
        return MCol(tree[1:])
    if isinstance(tree, str):
        if tree in _COL_ATOMS:
            return _COL_ATOMS[tree]()
        raise RulesError(f"unknown collection atom {tree!r}")
    head, *a = tree
    match head:
        case "list":
            return pre.ListC(_col(a[0]))
        case "sum":
            return pre.Sum(_col(a[0]), _col(a[1]))
        case "sigma":
            return pre.Sigma(_binder(a[0]), _col(a[1]), _col(a[2]))
        case "pi":
            return pre.Pi(_binder(a[0]), _col(a[1]), _col(a[2]))
        case "quot":
            return pre.Quot(_col(a[0]), _binder(a[1]), _binder(a[2]), _prop(a[3]))
        case "funp1":
            return pre.FunPowOne(_col(a[0]))
        case "compr":
            return pre.Compr(_binder(a[0]), _prop(a[1]))
        case "propcol":
            return pre.PropAsCol(_prop(a[0]))
        case "subst":
            return SubstCol(_col(a[0]), _subst_pairs(a[1]))
        case _:
            raise RulesError(f"unknown collection form {head!r}")


def _term(tree):
    if _is_meta(tree):
        return MTerm(tree[1:])
    if isinstance(tree, str):
        if tree in _TERM_ATOMS:
            return _TERM_ATOMS[tree]()
        return pre.Var(tree)
    head, *a = tree
    match head:
        case "emp0":
            return pre.Emp0(_term(a[0]))
        case "eln1":
            return pre.ElN1(_term(a[0]), _term(a[1]))
        case "cons":
            return pre.Cons(_term(a[0]), _term(a[1]))
        case "ellist":
            return pre.ElList(_col(a[0]), _term(a[1]), _term(a[2]),
                              _binder(a[3]), _binder(a[4]), _binder(a[5]), _term(a[6]))
        case "inl":
            return pre.Inl(_term(a[0]))
        case "inr":
            return pre.Inr(_term(a[0]))
        case "elplus":
            return pre.ElPlus(_term(a[0]), _binder(a[1]), _term(a[2]),
                              _binder(a[3]), _term(a[4]))
        case "pairt":
            return pre.PairT(_term(a[0]), _term(a[1]))
        case "elsig":
            return pre.ElSigma(_term(a[0]), _binder(a[1]), _binder(a[2]), _term(a[3]))
        case "lam":
            return pre.Lam(_binder(a[0]), _col(a[1]), _term(a[2]))
        case "ap":
            return pre.Ap(_term(a[0]), _term(a[1]))
        case "cls":
            return pre.EqCls(_term(a[0]), _col(a[1]), _binder(a[2]),
                             _binder(a[3]), _prop(a[4]))
        case "elq":
            return pre.ElQuot(_col(a[0]), _binder(a[1]), _binder(a[2]), _prop(a[3]),
                              _term(a[4]), _binder(a[5]), _term(a[6]))
        case "pr":
            return pre.PropIntoP1(_prop(a[0]))
        case "name":
            return pre.Name(_col(a[0]))
        case "pairv":
            return pre.PairV(_term(a[0]), _term(a[1]))
        case "unionv":
            return pre.UnionV(_term(a[0]))
        case "powv":
            return pre.PowV(_term(a[0]))
        case "sepv":
            return pre.SepV(_binder(a[0]), _term(a[1]), _prop(a[2]))
        case _:
            raise RulesError(f"unknown term form {head!r}")


def _prop(tree):
    if _is_meta(tree):
        return MProp(tree[1:])
    if isinstance(tree, str):
        if tree == "bot":
            return pre.BotP()
        raise RulesError(f"unknown proposition atom {tree!r}")
    head, *a = tree
    match head:
        case "epst":
            return pre.EpsTerm(_term(a[0]), _term(a[1]))
        case "epsc":
            return pre.EpsCol(_term(a[0]), _col(a[1]))
        case "eqp":
            return pre.EqP(_col(a[0]), _term(a[1]), _term(a[2]))
        case "imp":
            return pre.ImpP(_prop(a[0]), _prop(a[1]))
        case "and":
            return pre.AndP(_prop(a[0]), _prop(a[1]))
        case "or":
            return pre.OrP(_prop(a[0]), _prop(a[1]))
        case "allp":
            return pre.ForallP(_binder(a[0]), _col(a[1]), _prop(a[2]))
        case "exp":
            return pre.ExistsP(_binder(a[0]), _col(a[1]), _prop(a[2]))
        case "subst":
            return SubstProp(_prop(a[0]), _subst_pairs(a[1]))
        case _:
            raise RulesError(f"unknown proposition form {head!r}")


def _subst_pairs(tree):
    if isinstance(tree, str):
        raise RulesError("substitution spec must be a list of (term var) pairs")
    return tuple((_term(p[0]), _binder(p[1])) for p in tree)


def _judgment(tree) -> Judgment:
    if isinstance(tree, str) or not tree:
        raise RulesError(f"expected a judgment, found {tree!r}")
    head, *a = tree
    ctx: tuple = ()
    if a and not isinstance(a[-1], str) and a[-1] and a[-1][0] == "ctx":
        ctx = tuple((_binder(e[0]), _col(e[1])) for e in a[-1][1:])
        a = a[:-1]
    match head:
        case "is":
            kind = a[1]
            if kind not in JUDGMENT_KINDS:
                raise RulesError(f"unknown judgment kind {kind!r}")
            subject = _col(a[0]) if kind in ("col", "set") else _prop(a[0])
            return Judgment("is", (subject, kind), ctx)
        case "eqtype":
            kind = a[2]
            if kind not in JUDGMENT_KINDS:
                raise RulesError(f"unknown judgment kind {kind!r}")
            rd = _col if kind in ("col", "set") else _prop
            return Judgment("eqtype", (rd(a[0]), rd(a[1]), kind), ctx)
        case "elem":
            return Judgment("elem", (_term(a[0]), _col(a[1])), ctx)
        case "eqelem":
            return Judgment("eqelem", (_term(a[0]), _term(a[1]), _col(a[2])), ctx)
        case "holds":
            return Judgment("holds", (_prop(a[0]),), ctx)
        case _:
            raise RulesError(f"unknown judgment form {head!r}")


def _parse_rule(tree) -> RuleSchema:
    if tree[0] != "rule":
        raise RulesError(f"expected (rule ...), found {tree[0]!r}")
    rid = tree[1]
    flavors = None
    metas: list = []
    premises: list = []
    conclusion = None
    derived = False
    for item in tree[2:]:
        if item == "derived":
            derived = True
            continue
        head = item[0]
        if head == "flavors":
            flavors = frozenset(item[1:])
        elif head == "meta":
            for m in item[1:]:
                name, kind = m[0], m[1]
                if kind not in KINDS:
                    raise RulesError(f"{rid}: unknown metavariable kind {kind!r}")
                metas.append((name, kind, len(m) > 2 and m[2] == "fresh"))
        elif head == "premises":
            premises = [_judgment(j) for j in item[1:]]
        elif head == "conclusion":
            conclusion = _judgment(item[1])
        else:
            raise RulesError(f"{rid}: unknown rule section {head!r}")
    if flavors is None or conclusion is None:
        raise RulesError(f"{rid}: rule needs (flavors ...) and (conclusion ...)")
    schema = RuleSchema(rid, flavors, tuple(metas), tuple(premises), conclusion, derived)
    _validate_schema(schema)
    return schema


def _pattern_metas(node, acc: set):
    if isinstance(node, (MCol, MTerm, MProp)):
        acc.add(node.name)
        return
    if isinstance(node, (SubstCol, SubstProp)):
        _pattern_metas(node.target, acc)
        for repl, x in node.pairs:
            _pattern_metas(repl, acc)
            acc.add(x.lstrip("?"))
        return
    if not hasattr(node, "binding"):
        return
    for spec, v in zip(node.binding, node._values()):
        if spec == "B" and isinstance(v, str) and v.startswith("?"):
            acc.add(v[1:])
        elif isinstance(spec, tuple):
            _pattern_metas(v, acc)


def _judgment_metas(j: Judgment) -> set:
    acc: set = set()
    for p in j.parts:
        if not isinstance(p, str):
            _pattern_metas(p, acc)
    for x, col in j.ctx:
        if x.startswith("?"):
            acc.add(x[1:])
        _pattern_metas(col, acc)
    return acc


def _validate_schema(s: RuleSchema) -> None:
    declared = {n for n, _, _ in s.metas}
    fresh = {n for n, _, f in s.metas if f}
    used = _judgment_metas(s.conclusion)
    for p in s.premises:
        used |= _judgment_metas(p)
    undecl = used - declared
    if undecl:
        raise RulesError(f"{s.id}: undeclared metavariables {sorted(undecl)}")
    in_premises: set = set()
    for p in s.premises:
        in_premises |= _judgment_metas(p)
    loose = _judgment_metas(s.conclusion) - in_premises - fresh
    if loose:
        raise RulesError(f"{s.id}: conclusion metavariables {sorted(loose)} "
                         "occur in no premise and are not declared fresh")


# -- rendering (inverse of the readers; round-trips through _parse_rule) -----------

_COL_ATOM_NAMES = {v: k for k, v in _COL_ATOMS.items()}
_TERM_ATOM_NAMES = {v: k for k, v in _TERM_ATOMS.items()}


def render_pattern(node) -> str:
    match node:
        case MCol(name) | MTerm(name) | MProp(name):
            return f"?{name}"
        case SubstCol(target, pairs) | SubstProp(target, pairs):
            inner = " ".join(f"({render_pattern(t)} {x})" for t, x in pairs)
            return f"(subst {render_pattern(target)} ({inner}))"
        case pre.UnivV() | pre.N0() | pre.N1() | pre.PowOne():
            return _COL_ATOM_NAMES[type(node)]
        case pre.ListC(a):
            return f"(list {render_pattern(a)})"
        case pre.Sum(a, b):
            return f"(sum {render_pattern(a)} {render_pattern(b)})"
        case pre.Sigma(x, a, b):
            return f"(sigma {x} {render_pattern(a)} {render_pattern(b)})"
        case pre.Pi(x, a, b):
            return f"(pi {x} {render_pattern(a)} {render_pattern(b)})"
        case pre.Quot(a, x, y, r):
            return f"(quot {render_pattern(a)} {x} {y} {render_pattern(r)})"
        case pre.FunPowOne(a):
            return f"(funp1 {render_pattern(a)})"
        case pre.Compr(x, p):
            return f"(compr {x} {render_pattern(p)})"
        case pre.PropAsCol(p):
            return f"(propcol {render_pattern(p)})"
        case pre.Var(x):
            return x
        case pre.Star() | pre.Eps() | pre.TrueT() | pre.EmptyV() | pre.OmegaV():
            return _TERM_ATOM_NAMES[type(node)]
        case pre.Emp0(a):
            return f"(emp0 {render_pattern(a)})"
        case pre.ElN1(a, b):
            return f"(eln1 {render_pattern(a)} {render_pattern(b)})"
        case pre.Cons(a, b):
            return f"(cons {render_pattern(a)} {render_pattern(b)})"
        case pre.ElList(A, a, b, x, y, z, c):
            return (f"(ellist {render_pattern(A)} {render_pattern(a)} "
                    f"{render_pattern(b)} {x} {y} {z} {render_pattern(c)})")
        case pre.Inl(a):
            return f"(inl {render_pattern(a)})"
        case pre.Inr(a):
            return f"(inr {render_pattern(a)})"
        case pre.ElPlus(a, x, b, y, c):
            return (f"(elplus {render_pattern(a)} {x} {render_pattern(b)} "
                    f"{y} {render_pattern(c)})")
        case pre.PairT(a, b):
            return f"(pairt {render_pattern(a)} {render_pattern(b)})"
        case pre.ElSigma(a, x, y, b):
            return f"(elsig {render_pattern(a)} {x} {y} {render_pattern(b)})"
        case pre.Lam(x, A, b):
            return f"(lam {x} {render_pattern(A)} {render_pattern(b)})"
        case pre.Ap(a, b):
            return f"(ap {render_pattern(a)} {render_pattern(b)})"
        case pre.EqCls(a, A, x, y, r):
            return (f"(cls {render_pattern(a)} {render_pattern(A)} {x} {y} "
                    f"{render_pattern(r)})")
        case pre.ElQuot(A, x, y, r, a, z, b):
            return (f"(elq {render_pattern(A)} {x} {y} {render_pattern(r)} "
                    f"{render_pattern(a)} {z} {render_pattern(b)})")
        case pre.PropIntoP1(p):
            return f"(pr {render_pattern(p)})"
        case pre.Name(A):
            return f"(name {render_pattern(A)})"
        case pre.PairV(a, b):
            return f"(pairv {render_pattern(a)} {render_pattern(b)})"
        case pre.UnionV(a):
            return f"(unionv {render_pattern(a)})"
        case pre.PowV(a):
            return f"(powv {render_pattern(a)})"
        case pre.SepV(x, a, p):
            return f"(sepv {x} {render_pattern(a)} {render_pattern(p)})"
        case pre.BotP():
            return "bot"
        case pre.EpsTerm(a, b):
            return f"(epst {render_pattern(a)} {render_pattern(b)})"
        case pre.EpsCol(a, A):
            return f"(epsc {render_pattern(a)} {render_pattern(A)})"
        case pre.EqP(A, a, b):
            return f"(eqp {render_pattern(A)} {render_pattern(a)} {render_pattern(b)})"
        case pre.ImpP(a, b):
            return f"(imp {render_pattern(a)} {render_pattern(b)})"
        case pre.AndP(a, b):
            return f"(and {render_pattern(a)} {render_pattern(b)})"
        case pre.OrP(a, b):
            return f"(or {render_pattern(a)} {render_pattern(b)})"
        case pre.ForallP(x, A, p):
            return f"(allp {x} {render_pattern(A)} {render_pattern(p)})"
        case pre.ExistsP(x, A, p):
            return f"(exp {x} {render_pattern(A)} {render_pattern(p)})"
        case _:
            raise RulesError(f"cannot render pattern {node!r}")


def render_judgment(j: Judgment) -> str:
    parts = [p if isinstance(p, str) else render_pattern(p) for p in j.parts]
    if j.form in ("is", "eqtype"):
        parts = parts[:-1] + [j.parts[-1]]
    body = " ".join(parts)
    if j.ctx:
        ctx = " ".join(f"({x} {render_pattern(c)})" for x, c in j.ctx)
        return f"({j.form} {body} (ctx {ctx}))"
    return f"({j.form} {body})"


def render_rule(s: RuleSchema) -> str:
    lines = [f"(rule {s.id} (flavors {' '.join(sorted(s.flavors))})"]
    if s.derived:
        lines.append("  derived")
    metas = " ".join(f"({n} {k} fresh)" if f else f"({n} {k})" for n, k, f in s.metas)
    lines.append(f"  (meta {metas})")
    prem = " ".join(render_judgment(p) for p in s.premises)
    lines.append(f"  (premises {prem})")
    lines.append(f"  (conclusion {render_judgment(s.conclusion)}))")
    return "\n".join(lines)


@lru_cache(maxsize=None)
def load_catalog() -> tuple:
    text = resources.files("mfbridge").joinpath("rules/emtt_T.rules").read_text()
    schemas = tuple(_parse_rule(t) for t in read_all(text))
    ids = [s.id for s in schemas]
    if len(ids) != len(set(ids)):
        raise RulesError("duplicate rule ids in catalog")
    return schemas


def list_rules(flavor: TheoryFlavor, include_derived: bool = False):
    return [s for s in load_catalog()
            if flavor.value in s.flavors and (include_derived or not s.derived)]


def get_rule(rule_id: str) -> RuleSchema:
    for s in load_catalog():
        if s.id == rule_id:
            return s
    raise RulesError(f"no rule with id {rule_id!r}")


# -- instantiation and matching ---------------------------------------------------------

_KIND_TYPES = {"col": pre.PreCollection, "term": pre.PreTerm,
               "prop": pre.PreProposition, "props": pre.PreProposition, "var": str}


def instantiate(node, sub: dict, schema: RuleSchema):
    if isinstance(node, (MCol, MTerm, MProp)):
        val = sub[node.name]
        if schema.meta_kind(node.name) == "var":
            return pre.Var(val)
        return val
    if isinstance(node, (SubstCol, SubstProp)):
        target = instantiate(node.target, sub, schema)
        mapping = {}
        for repl, x in node.pairs:
            xname = x[1:] if x.startswith("?") else x
            mapping[sub[xname] if x.startswith("?") else xname] = instantiate(repl, sub, schema)
        return subst_emtt_many(target, mapping)
    vals = node._values()
    new = list(vals)
    for i, spec in enumerate(node.binding):
        if spec == "B" and isinstance(vals[i], str) and vals[i].startswith("?"):
            new[i] = sub[vals[i][1:]]
        elif isinstance(spec, tuple):
            new[i] = instantiate(vals[i], sub, schema)
    return type(node)(*new)


def instantiate_judgment(j: Judgment, sub: dict, schema: RuleSchema) -> Judgment:
    parts = tuple(p if isinstance(p, str) else instantiate(p, sub, schema)
                  for p in j.parts)
    ctx = tuple((sub[x[1:]] if x.startswith("?") else x,
                 instantiate(col, sub, schema)) for x, col in j.ctx)
    return Judgment(j.form, parts, ctx)


def _judgments_match(expected: Judgment, got: Judgment) -> str | None:
    """Compare a fully instantiated judgment with a concrete one, up to
    renaming of the context variables (which bind into every component)."""
    if expected.form != got.form:
        return f"judgment form differs: expected {expected.form}, got {got.form}"
    if len(expected.parts) != len(got.parts):
        return "judgment arity differs"
    if len(expected.ctx) != len(got.ctx):
        return "context length differs"
    pairs: list = []
    for i, ((xe, ce), (xg, cg)) in enumerate(zip(expected.ctx, got.ctx)):
        if not alpha_eq_under(ce, cg, pairs):
            return f"context collection {i + 1} differs from the schema instantiation"
        pairs.append((xe, xg))
    for i, (e, g) in enumerate(zip(expected.parts, got.parts)):
        if isinstance(e, str) or isinstance(g, str):
            if e != g:
                return f"judgment kind differs: expected {e!r}, got {g!r}"
        elif not alpha_eq_under(e, g, pairs):
            return f"component {i + 1} differs from the schema instantiation"
    return None


def match_instance(inst: RuleInstance) -> MatchReport:
    try:
        schema = get_rule(inst.schema_id)
    except RulesError as e:
        return MatchReport(False, str(e))
    if inst.flavor.value not in schema.flavors:
        return MatchReport(False, f"rule {schema.id} is not part of {inst.flavor.value}")
    sub = inst.substitution
    for name, kind, _ in schema.metas:
        if name not in sub:
            return MatchReport(False, f"substitution misses metavariable ?{name}")
        if not isinstance(sub[name], _KIND_TYPES[kind]):
            return MatchReport(False, f"?{name} must be a {kind}, got {type(sub[name]).__name__}")
    extra = set(sub) - {n for n, _, _ in schema.metas}
    if extra:
        return MatchReport(False, f"substitution has undeclared metavariables {sorted(extra)}")
    for name, kind, fresh in schema.metas:
        if not fresh:
            continue
        val = sub[name]
        for other, _, _ in schema.metas:
            if other == name:
                continue
            ov = sub[other]
            if isinstance(ov, str):
                if ov == val:
                    return MatchReport(False, f"fresh variable ?{name}={val!r} collides with ?{other}")
            elif val in free_vars(ov):
                return MatchReport(False, f"fresh variable ?{name}={val!r} occurs free in ?{other}")
    if len(inst.premises) != len(schema.premises):
        return MatchReport(False, f"expected {len(schema.premises)} premises, got {len(inst.premises)}")
    for i, (pat, got) in enumerate(zip(schema.premises, inst.premises)):
        err = _judgments_match(instantiate_judgment(pat, sub, schema), got)
        if err:
            return MatchReport(False, f"premise {i + 1}: {err}")
    err = _judgments_match(instantiate_judgment(schema.conclusion, sub, schema), inst.conclusion)
    if err:
        return MatchReport(False, f"conclusion: {err}")
    return MatchReport(True, "instance of " + schema.id)


def parse_instance(text: str) -> RuleInstance:
    trees = read_all(text)
    if len(trees) != 1 or trees[0][0] != "instance":
        raise RulesError("instance file must contain one (instance ...) form")
    tree = trees[0]
    schema = get_rule(tree[1])
    flavor = None
    sub: dict = {}
    premises: list = []
    conclusion = None
    for item in tree[2:]:
        head = item[0]
        if head == "flavor":
            flavor = TheoryFlavor(item[1])
        elif head == "sub":
            for entry in item[1:]:
                name, val = entry[0], entry[1]
                kind = schema.meta_kind(name)
                if kind == "var":
                    if not isinstance(val, str):
                        raise RulesError(f"?{name} must be a variable name")
                    sub[name] = val
                elif kind in ("col",):
                    sub[name] = _col(val)
                elif kind == "term":
                    sub[name] = _term(val)
                else:
                    sub[name] = _prop(val)
        elif head == "premises":
            premises = [_judgment(j) for j in item[1:]]
        elif head == "conclusion":
            conclusion = _judgment(item[1])
        else:
            raise RulesError(f"unknown instance section {head!r}")
    if flavor is None or conclusion is None:
        raise RulesError("instance needs (flavor ...) and (conclusion ...)")
    for name in sub:
        val = sub[name]
        if not isinstance(val, str):
            leftover: set = set()
            _pattern_metas(val, leftover)
            if leftover:
                raise RulesError(f"substitution value for ?{name} contains metavariables")
    return RuleInstance(tree[1], flavor, sub, tuple(premises), conclusion)
