"""Shared AST machinery: binder-aware traversal, substitution, alpha-equivalence.

Every syntax node in this package is a frozen dataclass deriving from Node.
A node class describes its binding structure with a `binding` class attribute,
a tuple with one entry per dataclass field:

  "X"          atomic payload (a variable name on a Var node, a kind marker, ...)
  "B"          a binder: the field holds a variable name bound in some siblings
  (i, j, ...)  a child node; the integers are field indexes of the binders
               whose scope includes this child (empty tuple = no binders)

All generic operations (free_vars, subst, alpha_eq, normalize_binders) are
driven by these specs, so each language only declares its node shapes.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass


class Node:
    binding: tuple = ()
    var_cls: type | None = None  # Var class used when renaming this node's binders

    def _values(self):
        return [getattr(self, f.name) for f in dataclasses.fields(self)]


class VarNode(Node):
    """Marker base for variable-occurrence nodes; must have a `name` field."""


class FreshNames:
    """Deterministic fresh-name supply: hint + '#' + counter.

    User-facing input never contains '#'; machine-generated names do.  When a
    context is seeded from existing nodes the counter starts past any '#k'
    suffix already present, so renaming never collides.
    """

    def __init__(self, start: int = 0):
        self._k = start

    def __call__(self, hint: str = "v") -> str:
        self._k += 1
        return f"{hint.split('#')[0]}#{self._k}"

    @classmethod
    def for_nodes(cls, *nodes: Node) -> "FreshNames":
        k = 0
        for node in nodes:
            if node is None:
                continue
            for name in all_names(node):
                head, _, tail = name.partition("#")
                if tail.isdigit():
                    k = max(k, int(tail))
        return cls(k)


def free_vars(node: Node) -> frozenset[str]:
    if isinstance(node, VarNode):
        return frozenset((node.name,))
    vals = node._values()
    acc: set[str] = set()
    for spec, v in zip(node.binding, vals):
        if isinstance(spec, tuple):
            bound = {vals[i] for i in spec}
            acc |= free_vars(v) - bound
    return frozenset(acc)


def bound_vars(node: Node) -> frozenset[str]:
    acc: set[str] = set()
    for n in walk(node):
        for spec, v in zip(n.binding, n._values()):
            if spec == "B":
                acc.add(v)
    return frozenset(acc)


def all_names(node: Node) -> frozenset[str]:
    return free_vars(node) | bound_vars(node)


def walk(node: Node):
    """Yield node and every descendant node, preorder, field order."""
    yield node
    for spec, v in zip(node.binding, node._values()):
        if isinstance(spec, tuple):
            yield from walk(v)


def _rebuild(node: Node, vals: list) -> Node:
    return type(node)(*vals)


def subst(node: Node, mapping: dict[str, Node], fresh: FreshNames | None = None) -> Node:
    """Simultaneous capture-avoiding substitution of nodes for free variables.

    Binders are renamed (via `fresh`) exactly when a replacement is actually
    placed under them and mentions the binder's name.
    """
    if not mapping:
        return node
    if fresh is None:
        fresh = FreshNames.for_nodes(node, *mapping.values())
    return _subst(node, mapping, fresh)


def subst1(node: Node, name: str, replacement: Node, fresh: FreshNames | None = None) -> Node:
    return subst(node, {name: replacement}, fresh)


def _subst(node: Node, mapping: dict[str, Node], fresh: FreshNames) -> Node:
    if isinstance(node, VarNode):
        return mapping.get(node.name, node)
    spec = node.binding
    if not any(isinstance(s, tuple) for s in spec):
        return node
    vals = node._values()
    eff: dict[int, dict[str, Node]] = {}
    used: set[str] = set()
    for j, sp in enumerate(spec):
        if not isinstance(sp, tuple):
            continue
        shadow = {vals[i] for i in sp}
        m = {k: v for k, v in mapping.items() if k not in shadow and k in free_vars(vals[j])}
        eff[j] = m
        for v in m.values():
            used |= free_vars(v)
    if not any(eff.values()):
        return node
    renames: dict[int, str] = {}
    for i, sp in enumerate(spec):
        if sp == "B" and vals[i] in used:
            renames[i] = fresh(vals[i])
    new_vals = list(vals)
    for i, nn in renames.items():
        new_vals[i] = nn
    for j, m in eff.items():
        m = dict(m)
        for i in spec[j]:
            if i in renames:
                m[vals[i]] = node.var_cls(renames[i])
        if m:
            new_vals[j] = _subst(vals[j], m, fresh)
    return _rebuild(node, new_vals)


def rename_var(node: Node, old: str, new: str, fresh: FreshNames | None = None) -> Node:
    return subst1(node, old, node.var_cls(new), fresh)


def alpha_eq(a: Node, b: Node) -> bool:
    return _alpha(a, b, {}, {}, 0)


def alpha_eq_under(a: Node, b: Node, pairs) -> bool:
    """Alpha-equivalence where pairs = [(name_a, name_b), ...] are treated as
    corresponding outer binders."""
    env1 = {n: i for i, (n, _) in enumerate(pairs)}
    env2 = {m: i for i, (_, m) in enumerate(pairs)}
    return _alpha(a, b, env1, env2, len(pairs))


def _alpha(a: Node, b: Node, env1: dict[str, int], env2: dict[str, int], depth: int) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, VarNode):
        d1, d2 = env1.get(a.name), env2.get(b.name)
        if d1 is None and d2 is None:
            return a.name == b.name
        return d1 == d2
    va, vb = a._values(), b._values()
    for i, spec in enumerate(a.binding):
        if spec == "X" and va[i] != vb[i]:
            return False
    for j, spec in enumerate(a.binding):
        if not isinstance(spec, tuple):
            continue
        e1, e2 = env1, env2
        if spec:
            e1, e2 = dict(env1), dict(env2)
            for rank, i in enumerate(spec):
                e1[va[i]] = depth + rank
                e2[vb[i]] = depth + rank
        if not _alpha(va[j], vb[j], e1, e2, depth + len(spec)):
            return False
    return True


def normalize_binders(node: Node, fresh: FreshNames | None = None) -> Node:
    """Rename binders so no name is bound twice or both free and bound."""
    if fresh is None:
        fresh = FreshNames.for_nodes(node)
    used = set(free_vars(node))
    return _normalize(node, fresh, used)


def _normalize(node: Node, fresh: FreshNames, used: set[str]) -> Node:
    if isinstance(node, VarNode):
        return node
    spec = node.binding
    vals = node._values()
    renames: dict[int, str] = {}
    for i, sp in enumerate(spec):
        if sp == "B":
            if vals[i] in used:
                renames[i] = fresh(vals[i])
                used.add(renames[i])
            else:
                used.add(vals[i])
    new_vals = list(vals)
    for i, nn in renames.items():
        new_vals[i] = nn
    for j, sp in enumerate(spec):
        if not isinstance(sp, tuple):
            continue
        child = vals[j]
        m = {vals[i]: node.var_cls(renames[i]) for i in sp if i in renames}
        if m:
            child = _subst(child, m, fresh)
        new_vals[j] = _normalize(child, fresh, used)
    if all(new_vals[i] is vals[i] for i in range(len(vals))):
        return node
    return _rebuild(node, new_vals)


def node_size(node: Node) -> int:
    return sum(1 for _ in walk(node))
