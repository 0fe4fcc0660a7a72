"""Generic binder machinery: fresh names, substitution, alpha-equivalence."""
import pytest
from hypothesis import given, strategies as st

from mfbridge.core import FreshNames, alpha_eq, free_vars, normalize_binders, subst1
from mfbridge.set_syntax import (And, Bot, Eq, Exists, Forall, Imp, Mem, Omega,
                                 Empty, Sep, Var)


def test_fresh_names_deterministic():
    f = FreshNames()
    assert f() == "v#1"
    assert f("x") == "x#2"
    assert f("x#9") == "x#3"


def test_fresh_names_seeded_past_existing_suffixes():
    node = Exists("w#5", Eq(Var("w#5"), Var("a#2")))
    f = FreshNames.for_nodes(node)
    assert f("w") == "w#6"


def test_subst_simple():
    assert subst1(Mem(Var("x"), Var("y")), "x", Empty()) == Mem(Empty(), Var("y"))


def test_subst_shadowed_is_identity():
    f = Forall("x", Mem(Var("x"), Var("y")))
    assert subst1(f, "x", Omega()) is f


def test_subst_avoids_capture():
    f = Exists("z", Eq(Var("z"), Var("x")))
    got = subst1(f, "x", Var("z"))
    assert got == Exists("z#1", Eq(Var("z#1"), Var("z")))
    assert free_vars(got) == {"z"}


def test_subst_simultaneous_swap():
    from mfbridge.core import subst
    f = Mem(Var("x"), Var("y"))
    sim = subst(f, {"x": Var("y"), "y": Var("x")})
    assert sim == Mem(Var("y"), Var("x"))
    naive = subst1(subst1(f, "x", Var("y")), "y", Var("x"))
    assert naive == Mem(Var("x"), Var("x"))  # sequential would capture


def test_alpha_examples():
    assert alpha_eq(Forall("x", Mem(Var("x"), Var("y"))), Forall("z", Mem(Var("z"), Var("y"))))
    assert not alpha_eq(Forall("x", Mem(Var("x"), Var("y"))), Forall("z", Mem(Var("z"), Var("w"))))
    assert alpha_eq(Sep("x", Var("y"), Bot()), Sep("z", Var("y"), Bot()))


def test_normalize_binders_separates_free_and_bound():
    f = And(Mem(Var("x"), Var("y")), Forall("x", Eq(Var("x"), Var("x"))))
    n = normalize_binders(f)
    assert alpha_eq(f, n)
    from mfbridge.core import bound_vars
    assert not (free_vars(n) & bound_vars(n))


def test_normalize_binders_renames_duplicates():
    f = And(Forall("x", Bot()), Forall("x", Bot()))
    n = normalize_binders(f)
    assert n.left.binder != n.right.binder


# seed-driven random structural properties

def _rand_formula(seed: int, depth: int = 3):
    from mfbridge.properties import GenConfig, gen_set_formula
    return gen_set_formula(GenConfig(seed=seed, max_depth=depth))


@given(st.integers(0, 5000))
def test_alpha_reflexive(seed):
    f = _rand_formula(seed)
    assert alpha_eq(f, f)


@given(st.integers(0, 5000))
def test_alpha_invariant_under_normalize(seed):
    f = _rand_formula(seed)
    assert alpha_eq(f, normalize_binders(f))


@given(st.integers(0, 5000), st.integers(0, 5000))
def test_alpha_symmetric(s1, s2):
    a, b = _rand_formula(s1), _rand_formula(s2)
    assert alpha_eq(a, b) == alpha_eq(b, a)


@given(st.integers(0, 5000))
def test_subst_free_var_algebra(seed):
    f = _rand_formula(seed)
    fv = free_vars(f)
    term = Var("q")
    for x in sorted(fv):
        got = free_vars(subst1(f, x, term))
        assert got == (fv - {x}) | {"q"}


@given(st.integers(0, 5000))
def test_subst_noop_for_absent_variable(seed):
    f = _rand_formula(seed)
    assert subst1(f, "zz", Empty()) is f


@given(st.integers(0, 3000))
def test_subst_respects_alpha(seed):
    f = _rand_formula(seed)
    n = normalize_binders(f)
    for x in sorted(free_vars(f))[:1]:
        assert alpha_eq(subst1(f, x, Empty()), subst1(n, x, Empty()))
