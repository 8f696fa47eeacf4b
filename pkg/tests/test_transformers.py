import pytest

from app.checker import check_derivation
from app.derivation import AX, CUT, IMP_R, INTER_E, INTER_R, UNION_E, WEAK, System, node
from app.exceptions import IncompatibleContextError, ShapeError, ThinningError
from app.iu_types import BOT, TOP, Arrow, Inter, Union, Var, equiv
from app.net_parser import parse_net
from app.syntax import Capsule, alpha_eq
from app.transformers import (
    cut_shape, elim_inter, elim_union, extend, invert, lift, rename_cut_derivation, thin, transport,
    trivial_derivation, weaken, with_binders, without,
)

A, B = Var("A"), Var("B")


def axiom(system=System.IU):
    return node(system, AX, Capsule("y", "a"), {"y": A}, {"a": A})


def identity(system=System.SIMPLE):
    net = parse_net("x^ <x.b> b^ . a")
    body = node(system, AX, net.body, {"x": A}, {"b": A})
    return node(system, IMP_R, net, {}, {"a": Arrow(A, A)}, (body,))


def test_extend_normalizes():
    assert extend({"y": A}, "z", Inter(B, B)) == {"y": A, "z": B}


def test_without():
    assert without({"y": A, "z": B}, "z", "w") == {"y": A}


def test_weaken_adds_statement_with_w():
    d = weaken(axiom(), "z", B)
    assert d.rule == WEAK
    assert d.gamma == {"y": A, "z": B}
    assert check_derivation(d)


def test_weaken_merges_existing_socket():
    d = weaken(axiom(), "y", B)
    assert d.gamma["y"] == Inter(A, B)
    assert check_derivation(d)


def test_weaken_same_type_is_identity():
    d = axiom()
    assert weaken(d, "y", A) is d


def test_weaken_simple_pushes_statement_down():
    d = weaken(identity(), "z", B)
    assert d.rule == IMP_R
    assert d.premises[0].gamma == {"x": A, "z": B}
    assert check_derivation(d)


def test_weaken_simple_clash():
    with pytest.raises(IncompatibleContextError):
        weaken(axiom(System.SIMPLE), "y", B)


def test_weaken_bound_connector():
    with pytest.raises(ShapeError):
        weaken(identity(), "x", A)


def test_thin_removes_unused_statement():
    d = thin(weaken(identity(), "z", B), ["z"])
    assert d.premises[0].gamma == {"x": A}
    assert check_derivation(d)


def test_thin_free_connector():
    with pytest.raises(ThinningError):
        thin(axiom(), ["y"])


def test_lift_cannot_widen_socket():
    with pytest.raises(ShapeError):
        lift(axiom(), {"y": B}, {"a": A})


def test_lift_collapses_nested_weakening():
    d = lift(weaken(axiom(), "z", B), {"y": A, "z": B, "w": A}, {"a": A})
    assert d.rule == WEAK
    assert d.premises[0].rule == AX


def test_transport_renames_binders():
    target = parse_net("v^ <v.c> c^ . a")
    d = transport(identity(), target)
    assert d.net == target
    assert d.premises[0].gamma == {"v": A}
    assert d.premises[0].delta == {"c": A}
    assert check_derivation(d)


def test_transport_shape_mismatch():
    with pytest.raises(ShapeError):
        transport(identity(), Capsule("y", "a"))


def test_trivial_derivation_for_top_plug():
    d = trivial_derivation(Capsule("y", "a"), {}, {"a": TOP}, System.IU)
    assert d.rule == INTER_R
    assert d.premises == ()
    assert check_derivation(d)
    assert trivial_derivation(Capsule("y", "a"), {}, {"a": TOP}, System.SIMPLE) is None


########################
# Renaming cuts         #
########################

def test_rename_cut_right_version():
    net = parse_net("<y.a> a^ + x^ <x.b>")
    left = node(System.IU, AX, net.left, {"y": A}, {"a": A, "b": A})
    right = node(System.IU, AX, net.right, {"x": A, "y": A}, {"b": A})
    d = node(System.IU, CUT, net, {"y": A}, {"b": A}, (left, right), cut_type=A)
    renamed = rename_cut_derivation(d)
    assert renamed.rule == AX
    assert renamed.net == Capsule("y", "b")
    assert renamed.gamma == {"y": A} and renamed.delta == {"b": A}
    assert check_derivation(renamed)


def test_rename_cut_left_version():
    net = parse_net("<y.a> a^ + x^ (z^ <x.c> c^ . b)")
    left = node(System.IU, AX, net.left, {"y": A}, {"a": A, "b": Arrow(B, A)})
    body = node(System.IU, AX, net.right.body, {"z": B, "x": A, "y": A}, {"c": A})
    right = node(System.IU, IMP_R, net.right, {"x": A, "y": A}, {"b": Arrow(B, A)}, (body,))
    d = node(System.IU, CUT, net, {"y": A}, {"b": Arrow(B, A)}, (left, right), cut_type=A)
    assert check_derivation(d)
    renamed = rename_cut_derivation(d)
    assert renamed.rule == IMP_R
    assert alpha_eq(renamed.net, parse_net("z^ <y.c> c^ . b"))
    assert check_derivation(renamed)


def test_rename_cut_needs_a_renaming_cut():
    with pytest.raises(ShapeError):
        rename_cut_derivation(axiom())


########################
# Eliminations          #
########################

def test_elim_inter_projects_each_component():
    d = node(System.IU, AX, Capsule("y", "a"), {"y": Inter(A, B)}, {"a": Inter(A, B)})
    projections = elim_inter(d, "a")
    assert [p.rule for p in projections] == [INTER_E, INTER_E]
    assert [p.delta["a"] for p in projections] == [A, B]
    assert all(check_derivation(p) for p in projections)


def test_elim_union_projects_each_component():
    d = node(System.IU, AX, Capsule("y", "a"), {"y": Union(A, B)}, {"a": Union(A, B)})
    projections = elim_union(d, "y")
    assert [p.gamma["y"] for p in projections] == [A, B]
    assert all(p.rule == UNION_E and check_derivation(p) for p in projections)


def test_elim_needs_the_right_shape():
    with pytest.raises(ShapeError, match="not an intersection"):
        elim_inter(axiom(), "a")
    with pytest.raises(ShapeError, match="not typed"):
        elim_union(axiom(), "q")


########################
# Generation facts      #
########################

def test_invert_capsule():
    d = node(System.IU, AX, Capsule("y", "a"), {"y": Inter(A, B)}, {"a": A})
    facts = invert(d)
    assert facts.shape == "capsule"
    assert facts.details['below']
    assert facts.details['plug_type'] == A


def test_invert_looks_through_weakening():
    facts = invert(weaken(axiom(), "z", B))
    assert facts.shape == "capsule"
    assert facts.core.rule == AX


def test_invert_export():
    facts = invert(identity(System.IU))
    assert facts.shape == "export"
    assert facts.details['arrow'] == Arrow(A, A)
    assert facts.details['below']


def test_invert_cut_shape():
    net = parse_net("<y.a> a^ + x^ <x.b>")
    t = Inter(A, B)
    left = node(System.IU, AX, net.left, {"y": t}, {"a": t, "b": t})
    right = node(System.IU, AX, net.right, {"x": t, "y": t}, {"b": t})
    facts = invert(node(System.IU, CUT, net, {"y": t}, {"b": t}, (left, right), cut_type=t))
    assert facts.shape == "cut"
    assert facts.details['cut_shape'] == "intersection"
    assert cut_shape(A) == "proper"
    assert cut_shape(Union(A, B)) == "union"


def test_invert_rejects_split_root():
    d = axiom()
    split = node(System.IU, INTER_R, d.net, d.gamma, d.delta, (d, d), subject="a")
    with pytest.raises(ShapeError, match="not proper"):
        invert(split)


def test_with_binders_restores_unused_plug():
    export = parse_net("y^ <y.a> b^ . a")
    body = node(System.IU, AX, export.body, {"y": A}, {"a": A})
    d = with_binders(body, export)
    assert equiv(d.delta["b"], BOT)
    assert d.gamma == {"y": A}
    assert check_derivation(d)


def test_with_binders_copies_types_from_a_like_derivation():
    export = parse_net("y^ <y.a> b^ . a")
    body = node(System.SIMPLE, AX, export.body, {"y": A}, {"a": A})
    like = node(System.SIMPLE, AX, export.body, {"y": A}, {"a": A, "b": B})
    assert with_binders(body, export, like).delta["b"] == B
    with pytest.raises(ShapeError):
        with_binders(body, export)
