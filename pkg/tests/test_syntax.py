import pytest

from app.exceptions import RenameCaptureError, ShapeError
from app.net_parser import parse_net
from app.syntax import (
    Activation, Capsule, Connector, ConnectorKind, Cut, Export, Import, NameSupply, alpha_eq,
    barendregtize, canonical, count_cuts, free_connectors, free_plugs, free_sockets, introduces_plug,
    introduces_socket, is_barendregt, net_size, positions, refresh, rename_plug, rename_socket,
    replace_at, show_net, subnet_at,
)


########################
# Free names            #
########################

def test_capsule_free_names():
    n = Capsule("x", "a")
    assert free_sockets(n) == {"x"}
    assert free_plugs(n) == {"a"}


def test_export_binds_socket_and_plug(peirce_net):
    assert free_sockets(peirce_net) == frozenset()
    assert free_plugs(peirce_net) == {"g"}


def test_import_consumes_mid():
    n = parse_net("<u.b> b^ [w] y^ <y.e>")
    assert free_sockets(n) == {"u", "w"}
    assert free_plugs(n) == {"e"}


def test_free_connectors_keep_namespaces_apart():
    n = parse_net("<u.b> b^ [w] y^ <y.e>")
    assert free_connectors(n) == {
        Connector("u", ConnectorKind.SOCKET), Connector("w", ConnectorKind.SOCKET),
        Connector("e", ConnectorKind.PLUG),
    }
    assert Connector("u", ConnectorKind.SOCKET) != Connector("u", ConnectorKind.PLUG)
    assert str(Connector("e", ConnectorKind.PLUG)) == "e"


def test_cut_free_names(critical_pair):
    assert free_sockets(critical_pair) == {"y", "z"}
    assert free_plugs(critical_pair) == {"b", "c"}


def test_sizes(critical_pair, peirce_net):
    assert net_size(critical_pair) == 3
    assert count_cuts(critical_pair) == 1
    assert count_cuts(peirce_net) == 0
    assert net_size(peirce_net) == 5


########################
# Introduction          #
########################

def test_introduces_plug():
    assert introduces_plug(Capsule("x", "a"), "a")
    assert introduces_plug(parse_net("x^ <x.b> c^ . a"), "a")
    assert not introduces_plug(parse_net("x^ <x.a> c^ . a"), "a")
    assert not introduces_plug(parse_net("<u.b> b^ [w] y^ <y.a>"), "a")


def test_introduces_socket():
    assert introduces_socket(Capsule("x", "a"), "x")
    assert introduces_socket(parse_net("<u.b> b^ [w] y^ <y.e>"), "w")
    assert not introduces_socket(parse_net("<w.b> b^ [w] y^ <y.e>"), "w")
    assert not introduces_socket(parse_net("x^ <x.b> c^ . a"), "x")


########################
# Positions             #
########################

def test_positions_are_preorder(critical_pair):
    paths = [path for path, _ in positions(critical_pair)]
    assert paths == [(), (0,), (1,)]


def test_subnet_and_replace(critical_pair):
    assert subnet_at(critical_pair, (1,)) == Capsule("z", "c")
    replaced = replace_at(critical_pair, (0,), Capsule("q", "b"))
    assert show_net(replaced) == "<q.b> a^ + x^ <z.c>"


def test_subnet_outside_the_net(critical_pair):
    with pytest.raises(ShapeError):
        subnet_at(critical_pair, (0, 0))


########################
# Renaming              #
########################

def test_name_supply_skips_reserved():
    supply = NameSupply(reserved=["g0", "v0"])
    assert supply.fresh_plug() == "g1"
    assert supply.fresh_socket() == "v1"
    assert supply.fresh_plug() == "g2"


def test_barendregtize_renames_clashing_binder():
    raw = Cut(Capsule("x", "a"), "a", Activation.INACTIVE, "x", Capsule("x", "b"))
    assert not is_barendregt(raw)
    fixed = barendregtize(raw)
    assert is_barendregt(fixed)
    assert free_sockets(fixed) == {"x"}
    assert fixed.bind_socket != "x"
    assert fixed.right == Capsule(fixed.bind_socket, "b")


def test_barendregt_net_is_unchanged(peirce_net):
    assert barendregtize(peirce_net) is peirce_net


def test_refresh_keeps_alpha_class(peirce_net):
    fresh = refresh(peirce_net)
    assert fresh != peirce_net
    assert alpha_eq(fresh, peirce_net)
    assert free_plugs(fresh) == {"g"}


def test_rename_free_plug_and_socket():
    assert rename_plug(Capsule("x", "a"), "a", "b") == Capsule("x", "b")
    assert rename_socket(Capsule("x", "a"), "x", "y") == Capsule("y", "a")


def test_rename_capture_without_refresh():
    n = parse_net("x^ <x.a> b^ . c")
    with pytest.raises(RenameCaptureError):
        rename_plug(n, "c", "b", allow_refresh=False)


def test_rename_capture_refreshes_binders():
    n = parse_net("x^ <x.a> b^ . c")
    renamed = rename_plug(n, "c", "b")
    assert free_plugs(renamed) == {"a", "b"}
    assert is_barendregt(renamed)


########################
# Alpha-equivalence     #
########################

def test_alpha_eq_ignores_bound_names():
    assert alpha_eq(parse_net("x^ <x.a> b^ . c"), parse_net("y^ <y.a> d^ . c"))


def test_alpha_eq_respects_free_names():
    assert not alpha_eq(parse_net("x^ <x.a> b^ . c"), parse_net("x^ <x.a> b^ . d"))


def test_canonical_avoids_free_names():
    n = parse_net("x^ <x.s_0> b^ . c")
    assert free_plugs(n) == {"s_0", "c"}
    assert canonical(n).bind_socket == "s__0"
    assert free_plugs(canonical(n)) == {"s_0", "c"}
    assert canonical(n) == canonical(parse_net("y^ <y.s_0> d^ . c"))


def test_show_net_operands(peirce_net):
    assert show_net(peirce_net) == "z^ (y^ <y.e> h^ . a) a^ [z] w^ <w.e> e^ . g"
    assert isinstance(peirce_net, Export)
    assert isinstance(peirce_net.body, Import)
