########################
# Net Syntax            #
########################

"""
Nets of the calculus and their binder bookkeeping.

Nets are immutable frozen dataclasses. Sockets and plugs are plain strings
that live in two disjoint namespaces; which namespace a name belongs to is
determined by the position it occupies. Every constructor output handed out
by this module (parse, rename, refresh) is in Barendregt form: bound names
differ from free names and from each other.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
import itertools
import threading
from typing import Dict, FrozenSet, Iterable, Iterator, Mapping, Optional, Set, Tuple, Union

from app.exceptions import RenameCaptureError, ShapeError


class Activation(Enum):
    """Activation flag of a cut."""
    INACTIVE = "+"
    LEFT = "<+"
    RIGHT = "+>"


class ConnectorKind(Enum):
    SOCKET = "socket"
    PLUG = "plug"


@dataclass(frozen=True)
class Connector:
    """A socket or plug name; a socket never equals a plug."""
    name: str
    kind: ConnectorKind

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Capsule:
    """<x.a> wires socket x to plug a."""
    socket: str
    plug: str

    def __str__(self) -> str:
        return show_net(self)


@dataclass(frozen=True)
class Export:
    """x^ P b^ . a binds x and b in P and creates the plug a."""
    bind_socket: str
    body: "Net"
    bind_plug: str
    out: str

    def __str__(self) -> str:
        return show_net(self)


@dataclass(frozen=True)
class Import:
    """P a^ [y] x^ Q binds a in P and x in Q and consumes the socket y."""
    left: "Net"
    bind_plug: str
    mid: str
    bind_socket: str
    right: "Net"

    def __str__(self) -> str:
        return show_net(self)


@dataclass(frozen=True)
class Cut:
    """P a^ + x^ Q connects plug a of P with socket x of Q."""
    left: "Net"
    bind_plug: str
    activation: Activation
    bind_socket: str
    right: "Net"

    def __str__(self) -> str:
        return show_net(self)


Net = Union[Capsule, Export, Import, Cut]
Path = Tuple[int, ...]


########################
# Fresh names          #
########################

class NameSupply:
    """
    Per-session fresh-name counter.

    Plugs are drawn as g0, g1, ... and sockets as v0, v1, ...; names that
    were reserved (because some net already uses them) are skipped.
    """

    def __init__(self, reserved: Iterable[str] = ()):
        self._lock = threading.Lock()
        self._plugs = itertools.count()
        self._sockets = itertools.count()
        self._used: Set[str] = set(reserved)

    def reserve(self, names: Iterable[str]) -> None:
        with self._lock:
            self._used.update(names)

    def reserve_net(self, n: "Net") -> None:
        self.reserve(all_names(n))

    def _draw(self, prefix: str, counter: Iterator[int]) -> str:
        with self._lock:
            while True:
                name = f"{prefix}{next(counter)}"
                if name not in self._used:
                    self._used.add(name)
                    return name

    def fresh_plug(self) -> str:
        return self._draw("g", self._plugs)

    def fresh_socket(self) -> str:
        return self._draw("v", self._sockets)


def _supply_for(n: "Net", supply: Optional[NameSupply]) -> NameSupply:
    if supply is None:
        supply = NameSupply()
    supply.reserve_net(n)
    return supply


########################
# Free and bound names #
########################

@lru_cache(maxsize=100_000)
def free_sockets(n: Net) -> FrozenSet[str]:
    """Free sockets of a net; bound names are excluded."""
    if isinstance(n, Capsule):
        return frozenset({n.socket})
    if isinstance(n, Export):
        return free_sockets(n.body) - {n.bind_socket}
    if isinstance(n, Import):
        return free_sockets(n.left) | {n.mid} | (free_sockets(n.right) - {n.bind_socket})
    return free_sockets(n.left) | (free_sockets(n.right) - {n.bind_socket})


@lru_cache(maxsize=100_000)
def free_plugs(n: Net) -> FrozenSet[str]:
    """Free plugs of a net; bound names are excluded."""
    if isinstance(n, Capsule):
        return frozenset({n.plug})
    if isinstance(n, Export):
        return (free_plugs(n.body) - {n.bind_plug}) | {n.out}
    if isinstance(n, Import):
        return (free_plugs(n.left) - {n.bind_plug}) | free_plugs(n.right)
    return (free_plugs(n.left) - {n.bind_plug}) | free_plugs(n.right)


def free_connectors(n: Net) -> Set[Connector]:
    found = {Connector(s, ConnectorKind.SOCKET) for s in free_sockets(n)}
    return found | {Connector(p, ConnectorKind.PLUG) for p in free_plugs(n)}


def binders(n: Net) -> Iterator[Tuple[str, ConnectorKind]]:
    """All binding occurrences in preorder."""
    if isinstance(n, Capsule):
        return
    if isinstance(n, Export):
        yield n.bind_socket, ConnectorKind.SOCKET
        yield n.bind_plug, ConnectorKind.PLUG
        yield from binders(n.body)
    else:
        yield n.bind_plug, ConnectorKind.PLUG
        yield from binders(n.left)
        yield n.bind_socket, ConnectorKind.SOCKET
        yield from binders(n.right)


def bound_names(n: Net) -> Set[str]:
    return {name for name, _ in binders(n)}


def all_names(n: Net) -> Set[str]:
    return bound_names(n) | set(free_sockets(n)) | set(free_plugs(n))


def socket_names(n: Net) -> Set[str]:
    """Every identifier used in a socket position."""
    if isinstance(n, Capsule):
        return {n.socket}
    if isinstance(n, Export):
        return {n.bind_socket} | socket_names(n.body)
    if isinstance(n, Import):
        return {n.mid, n.bind_socket} | socket_names(n.left) | socket_names(n.right)
    return {n.bind_socket} | socket_names(n.left) | socket_names(n.right)


def plug_names(n: Net) -> Set[str]:
    """Every identifier used in a plug position."""
    if isinstance(n, Capsule):
        return {n.plug}
    if isinstance(n, Export):
        return {n.bind_plug, n.out} | plug_names(n.body)
    return {n.bind_plug} | plug_names(n.left) | plug_names(n.right)


def is_barendregt(n: Net) -> bool:
    """Bound names are pairwise distinct and distinct from free names."""
    names = [name for name, _ in binders(n)]
    free = set(free_sockets(n)) | set(free_plugs(n))
    return len(names) == len(set(names)) and not (set(names) & free)


def introduces_socket(n: Net, x: str) -> bool:
    """A capsule <x.a>, or an import with mid x and x free in neither subnet."""
    if isinstance(n, Capsule):
        return n.socket == x
    if isinstance(n, Import):
        return n.mid == x and x not in free_sockets(n.left) and x not in free_sockets(n.right)
    return False


def introduces_plug(n: Net, a: str) -> bool:
    """A capsule <x.a>, or an export with out a and a not free in the body."""
    if isinstance(n, Capsule):
        return n.plug == a
    if isinstance(n, Export):
        return n.out == a and a not in free_plugs(n.body)
    return False


def count_cuts(n: Net) -> int:
    if isinstance(n, Capsule):
        return 0
    if isinstance(n, Export):
        return count_cuts(n.body)
    own = 1 if isinstance(n, Cut) else 0
    return own + count_cuts(n.left) + count_cuts(n.right)


def net_size(n: Net) -> int:
    if isinstance(n, Capsule):
        return 1
    if isinstance(n, Export):
        return 1 + net_size(n.body)
    return 1 + net_size(n.left) + net_size(n.right)


########################
# Positions            #
########################

def children(n: Net) -> Tuple[Net, ...]:
    if isinstance(n, Capsule):
        return ()
    if isinstance(n, Export):
        return (n.body,)
    return (n.left, n.right)


def subnet_at(n: Net, path: Path) -> Net:
    """
    Follow child indices from the root.

    Raises:
        ShapeError: If the path leaves the net.
    """
    current = n
    for index in path:
        kids = children(current)
        if index >= len(kids):
            raise ShapeError(f"no child {index} at {show_net(current)}")
        current = kids[index]
    return current


def replace_at(n: Net, path: Path, replacement: Net) -> Net:
    if not path:
        return replacement
    head, rest = path[0], path[1:]
    if isinstance(n, Export) and head == 0:
        return Export(n.bind_socket, replace_at(n.body, rest, replacement), n.bind_plug, n.out)
    if isinstance(n, Import):
        if head == 0:
            return Import(replace_at(n.left, rest, replacement), n.bind_plug, n.mid, n.bind_socket, n.right)
        if head == 1:
            return Import(n.left, n.bind_plug, n.mid, n.bind_socket, replace_at(n.right, rest, replacement))
    if isinstance(n, Cut):
        if head == 0:
            return Cut(replace_at(n.left, rest, replacement), n.bind_plug, n.activation, n.bind_socket, n.right)
        if head == 1:
            return Cut(n.left, n.bind_plug, n.activation, n.bind_socket, replace_at(n.right, rest, replacement))
    raise ShapeError(f"no child {head} at {show_net(n)}")


def positions(n: Net, prefix: Path = ()) -> Iterator[Tuple[Path, Net]]:
    """Preorder (outermost first, left before right) enumeration of subnets."""
    yield prefix, n
    for index, child in enumerate(children(n)):
        yield from positions(child, prefix + (index,))


########################
# Renaming             #
########################

def substitute(n: Net, sockets: Mapping[str, str], plugs: Mapping[str, str]) -> Net:
    """
    Rename free occurrences simultaneously; binders shadow the maps.

    No capture check is made: callers guarantee that targets are not bound.
    """
    if not sockets and not plugs:
        return n
    if isinstance(n, Capsule):
        return Capsule(sockets.get(n.socket, n.socket), plugs.get(n.plug, n.plug))
    if isinstance(n, Export):
        inner_s = {k: v for k, v in sockets.items() if k != n.bind_socket}
        inner_p = {k: v for k, v in plugs.items() if k != n.bind_plug}
        return Export(n.bind_socket, substitute(n.body, inner_s, inner_p), n.bind_plug, plugs.get(n.out, n.out))
    left_p = {k: v for k, v in plugs.items() if k != n.bind_plug}
    right_s = {k: v for k, v in sockets.items() if k != n.bind_socket}
    left = substitute(n.left, sockets, left_p)
    right = substitute(n.right, right_s, plugs)
    if isinstance(n, Import):
        return Import(left, n.bind_plug, sockets.get(n.mid, n.mid), n.bind_socket, right)
    return Cut(left, n.bind_plug, n.activation, n.bind_socket, right)


def barendregtize(n: Net, supply: Optional[NameSupply] = None) -> Net:
    """
    Re-establish Barendregt form by renaming only the binders that clash.

    Binders whose name is free in the net or was already used by an earlier
    binder receive a fresh name from the supply.
    """
    if is_barendregt(n):
        return n
    supply = _supply_for(n, supply)
    used: Set[str] = set(free_sockets(n)) | set(free_plugs(n))

    def claim(name: str, kind: ConnectorKind) -> str:
        if name in used:
            name = supply.fresh_socket() if kind is ConnectorKind.SOCKET else supply.fresh_plug()
        used.add(name)
        return name

    def walk(m: Net) -> Net:
        if isinstance(m, Capsule):
            return m
        if isinstance(m, Export):
            s = claim(m.bind_socket, ConnectorKind.SOCKET)
            p = claim(m.bind_plug, ConnectorKind.PLUG)
            body = substitute(m.body, {m.bind_socket: s}, {m.bind_plug: p})
            return Export(s, walk(body), p, m.out)
        p = claim(m.bind_plug, ConnectorKind.PLUG)
        left = walk(substitute(m.left, {}, {m.bind_plug: p}))
        s = claim(m.bind_socket, ConnectorKind.SOCKET)
        right = walk(substitute(m.right, {m.bind_socket: s}, {}))
        if isinstance(m, Import):
            return Import(left, p, m.mid, s, right)
        return Cut(left, p, m.activation, s, right)

    return walk(n)


def refresh(n: Net, supply: Optional[NameSupply] = None) -> Net:
    """Rename every binder to a fresh name."""
    supply = _supply_for(n, supply)

    def walk(m: Net) -> Net:
        if isinstance(m, Capsule):
            return m
        if isinstance(m, Export):
            s, p = supply.fresh_socket(), supply.fresh_plug()
            body = substitute(m.body, {m.bind_socket: s}, {m.bind_plug: p})
            return Export(s, walk(body), p, m.out)
        p, s = supply.fresh_plug(), supply.fresh_socket()
        left = walk(substitute(m.left, {}, {m.bind_plug: p}))
        right = walk(substitute(m.right, {m.bind_socket: s}, {}))
        if isinstance(m, Import):
            return Import(left, p, m.mid, s, right)
        return Cut(left, p, m.activation, s, right)

    return walk(n)


def _rename(n: Net, frm: str, to: str, kind: ConnectorKind, supply: Optional[NameSupply], allow_refresh: bool) -> Net:
    if frm == to:
        return n
    if to in bound_names(n):
        if not allow_refresh:
            raise RenameCaptureError(f"{to} is bound in {show_net(n)}")
        supply = _supply_for(n, supply)
        supply.reserve([to])
        n = refresh(n, supply)
    if kind is ConnectorKind.SOCKET:
        result = substitute(n, {frm: to}, {})
    else:
        result = substitute(n, {}, {frm: to})
    return barendregtize(result, supply)


def rename_plug(n: Net, frm: str, to: str, supply: Optional[NameSupply] = None,
                allow_refresh: bool = True) -> Net:
    """
    Replace the free plug ``frm`` by ``to``.

    Raises:
        RenameCaptureError: If ``to`` is bound in the net and refreshing is disabled.
    """
    return _rename(n, frm, to, ConnectorKind.PLUG, supply, allow_refresh)


def rename_socket(n: Net, frm: str, to: str, supply: Optional[NameSupply] = None,
                  allow_refresh: bool = True) -> Net:
    """
    Replace the free socket ``frm`` by ``to``.

    Raises:
        RenameCaptureError: If ``to`` is bound in the net and refreshing is disabled.
    """
    return _rename(n, frm, to, ConnectorKind.SOCKET, supply, allow_refresh)


########################
# Alpha-equivalence    #
########################

def _canonical_prefix(base: str, taken: Set[str]) -> str:
    prefix = base + "_"
    while any(name.startswith(prefix) for name in taken):
        prefix += "_"
    return prefix


def canonical(n: Net) -> Net:
    """Number bound names per namespace in preorder."""
    free = set(free_sockets(n)) | set(free_plugs(n))
    socket_prefix = _canonical_prefix("s", free)
    plug_prefix = _canonical_prefix("p", free)
    counters = {ConnectorKind.SOCKET: itertools.count(), ConnectorKind.PLUG: itertools.count()}

    def name(kind: ConnectorKind) -> str:
        prefix = socket_prefix if kind is ConnectorKind.SOCKET else plug_prefix
        return f"{prefix}{next(counters[kind])}"

    def walk(m: Net) -> Net:
        if isinstance(m, Capsule):
            return m
        if isinstance(m, Export):
            s, p = name(ConnectorKind.SOCKET), name(ConnectorKind.PLUG)
            body = substitute(m.body, {m.bind_socket: s}, {m.bind_plug: p})
            return Export(s, walk(body), p, m.out)
        p = name(ConnectorKind.PLUG)
        left = walk(substitute(m.left, {}, {m.bind_plug: p}))
        s = name(ConnectorKind.SOCKET)
        right = walk(substitute(m.right, {m.bind_socket: s}, {}))
        if isinstance(m, Import):
            return Import(left, p, m.mid, s, right)
        return Cut(left, p, m.activation, s, right)

    return walk(n)


def alpha_eq(a: Net, b: Net) -> bool:
    """True iff the nets differ only in the names of bound connectors."""
    return a == b or canonical(a) == canonical(b)


########################
# Printing             #
########################

def _operand(n: Net) -> str:
    text = show_net(n)
    return text if isinstance(n, Capsule) else f"({text})"


def show_net(n: Net) -> str:
    """Render a net in the ASCII grammar."""
    if isinstance(n, Capsule):
        return f"<{n.socket}.{n.plug}>"
    if isinstance(n, Export):
        return f"{n.bind_socket}^ {show_net(n.body)} {n.bind_plug}^ . {n.out}"
    if isinstance(n, Import):
        return f"{_operand(n.left)} {n.bind_plug}^ [{n.mid}] {n.bind_socket}^ {_operand(n.right)}"
    return f"{_operand(n.left)} {n.bind_plug}^ {n.activation.value} {n.bind_socket}^ {_operand(n.right)}"
