########################
# Types and Contexts    #
########################

"""
Intersection and union types for the calculus.

Types are immutable frozen dataclasses. The preorder ``leq`` is decided with
Whitman's procedure for free lattices, where type variables and arrows act as
generators and arrows are compared component-wise modulo ``equiv`` (there is
no variance on arrows). ``normalize`` computes a canonical representative of
each equivalence class so that ``equiv(a, b)`` iff ``normalize(a) == normalize(b)``.
"""

from dataclasses import dataclass
from functools import lru_cache
import re
from typing import Dict, Iterable, List, Mapping, Set, Tuple, Union as TypingUnion

from app.exceptions import IncompatibleContextError, ParseError


@dataclass(frozen=True)
class Var:
    """A type variable."""
    name: str

    def __str__(self) -> str:
        return show_type(self)


@dataclass(frozen=True)
class Top:
    """The empty intersection, maximal under leq."""

    def __str__(self) -> str:
        return "TOP"


@dataclass(frozen=True)
class Bot:
    """The empty union, minimal under leq."""

    def __str__(self) -> str:
        return "BOT"


@dataclass(frozen=True)
class Arrow:
    left: "IUType"
    right: "IUType"

    def __str__(self) -> str:
        return show_type(self)


@dataclass(frozen=True)
class Inter:
    left: "IUType"
    right: "IUType"

    def __str__(self) -> str:
        return show_type(self)


@dataclass(frozen=True)
class Union:
    left: "IUType"
    right: "IUType"

    def __str__(self) -> str:
        return show_type(self)


IUType = TypingUnion[Var, Top, Bot, Arrow, Inter, Union]
SocketContext = Dict[str, IUType]
PlugContext = Dict[str, IUType]

TOP = Top()
BOT = Bot()


########################
# Shape helpers        #
########################

def is_simple(t: IUType) -> bool:
    """Return True if the type is built from variables and arrows only."""
    if isinstance(t, Var):
        return True
    if isinstance(t, Arrow):
        return is_simple(t.left) and is_simple(t.right)
    return False


def is_proper(t: IUType) -> bool:
    """Return True for a variable or an arrow at the root."""
    return isinstance(t, (Var, Arrow))


def meetands(t: IUType) -> List[IUType]:
    """Flatten an intersection spine. TOP has no meetands."""
    if isinstance(t, Inter):
        return meetands(t.left) + meetands(t.right)
    if isinstance(t, Top):
        return []
    return [t]


def joinands(t: IUType) -> List[IUType]:
    """Flatten a union spine. BOT has no joinands."""
    if isinstance(t, Union):
        return joinands(t.left) + joinands(t.right)
    if isinstance(t, Bot):
        return []
    return [t]


def mk_inter(parts: Iterable[IUType]) -> IUType:
    """Build a right-nested intersection; the empty intersection is TOP."""
    items = list(parts)
    if not items:
        return TOP
    result = items[-1]
    for item in reversed(items[:-1]):
        result = Inter(item, result)
    return result


def mk_union(parts: Iterable[IUType]) -> IUType:
    """Build a right-nested union; the empty union is BOT."""
    items = list(parts)
    if not items:
        return BOT
    result = items[-1]
    for item in reversed(items[:-1]):
        result = Union(item, result)
    return result


def is_intersection(t: IUType) -> bool:
    """True when the canonical form is an intersection or TOP."""
    n = normalize(t)
    return isinstance(n, (Inter, Top))


def is_union(t: IUType) -> bool:
    """True when the canonical form is a union or BOT."""
    n = normalize(t)
    return isinstance(n, (Union, Bot))


def size(t: IUType) -> int:
    """Number of constructors in the type."""
    if isinstance(t, (Arrow, Inter, Union)):
        return 1 + size(t.left) + size(t.right)
    return 1


def depth(t: IUType) -> int:
    if isinstance(t, (Arrow, Inter, Union)):
        return 1 + max(depth(t.left), depth(t.right))
    return 0


def subformulas(t: IUType) -> Set[IUType]:
    """All subterms of the type, including the type itself."""
    found = {t}
    if isinstance(t, (Arrow, Inter, Union)):
        found |= subformulas(t.left)
        found |= subformulas(t.right)
    return found


def type_vars(t: IUType) -> Set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, (Arrow, Inter, Union)):
        return type_vars(t.left) | type_vars(t.right)
    return set()


########################
# Preorder             #
########################

def _generators_equal(a: IUType, b: IUType) -> bool:
    if isinstance(a, Var) and isinstance(b, Var):
        return a.name == b.name
    if isinstance(a, Arrow) and isinstance(b, Arrow):
        return equiv(a.left, b.left) and equiv(a.right, b.right)
    return False


@lru_cache(maxsize=200_000)
def leq(a: IUType, b: IUType) -> bool:
    """
    Decide a <= b.

    Unions on the left and intersections on the right are split first; then
    Whitman's condition decides a meet (or generator) against a join (or
    generator).

    Args:
        a (IUType): Candidate lower type.
        b (IUType): Candidate upper type.

    Returns:
        bool: True iff a <= b in the preorder.
    """
    if isinstance(b, Top) or isinstance(a, Bot):
        return True
    if isinstance(a, Union):
        return leq(a.left, b) and leq(a.right, b)
    if isinstance(b, Inter):
        return leq(a, b.left) and leq(a, b.right)
    # a is a generator, an intersection or TOP; b is a generator, a union or BOT
    if is_proper(a) and is_proper(b):
        return _generators_equal(a, b)
    if any(leq(part, b) for part in meetands(a) if part != a):
        return True
    if any(leq(a, part) for part in joinands(b) if part != b):
        return True
    return False


def equiv(a: IUType, b: IUType) -> bool:
    """Return True iff a <= b and b <= a."""
    return a == b or (leq(a, b) and leq(b, a))


########################
# Canonical forms      #
########################

def _sort_key(t: IUType) -> str:
    return show_type(t)


def _reduce_meet(parts: List[IUType]) -> IUType:
    items: List[IUType] = []
    for part in parts:
        items.extend(meetands(part))
    if any(isinstance(item, Bot) for item in items):
        return BOT
    changed = True
    while changed:
        changed = False
        whole = mk_inter(items)
        for index, item in enumerate(items):
            others = items[:index] + items[index + 1:]
            if others and leq(mk_inter(others), item):
                items = others
                changed = True
                break
            if isinstance(item, Union):
                better = next((j for j in joinands(item) if leq(whole, j)), None)
                if better is not None:
                    items = others + meetands(better)
                    changed = True
                    break
    items = sorted(set(items), key=_sort_key)
    return mk_inter(items)


def _reduce_join(parts: List[IUType]) -> IUType:
    items: List[IUType] = []
    for part in parts:
        items.extend(joinands(part))
    if any(isinstance(item, Top) for item in items):
        return TOP
    changed = True
    while changed:
        changed = False
        whole = mk_union(items)
        for index, item in enumerate(items):
            others = items[:index] + items[index + 1:]
            if others and leq(item, mk_union(others)):
                items = others
                changed = True
                break
            if isinstance(item, Inter):
                better = next((m for m in meetands(item) if leq(m, whole)), None)
                if better is not None:
                    items = others + joinands(better)
                    changed = True
                    break
    items = sorted(set(items), key=_sort_key)
    return mk_union(items)


@lru_cache(maxsize=100_000)
def normalize(t: IUType) -> IUType:
    """
    Return the canonical representative of the type's equivalence class.

    Spines are flattened, units removed, redundant components absorbed and
    Whitman's replacement applied until nothing changes; components are
    ordered by their printed form.
    """
    if isinstance(t, (Var, Top, Bot)):
        return t
    if isinstance(t, Arrow):
        return Arrow(normalize(t.left), normalize(t.right))
    if isinstance(t, Inter):
        return _reduce_meet([normalize(t.left), normalize(t.right)])
    return _reduce_join([normalize(t.left), normalize(t.right)])


def arrows_of(t: IUType) -> List[Arrow]:
    """Arrow generators occurring at the ∩/∪ surface of a type."""
    found: List[Arrow] = []

    def walk(u: IUType) -> None:
        if isinstance(u, Arrow):
            if u not in found:
                found.append(u)
        elif isinstance(u, (Inter, Union)):
            walk(u.left)
            walk(u.right)

    walk(normalize(t))
    return found


########################
# Printing and parsing #
########################

def show_type(t: IUType) -> str:
    """Render a type in the ASCII syntax (`&`, `|`, `->`, TOP, BOT)."""
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Top):
        return "TOP"
    if isinstance(t, Bot):
        return "BOT"
    if isinstance(t, Arrow):
        left = show_type(t.left)
        if isinstance(t.left, Arrow):
            left = f"({left})"
        return f"{left} -> {show_type(t.right)}"
    if isinstance(t, Inter):
        rendered = []
        for part in meetands(t):
            text = show_type(part)
            rendered.append(f"({text})" if isinstance(part, (Arrow, Union)) else text)
        return " & ".join(rendered)
    rendered = []
    for part in joinands(t):
        text = show_type(part)
        rendered.append(f"({text})" if isinstance(part, (Arrow, Inter)) else text)
    return " | ".join(rendered)


_TOKEN = re.compile(r"\s*(->|[&|()]|[A-Za-z][A-Za-z0-9_]*)")


def _tokenize(text: str) -> List[Tuple[str, int]]:
    tokens = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN.match(text, position)
        if not match:
            raise ParseError(f"unexpected character {text[position:].lstrip()[:1]!r}", position)
        tokens.append((match.group(1), match.start(1)))
        position = match.end()
    return tokens


class _TypeParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self) -> str:
        return self.tokens[self.index][0] if self.index < len(self.tokens) else ""

    def position(self) -> int:
        return self.tokens[self.index][1] if self.index < len(self.tokens) else len(self.text)

    def take(self, expected: str = "") -> str:
        token = self.peek()
        if not token or (expected and token != expected):
            raise ParseError(f"expected {expected or 'a type'}", self.position())
        self.index += 1
        return token

    def parse_type(self) -> IUType:
        left = self.parse_connective()
        if self.peek() == "->":
            self.take("->")
            return Arrow(left, self.parse_type())
        return left

    def parse_connective(self) -> IUType:
        result = self.parse_prim()
        while self.peek() in ("&", "|"):
            op = self.peek()
            parts = [result]
            while self.peek() == op:
                self.take(op)
                parts.append(self.parse_prim())
            result = mk_inter(parts) if op == "&" else mk_union(parts)
        return result

    def parse_prim(self) -> IUType:
        token = self.peek()
        if token == "(":
            self.take("(")
            inner = self.parse_type()
            self.take(")")
            return inner
        if token in ("", ")", "&", "|", "->"):
            raise ParseError("expected a type", self.position())
        self.take()
        if token == "TOP":
            return TOP
        if token == "BOT":
            return BOT
        return Var(token)


def parse_type(text: str) -> IUType:
    """
    Parse a type written in the ASCII syntax.

    `&` and `|` have equal precedence and group to the left, so
    ``A | B & C`` reads as ``(A | B) & C``. Both bind tighter than `->`,
    which groups to the right.

    Raises:
        ParseError: On malformed input, with the offending position.
    """
    parser = _TypeParser(text)
    result = parser.parse_type()
    if parser.peek():
        raise ParseError(f"unexpected token {parser.peek()!r}", parser.position())
    return result


########################
# Contexts             #
########################

def ctx_merge_inter(first: Mapping[str, IUType], second: Mapping[str, IUType]) -> SocketContext:
    """Pointwise intersection of socket contexts, normalized."""
    merged: SocketContext = {}
    for subject in sorted(set(first) | set(second)):
        if subject in first and subject in second:
            merged[subject] = normalize(Inter(first[subject], second[subject]))
        else:
            merged[subject] = normalize(first.get(subject, second.get(subject)))
    return merged


def ctx_merge_union(first: Mapping[str, IUType], second: Mapping[str, IUType]) -> PlugContext:
    """Pointwise union of plug contexts, normalized."""
    merged: PlugContext = {}
    for subject in sorted(set(first) | set(second)):
        if subject in first and subject in second:
            merged[subject] = normalize(Union(first[subject], second[subject]))
        else:
            merged[subject] = normalize(first.get(subject, second.get(subject)))
    return merged


def ctx_compatible_union(first: Mapping[str, IUType], second: Mapping[str, IUType]) -> Dict[str, IUType]:
    """
    Set union of two contexts that agree on shared subjects.

    Raises:
        IncompatibleContextError: If a shared subject has two inequivalent types.
    """
    merged = dict(first)
    for subject, t in second.items():
        if subject in merged and not equiv(merged[subject], t):
            raise IncompatibleContextError(subject, show_type(merged[subject]), show_type(t))
        merged.setdefault(subject, t)
    return merged


def ctx_equiv(first: Mapping[str, IUType], second: Mapping[str, IUType]) -> bool:
    """Same subjects with equivalent types."""
    if set(first) != set(second):
        return False
    return all(equiv(first[s], second[s]) for s in first)


def ctx_key(ctx: Mapping[str, IUType]) -> Tuple[Tuple[str, IUType], ...]:
    """Hashable canonical key of a context."""
    return tuple(sorted((s, normalize(t)) for s, t in ctx.items()))


def show_context(ctx: Mapping[str, IUType]) -> str:
    return ", ".join(f"{s}:{show_type(ctx[s])}" for s in sorted(ctx))


def show_judgement_contexts(gamma: Mapping[str, IUType], delta: Mapping[str, IUType]) -> str:
    left = show_context(gamma)
    right = show_context(delta)
    return f"{left} |- {right}".strip()


def _parse_statements(text: str, offset: int) -> Dict[str, IUType]:
    ctx: Dict[str, IUType] = {}
    if not text.strip():
        return ctx
    depth_level = 0
    start = 0
    pieces: List[Tuple[str, int]] = []
    for index, char in enumerate(text):
        if char == "(":
            depth_level += 1
        elif char == ")":
            depth_level -= 1
        elif char == "," and depth_level == 0:
            pieces.append((text[start:index], offset + start))
            start = index + 1
    pieces.append((text[start:], offset + start))
    for piece, where in pieces:
        if ":" not in piece:
            raise ParseError("expected subject:type", where)
        subject, type_text = piece.split(":", 1)
        subject = subject.strip()
        if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", subject):
            raise ParseError(f"bad subject {subject!r}", where)
        if subject in ctx:
            raise ParseError(f"duplicate subject {subject}", where)
        ctx[subject] = parse_type(type_text)
    return ctx


def parse_contexts(text: str) -> Tuple[SocketContext, PlugContext]:
    """
    Parse ``x:A, y:B |- a:C, b:D`` into a socket and a plug context.

    Raises:
        ParseError: If the turnstile is missing or a statement is malformed.
    """
    if "|-" not in text:
        raise ParseError("expected '|-'", len(text))
    left, right = text.split("|-", 1)
    return _parse_statements(left, 0), _parse_statements(right, len(left) + 2)
