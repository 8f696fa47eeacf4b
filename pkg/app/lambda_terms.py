########################
# Lambda Terms          #
########################

"""
Lambda terms, their text syntax and full beta reduction.

Text grammar: ``\\x.M``, ``\\x y.M`` (several binders), left-associative
application by juxtaposition, parentheses, and the postfix explicit
substitution ``M<x:=N>``.
"""

from dataclasses import dataclass
import itertools
import re
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple, Union

from app.exceptions import ParseError


@dataclass(frozen=True)
class LVar:
    name: str

    def __str__(self) -> str:
        return show_lambda(self)


@dataclass(frozen=True)
class Abs:
    var: str
    body: "LambdaTerm"

    def __str__(self) -> str:
        return show_lambda(self)


@dataclass(frozen=True)
class App:
    fun: "LambdaTerm"
    arg: "LambdaTerm"

    def __str__(self) -> str:
        return show_lambda(self)


@dataclass(frozen=True)
class ExplicitSub:
    """M<x:=N>: x is bound in ``body``."""
    body: "LambdaTerm"
    var: str
    arg: "LambdaTerm"

    def __str__(self) -> str:
        return show_lambda(self)


LambdaTerm = Union[LVar, Abs, App, ExplicitSub]


########################
# Names                #
########################

def free_vars(m: LambdaTerm) -> FrozenSet[str]:
    if isinstance(m, LVar):
        return frozenset({m.name})
    if isinstance(m, Abs):
        return free_vars(m.body) - {m.var}
    if isinstance(m, App):
        return free_vars(m.fun) | free_vars(m.arg)
    return (free_vars(m.body) - {m.var}) | free_vars(m.arg)


def all_vars(m: LambdaTerm) -> Set[str]:
    if isinstance(m, LVar):
        return {m.name}
    if isinstance(m, Abs):
        return {m.var} | all_vars(m.body)
    if isinstance(m, App):
        return all_vars(m.fun) | all_vars(m.arg)
    return {m.var} | all_vars(m.body) | all_vars(m.arg)


def _binders(m: LambdaTerm) -> List[str]:
    if isinstance(m, LVar):
        return []
    if isinstance(m, Abs):
        return [m.var] + _binders(m.body)
    if isinstance(m, App):
        return _binders(m.fun) + _binders(m.arg)
    return [m.var] + _binders(m.body) + _binders(m.arg)


def is_barendregt_term(m: LambdaTerm) -> bool:
    bound = _binders(m)
    return len(bound) == len(set(bound)) and not set(bound) & free_vars(m)


class _Fresh:
    def __init__(self, taken: Iterable[str]):
        self.taken = set(taken)
        self.counter = itertools.count()

    def __call__(self, base: str) -> str:
        stem = base.rstrip("0123456789'") or "x"
        while True:
            name = f"{stem}{next(self.counter)}"
            if name not in self.taken:
                self.taken.add(name)
                return name


def rename_bound(m: LambdaTerm, taken: Iterable[str] = ()) -> LambdaTerm:
    """
    Barendregt form: a binder keeps its name unless that name was already
    seen, is free, or is in ``taken``.
    """
    seen = set(taken) | free_vars(m)
    fresh = _Fresh(all_vars(m) | seen)

    def pick(name: str) -> str:
        if name in seen:
            return fresh(name)
        seen.add(name)
        return name

    def walk(t: LambdaTerm, env: Dict[str, str]) -> LambdaTerm:
        if isinstance(t, LVar):
            return LVar(env.get(t.name, t.name))
        if isinstance(t, Abs):
            new = pick(t.var)
            return Abs(new, walk(t.body, {**env, t.var: new}))
        if isinstance(t, App):
            return App(walk(t.fun, env), walk(t.arg, env))
        new = pick(t.var)
        return ExplicitSub(walk(t.body, {**env, t.var: new}), new, walk(t.arg, env))

    return walk(m, {})


def substitute(m: LambdaTerm, x: str, n: LambdaTerm) -> LambdaTerm:
    """Capture-avoiding M[N/x]."""
    avoid = free_vars(n)
    fresh = _Fresh(all_vars(m) | all_vars(n) | {x})

    def under(var: str, body: LambdaTerm) -> Tuple[str, Optional[LambdaTerm]]:
        if var == x:
            return var, None
        if var in avoid:
            new = fresh(var)
            return new, walk(substitute(body, var, LVar(new)))
        return var, walk(body)

    def walk(t: LambdaTerm) -> LambdaTerm:
        if isinstance(t, LVar):
            return n if t.name == x else t
        if isinstance(t, App):
            return App(walk(t.fun), walk(t.arg))
        var, body = under(t.var, t.body)
        body = t.body if body is None else body
        if isinstance(t, Abs):
            return Abs(var, body)
        return ExplicitSub(body, var, walk(t.arg))

    return walk(m)


def lambda_alpha_eq(a: LambdaTerm, b: LambdaTerm) -> bool:
    def walk(s: LambdaTerm, t: LambdaTerm, left: Dict[str, int], right: Dict[str, int], k: int) -> bool:
        if isinstance(s, LVar) and isinstance(t, LVar):
            if s.name in left or t.name in right:
                return left.get(s.name) == right.get(t.name)
            return s.name == t.name
        if isinstance(s, Abs) and isinstance(t, Abs):
            return walk(s.body, t.body, {**left, s.var: k}, {**right, t.var: k}, k + 1)
        if isinstance(s, App) and isinstance(t, App):
            return walk(s.fun, t.fun, left, right, k) and walk(s.arg, t.arg, left, right, k)
        if isinstance(s, ExplicitSub) and isinstance(t, ExplicitSub):
            return (walk(s.body, t.body, {**left, s.var: k}, {**right, t.var: k}, k + 1)
                    and walk(s.arg, t.arg, left, right, k))
        return False

    return walk(a, b, {}, {}, 0)


def term_size(m: LambdaTerm) -> int:
    if isinstance(m, LVar):
        return 1
    if isinstance(m, Abs):
        return 1 + term_size(m.body)
    if isinstance(m, App):
        return 1 + term_size(m.fun) + term_size(m.arg)
    return 1 + term_size(m.body) + term_size(m.arg)


########################
# Beta reduction       #
########################

def is_value(m: LambdaTerm) -> bool:
    return isinstance(m, (LVar, Abs))


def beta_step(m: LambdaTerm, values_only: bool = False) -> List[LambdaTerm]:
    """
    Every one-step contextual beta contraction of ``m``, outermost first.

    With ``values_only`` only redexes whose argument is a variable or an
    abstraction are contracted.
    """
    results: List[LambdaTerm] = []
    if isinstance(m, App):
        if isinstance(m.fun, Abs) and (not values_only or is_value(m.arg)):
            results.append(substitute(m.fun.body, m.fun.var, m.arg))
        results.extend(App(f, m.arg) for f in beta_step(m.fun, values_only))
        results.extend(App(m.fun, a) for a in beta_step(m.arg, values_only))
    elif isinstance(m, Abs):
        results.extend(Abs(m.var, b) for b in beta_step(m.body, values_only))
    elif isinstance(m, ExplicitSub):
        results.extend(ExplicitSub(b, m.var, m.arg) for b in beta_step(m.body, values_only))
        results.extend(ExplicitSub(m.body, m.var, a) for a in beta_step(m.arg, values_only))
    return results


def normal_form(m: LambdaTerm, fuel: int = 1_000) -> Optional[LambdaTerm]:
    """Leftmost-outermost normal form, or None when fuel runs out."""
    for _ in range(fuel):
        steps = beta_step(m)
        if not steps:
            return m
        m = steps[0]
    return None


########################
# Text                 #
########################

_TOKEN = re.compile(r"\s*(:=|[\\λ.()<>]|[A-Za-z][A-Za-z0-9_']*)")
_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_']*")


class LambdaParser:
    """Recursive-descent parser for lambda text."""

    def __init__(self, text: str):
        self.text = text
        self.tokens: List[Tuple[str, int]] = []
        position = 0
        while position < len(text):
            if not text[position:].strip():
                break
            match = _TOKEN.match(text, position)
            if not match:
                offset = position + len(text[position:]) - len(text[position:].lstrip())
                raise ParseError(f"unexpected character {text[offset]!r}", offset)
            self.tokens.append((match.group(1), match.start(1)))
            position = match.end()
        self.index = 0

    def peek(self) -> str:
        return self.tokens[self.index][0] if self.index < len(self.tokens) else ""

    def position(self) -> int:
        return self.tokens[self.index][1] if self.index < len(self.tokens) else len(self.text)

    def expect(self, token: str) -> None:
        if self.peek() != token:
            raise ParseError(f"expected {token!r}, found {self.peek() or 'end of input'!r}", self.position())
        self.index += 1

    def ident(self) -> str:
        token = self.peek()
        if not _IDENT.fullmatch(token or ""):
            raise ParseError(f"expected a variable, found {token or 'end of input'!r}", self.position())
        self.index += 1
        return token

    def parse_term(self) -> LambdaTerm:
        if self.peek() in ("\\", "λ"):
            self.index += 1
            names = [self.ident()]
            while self.peek() != ".":
                names.append(self.ident())
            self.expect(".")
            body = self.parse_term()
            for name in reversed(names):
                body = Abs(name, body)
            return body
        term = self.parse_atom()
        while self.peek() and self.peek() not in (")", ">"):
            if self.peek() in ("\\", "λ"):
                return App(term, self.parse_term())
            term = App(term, self.parse_atom())
        return term

    def parse_atom(self) -> LambdaTerm:
        if self.peek() == "(":
            self.expect("(")
            term = self.parse_term()
            self.expect(")")
        else:
            term = LVar(self.ident())
        while self.peek() == "<":
            self.expect("<")
            var = self.ident()
            self.expect(":=")
            arg = self.parse_term()
            self.expect(">")
            term = ExplicitSub(term, var, arg)
        return term


def parse_lambda(text: str) -> LambdaTerm:
    """
    Parse lambda text.

    Raises:
        ParseError: On a syntax error, with its position.
    """
    parser = LambdaParser(text)
    term = parser.parse_term()
    if parser.peek():
        raise ParseError(f"unexpected token {parser.peek()!r}", parser.position())
    return term


def show_lambda(m: LambdaTerm) -> str:
    if isinstance(m, LVar):
        return m.name
    if isinstance(m, Abs):
        names = [m.var]
        body = m.body
        while isinstance(body, Abs):
            names.append(body.var)
            body = body.body
        return f"\\{' '.join(names)}.{show_lambda(body)}"
    if isinstance(m, App):
        fun = show_lambda(m.fun)
        if isinstance(m.fun, Abs):
            fun = f"({fun})"
        arg = show_lambda(m.arg)
        if not isinstance(m.arg, (LVar, ExplicitSub)):
            arg = f"({arg})"
        return f"{fun} {arg}"
    body = show_lambda(m.body)
    if not isinstance(m.body, (LVar, ExplicitSub)):
        body = f"({body})"
    return f"{body}<{m.var}:={show_lambda(m.arg)}>"
