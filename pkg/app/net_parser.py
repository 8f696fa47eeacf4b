########################
# Net Parser            #
########################

import re
from typing import List, Optional, Tuple

from app.exceptions import NamespaceClashError, ParseError
from app.syntax import (
    Activation, Capsule, Cut, Export, Import, NameSupply, Net,
    barendregtize, plug_names, show_net, socket_names,
)

_TOKEN = re.compile(r"\s*(<\+|\+>|[<>.^\[\]()+]|[A-Za-z][A-Za-z0-9_]*)")
_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_CUT_OPS = {"+": Activation.INACTIVE, "<+": Activation.LEFT, "+>": Activation.RIGHT}


def tokenize(text: str) -> List[Tuple[str, int]]:
    """
    Split net text into tokens with their offsets.

    Raises:
        ParseError: On a character outside the grammar.
    """
    tokens = []
    position = 0
    while position < len(text):
        if not text[position:].strip():
            break
        match = _TOKEN.match(text, position)
        if not match:
            offset = position + len(text[position:]) - len(text[position:].lstrip())
            raise ParseError(f"unexpected character {text[offset]!r}", offset)
        tokens.append((match.group(1), match.start(1)))
        position = match.end()
    return tokens


class NetParser:
    """
    Recursive-descent parser for the ASCII net grammar.

    Operands of imports and cuts are capsules or parenthesized nets; the
    caret after a binder is optional on input and always printed.
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    def peek(self, ahead: int = 0) -> str:
        at = self.index + ahead
        return self.tokens[at][0] if at < len(self.tokens) else ""

    def position(self) -> int:
        return self.tokens[self.index][1] if self.index < len(self.tokens) else len(self.text)

    def expect(self, token: str) -> None:
        if self.peek() != token:
            found = self.peek() or "end of input"
            raise ParseError(f"expected {token!r}, found {found!r}", self.position())
        self.index += 1

    def ident(self) -> str:
        token = self.peek()
        if not _IDENT.fullmatch(token or ""):
            raise ParseError(f"expected a name, found {token or 'end of input'!r}", self.position())
        self.index += 1
        return token

    def binder(self) -> str:
        name = self.ident()
        if self.peek() == "^":
            self.index += 1
        return name

    def _tail_ahead(self) -> bool:
        if not _IDENT.fullmatch(self.peek() or ""):
            return False
        follow = self.peek(2) if self.peek(1) == "^" else self.peek(1)
        return follow == "[" or follow in _CUT_OPS

    def parse_net(self) -> Net:
        if _IDENT.fullmatch(self.peek() or ""):
            return self.parse_export()
        left = self.parse_operand()
        if not self._tail_ahead():
            return left
        plug = self.binder()
        if self.peek() == "[":
            self.expect("[")
            mid = self.ident()
            self.expect("]")
            socket = self.binder()
            return Import(left, plug, mid, socket, self.parse_operand())
        activation = _CUT_OPS[self.peek()]
        self.index += 1
        socket = self.binder()
        return Cut(left, plug, activation, socket, self.parse_operand())

    def parse_export(self) -> Export:
        socket = self.binder()
        body = self.parse_net()
        plug = self.binder()
        self.expect(".")
        return Export(socket, body, plug, self.ident())

    def parse_operand(self) -> Net:
        token = self.peek()
        if token == "<":
            self.expect("<")
            socket = self.ident()
            self.expect(".")
            plug = self.ident()
            self.expect(">")
            return Capsule(socket, plug)
        if token == "(":
            self.expect("(")
            inner = self.parse_net()
            self.expect(")")
            return inner
        raise ParseError(f"expected '<' or '(', found {token or 'end of input'!r}", self.position())


def parse_net(text: str, supply: Optional[NameSupply] = None) -> Net:
    """
    Parse net text and bring it into Barendregt form.

    Args:
        text (str): Net in the ASCII grammar.
        supply (Optional[NameSupply]): Session counter for refreshed binders.

    Returns:
        Net: The parsed net.

    Raises:
        ParseError: On a syntax error, with its position.
        NamespaceClashError: If a name is used both as socket and plug.
    """
    parser = NetParser(text)
    net = parser.parse_net()
    if parser.peek():
        raise ParseError(f"unexpected token {parser.peek()!r}", parser.position())
    clash = sorted(socket_names(net) & plug_names(net))
    if clash:
        raise NamespaceClashError(f"name {clash[0]} used as socket and plug", text.find(clash[0]))
    return barendregtize(net, supply)


def print_net(n: Net) -> str:
    return show_net(n)
