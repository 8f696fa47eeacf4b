########################
# Trace Model           #
########################

from dataclasses import dataclass, field
import datetime
import json
from typing import Any, Dict, List

import pandas as pd

from app.exceptions import ParseError
from app.net_parser import parse_net
from app.rewrite import Redex, Regime, RuleId, format_path, parse_path
from app.syntax import Net, show_net


@dataclass(frozen=True)
class TraceStep:
    """
    Value object for one fired redex and the net it produced.
    """

    index: int
    redex: Redex
    net: Net

    def to_text(self) -> str:
        return f"STEP {self.index}: {self.redex.rule.name} @ {self.redex.path_text()}  ==>  {show_net(self.net)}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            'step': self.index,
            'rule': self.redex.rule.name,
            'path': format_path(self.redex.position),
            'net': show_net(self.net),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'TraceStep':
        """
        Rebuild a step from its JSON mirror.

        Raises:
            ParseError: If the rule name is unknown or the net text is malformed.
        """
        try:
            rule = RuleId[data['rule']]
        except KeyError as e:
            raise ParseError(f"unknown rule {data.get('rule')!r}", 0) from e
        redex = Redex(parse_path(str(data['path'])), rule)
        return cls(int(data['step']), redex, parse_net(data['net']))


@dataclass
class Trace:
    """
    A reduction sequence from a start net.

    ``exhausted`` is True when reduction stopped because fuel ran out while
    redexes remained.
    """

    start: Net
    regime: Regime
    steps: List[TraceStep] = field(default_factory=list)
    exhausted: bool = False
    timestamp: datetime.datetime = field(default_factory=datetime.datetime.now)

    @property
    def final(self) -> Net:
        return self.steps[-1].net if self.steps else self.start

    def nets(self) -> List[Net]:
        return [self.start] + [s.net for s in self.steps]

    def to_text(self) -> str:
        lines = [f"START: {show_net(self.start)}"]
        lines.extend(s.to_text() for s in self.steps)
        lines.append("END: fuel exhausted" if self.exhausted else "END: normal form")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps([s.to_dict() for s in self.steps], sort_keys=True, indent=2)

    def to_dataframe(self) -> pd.DataFrame:
        """Steps as a DataFrame with columns step, rule, path, net."""
        rows = [s.to_dict() for s in self.steps]
        return pd.DataFrame(rows, columns=['step', 'rule', 'path', 'net'], dtype=str)
