########################
# Derivation Model      #
########################

"""
Judgements and rule-labelled derivation trees.

Contexts are plain dicts from connector names to types. Every node stores
its full conclusion; ``rule_data`` records only what cannot be recomputed
from the premises (the cut type, the subject of a split or elimination and
the index of an elimination).
"""

from dataclasses import dataclass, field, replace
from enum import Enum
import json
from typing import Any, Dict, Iterator, List, Mapping, Optional, Tuple

from app.exceptions import ParseError
from app.iu_types import IUType, ctx_key, parse_type, show_context, show_type
from app.net_parser import parse_net
from app.syntax import Net, show_net


class System(Enum):
    SIMPLE = "simple"
    IU = "iu"
    CBN = "cbn"
    CBV = "cbv"


AX = "Ax"
IMP_R = "impR"
IMP_L = "impL"
CUT = "cut"
CUT_L = "cutL"
CUT_R = "cutR"
INTER_R = "interR"
UNION_L = "unionL"
INTER_E = "interE"
UNION_E = "unionE"
WEAK = "W"

CUT_RULES = (CUT, CUT_L, CUT_R)
STRUCTURAL_RULES = (INTER_R, UNION_L, INTER_E, UNION_E, WEAK)
ALL_RULES = (AX, IMP_R, IMP_L) + CUT_RULES + STRUCTURAL_RULES


@dataclass
class Judgement:
    """P : Γ ⊢ Δ."""
    net: Net
    gamma: Dict[str, IUType] = field(default_factory=dict)
    delta: Dict[str, IUType] = field(default_factory=dict)

    def key(self) -> Tuple[Net, Tuple, Tuple]:
        return self.net, ctx_key(self.gamma), ctx_key(self.delta)

    def __str__(self) -> str:
        return f"{show_net(self.net)} : {show_context(self.gamma)} |- {show_context(self.delta)}"


@dataclass
class Derivation:
    """A rule-labelled tree of judgements."""
    system: System
    rule: str
    conclusion: Judgement
    premises: Tuple["Derivation", ...] = ()
    rule_data: Dict[str, Any] = field(default_factory=dict)

    @property
    def net(self) -> Net:
        return self.conclusion.net

    @property
    def gamma(self) -> Dict[str, IUType]:
        return self.conclusion.gamma

    @property
    def delta(self) -> Dict[str, IUType]:
        return self.conclusion.delta

    @property
    def cut_type(self) -> Optional[IUType]:
        return self.rule_data.get('cut_type')

    @property
    def subject(self) -> Optional[str]:
        return self.rule_data.get('subject')

    def nodes(self, path: Tuple[int, ...] = ()) -> Iterator[Tuple[Tuple[int, ...], "Derivation"]]:
        yield path, self
        for index, premise in enumerate(self.premises):
            yield from premise.nodes(path + (index,))

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)

    def depth(self) -> int:
        return 1 + max((p.depth() for p in self.premises), default=0)

    def rules_used(self) -> List[str]:
        return [node.rule for _, node in self.nodes()]

    def with_system(self, system: System) -> "Derivation":
        """The same tree relabelled for another system."""
        return replace(self, system=system,
                       premises=tuple(p.with_system(system) for p in self.premises))

    def at(self, path: Tuple[int, ...]) -> "Derivation":
        node = self
        for index in path:
            node = node.premises[index]
        return node

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {}
        if 'cut_type' in self.rule_data:
            data['cut_type'] = show_type(self.rule_data['cut_type'])
        if 'index' in self.rule_data:
            data['index'] = self.rule_data['index']
        if 'subject' in self.rule_data:
            data['subject'] = self.rule_data['subject']
        return {
            'system': self.system.value,
            'rule': self.rule,
            'conclusion': {
                'net': show_net(self.net),
                'gamma': {s: show_type(t) for s, t in sorted(self.gamma.items())},
                'delta': {s: show_type(t) for s, t in sorted(self.delta.items())},
            },
            'rule_data': data,
            'premises': [p.to_dict() for p in self.premises],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=True)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Derivation":
        """
        Rebuild a derivation from its JSON form.

        Raises:
            ParseError: If a field is missing or malformed.
        """
        try:
            system = System(data['system'])
            conclusion = data['conclusion']
            judgement = Judgement(
                parse_net(conclusion['net']),
                {s: parse_type(t) for s, t in conclusion.get('gamma', {}).items()},
                {s: parse_type(t) for s, t in conclusion.get('delta', {}).items()},
            )
            raw = data.get('rule_data', {}) or {}
            rule_data: Dict[str, Any] = {}
            if 'cut_type' in raw:
                rule_data['cut_type'] = parse_type(raw['cut_type'])
            if 'index' in raw:
                rule_data['index'] = int(raw['index'])
            if 'subject' in raw:
                rule_data['subject'] = str(raw['subject'])
            premises = tuple(cls.from_dict(p) for p in data.get('premises', []))
            return cls(system, str(data['rule']), judgement, premises, rule_data)
        except ParseError:
            raise
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"malformed derivation: {e}", 0) from e

    @classmethod
    def from_json(cls, text: str) -> "Derivation":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg}", e.pos) from e
        return cls.from_dict(data)

    def pretty(self, indent: int = 0) -> str:
        """Indented rendering, conclusion first."""
        extra = ""
        if self.cut_type is not None:
            extra = f"  [{show_type(self.cut_type)}]"
        elif self.subject is not None:
            extra = f"  [{self.subject}{'#' + str(self.rule_data['index']) if 'index' in self.rule_data else ''}]"
        line = " " * indent + f"({self.rule}) {self.conclusion}{extra}"
        return "\n".join([line] + [p.pretty(indent + 2) for p in self.premises])


def node(system: System, rule: str, net: Net, gamma: Mapping[str, IUType], delta: Mapping[str, IUType],
         premises: Tuple[Derivation, ...] = (), **rule_data: Any) -> Derivation:
    """Shorthand constructor copying the contexts."""
    data = {k: v for k, v in rule_data.items() if v is not None}
    return Derivation(system, rule, Judgement(net, dict(gamma), dict(delta)), tuple(premises), data)
