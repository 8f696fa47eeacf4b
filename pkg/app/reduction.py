########################
# Multi-step Reduction  #
########################

from collections import deque
from dataclasses import dataclass, field
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from app.history import ReductionObserver, notify_all
from app.rewrite import Redex, Regime, find_redexes, format_path, step
from app.strategies import DeterministicFirst, RedexChooser
from app.syntax import NameSupply, Net, canonical, show_net
from app.trace import Trace, TraceStep


def reduce(n: Net, regime: Regime = Regime.FULL, fuel: int = 10_000,
           chooser: Optional[RedexChooser] = None,
           supply: Optional[NameSupply] = None,
           observers: Sequence[ReductionObserver] = (),
           include_admissible: bool = False) -> Trace:
    """
    Fire redexes until none remain or fuel runs out.

    Args:
        n (Net): Start net.
        regime (Regime): Which redexes are eligible.
        fuel (int): Maximum number of steps.
        chooser (Optional[RedexChooser]): Defaults to leftmost-outermost.
        supply (Optional[NameSupply]): Session counter for fresh names.
        observers: Notified after every step.

    Returns:
        Trace: The steps taken; ``exhausted`` flags fuel exhaustion, or a net
            too deep to step further.
    """
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    chooser = chooser or DeterministicFirst()
    supply = supply or NameSupply()
    supply.reserve_net(n)
    trace = Trace(start=n, regime=regime)
    current = n
    try:
        for index in range(1, fuel + 1):
            redexes = find_redexes(current, regime, include_admissible)
            if not redexes:
                return trace
            redex = chooser.choose(redexes)
            current = step(current, redex, supply)
            entry = TraceStep(index, redex, current)
            trace.steps.append(entry)
            notify_all(list(observers), entry)
        trace.exhausted = bool(find_redexes(current, regime, include_admissible))
    except RecursionError:
        # the net outgrew the interpreter stack; end the trace where it stands
        logging.warning(f"Net too deep after {len(trace.steps)} steps reducing {show_net(n)}")
        trace.exhausted = True
        return trace
    if trace.exhausted:
        logging.warning(f"Fuel {fuel} exhausted reducing {show_net(n)}")
    return trace


@dataclass
class ReductionGraph:
    """
    Nets reachable under a regime, identified up to alpha-equivalence.

    ``edges`` holds (source index, target index, redex).
    """

    nodes: List[Net] = field(default_factory=list)
    edges: List[Tuple[int, int, Redex]] = field(default_factory=list)
    truncated: bool = False
    _index: Dict[Net, int] = field(default_factory=dict, repr=False)
    _frontier: set = field(default_factory=set, repr=False)

    def index_of(self, n: Net) -> Optional[int]:
        return self._index.get(canonical(n))

    def contains(self, n: Net) -> bool:
        return self.index_of(n) is not None

    def add(self, n: Net) -> Tuple[int, bool]:
        key = canonical(n)
        if key in self._index:
            return self._index[key], False
        self._index[key] = len(self.nodes)
        self.nodes.append(n)
        return len(self.nodes) - 1, True

    def sinks(self) -> List[Net]:
        """Explored nets without outgoing edges."""
        sources = {src for src, _, _ in self.edges}
        return [n for i, n in enumerate(self.nodes) if i not in sources and i not in self._frontier]

    def to_text(self) -> str:
        lines = [f"NODE {i}: {show_net(n)}" for i, n in enumerate(self.nodes)]
        lines += [f"EDGE {s} -> {t}: {r.rule.name} @ {r.path_text()}" for s, t, r in self.edges]
        lines += [f"SINK: {show_net(n)}" for n in self.sinks()]
        if self.truncated:
            lines.append("TRUNCATED")
        return "\n".join(lines)

    def to_dataframe(self) -> pd.DataFrame:
        """Edge list with printed source and target nets."""
        rows = [{'source': s, 'target': t, 'rule': r.rule.name, 'path': format_path(r.position),
                 'source_net': show_net(self.nodes[s]), 'target_net': show_net(self.nodes[t])}
                for s, t, r in self.edges]
        return pd.DataFrame(rows, columns=['source', 'target', 'rule', 'path', 'source_net', 'target_net'])


def reduction_graph(n: Net, regime: Regime = Regime.FULL, node_budget: int = 5_000,
                    supply: Optional[NameSupply] = None,
                    include_admissible: bool = False) -> ReductionGraph:
    """
    Breadth-first closure of ``step`` under a regime.

    Exploration stops once ``node_budget`` nets are known; unexplored nets are
    then kept out of the sink list and ``truncated`` is set.
    """
    supply = supply or NameSupply()
    supply.reserve_net(n)
    graph = ReductionGraph()
    start, _ = graph.add(n)
    queue = deque([start])
    while queue:
        if len(graph.nodes) > node_budget:
            graph.truncated = True
            graph._frontier = set(queue)
            break
        index = queue.popleft()
        current = graph.nodes[index]
        try:
            for redex in find_redexes(current, regime, include_admissible):
                target, new = graph.add(step(current, redex, supply))
                graph.edges.append((index, target, redex))
                if new:
                    queue.append(target)
        except RecursionError:
            logging.warning(f"Net too deep to explore after {len(graph.nodes)} nets")
            graph.truncated = True
            graph._frontier = set(queue) | {index}
            break
    return graph
