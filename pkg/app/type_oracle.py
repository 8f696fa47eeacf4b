########################
# Closure Oracle        #
########################

"""
Brute-force closure of the type preorder over a finite set of types.

The relation is grown as a boolean matrix from the axioms (reflexivity,
meet projections, join injections, TOP and BOT) by the closure rules (meet
and join introduction, arrow congruence, transitivity) until it stops
changing. The set is closed under subformulas first, which is enough since
the preorder has the subformula property.
"""

from typing import Dict, Iterable, List, Tuple

import numpy as np

from app.iu_types import BOT, TOP, Arrow, Inter, IUType, Union, leq, show_type, size, subformulas


class ClosureOracle:
    """
    The least relation closed under the preorder rules over ``types`` and
    their subformulas.
    """

    def __init__(self, types: Iterable[IUType]):
        found = {TOP, BOT}
        for t in types:
            found |= subformulas(t)
        self.universe: List[IUType] = sorted(found, key=lambda t: (size(t), show_type(t)))
        self.index: Dict[IUType, int] = {t: i for i, t in enumerate(self.universe)}
        self.rounds = 0
        self.matrix = self._close()

    def _triples(self, kind: type) -> np.ndarray:
        rows = [(self.index[t], self.index[t.left], self.index[t.right])
                for t in self.universe if isinstance(t, kind)]
        return np.array(rows, dtype=np.intp).reshape(-1, 3)

    def _close(self) -> np.ndarray:
        n = len(self.universe)
        rel = np.eye(n, dtype=bool)
        rel[:, self.index[TOP]] = True
        rel[self.index[BOT], :] = True
        meets, joins, arrows = self._triples(Inter), self._triples(Union), self._triples(Arrow)
        rel[meets[:, 0], meets[:, 1]] = True
        rel[meets[:, 0], meets[:, 2]] = True
        rel[joins[:, 1], joins[:, 0]] = True
        rel[joins[:, 2], joins[:, 0]] = True
        while True:
            before = rel.copy()
            self.rounds += 1
            for k, a, b in meets:
                rel[:, k] |= rel[:, a] & rel[:, b]
            for k, a, b in joins:
                rel[k, :] |= rel[a, :] & rel[b, :]
            if len(arrows):
                eq = rel & rel.T
                left, right = arrows[:, 1], arrows[:, 2]
                congruent = eq[np.ix_(left, left)] & eq[np.ix_(right, right)]
                rel[np.ix_(arrows[:, 0], arrows[:, 0])] |= congruent
            weights = rel.astype(np.float32)
            rel |= (weights @ weights) > 0
            if np.array_equal(rel, before):
                return rel

    def leq(self, a: IUType, b: IUType) -> bool:
        return bool(self.matrix[self.index[a], self.index[b]])

    def disagreements(self, limit: int = 10) -> List[Tuple[IUType, IUType, bool]]:
        """Pairs where ``leq`` differs from the closure, with the closure's answer."""
        found = []
        for i, a in enumerate(self.universe):
            for j, b in enumerate(self.universe):
                expected = bool(self.matrix[i, j])
                if leq(a, b) != expected:
                    found.append((a, b, expected))
                    if len(found) >= limit:
                        return found
        return found
