########################
# Redex Choosers        #
########################

from abc import ABC, abstractmethod
import random
from typing import Dict, List, Optional, Type

from app.exceptions import ValidationError
from app.rewrite import Redex


class RedexChooser(ABC):
    """
    Strategy deciding which redex ``reduce`` fires next.

    Implementations receive the redexes in leftmost-outermost order.
    """

    @abstractmethod
    def choose(self, redexes: List[Redex]) -> Redex:
        """Pick one redex from a non-empty list."""
        pass  # pragma: no cover

    def __str__(self) -> str:
        return self.__class__.__name__


class DeterministicFirst(RedexChooser):
    """Lowest rule ordinal first, leftmost-outermost among equals."""

    def choose(self, redexes: List[Redex]) -> Redex:
        return min(redexes, key=lambda r: r.rule.value)


class RandomChoice(RedexChooser):
    """Uniform choice driven by a seeded generator."""

    def __init__(self, seed: int = 0):
        self.seed = seed
        self._rng = random.Random(seed)

    def choose(self, redexes: List[Redex]) -> Redex:
        return self._rng.choice(redexes)


class ChooserFactory:
    """Creates choosers by name ('first' or 'random')."""

    _choosers: Dict[str, Type[RedexChooser]] = {
        'first': DeterministicFirst,
        'random': RandomChoice,
    }

    @classmethod
    def create(cls, name: str, seed: Optional[int] = None) -> RedexChooser:
        """
        Build a chooser.

        Raises:
            ValidationError: If the name is unknown.
        """
        chooser_class = cls._choosers.get(name.lower())
        if not chooser_class:
            raise ValidationError(f"Unknown chooser: {name}")
        if chooser_class is RandomChoice:
            return RandomChoice(seed or 0)
        return chooser_class()

    @classmethod
    def names(cls) -> List[str]:
        return sorted(cls._choosers)
