"""Factored forms: an optional torus head followed by signed unipotent factors."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .matrices import Mat, identity
from .rings import InvolutiveRing


@dataclass(frozen=True)
class Factor:
    sign: str  # "+" upper unipotent, "-" lower unipotent
    mat: Mat
    param: object = None  # APair for SU(3); class parameter for the rank-2 groups


@dataclass
class FactoredForm:
    ring: InvolutiveRing
    n: int
    factors: list[Factor] = field(default_factory=list)
    head: Mat | None = None
    head_param: object = None

    @property
    def shape(self) -> str:
        return "".join(f.sign for f in self.factors)

    @property
    def length(self) -> int:
        return len(self.factors)

    @cached_property
    def product(self) -> Mat:
        M = self.head if self.head is not None else identity(self.ring, self.n)
        for f in self.factors:
            M = M @ f.mat
        return M

    def is_alternating(self) -> bool:
        s = self.shape
        return all(a != b for a, b in zip(s, s[1:]))


def shape_within(word: str, target: str) -> bool:
    """True when ``word`` is a subsequence of ``target``.

    Dropping identity factors from a form of shape ``target`` and merging the
    neighbours that become adjacent always yields a subsequence, so this is the
    right notion of "fits the target shape".
    """
    it = iter(target)
    return all(ch in it for ch in word)


def unitri_target(k: int, lead: str = "+") -> str:
    """``(U+ U-)^(k+1) U+`` (or its mirror when ``lead == '-'``)."""
    other = "-" if lead == "+" else "+"
    return (lead + other) * (k + 1) + lead
