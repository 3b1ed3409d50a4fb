"""The skeleton of finite sets: maps ``m -> n`` of 1-based finite ordinals.

Includes fibres with their monotone inclusions, fibre maps, a finite
truncation of the skeleton as a :class:`FinCat`, and the skeleton's own
operadic structure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .fincat import FinCat, LtObject


@dataclass(frozen=True, order=True)
class SMap:
    """A function ``{1..m} -> {1..n}`` stored as its image list."""

    m: int
    n: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if self.m < 0 or self.n < 0:
            raise ValueError("sizes must be natural numbers")
        if len(self.values) != self.m:
            raise ValueError(f"expected {self.m} values, got {len(self.values)}")
        for v in self.values:
            if not 1 <= v <= self.n:
                raise ValueError(f"value {v} outside 1..{self.n}")

    @classmethod
    def of(cls, values, n: int) -> "SMap":
        values = tuple(values)
        return cls(len(values), n, values)

    @classmethod
    def identity(cls, n: int) -> "SMap":
        return cls(n, n, tuple(range(1, n + 1)))

    @classmethod
    def terminal(cls, m: int) -> "SMap":
        """The unique map ``m -> 1``."""
        return cls(m, 1, (1,) * m)

    def __call__(self, j: int) -> int:
        return self.values[j - 1]

    def after(self, other: "SMap") -> "SMap":
        """``self ∘ other``."""
        if other.n != self.m:
            raise ValueError(f"cannot compose {self} after {other}")
        return SMap(other.m, self.n, tuple(self.values[v - 1] for v in other.values))

    def is_identity(self) -> bool:
        return self.m == self.n and self.values == tuple(range(1, self.n + 1))

    def is_bijection(self) -> bool:
        return self.m == self.n and sorted(self.values) == list(range(1, self.n + 1))

    def inverse(self) -> "SMap":
        if not self.is_bijection():
            raise ValueError(f"{self} is not invertible")
        inv = [0] * self.n
        for j, v in enumerate(self.values, 1):
            inv[v - 1] = j
        return SMap(self.n, self.m, tuple(inv))

    def __str__(self) -> str:
        return "[" + " ".join(map(str, self.values)) + "]"

    @classmethod
    def parse(cls, text: str, n: int) -> "SMap":
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"expected a bracketed image list, got {text!r}")
        return cls.of((int(t) for t in body[1:-1].split()), n)


@dataclass(frozen=True)
class FibreData:
    k: int
    eps: SMap


def fibre(phi: SMap, i: int) -> FibreData:
    """Fibre of ``phi`` at ``i`` with its monotone inclusion into the domain."""
    if not 1 <= i <= phi.n:
        raise ValueError(f"index {i} outside 1..{phi.n}")
    pre = tuple(j for j, v in enumerate(phi.values, 1) if v == i)
    return FibreData(len(pre), SMap(len(pre), phi.m, pre))


def fibre_map(psi: SMap, phi: SMap, i: int) -> SMap:
    """Fibre map of ``psi`` with respect to ``phi`` at ``i``.

    The unique map ``(phi∘psi)^{-1}(i) -> phi^{-1}(i)`` commuting with the
    inclusions into the domain and codomain of ``psi``.
    """
    if psi.n != phi.m:
        raise ValueError(f"{psi} and {phi} are not composable")
    src = fibre(phi.after(psi), i).eps.values
    tgt = fibre(phi, i).eps.values
    pos = {v: k for k, v in enumerate(tgt, 1)}
    return SMap(len(src), len(tgt), tuple(pos[psi(l)] for l in src))


def all_smaps(m: int, n: int) -> Iterator[SMap]:
    for vals in itertools.product(range(1, n + 1), repeat=m):
        yield SMap(m, n, vals)


def truncated_s(N: int) -> FinCat:
    """The full subcategory of the skeleton on ``0..N``; morphisms are tagged by SMap."""
    arrows = [(phi, m, n) for m in range(N + 1) for n in range(N + 1) for phi in all_smaps(m, n)]
    return FinCat.from_rules(range(N + 1), arrows,
                             identity=SMap.identity,
                             compose=lambda g, f: g.after(f))


def s_operadic(N: int):
    """The skeleton truncated at ``N`` with its operadic structure.

    Cardinality is the identity, the unique local terminal is ``1`` and
    fibres and fibre maps are computed by :func:`fibre` and :func:`fibre_map`.
    """
    from .moddec import OverS
    from .operadic import OperadicStructure

    if N < 1:
        raise ValueError("need N >= 1 for a terminal object")
    C = truncated_s(N)
    lt = LtObject.choose(C, [C.obj(1)])
    over = OverS(C, tuple(C.objects), tuple(C.morphisms))
    fobj, fmor = {}, {}
    for f in range(C.n_morphisms):
        phi = C.morphisms[f]
        for i in range(1, phi.n + 1):
            fobj[(f, i)] = C.obj(fibre(phi, i).k)
            for g in C.in_arrows[C.dom[f]]:
                fmor[(g, f, i)] = C.mor(fibre_map(C.morphisms[g], phi, i))
    return OperadicStructure(over, lt, fobj, fmor)
