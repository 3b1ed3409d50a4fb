"""Law-violation reports shared by every checker in the package."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator


@dataclass(frozen=True, order=True)
class Violation:
    law: str
    witness: tuple
    message: str = ""

    def __str__(self) -> str:
        text = f"{self.law} {self.witness!r}"
        return f"{text}: {self.message}" if self.message else text


@dataclass
class Report:
    """An ordered collection of law violations; empty means the object is valid."""

    violations: list[Violation] = field(default_factory=list)

    def add(self, law: str, witness: tuple, message: str = "") -> None:
        self.violations.append(Violation(law, tuple(witness), message))

    def extend(self, other: "Report") -> None:
        self.violations.extend(other.violations)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __len__(self) -> int:
        return len(self.violations)

    def __iter__(self) -> Iterator[Violation]:
        return iter(self.violations)

    def laws(self) -> set[str]:
        return {v.law for v in self.violations}

    def by_law(self, law: str) -> list[Violation]:
        """Violations whose law equals `law` or is a clause of it (`law.xxx`)."""
        return [v for v in self.violations
                if v.law == law or v.law.startswith(law + ".")]

    def failed(self, law: str) -> bool:
        return bool(self.by_law(law))

    def sorted(self) -> "Report":
        return Report(sorted(self.violations, key=lambda v: (v.law, repr(v.witness), v.message)))

    def lines(self) -> list[str]:
        return [str(v) for v in self.sorted()]
