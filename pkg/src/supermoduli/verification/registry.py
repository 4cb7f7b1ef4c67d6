"""Registry of verification checks.

Check modules register functions with ``@suite.check(...)``; importing
``supermoduli.verification.checks`` populates the registry in a fixed order.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field

from supermoduli.models.report import Anchor, Provenance
from supermoduli.susy.form import SusyForm


@dataclass(frozen=True)
class CheckContext:
    """Inputs shared by every check of a run."""

    n_r: int | None = None
    window: int | None = None
    susy: SusyForm | None = None


@dataclass
class Outcome:
    passed: bool
    computed: object
    expected: object


CheckFunction = Callable[[CheckContext], Outcome]


@dataclass(frozen=True)
class CheckSpec:
    check_id: str
    anchor: Anchor
    provenance: Provenance
    func: CheckFunction
    per_nr: bool = True
    min_nr: int = 4


@dataclass
class CheckRegistry:
    name: str
    _checks: dict[str, CheckSpec] = field(default_factory=dict)

    def check(
        self,
        check_id: str,
        statement: str,
        quote: str,
        provenance: Provenance = Provenance.PAPER,
        per_nr: bool = True,
        min_nr: int = 4,
    ) -> Callable[[CheckFunction], CheckFunction]:
        """Register a check function under ``check_id``, anchored to ``statement`` by ``quote``."""

        def decorator(func: CheckFunction) -> CheckFunction:
            if check_id in self._checks:
                raise ValueError(f"check {check_id!r} registered twice")
            anchor = Anchor(statement=statement, quote=quote)
            self._checks[check_id] = CheckSpec(check_id, anchor, provenance, func, per_nr, min_nr)
            return func

        return decorator

    def ids(self) -> list[str]:
        return list(self._checks)

    def select(self, check_ids: list[str] | None = None) -> list[CheckSpec]:
        """Specs in registration order, optionally restricted to ``check_ids``.

        Raises:
            KeyError: If an id is not registered
        """
        if not check_ids:
            return list(self._checks.values())
        unknown = [c for c in check_ids if c not in self._checks]
        if unknown:
            raise KeyError(f"unknown checks: {', '.join(unknown)}")
        wanted = set(check_ids)
        return [spec for spec in self._checks.values() if spec.check_id in wanted]


suite = CheckRegistry("supermoduli")


def get_suite() -> CheckRegistry:
    """Get the registry with every check module loaded."""
    from supermoduli.verification import checks as _checks  # noqa: F401

    return suite
