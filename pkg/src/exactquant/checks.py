"""Named identity checks with renderable residuals."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence


@dataclass
class Check:
    name: str
    residual: object = None  # None, True, or a zero element means pass

    @property
    def passed(self) -> bool:
        r = self.residual
        if r is None:
            return True
        if isinstance(r, bool):
            return r
        if isinstance(r, str):
            return False
        return not r

    def residual_text(self) -> Optional[str]:
        if self.passed:
            return None
        r = self.residual
        if isinstance(r, bool):
            return "false"
        return r.render() if hasattr(r, "render") else str(r)


def all_passed(checks: Sequence[Check]) -> bool:
    return all(c.passed for c in checks)
