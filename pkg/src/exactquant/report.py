"""JSON reports: {"command", "inputs", "checks", "seed", "elapsed_ms", "results"}."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from .checks import Check


def render_value(v: Any) -> Any:
    """JSON-safe canonical form: elements and operators via render(), Fractions as strings."""
    if v is None or isinstance(v, (bool, int, str)):
        return v
    if isinstance(v, float):
        raise TypeError("floats are not allowed in reports")
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {str(k): render_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [render_value(x) for x in v]
    if hasattr(v, "render"):
        return v.render()
    return str(v)


@dataclass
class Report:
    command: str
    inputs: Dict[str, Any]
    seed: Optional[int] = None
    checks: List[Check] = field(default_factory=list)
    results: Dict[str, Any] = field(default_factory=dict)
    elapsed_ms: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def extend(self, checks: Sequence[Check], prefix: str = ""):
        for c in checks:
            self.checks.append(Check(prefix + c.name, c.residual) if prefix else c)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "inputs": render_value(self.inputs),
            "checks": [{"name": c.name, "status": "pass" if c.passed else "fail",
                        "residual": c.residual_text()} for c in self.checks],
            "seed": self.seed,
            "elapsed_ms": self.elapsed_ms,
            "results": render_value(self.results),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"
