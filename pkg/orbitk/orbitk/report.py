"""Run reports: what a command computed, in human and machine form."""

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import ReportWarning


def _canonical(value: Any) -> Any:
    if isinstance(value, Mapping):
        return {str(k): _canonical(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_canonical(v) for v in value]
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return str(value)


def inputs_digest(
    command: str, params: Mapping[str, Any], files: Iterable[Optional[str]] = ()
) -> str:
    """SHA-256 of the canonical JSON of the arguments and the input file contents."""
    digest = hashlib.sha256()
    payload = {"command": command, "params": _canonical(params)}
    digest.update(json.dumps(payload, sort_keys=True).encode("utf-8"))
    for path in files:
        if path:
            digest.update(Path(path).read_bytes())
    return digest.hexdigest()


@dataclass(frozen=True)
class RunReport:
    """
    The outcome of one command.

    Attributes:
        command: The command name followed by its arguments
        digest: inputs_digest of the arguments and input files
        results: JSON-ready results
        lines: Human rendering, primary result first
        warnings: Structured warnings
        exit_status: Process exit status
    """

    command: Tuple[str, ...]
    digest: str
    results: Dict[str, Any]
    lines: Tuple[str, ...] = ()
    warnings: Tuple[ReportWarning, ...] = field(default_factory=tuple)
    exit_status: int = 0

    @property
    def primary(self) -> str:
        return self.lines[0] if self.lines else ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": list(self.command),
            "inputs_digest": self.digest,
            "results": _canonical(self.results),
            "warnings": [w.to_dict() for w in self.warnings],
            "exit_status": self.exit_status,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)

    def render(self) -> str:
        """Human output: the lines, then one line per warning."""
        out: List[str] = list(self.lines)
        out.extend(f"warning [{w.code}]: {w.message}" for w in self.warnings)
        return "\n".join(out)


def unique_warnings(warnings: Sequence[ReportWarning]) -> Tuple[ReportWarning, ...]:
    """Drop repeated warnings, keeping the first occurrence."""
    seen = []
    for warning in warnings:
        if warning not in seen:
            seen.append(warning)
    return tuple(seen)
