"""Run configuration for one CLI invocation."""

from __future__ import annotations

import enum
from dataclasses import dataclass, fields, replace
from pathlib import Path
from types import MappingProxyType

from .errors import ConfigError
from .parallel import default_threads
from .stats import MAX_MOMENT_ORDER


class Command(str, enum.Enum):
    SPECTRUM = "spectrum"
    DEGENERACY = "degeneracy"
    JSTAR = "jstar"
    VARIANCE_SCAN = "variance-scan"
    SLOPE = "slope"
    DOS = "dos"
    BOUNDS = "bounds"
    RWA_CHECK = "rwa-check"
    ORACLE_CHECK = "oracle-check"
    GAPS = "gaps"
    MOMENT = "moment"


class OutputFormat(str, enum.Enum):
    JSON = "json"
    CSV = "csv"


# (required, optional) analysis fields per command
_FIELDS = MappingProxyType(
    {
        Command.SPECTRUM: ({"n", "twice_j", "k"}, set()),
        Command.DEGENERACY: ({"n"}, {"support_mass"}),
        Command.JSTAR: ({"n"}, set()),
        Command.VARIANCE_SCAN: ({"n", "k_max"}, {"k_min", "fast", "support_mass"}),
        Command.SLOPE: ({"n"}, {"k_min", "k_max", "fast", "support_mass"}),
        Command.DOS: ({"n", "k_max", "omega_over_g"}, {"bins", "sigma"}),
        Command.BOUNDS: ({"n", "twice_j", "k"}, set()),
        Command.RWA_CHECK: ({"n", "k", "omega_over_g"}, {"threshold"}),
        Command.ORACLE_CHECK: ({"n", "k_max"}, {"k_min"}),
        Command.GAPS: ({"n", "k_max", "omega_over_g"}, set()),
        Command.MOMENT: ({"n", "k", "order"}, {"twice_j"}),
    }
)
_ANALYSIS_FIELDS = (
    "n",
    "k",
    "k_min",
    "k_max",
    "twice_j",
    "omega_over_g",
    "bins",
    "sigma",
    "order",
    "threshold",
    "support_mass",
    "fast",
)


def _flag(name: str) -> str:
    return f"--{name.replace('_', '-')}"


@dataclass(frozen=True)
class RunConfig:
    """Immutable description of one analysis run and where its output goes."""

    command: Command
    n: int | None = None
    k: int | None = None
    k_min: int | None = None
    k_max: int | None = None
    twice_j: int | None = None
    omega_over_g: float | None = None
    bins: int | None = None
    sigma: float | None = None
    order: int | None = None
    threshold: float | None = None
    support_mass: float | None = None
    fast: bool = False
    format: OutputFormat = OutputFormat.JSON
    out: Path | None = None
    threads: int | None = None

    def with_output(
        self,
        *,
        format: OutputFormat | None = None,
        out: Path | None = None,
        threads: int | None = None,
    ) -> "RunConfig":
        """Return a copy with the given output settings; None keeps the current value."""

        return replace(
            self,
            format=self.format if format is None else OutputFormat(format),
            out=self.out if out is None else Path(out),
            threads=self.threads if threads is None else threads,
        )

    @property
    def resolved_threads(self) -> int:
        return default_threads() if self.threads is None else self.threads

    def _is_set(self, name: str) -> bool:
        value = getattr(self, name)
        return bool(value) if name == "fast" else value is not None

    def validate(self) -> "RunConfig":
        """Check flag combinations and ranges; raise ConfigError on the first problem."""

        command = Command(self.command)
        required, optional = _FIELDS[command]
        for name in sorted(required):
            if not self._is_set(name):
                raise ConfigError(f"{command.value} requires {_flag(name)}")
        for name in _ANALYSIS_FIELDS:
            if self._is_set(name) and name not in required | optional:
                raise ConfigError(f"{_flag(name)} does not apply to {command.value}")

        if self.n is not None and self.n < 1:
            raise ConfigError(f"--n must be positive, got {self.n}")
        for name in ("k", "k_min", "k_max"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ConfigError(f"{_flag(name)} must be non-negative, got {value}")
        if self.k_min is not None and self.k_max is not None and self.k_max < self.k_min:
            raise ConfigError(f"--k-max {self.k_max} is below --k-min {self.k_min}")
        if self.twice_j is not None and self.n is not None:
            if not 0 <= self.twice_j <= self.n or (self.n - self.twice_j) % 2:
                raise ConfigError(
                    f"--twice-j {self.twice_j} is not an allowed 2j for N={self.n}"
                )
        if self.omega_over_g is not None and not self.omega_over_g > 0:
            raise ConfigError(f"--omega-over-g must be positive, got {self.omega_over_g}")
        if self.bins is not None and self.bins < 10:
            raise ConfigError(f"--bins must be at least 10, got {self.bins}")
        if self.sigma is not None and not self.sigma > 0:
            raise ConfigError(f"--sigma must be positive, got {self.sigma}")
        if self.order is not None and not 1 <= self.order <= MAX_MOMENT_ORDER:
            raise ConfigError(
                f"--order must lie in 1..{MAX_MOMENT_ORDER}, got {self.order}"
            )
        if self.threshold is not None and not self.threshold > 0:
            raise ConfigError(f"--threshold must be positive, got {self.threshold}")
        if self.support_mass is not None and not 0 < self.support_mass <= 1:
            raise ConfigError(
                f"--support-mass must lie in (0, 1], got {self.support_mass}"
            )
        if self.threads is not None and self.threads < 1:
            raise ConfigError(f"--threads must be positive, got {self.threads}")
        return replace(self, command=command)

    def describe(self) -> dict[str, object]:
        """Fields that are set, for debug logging."""

        return {
            item.name: getattr(self, item.name)
            for item in fields(self)
            if getattr(self, item.name) is not None and getattr(self, item.name) is not False
        }
