"""Physical parameter bundle used across the kernel and current modules."""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class PhysicalParams:
    """Mass, scale, coupling, contour shift and the free integration constant.

    Natural units: ``m`` and ``delta`` carry 1/length, ``u`` carries m**2,
    ``e`` and ``C`` are dimensionless.  ``u`` defaults to ``m**2`` so the
    scale logarithm vanishes and all scheme freedom sits in ``C``.
    """

    m: float = 1.0
    u: float | None = None
    e: float = 1.0
    delta: float = 0.1
    C: float = 0.0

    def __post_init__(self):
        if self.m <= 0:
            raise ValueError("mass m must be positive")
        if self.u is None:
            object.__setattr__(self, "u", self.m**2)
        if self.u <= 0:
            raise ValueError("scale u must be positive")
        if self.delta <= 0:
            raise ValueError("contour shift delta must be positive")

    def with_mass_squared(self, m2: float) -> "PhysicalParams":
        """Same parameters at a different mass; ``u`` is kept fixed."""
        if m2 <= 0:
            raise ValueError("m**2 must stay positive")
        return replace(self, m=m2**0.5)
