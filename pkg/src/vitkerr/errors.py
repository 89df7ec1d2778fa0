"""Exception types mapped to CLI exit codes."""

from __future__ import annotations


class ConfigError(ValueError):
    """Bad or inconsistent run configuration (CLI exit code 2)."""


class DegenerateSystemError(RuntimeError):
    """Steady-state matrix is numerically singular (CLI exit code 3)."""


class NoTransparencyError(RuntimeError):
    """Absorption profile has no dip near the two-photon resonance."""


class ThresholdError(RuntimeError):
    """A self-check exceeded its accuracy threshold (CLI exit code 4)."""
