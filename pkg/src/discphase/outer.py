"""Zero-free analytic functions reconstructed from boundary modulus data.

Given samples m_k = |f(e^{i t_k})| on a uniform grid of the unit circle,
the associated outer function is

    u(z) = exp( (1/2 pi) integral (e^{it} + z) / (e^{it} - z) log m(t) dt ),

discretized by the uniform trapezoid rule, which is spectrally accurate for
smooth periodic log-modulus.  u has no zeros in the disc, u(0) > 0, and
|u| has boundary values m.  Evaluation is trusted only up to ``rho_max``:
the kernel amplifies the quadrature error like 1/(1 - |z|).
"""

from __future__ import annotations

import numpy as np

from .errors import EvaluationTooCloseToBoundary, ZeroOnBoundary

_MIN_GRID = 16


class BoundaryModulus:
    """Positive modulus values on the uniform grid t_k = 2 pi k / n."""

    __slots__ = ("values", "_log")

    def __init__(self, values):
        arr = np.asarray(values, dtype=float).ravel()
        if len(arr) < _MIN_GRID:
            raise ValueError(f"grid size must be >= {_MIN_GRID}, got {len(arr)}")
        if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
            raise ValueError("modulus values must be positive and finite")
        self.values = arr
        self._log = np.log(arr)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def angles(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.n) / self.n

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("t,modulus\n")
            for t, m in zip(self.angles, self.values):
                fh.write(f"{float(t)!r},{float(m)!r}\n")

    @classmethod
    def from_csv(cls, path) -> "BoundaryModulus":
        ts: list[float] = []
        ms: list[float] = []
        with open(path, "r", encoding="utf-8") as fh:
            header = fh.readline().strip()
            if header != "t,modulus":
                raise ValueError(f"line 1: expected header 't,modulus', got {header!r}")
            for lineno, line in enumerate(fh, start=2):
                if not line.strip():
                    continue
                parts = line.strip().split(",")
                if len(parts) != 2:
                    raise ValueError(f"line {lineno}: expected 2 fields, got {len(parts)}")
                try:
                    ts.append(float(parts[0]))
                    ms.append(float(parts[1]))
                except ValueError as exc:
                    raise ValueError(f"line {lineno}: {exc}") from exc
        t = np.asarray(ts)
        n = len(t)
        if n < _MIN_GRID:
            raise ValueError(f"grid size must be >= {_MIN_GRID}, got {n}")
        expected = 2.0 * np.pi * np.arange(n) / n
        spacing = np.diff(t)
        if len(spacing) and float(np.abs(spacing - spacing[0]).max()) > 1e-12:
            raise ValueError("grid is not uniform (spacing deviates by more than 1e-12)")
        if float(np.abs(t - expected).max()) > 1e-9:
            raise ValueError("grid must start at t = 0 with spacing 2 pi / n")
        return cls(ms)


class OuterFunction:
    """Outer function with the given boundary modulus; callable on |z| <= rho_max."""

    __slots__ = ("boundary", "rho_max", "_nodes")

    def __init__(self, boundary: BoundaryModulus, rho_max: float = 0.99):
        if not 0.0 < rho_max < 1.0:
            raise ValueError(f"rho_max must lie in (0, 1), got {rho_max!r}")
        self.boundary = boundary
        self.rho_max = rho_max
        self._nodes = np.exp(1j * boundary.angles)

    @property
    def value_at_zero(self) -> float:
        return float(np.exp(self.boundary._log.mean()))

    def __call__(self, z):
        """Evaluate the Schwarz-integral exponential at scalar or array z."""
        zz = np.asarray(z, dtype=complex)
        if np.any(np.abs(zz) > self.rho_max):
            worst = float(np.abs(zz).max())
            raise EvaluationTooCloseToBoundary(
                f"|z| = {worst!r} exceeds rho_max = {self.rho_max!r}"
            )
        flat = zz.ravel()
        nodes = self._nodes[None, :]
        kernel = (nodes + flat[:, None]) / (nodes - flat[:, None])
        exponent = kernel @ self.boundary._log / self.boundary.n
        out = np.exp(exponent).reshape(zz.shape)
        return complex(out) if zz.ndim == 0 else out


def outer_eval(u: OuterFunction, z):
    """Functional alias for ``u(z)``."""
    return u(z)


def boundary_modulus_of(func, n: int = 1024) -> BoundaryModulus:
    """Sample |func| on the uniform n-point boundary grid.

    Rejects data with min modulus <= 1e-10: zeros on the circle must be
    divided out before an outer factor makes sense.
    """
    t = 2.0 * np.pi * np.arange(n) / n
    values = np.abs(np.asarray(func(np.exp(1j * t)), dtype=complex))
    if float(values.min()) <= 1e-10:
        raise ZeroOnBoundary(
            f"modulus as small as {float(values.min()):.3e} on the unit circle"
        )
    return BoundaryModulus(values)
