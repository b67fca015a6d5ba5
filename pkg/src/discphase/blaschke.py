"""Finite Blaschke products and modulus sampling on point grids.

A finite Blaschke product is a unimodular constant times factors
(z - a) / (1 - conj(a) z) with |a| < 1: the rational functions that are
unimodular on the unit circle.  This module evaluates them, samples moduli
on circle/segment grids, and tests equality up to a unimodular constant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import DegenerateAlignment, EvaluationAtPole
from .geometry import Circle

#: zeros are rejected closer to the unit circle than this; the boundary
#: unimodularity guarantees degrade as zeros approach it
_ZERO_MODULUS_CAP = 1.0 - 1e-12


@dataclass(frozen=True)
class BlaschkeProduct:
    """Unimodular ``constant`` times the Blaschke factors of ``zeros``.

    ``zeros`` is a multiset (repetitions allowed); the degree is its size.
    """

    constant: complex = 1.0 + 0j
    zeros: tuple[complex, ...] = ()

    def __post_init__(self):
        c = complex(self.constant)
        if abs(abs(c) - 1.0) > 1e-12:
            raise ValueError(f"constant must be unimodular, |c| = {abs(c)!r}")
        zs = tuple(complex(a) for a in self.zeros)
        for a in zs:
            if abs(a) > _ZERO_MODULUS_CAP:
                raise ValueError(
                    f"zero {a} too close to the unit circle (|a| = {abs(a)!r})"
                )
        object.__setattr__(self, "constant", c)
        object.__setattr__(self, "zeros", zs)

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def __call__(self, z):
        """Evaluate at a scalar or array of points.

        Points within 1e-14 of a reflected pole 1/conj(a) are rejected.
        """
        zz = np.asarray(z, dtype=complex)
        out = np.full(zz.shape, self.constant, dtype=complex)
        for a in self.zeros:
            if a != 0:
                pole = 1.0 / a.conjugate()
                near = np.abs(zz - pole) <= 1e-14
                if np.any(near):
                    raise EvaluationAtPole(
                        f"evaluation at reflected pole {pole} of zero {a}"
                    )
            out = out * (zz - a) / (1.0 - a.conjugate() * zz)
        return complex(out) if zz.ndim == 0 else out

    def __mul__(self, other: "BlaschkeProduct") -> "BlaschkeProduct":
        if not isinstance(other, BlaschkeProduct):
            return NotImplemented
        return BlaschkeProduct(self.constant * other.constant, self.zeros + other.zeros)

    def with_constant(self, constant: complex) -> "BlaschkeProduct":
        return BlaschkeProduct(constant, self.zeros)

    def to_json(self) -> dict:
        return {
            "type": "blaschke",
            "constant": [self.constant.real, self.constant.imag],
            "zeros": [[a.real, a.imag] for a in self.zeros],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BlaschkeProduct":
        if obj.get("type") != "blaschke":
            raise ValueError(f"not a blaschke descriptor: {obj.get('type')!r}")
        constant = complex(obj["constant"][0], obj["constant"][1])
        zeros = [complex(re, im) for re, im in obj["zeros"]]
        return cls(constant, tuple(zeros))


@dataclass(frozen=True)
class CircleGrid:
    """``n_points`` equally spaced points on a circle, starting at ``phase_offset``."""

    circle: Circle
    n_points: int
    phase_offset: float = 0.0

    def __post_init__(self):
        if self.n_points < 1:
            raise ValueError("n_points must be at least 1")

    def points(self) -> np.ndarray:
        return self.circle.sample_points(self.n_points, self.phase_offset)


@dataclass(frozen=True)
class LineSegmentGrid:
    """``n_points`` equally spaced points on the segment [start, end]."""

    start: complex
    end: complex
    n_points: int

    def __post_init__(self):
        if self.n_points < 1:
            raise ValueError("n_points must be at least 1")

    def points(self) -> np.ndarray:
        if self.n_points == 1:
            return np.array([complex(self.start)])
        t = np.linspace(0.0, 1.0, self.n_points)
        return complex(self.start) + t * (complex(self.end) - complex(self.start))


@dataclass(frozen=True)
class ExplicitPoints:
    """An explicit point list, deduplicated at distance 1e-12."""

    raw: tuple[complex, ...]
    deduplicated: tuple[complex, ...] = field(init=False)

    def __post_init__(self):
        pts = [complex(p) for p in self.raw]
        kept: list[complex] = []
        for p in pts:
            if all(abs(p - q) > 1e-12 for q in kept):
                kept.append(p)
        object.__setattr__(self, "raw", tuple(pts))
        object.__setattr__(self, "deduplicated", tuple(kept))
        if not kept:
            raise ValueError("point set is empty")

    def points(self) -> np.ndarray:
        return np.array(self.deduplicated)


PointSet = Union[CircleGrid, LineSegmentGrid, ExplicitPoints]


class ModulusSamples:
    """(point, modulus) pairs in deterministic grid order."""

    def __init__(self, points, moduli):
        self.points = np.asarray(points, dtype=complex)
        self.moduli = np.asarray(moduli, dtype=float)
        if self.points.shape != self.moduli.shape or self.points.ndim != 1:
            raise ValueError("points and moduli must be 1-d arrays of equal length")

    def __len__(self) -> int:
        return len(self.points)

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("index,re,im,modulus\n")
            for k, (p, m) in enumerate(zip(self.points, self.moduli)):
                fh.write(f"{k},{float(p.real)!r},{float(p.imag)!r},{float(m)!r}\n")

    @classmethod
    def from_csv(cls, path) -> "ModulusSamples":
        points: list[complex] = []
        moduli: list[float] = []
        with open(path, "r", encoding="utf-8") as fh:
            header = fh.readline().strip()
            if header != "index,re,im,modulus":
                raise ValueError(
                    f"line 1: expected header 'index,re,im,modulus', got {header!r}"
                )
            for lineno, line in enumerate(fh, start=2):
                if not line.strip():
                    continue
                parts = line.strip().split(",")
                if len(parts) != 4:
                    raise ValueError(f"line {lineno}: expected 4 fields, got {len(parts)}")
                try:
                    points.append(complex(float(parts[1]), float(parts[2])))
                    moduli.append(float(parts[3]))
                except ValueError as exc:
                    raise ValueError(f"line {lineno}: {exc}") from exc
        return cls(points, moduli)


def modulus_samples(func, point_set: PointSet) -> ModulusSamples:
    """Sample |func| on a point set, reporting the offending index on failure."""
    pts = point_set.points()
    try:
        values = func(pts)
    except Exception:
        # locate the failing point for the error message
        for k, p in enumerate(pts):
            try:
                func(p)
            except Exception as exc:
                raise type(exc)(f"evaluation failed at point index {k} ({p}): {exc}") from exc
        raise
    return ModulusSamples(pts, np.abs(np.asarray(values, dtype=complex)))


def align_constant(fvals, gvals) -> complex:
    """Unimodular c minimizing sum |f_k - c g_k|^2.

    The minimizer is s/|s| with s = sum conj(g_k) f_k.
    """
    f = np.asarray(fvals, dtype=complex).ravel()
    g = np.asarray(gvals, dtype=complex).ravel()
    if f.shape != g.shape or len(f) < 1:
        raise ValueError("sample vectors must be nonempty and of equal length")
    s = np.sum(g.conjugate() * f)
    norms = float(np.linalg.norm(f) * np.linalg.norm(g))
    if abs(s) <= 1e-14 * max(norms, 1e-300):
        raise DegenerateAlignment("sample correlation vanishes; no alignment exists")
    return complex(s / abs(s))


def equal_up_to_unimodular(
    b1: BlaschkeProduct, b2: BlaschkeProduct, tol: float = 1e-9
) -> complex | None:
    """Return lambda with b1 = lambda * b2 if zero multisets match, else None.

    Matching is greedy nearest-pair at tolerance ``tol``; good for the
    well-separated zero sets that arise here, approximate for clustered ones.
    """
    if b1.degree != b2.degree:
        return None
    remaining = list(b2.zeros)
    for a in b1.zeros:
        if not remaining:
            return None
        dists = [abs(a - b) for b in remaining]
        j = int(np.argmin(dists))
        if dists[j] > tol:
            return None
        remaining.pop(j)
    return b1.constant / b2.constant
