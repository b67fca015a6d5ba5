"""Complex polynomials, rational functions, and root finding.

Polynomials are dense ascending coefficient vectors (degrees here stay
below ~40).  The root finder is a simultaneous Aberth-Ehrlich iteration
with a companion-matrix fallback; residuals are always checked against an
explicit bound so failures are loud.

The modulus-product construction turns |B|^2 on a centred circle of radius
r into an explicit rational function of z, using the reflection
conj(z) = r^2 / z that holds on that circle.  Subtracting two such products
cross-multiplied gives a difference polynomial whose top coefficient
cancels exactly, which is what bounds the number of points where two
Blaschke products can share a modulus.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .blaschke import BlaschkeProduct
from .errors import AllOfCircle, NonConvergence

logger = logging.getLogger(__name__)

_TRIM_REL = 1e-14


class Polynomial:
    """Dense complex polynomial, coefficients in ascending degree order.

    Trailing coefficients below 1e-14 * max|coeff| are trimmed on
    construction; the zero polynomial is stored as [0].
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        arr = np.atleast_1d(np.asarray(coeffs, dtype=complex)).ravel()
        if arr.size == 0:
            arr = np.zeros(1, dtype=complex)
        top = float(np.abs(arr).max())
        if top == 0.0:
            arr = np.zeros(1, dtype=complex)
        else:
            keep = np.nonzero(np.abs(arr) > _TRIM_REL * top)[0]
            arr = arr[: keep[-1] + 1]
        self.coeffs = arr

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == 0

    def __call__(self, z):
        zz = np.asarray(z, dtype=complex)
        out = np.zeros(zz.shape, dtype=complex)
        for c in self.coeffs[::-1]:
            out = out * zz + c
        return complex(out) if zz.ndim == 0 else out

    def derivative(self) -> "Polynomial":
        if self.degree == 0:
            return Polynomial([0.0])
        k = np.arange(1, len(self.coeffs))
        return Polynomial(self.coeffs[1:] * k)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(n, dtype=complex)
        a[: len(self.coeffs)] = self.coeffs
        a[: len(other.coeffs)] += other.coeffs
        return Polynomial(a)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(n, dtype=complex)
        a[: len(self.coeffs)] = self.coeffs
        a[: len(other.coeffs)] -= other.coeffs
        return Polynomial(a)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(np.convolve(self.coeffs, other.coeffs))

    def __repr__(self) -> str:
        return f"Polynomial(degree={self.degree})"

    @classmethod
    def from_roots(cls, roots, leading: complex = 1.0) -> "Polynomial":
        c = np.array([complex(leading)])
        for r in roots:
            c = np.convolve(c, np.array([-complex(r), 1.0]))
        return cls(c)

    def to_json(self) -> dict:
        return {"type": "poly", "coeffs": [[c.real, c.imag] for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "Polynomial":
        if obj.get("type") != "poly":
            raise ValueError(f"not a poly descriptor: {obj.get('type')!r}")
        return cls([complex(re, im) for re, im in obj["coeffs"]])


class RationalFunction:
    """Quotient of two polynomials; the denominator must not vanish identically."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial):
        if not isinstance(num, Polynomial):
            num = Polynomial(num)
        if not isinstance(den, Polynomial):
            den = Polynomial(den)
        if den.is_zero:
            raise ValueError("denominator is identically zero")
        self.num = num
        self.den = den

    def __call__(self, z):
        # denominator zeros yield inf (which Moebius compositions absorb);
        # 0/0 stays nan
        zz = np.asarray(z, dtype=complex)
        num = np.asarray(self.num(zz), dtype=complex)
        den = np.asarray(self.den(zz), dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = num / den
        pole = den == 0
        if np.any(pole):
            out = np.where(pole & (num != 0), complex(np.inf, 0.0), out)
        return complex(out) if zz.ndim == 0 else out

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def zeros(self) -> list[complex]:
        return poly_roots(self.num) if self.num.degree >= 1 else []

    def poles(self) -> list[complex]:
        return poly_roots(self.den) if self.den.degree >= 1 else []

    @classmethod
    def from_zeros_poles(cls, zeros, poles, scale: complex = 1.0) -> "RationalFunction":
        """Build scale * prod(z - zero) / prod(z - pole), cancelling shared roots.

        Zero/pole pairs closer than 1e-10 cancel; cancellations are logged
        rather than silent.
        """
        zs = [complex(z) for z in zeros]
        ps = [complex(p) for p in poles]
        kept_z: list[complex] = []
        for z in zs:
            hit = next((j for j, p in enumerate(ps) if abs(z - p) <= 1e-10), None)
            if hit is None:
                kept_z.append(z)
            else:
                logger.info("cancelling zero/pole pair at %s (distance %.2e)", z, abs(z - ps[hit]))
                ps.pop(hit)
        return cls(
            Polynomial.from_roots(kept_z, leading=scale), Polynomial.from_roots(ps)
        )

    def to_json(self) -> dict:
        return {"type": "rational", "num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "RationalFunction":
        if obj.get("type") != "rational":
            raise ValueError(f"not a rational descriptor: {obj.get('type')!r}")
        return cls(Polynomial.from_json(obj["num"]), Polynomial.from_json(obj["den"]))


def _horner_pair(coeffs: np.ndarray, dcoeffs: np.ndarray, z: np.ndarray):
    p = np.zeros(z.shape, dtype=complex)
    for c in coeffs[::-1]:
        p = p * z + c
    dp = np.zeros(z.shape, dtype=complex)
    for c in dcoeffs[::-1]:
        dp = dp * z + c
    return p, dp


def _aberth(coeffs: np.ndarray, max_iter: int) -> tuple[np.ndarray, bool]:
    """Simultaneous Aberth-Ehrlich iteration; deterministic seeds, no RNG."""
    n = len(coeffs) - 1
    monic = coeffs / coeffs[-1]
    dcoeffs = coeffs[1:] * np.arange(1, n + 1)
    radius = 1.0 + float(np.abs(monic[:-1]).max())
    angles = 2.0 * np.pi * (np.arange(n) + 0.5) / n + 0.7
    z = radius * np.exp(1j * angles)
    for _ in range(max_iter):
        p, dp = _horner_pair(coeffs, dcoeffs, z)
        small = np.abs(dp) <= 1e-300
        if np.any(small):
            z = z * (1.0 + 1e-8) + 1e-12
            continue
        w = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        denom = 1.0 - w * s
        denom = np.where(np.abs(denom) <= 1e-300, 1.0, denom)
        step = w / denom
        z = z - step
        if np.abs(step).max() <= 1e-14 * (1.0 + np.abs(z).max()):
            return z, True
    return z, False


def _residual_ok(coeffs: np.ndarray, roots: np.ndarray) -> np.ndarray:
    n = len(coeffs) - 1
    vals = np.zeros(roots.shape, dtype=complex)
    for c in coeffs[::-1]:
        vals = vals * roots + c
    bound = 1e-9 * float(np.abs(coeffs).max()) * np.maximum(1.0, np.abs(roots)) ** n
    return np.abs(vals) <= bound


def _newton_polish(coeffs: np.ndarray, roots: np.ndarray, sweeps: int = 3) -> np.ndarray:
    dcoeffs = coeffs[1:] * np.arange(1, len(coeffs))
    z = roots.copy()
    for _ in range(sweeps):
        p, dp = _horner_pair(coeffs, dcoeffs, z)
        safe = np.abs(dp) > 1e-300
        z[safe] = z[safe] - p[safe] / dp[safe]
    return z


def _cluster_roots(roots: np.ndarray, tol: float) -> list[complex]:
    order = np.lexsort((roots.imag, roots.real))
    sorted_roots = roots[order]
    clusters: list[list[complex]] = []
    for r in sorted_roots:
        placed = False
        for cluster in clusters:
            if abs(r - cluster[0]) <= tol:
                cluster.append(complex(r))
                placed = True
                break
        if not placed:
            clusters.append([complex(r)])
    out: list[complex] = []
    for cluster in clusters:
        rep = complex(np.mean(cluster))
        out.extend([rep] * len(cluster))
    return out


def poly_roots(
    p: Polynomial, cluster_tol: float = 1e-8, max_iter: int = 200
) -> list[complex]:
    """All roots of ``p`` as a multiset (cluster representatives repeated).

    Aberth-Ehrlich first; if any residual exceeds
    1e-9 * max|coeff| * max(1, |root|)^deg the companion-matrix eigenvalues
    are used (with a Newton polish) instead.  Raises NonConvergence when
    neither route meets the bound.
    """
    if p.degree < 1 or p.is_zero:
        raise ValueError("root finding requires degree >= 1")
    coeffs = p.coeffs
    if p.degree == 1:
        return [complex(-coeffs[0] / coeffs[1])]
    roots, converged = _aberth(coeffs, max_iter)
    if not converged or not np.all(_residual_ok(coeffs, roots)):
        fallback = np.roots(coeffs[::-1])
        fallback = _newton_polish(coeffs, fallback)
        if not np.all(_residual_ok(coeffs, fallback)):
            vals = np.abs(Polynomial(coeffs)(fallback))
            raise NonConvergence(
                f"root residuals too large after fallback: max |p(root)| = {vals.max():.3e}"
            )
        roots = fallback
    return _cluster_roots(roots, cluster_tol)


def build_modulus_product(b: BlaschkeProduct, r: float) -> RationalFunction:
    """Rational function equal to |b(z)|^2 on the centred circle of radius ``r``.

    Each zero a contributes the factor
    (z - a)(r^2 - conj(a) z) / ((1 - conj(a) z)(z - r^2 a)),
    obtained from conj(z) = r^2 / z on the circle; the unimodular constant
    of ``b`` drops out.  On the circle the value is real and nonnegative.
    """
    if not 0.0 < r < 1.0:
        raise ValueError(f"r must lie in (0, 1), got {r!r}")
    num = np.array([1.0 + 0j])
    den = np.array([1.0 + 0j])
    r2 = r * r
    for a in b.zeros:
        ac = a.conjugate()
        num = np.convolve(num, np.array([-a, 1.0]))
        num = np.convolve(num, np.array([r2, -ac]))
        den = np.convolve(den, np.array([1.0, -ac]))
        den = np.convolve(den, np.array([-r2 * a, 1.0]))
    return RationalFunction(Polynomial(num), Polynomial(den))


@dataclass(frozen=True)
class ModulusEquation:
    """Difference polynomial for |b1| = |b2| on a centred circle.

    ``poly`` is P1 Q2 - P2 Q1 with its top coefficient (which cancels
    analytically) removed; ``scale`` is the coefficient scale of the
    cross products, against which "identically zero" is decided.
    """

    poly: Polynomial
    scale: float
    max_coeff: float

    @property
    def is_identically_zero(self) -> bool:
        return self.max_coeff <= 1e-10 * self.scale


def modulus_equation(b1: BlaschkeProduct, b2: BlaschkeProduct, r: float) -> ModulusEquation:
    """Cross-multiplied difference of the two modulus products on r*T.

    The degree is at most 2*deg(b1) + 2*deg(b2) - 1: the top coefficients
    of the cross products coincide and cancel.  The residual of that
    cancellation is verified against 1e-10 relative and the coefficient is
    then removed exactly.
    """
    r1 = build_modulus_product(b1, r)
    r2 = build_modulus_product(b2, r)
    lhs = np.convolve(r1.num.coeffs, r2.den.coeffs)
    rhs = np.convolve(r2.num.coeffs, r1.den.coeffs)
    full_len = 2 * b1.degree + 2 * b2.degree + 1
    lhs_full = np.zeros(full_len, dtype=complex)
    rhs_full = np.zeros(full_len, dtype=complex)
    lhs_full[: len(lhs)] = lhs
    rhs_full[: len(rhs)] = rhs
    scale = max(float(np.abs(lhs_full).max()), float(np.abs(rhs_full).max()), 1e-300)
    diff = lhs_full - rhs_full
    top = abs(diff[-1])
    if top > 1e-10 * scale:
        raise RuntimeError(
            f"top coefficient failed to cancel: |c_top| = {top:.3e} vs scale {scale:.3e}"
        )
    trimmed = diff[:-1]
    max_coeff = float(np.abs(trimmed).max()) if len(trimmed) else 0.0
    return ModulusEquation(poly=Polynomial(trimmed), scale=scale, max_coeff=max_coeff)


def modulus_equation_poly(b1: BlaschkeProduct, b2: BlaschkeProduct, r: float) -> Polynomial:
    """The difference polynomial itself (degree <= 2 deg(b1) + 2 deg(b2) - 1)."""
    return modulus_equation(b1, b2, r).poly


def equality_points_on_circle(
    b1: BlaschkeProduct, b2: BlaschkeProduct, r: float, band: float = 1e-8
) -> list[complex]:
    """Points of the centred radius-``r`` circle where |b1| = |b2|.

    These are the difference-polynomial roots within ``band`` of the
    circle.  Raises AllOfCircle when the polynomial is identically zero,
    i.e. the moduli agree everywhere on the circle.
    """
    eq = modulus_equation(b1, b2, r)
    if eq.is_identically_zero:
        raise AllOfCircle("the moduli agree on the whole circle")
    if eq.poly.degree < 1:
        return []
    roots = poly_roots(eq.poly)
    return [w for w in roots if abs(abs(w) - r) <= band]
