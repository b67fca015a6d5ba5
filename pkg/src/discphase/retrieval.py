"""Modulus-only reconstruction on two concentric circles, and certificates.

The pipeline recovers f = B * u (finite Blaschke product times outer
factor) from |f| sampled on the unit circle and on an interior centred
circle of radius r:

1. the unit-circle data determines the outer factor u (the Blaschke part
   is unimodular there);
2. dividing the interior-circle moduli by |u| leaves samples of |B| on
   that circle;
3. |B|^2 on the circle extends to a rational function H(z) of numerator
   and denominator degree <= 2N (reflection conj(z) = r^2/z), which is
   fitted as a homogeneous least-squares problem; the poles of H split
   into a cluster at r^2 * zeros (modulus < r^2) and reflected poles
   (modulus > 1), so the zeros of B can be read off;
4. the global phase is unrecoverable: results are normalized to Blaschke
   constant 1 and outer positive at 0.

The finite-point certificate counts modulus agreements of two Blaschke
products on a circle against the degree bound 2M + 2N - 1 and
cross-checks that the difference polynomial vanishes.
"""

from __future__ import annotations

import logging
from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np

from .blaschke import BlaschkeProduct, ModulusSamples, align_constant
from .errors import (
    DegreeCapExceeded,
    DiscPhaseError,
    EvaluationAtPole,
    ModulusMismatchOnCircle,
    NonConvergence,
    PointsNotOnCommonCircle,
    PoleAmbiguity,
    ResidualTooLarge,
    ZeroOnBoundary,
    ZeroOnCircle,
)
from .geometry import Circle
from .outer import BoundaryModulus, OuterFunction
from .rational import Polynomial, RationalFunction, modulus_equation, poly_roots

logger = logging.getLogger(__name__)

#: half-width of the pole separation dead band around [r, 1]
_POLE_BAND = 0.02


@dataclass(frozen=True)
class RetrievalConfig:
    degree_max: int = 8
    residual_tol: float = 1e-7
    rank_ratio: float = 1e-8
    outer_grid_n: int = 1024

    def __post_init__(self):
        if self.degree_max < 0:
            raise ValueError("degree_max must be >= 0")
        if self.residual_tol <= 0 or self.rank_ratio <= 0:
            raise ValueError("tolerances must be positive")

    @property
    def fit_points_min(self) -> int:
        return 4 * self.degree_max + 1


class ModulusData:
    """Modulus samples bound to the circle they were taken on."""

    __slots__ = ("circle", "points", "moduli")

    def __init__(self, circle: Circle, points, moduli):
        self.circle = circle
        self.points = np.asarray(points, dtype=complex).ravel()
        self.moduli = np.asarray(moduli, dtype=float).ravel()
        if self.points.shape != self.moduli.shape:
            raise ValueError("points and moduli must have equal length")
        if len(self.points) == 0:
            raise ValueError("empty sample set")
        off = np.abs(np.abs(self.points - circle.center) - circle.radius)
        if float(off.max()) > 1e-10:
            raise ValueError(
                f"sample points deviate from the circle by up to {float(off.max()):.3e}"
            )
        angles = np.sort(np.angle(self.points - circle.center))
        gaps = np.diff(angles)
        min_gap = min(
            float(gaps.min()) if len(gaps) else 2 * np.pi,
            2 * np.pi - (angles[-1] - angles[0]),
        )
        if min_gap * circle.radius <= 1e-12:
            raise ValueError("sample points are not pairwise distinct at 1e-12")

    def __len__(self) -> int:
        return len(self.points)

    @classmethod
    def from_samples(cls, circle: Circle, samples: ModulusSamples) -> "ModulusData":
        return cls(circle, samples.points, samples.moduli)


def sample_modulus(func, circle: Circle, n: int, phase_offset: float = 0.0) -> ModulusData:
    """Forward measurement model: |func| on an n-point grid of the circle."""
    pts = circle.sample_points(n, phase_offset)
    vals = np.abs(np.asarray(func(pts), dtype=complex))
    return ModulusData(circle, pts, vals)


@contextmanager
def _stage(name: str):
    try:
        yield
    except DiscPhaseError as exc:
        if exc.stage is None:
            exc.stage = name
        raise


@dataclass
class ModulusFit:
    """Result of the homogeneous rational fit of squared moduli on a circle."""

    h: RationalFunction
    residual: float
    singular_values: np.ndarray
    rank_deficient: bool
    num_scaled: Polynomial
    den_scaled: Polynomial
    radius: float


def fit_modulus_rational(
    data: ModulusData, degree: int, rank_ratio: float = 1e-8
) -> ModulusFit:
    """Fit H = P/Q with deg P, deg Q <= 2*degree to m^2 on the data circle.

    Minimizes sum |P(z_k) - m_k^2 Q(z_k)|^2 over unit-norm coefficient
    vectors via the smallest singular direction of the design matrix.  The
    fit is performed in the scaled variable w = z / r so the monomial
    columns stay on the unit circle (well conditioned for every r); the
    returned rational function is converted back to z.  The coefficient
    vector is normalized so Q's leading kept coefficient is 1.
    """
    r = data.circle.radius
    if abs(data.circle.center) > 1e-12:
        raise ValueError("modulus fit requires a circle centred at 0")
    n_samples = len(data)
    n_coeff = 2 * degree + 1
    if n_samples < 2 * n_coeff:
        raise ValueError(
            f"need at least {2 * n_coeff} samples for degree {degree}, got {n_samples}"
        )
    w = data.points / r
    m2 = data.moduli**2
    powers = w[:, None] ** np.arange(n_coeff)[None, :]
    design = np.hstack([powers, -m2[:, None] * powers])
    _, s, vh = np.linalg.svd(design, full_matrices=False)
    x = vh[-1].conjugate()
    residual = float(s[-1]) / np.sqrt(n_samples)
    ratio = float(s[-2] / s[0]) if len(s) >= 2 and s[0] > 0 else 0.0
    rank_deficient = ratio < rank_ratio
    if rank_deficient:
        logger.warning(
            "rational modulus fit at degree %d is rank deficient "
            "(sigma[-2]/sigma[0] = %.3e); degree is likely overestimated",
            degree,
            ratio,
        )
    den_scaled = Polynomial(x[n_coeff:])
    if den_scaled.is_zero:
        raise ResidualTooLarge("fit produced an identically zero denominator")
    lead = den_scaled.coeffs[-1]
    num_scaled = Polynomial(x[:n_coeff] / lead)
    den_scaled = Polynomial(den_scaled.coeffs / lead)
    scale_back = r ** -np.arange(n_coeff)
    num_z = Polynomial(np.pad(num_scaled.coeffs, (0, n_coeff - len(num_scaled.coeffs))) * scale_back)
    den_z = Polynomial(np.pad(den_scaled.coeffs, (0, n_coeff - len(den_scaled.coeffs))) * scale_back)
    return ModulusFit(
        h=RationalFunction(num_z, den_z),
        residual=residual,
        singular_values=s,
        rank_deficient=rank_deficient,
        num_scaled=num_scaled,
        den_scaled=den_scaled,
        radius=r,
    )


def _recover(
    data: ModulusData, degree: int, residual_tol: float, rank_ratio: float = 1e-8
) -> tuple[BlaschkeProduct, ModulusFit, float]:
    if float(data.moduli.min()) < 1e-8:
        raise ZeroOnCircle(
            "moduli vanish on the sampling circle; divide out the zeros "
            "(finitely many) before retrieval"
        )
    fit = fit_modulus_rational(data, degree, rank_ratio)
    r = fit.radius
    if fit.den_scaled.degree >= 1:
        poles = np.array([r * w for w in poly_roots(fit.den_scaled)])
    else:
        poles = np.array([], dtype=complex)
    mods = np.abs(poles)
    in_band = (mods >= r - _POLE_BAND) & (mods <= 1.0 + _POLE_BAND)
    if np.any(in_band):
        raise PoleAmbiguity(
            f"fitted pole at modulus {float(mods[in_band][0]):.6f} lies in the "
            f"separation band [{r - _POLE_BAND:.3f}, {1.0 + _POLE_BAND:.3f}]"
        )
    selected = poles[mods < r]
    zeros = selected / r**2
    if np.any(np.abs(zeros) > 1.0 - 1e-12):
        raise PoleAmbiguity(
            "fitted pole between r^2 and r is inconsistent with the "
            "reflected-pole structure of an inner rational function"
        )
    b = BlaschkeProduct(1.0, tuple(zeros))
    forward = np.abs(b(data.points))
    residual = float(np.abs(forward - data.moduli).max())
    if residual > residual_tol:
        raise ResidualTooLarge(
            f"forward modulus residual {residual:.3e} exceeds {residual_tol:.3e} "
            f"at degree {degree}"
        )
    return b, fit, residual


def recover_blaschke_on_circle(
    data: ModulusData, degree: int, residual_tol: float = 1e-7
) -> BlaschkeProduct:
    """Blaschke product (constant fixed to 1) whose modulus matches the data.

    The data must come from an inner rational function of degree
    <= ``degree``; the unimodular constant is unrecoverable from moduli
    and is returned as 1.
    """
    b, _, _ = _recover(data, degree, residual_tol)
    return b


def _search_degree(
    data: ModulusData, config: RetrievalConfig
) -> tuple[int, BlaschkeProduct, ModulusFit, float]:
    cap = min(config.degree_max, (len(data) - 2) // 4)
    failures: list[str] = []
    for degree in range(cap + 1):
        try:
            b, fit, residual = _recover(
                data, degree, config.residual_tol, config.rank_ratio
            )
            return degree, b, fit, residual
        except (ResidualTooLarge, PoleAmbiguity, NonConvergence) as exc:
            failures.append(f"degree {degree}: {exc}")
        except np.linalg.LinAlgError as exc:
            failures.append(f"degree {degree}: SVD failed ({exc})")
    raise DegreeCapExceeded(
        f"no degree <= {cap} is consistent with the data at tolerance "
        f"{config.residual_tol:.1e}; " + "; ".join(failures[-2:])
    )


def estimate_degree(data: ModulusData, config: RetrievalConfig | None = None) -> int:
    """Smallest degree whose inner-rational fit meets the residual tolerance."""
    config = config or RetrievalConfig()
    return _search_degree(data, config)[0]


@dataclass
class RetrievalDiagnostics:
    """Diagnostic record attached to a retrieval result."""

    degree_used: int
    fit_residual: float
    residual_T: float
    residual_rT: float
    inner_radius: float
    n_samples_T: int
    n_samples_rT: int
    degree_max: int
    residual_tol: float
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "degree_used": self.degree_used,
            "fit_residual": self.fit_residual,
            "residual_T": self.residual_T,
            "residual_rT": self.residual_rT,
            "inner_radius": self.inner_radius,
            "n_samples_T": self.n_samples_T,
            "n_samples_rT": self.n_samples_rT,
            "degree_max": self.degree_max,
            "residual_tol": self.residual_tol,
            "notes": list(self.notes),
        }


@dataclass
class RetrievalResult:
    """Reconstruction B * u, canonical up to a unimodular constant."""

    blaschke: BlaschkeProduct
    outer: OuterFunction
    residual_T: float
    residual_rT: float
    degree_used: int
    certificate: RetrievalDiagnostics

    def __call__(self, z):
        return self.blaschke(z) * self.outer(z)

    def recompute_residuals(
        self, data_boundary: ModulusData, data_inner: ModulusData
    ) -> tuple[float, float]:
        nodes = np.exp(1j * self.outer.boundary.angles)
        res_t = float(
            np.abs(
                np.abs(self.blaschke(nodes)) * self.outer.boundary.values
                - self.outer.boundary.values
            ).max()
        )
        u_abs = np.abs(self.outer(data_inner.points))
        res_r = float(
            np.abs(np.abs(self.blaschke(data_inner.points)) * u_abs - data_inner.moduli).max()
        )
        return res_t, res_r

    def to_json(self, outer_csv: str | None = None) -> dict:
        if outer_csv is not None:
            outer_ref: dict = {"n": self.outer.boundary.n, "csv": outer_csv}
        else:
            outer_ref = {
                "n": self.outer.boundary.n,
                "csv": None,
                "values": [float(v) for v in self.outer.boundary.values],
            }
        return {
            "blaschke": self.blaschke.to_json(),
            "outer_boundary": outer_ref,
            "residual_T": self.residual_T,
            "residual_rT": self.residual_rT,
            "degree": self.degree_used,
            "certificate": self.certificate.to_json(),
        }


def _boundary_from_data(data: ModulusData) -> BoundaryModulus:
    circle = data.circle
    if abs(circle.center) > 1e-12 or abs(circle.radius - 1.0) > 1e-12:
        raise ValueError("boundary data must be sampled on the unit circle")
    t = np.mod(np.angle(data.points), 2.0 * np.pi)
    t = np.where(t > 2.0 * np.pi - 1e-9, t - 2.0 * np.pi, t)
    order = np.argsort(t)
    t_sorted = t[order]
    n = len(t_sorted)
    expected = 2.0 * np.pi * np.arange(n) / n
    if float(np.abs(t_sorted - expected).max()) > 1e-9:
        raise ValueError(
            "boundary samples must form the uniform grid t_k = 2 pi k / n "
            "starting at t = 0"
        )
    return BoundaryModulus(data.moduli[order])


def retrieve_two_circles(
    data_boundary: ModulusData,
    data_inner: ModulusData,
    config: RetrievalConfig | None = None,
) -> RetrievalResult:
    """Reconstruct B * u from moduli on the unit circle and a centred interior one.

    Stage errors are tagged with the stage name: boundary -> outer_division
    -> degree_search -> assemble.
    """
    config = config or RetrievalConfig()

    with _stage("boundary"):
        if float(data_boundary.moduli.min()) <= 1e-10:
            raise ZeroOnBoundary(
                "boundary moduli reach "
                f"{float(data_boundary.moduli.min()):.3e}; zeros on the unit "
                "circle must be divided out first"
            )
        boundary = _boundary_from_data(data_boundary)
        outer = OuterFunction(boundary)

    with _stage("outer_division"):
        circle_r = data_inner.circle
        if abs(circle_r.center) > 1e-12:
            raise ValueError("inner-circle data must be centred at 0")
        if not 0.0 < circle_r.radius < 1.0:
            raise ValueError(
                f"inner radius must lie in (0, 1), got {circle_r.radius!r}"
            )
        u_abs = np.abs(outer(data_inner.points))
        inner_moduli = data_inner.moduli / u_abs
        if float(inner_moduli.min()) < 1e-8:
            raise ZeroOnCircle(
                "moduli vanish on the inner circle; divide out the zeros "
                "(finitely many) before retrieval"
            )
        inner_data = ModulusData(circle_r, data_inner.points, inner_moduli)

    with _stage("degree_search"):
        degree, b, fit, fit_residual = _search_degree(inner_data, config)

    with _stage("assemble"):
        residual_rt = float(
            np.abs(np.abs(b(data_inner.points)) * u_abs - data_inner.moduli).max()
        )
        nodes = np.exp(1j * boundary.angles)
        residual_t = float(
            np.abs(np.abs(b(nodes)) * boundary.values - boundary.values).max()
        )
        if max(residual_t, residual_rt) > config.residual_tol:
            raise ResidualTooLarge(
                f"assembled residuals ({residual_t:.3e}, {residual_rt:.3e}) exceed "
                f"{config.residual_tol:.3e}"
            )
        notes = []
        if fit.rank_deficient:
            notes.append("rational fit was rank deficient at the selected degree")
        diagnostics = RetrievalDiagnostics(
            degree_used=degree,
            fit_residual=fit_residual,
            residual_T=residual_t,
            residual_rT=residual_rt,
            inner_radius=circle_r.radius,
            n_samples_T=len(data_boundary),
            n_samples_rT=len(data_inner),
            degree_max=config.degree_max,
            residual_tol=config.residual_tol,
            notes=tuple(notes),
        )
    return RetrievalResult(
        blaschke=b,
        outer=outer,
        residual_T=residual_t,
        residual_rT=residual_rt,
        degree_used=degree,
        certificate=diagnostics,
    )


@dataclass(frozen=True)
class EqualityCertificate:
    """Outcome of the finite-point equal-modulus criterion."""

    verdict: str  # "equal_on_circle" | "inconclusive"
    agreeing_count: int
    bound: int
    n_points: int
    radius: float
    tol: float
    equation_identically_zero: bool
    equation_max_coeff: float
    equation_scale: float

    @property
    def equal_on_circle(self) -> bool:
        return self.verdict == "equal_on_circle"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "agreeing_count": self.agreeing_count,
            "bound": self.bound,
            "n_points": self.n_points,
            "radius": self.radius,
            "tol": self.tol,
            "equation_identically_zero": self.equation_identically_zero,
            "equation_max_coeff": self.equation_max_coeff,
            "equation_scale": self.equation_scale,
        }


def certify_finite_points(
    b1: BlaschkeProduct,
    b2: BlaschkeProduct,
    points,
    tol: float = 1e-9,
) -> EqualityCertificate:
    """Certify |b1| = |b2| on a whole centred circle from finitely many points.

    If the moduli agree (within ``tol``) at more than
    2 deg(b1) + 2 deg(b2) - 1 distinct points of a common centred circle of
    radius r in (0, 1), and the difference polynomial is identically zero
    (consistency check), the moduli agree on the whole circle and the
    products differ by a unimodular constant.  Otherwise the certificate is
    inconclusive, with the observed count and the bound.
    """
    pts = np.asarray(points, dtype=complex).ravel()
    if len(pts) == 0:
        raise ValueError("empty point set")
    # deduplicate at 1e-12
    kept: list[complex] = []
    for p in pts:
        if all(abs(p - q) > 1e-12 for q in kept):
            kept.append(complex(p))
    pts = np.array(kept)
    radii = np.abs(pts)
    r = float(np.median(radii))
    if float(np.abs(radii - r).max()) > 1e-10:
        raise PointsNotOnCommonCircle(
            f"point radii spread {float(np.abs(radii - r).max()):.3e} exceeds 1e-10"
        )
    if not 0.0 < r < 1.0:
        raise ValueError(f"certification circle radius must lie in (0, 1), got {r!r}")
    gap = np.abs(np.abs(b1(pts)) - np.abs(b2(pts)))
    agreeing = int(np.count_nonzero(gap <= tol))
    bound = 2 * b1.degree + 2 * b2.degree - 1
    eq = modulus_equation(b1, b2, r)
    equal = agreeing > bound and eq.is_identically_zero
    return EqualityCertificate(
        verdict="equal_on_circle" if equal else "inconclusive",
        agreeing_count=agreeing,
        bound=bound,
        n_points=len(pts),
        radius=r,
        tol=tol,
        equation_identically_zero=eq.is_identically_zero,
        equation_max_coeff=eq.max_coeff,
        equation_scale=eq.scale,
    )


def _cancel_common(first: list[complex], second: list[complex], tol: float = 1e-9):
    kept_first: list[complex] = []
    pool = list(second)
    for z in first:
        hit = next((j for j, w in enumerate(pool) if abs(z - w) <= tol), None)
        if hit is None:
            kept_first.append(z)
        else:
            pool.pop(hit)
    return kept_first, pool


def parametrize_pair(
    f: RationalFunction, g: RationalFunction, r: float
) -> tuple[BlaschkeProduct, BlaschkeProduct]:
    """Blaschke products (in z/r) relating two rationals of equal modulus on r*T.

    Returns (B1, B2) with B1(z/r) f(z) = B2(z/r) g(z): B1 collects the
    zeros of g and poles of f inside the circle (scaled by 1/r), B2 the
    zeros of f and poles of g, common factors cancelled; the unimodular
    constant is fixed by least-squares alignment and the identity is
    verified on a 64-point interior grid to relative residual 1e-9.
    """
    if not 0.0 < r < 1.0:
        raise ValueError(f"r must lie in (0, 1), got {r!r}")
    zeros_f = f.zeros()
    poles_f = f.poles()
    zeros_g = g.zeros()
    poles_g = g.poles()
    for w in (*zeros_f, *poles_f, *zeros_g, *poles_g):
        if abs(abs(w) - r) <= 1e-9:
            raise ZeroOnCircle(
                f"zero or pole at {w} lies on the radius-{r} circle"
            )
    check = r * np.exp(1j * (2.0 * np.pi * np.arange(256) / 256 + 0.123))
    gap = np.abs(np.abs(f(check)) - np.abs(g(check)))
    if float(gap.max()) > 1e-9:
        raise ModulusMismatchOnCircle(
            f"max modulus gap {float(gap.max()):.3e} on the radius-{r} circle"
        )
    b1_raw = [w for w in (*zeros_g, *poles_f) if abs(w) < r]
    b2_raw = [w for w in (*zeros_f, *poles_g) if abs(w) < r]
    b1_kept, b2_kept = _cancel_common(b1_raw, b2_raw)
    b1 = BlaschkeProduct(1.0, tuple(w / r for w in b1_kept))
    b2_base = BlaschkeProduct(1.0, tuple(w / r for w in b2_kept))
    grid = 0.5 * r * np.exp(2j * np.pi * np.arange(64) / 64)
    lhs = b1(grid / r) * f(grid)
    rhs = b2_base(grid / r) * g(grid)
    lam = align_constant(lhs, rhs)
    b2 = b2_base.with_constant(lam)
    scale = max(float(np.abs(lhs).max()), float(np.abs(rhs).max()), 1e-300)
    rel = float(np.abs(lhs - lam * rhs).max()) / scale
    if rel > 1e-9:
        raise ResidualTooLarge(
            f"parametrization identity residual {rel:.3e} exceeds 1e-9"
        )
    return b1, b2


@dataclass(frozen=True)
class EqualModulusReport:
    max_deviation: float
    worst_point: complex
    n_points: int
    tol: float | None = None

    @property
    def within_tol(self) -> bool | None:
        if self.tol is None:
            return None
        return self.max_deviation <= self.tol

    def to_json(self) -> dict:
        return {
            "max_deviation": self.max_deviation,
            "worst_point": [self.worst_point.real, self.worst_point.imag],
            "n_points": self.n_points,
            "tol": self.tol,
            "within_tol": self.within_tol,
        }


def verify_equal_modulus(f, g, point_set, tol: float | None = None) -> EqualModulusReport:
    """Max |(|f| - |g|)| over a point set, with the worst point."""
    getter = getattr(point_set, "points", None)
    pts = getter() if callable(getter) else np.asarray(point_set, dtype=complex)
    fv = np.abs(np.asarray(f(pts), dtype=complex))
    gv = np.abs(np.asarray(g(pts), dtype=complex))
    bad = ~np.isfinite(fv) | ~np.isfinite(gv)
    if np.any(bad):
        k = int(np.nonzero(bad)[0][0])
        raise EvaluationAtPole(
            f"evaluation is not finite at point index {k} ({complex(pts[k])})"
        )
    gap = np.abs(fv - gv)
    worst = int(np.argmax(gap))
    return EqualModulusReport(
        max_deviation=float(gap[worst]),
        worst_point=complex(pts[worst]),
        n_points=len(pts),
        tol=tol,
    )
