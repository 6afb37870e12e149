"""Complex polynomial and truncated power-series arithmetic.

Provides the shared numerical substrate: dense complex polynomials,
truncated Taylor series with an underflow-safe log2-magnitude channel,
catalog-function wrappers, circle maximum-modulus estimation,
radius-of-convergence estimation, and argument-principle zero counting
in closed disks.

All operations are pure and deterministic given their inputs; values are
immutable after construction, so concurrent evaluation is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import (
    BoundaryZeroError,
    DomainError,
    OscillationError,
    UnresolvedError,
)

NEG_INF = float("-inf")

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _vec_eval(g: Callable, z: np.ndarray) -> np.ndarray:
    """Evaluate ``g`` on a complex array, falling back to a scalar loop."""
    z = np.asarray(z, dtype=complex)
    with np.errstate(all="ignore"):
        try:
            out = np.asarray(g(z), dtype=complex)
            if out.shape == z.shape:
                return out
        except (TypeError, ValueError):
            pass
        flat = np.array([complex(g(w)) for w in z.ravel()], dtype=complex)
    return flat.reshape(z.shape)


class ComplexPoly:
    """Dense polynomial with complex coefficients, index k = coefficient of z^k.

    The trailing coefficient is nonzero unless this is the zero polynomial
    (exact zeros are trimmed; nothing is trimmed by tolerance).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[complex]):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex)).ravel()
        nz = np.nonzero(c)[0]
        self.coeffs = c[: nz[-1] + 1].copy() if nz.size else np.zeros(1, dtype=complex)
        self.coeffs.setflags(write=False)

    @classmethod
    def zero(cls) -> "ComplexPoly":
        return cls([0.0])

    @classmethod
    def one(cls) -> "ComplexPoly":
        return cls([1.0])

    @classmethod
    def from_roots(cls, roots: Sequence[complex]) -> "ComplexPoly":
        c = np.array([1.0 + 0.0j])
        for w in np.asarray(list(roots), dtype=complex):
            c = np.convolve(c, np.array([-w, 1.0 + 0.0j]))
        return cls(c)

    @property
    def degree(self) -> float:
        """Degree as an int, or -inf for the zero polynomial."""
        if self.coeffs.size == 1 and self.coeffs[0] == 0:
            return NEG_INF
        return self.coeffs.size - 1

    def is_zero(self) -> bool:
        return self.coeffs.size == 1 and self.coeffs[0] == 0

    def eval(self, z):
        """Horner evaluation; accepts scalars or arrays."""
        zz = np.asarray(z, dtype=complex)
        out = np.polyval(self.coeffs[::-1], zz)
        return out if zz.shape else complex(out)

    __call__ = eval

    def deriv(self) -> "ComplexPoly":
        if self.coeffs.size == 1:
            return ComplexPoly.zero()
        k = np.arange(1, self.coeffs.size)
        return ComplexPoly(self.coeffs[1:] * k)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(self.coeffs.size, other.coeffs.size)
        a = np.zeros(n, dtype=complex)
        a[: self.coeffs.size] = self.coeffs
        a[: other.coeffs.size] += other.coeffs
        return ComplexPoly(a)

    def __sub__(self, other):
        return self + (self._coerce(other) * (-1.0))

    def __mul__(self, other):
        if np.isscalar(other):
            return ComplexPoly(self.coeffs * other)
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return ComplexPoly.zero()
        return ComplexPoly(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    @staticmethod
    def _coerce(p) -> "ComplexPoly":
        return p if isinstance(p, ComplexPoly) else ComplexPoly([p])

    def __repr__(self):
        return f"ComplexPoly({list(self.coeffs)})"


def poly_from_roots(roots: Sequence[complex]) -> ComplexPoly:
    """Monic polynomial with exactly the given roots, with multiplicity."""
    return ComplexPoly.from_roots(roots)


def poly_divmod(a: ComplexPoly, b: ComplexPoly) -> tuple[ComplexPoly, ComplexPoly]:
    """Quotient and remainder of a by b, deg(rem) < deg(b)."""
    if b.is_zero():
        raise DomainError("division by the zero polynomial")
    q, r = np.polydiv(a.coeffs[::-1], b.coeffs[::-1])
    return ComplexPoly(np.atleast_1d(q)[::-1]), ComplexPoly(np.atleast_1d(r)[::-1])


class TaylorSeries:
    """Truncated power series f_0..f_K with an optional log2-magnitude channel.

    The log channel keeps magnitudes like 2^(-n!) representable after the
    coefficients themselves underflow to zero in double precision. Arithmetic
    on series recomputes the channel from the double values; only explicitly
    constructed series (catalog streams) carry an exact channel.
    """

    __slots__ = ("coeffs", "log_mags")

    def __init__(self, coeffs: Sequence[complex], log_mags: Sequence[float] | None = None):
        self.coeffs = np.atleast_1d(np.asarray(coeffs, dtype=complex)).ravel().copy()
        if log_mags is not None:
            lm = np.asarray(log_mags, dtype=float).ravel().copy()
            if lm.size != self.coeffs.size:
                raise DomainError("log_mags length must match coeffs length")
            self.log_mags = lm
        else:
            with np.errstate(divide="ignore"):
                self.log_mags = np.log2(np.abs(self.coeffs))
        self.coeffs.setflags(write=False)
        self.log_mags.setflags(write=False)

    @property
    def order(self) -> int:
        """Truncation order K; coefficients f_0..f_K are recorded."""
        return self.coeffs.size - 1

    def truncated(self, K: int) -> "TaylorSeries":
        if K >= self.order:
            return self
        return TaylorSeries(self.coeffs[: K + 1], self.log_mags[: K + 1])

    def __sub__(self, other: "TaylorSeries") -> "TaylorSeries":
        n = min(self.coeffs.size, other.coeffs.size)
        return TaylorSeries(self.coeffs[:n] - other.coeffs[:n])

    def __add__(self, other: "TaylorSeries") -> "TaylorSeries":
        n = min(self.coeffs.size, other.coeffs.size)
        return TaylorSeries(self.coeffs[:n] + other.coeffs[:n])

    def mul_truncated(self, other: "TaylorSeries", K: int) -> "TaylorSeries":
        c = np.convolve(self.coeffs[: K + 1], other.coeffs[: K + 1])[: K + 1]
        return TaylorSeries(c)

    def eval_partial(self, z):
        """Partial-sum evaluation of the truncated series."""
        zz = np.asarray(z, dtype=complex)
        out = np.polyval(self.coeffs[::-1], zz)
        return out if zz.shape else complex(out)


@dataclass(frozen=True)
class CatalogFunction:
    """A named analytic function: point evaluator plus Taylor stream.

    eval must accept numpy arrays of complex arguments. taylor(K) returns
    the coefficient stream to order K. rho_known is the exact radius of
    convergence at 0 when known (math.inf allowed), else None.
    """

    id: str
    eval: Callable
    taylor: Callable[[int], TaylorSeries]
    rho_known: float | None = None


@dataclass
class CircleSample:
    """Record of one adaptive circle-maximum run.

    values holds the per-level sampled maxima; k_samples is the accepted
    level (a power of two >= 64) whose doubling changed the estimate by
    less than tol*(1+max).
    """

    t: float
    k_samples: int
    values: list[float] = field(default_factory=list)
    tol: float = 1e-9
    converged: bool = False
    polished: float = 0.0


def _as_evaluator(f) -> Callable:
    if isinstance(f, CatalogFunction):
        return f.eval
    if isinstance(f, (ComplexPoly, TaylorSeries)):
        return f.eval if isinstance(f, ComplexPoly) else f.eval_partial
    if callable(f):
        return f
    raise DomainError(f"cannot evaluate object of type {type(f)!r}")


def circle_values(g, t: float, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Values of g at k equispaced points of the circle |z| = t."""
    theta = np.arange(k) * (2.0 * math.pi / k)
    z = t * np.exp(1j * theta)
    return z, _vec_eval(_as_evaluator(g), z)


def _golden_refine_max(g, t: float, lo: np.ndarray, hi: np.ndarray, iters: int = 48) -> float:
    """Golden-section maximization of |g(t e^{i theta})| over bracket arrays."""
    ev = _as_evaluator(g)

    def val(theta: np.ndarray) -> np.ndarray:
        return np.abs(_vec_eval(ev, t * np.exp(1j * theta)))

    a, b = lo.astype(float).copy(), hi.astype(float).copy()
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = val(c), val(d)
    for _ in range(iters):
        take_left = fc >= fd
        b = np.where(take_left, d, b)
        a = np.where(take_left, a, c)
        c_new = b - _GOLDEN * (b - a)
        d_new = a + _GOLDEN * (b - a)
        # one fresh evaluation per bracket per iteration
        fc_new = np.where(take_left, val(c_new), fd)
        fd_new = np.where(take_left, fc, val(d_new))
        c, d, fc, fd = c_new, d_new, fc_new, fd_new
    return float(np.max(np.maximum(fc, fd)))


def max_modulus_sample(f, t: float, tol: float = 1e-9, k0: int = 64,
                       k_max: int = 1 << 17) -> tuple[float, CircleSample]:
    """M(t, f) estimate with the full adaptive sampling record.

    The returned value is a certified lower bound for the true circle
    maximum (it is an evaluated |f|); stabilization across doublings plus
    golden-section polish of the leading peaks makes it an upper estimate
    within tol*(1+M) for smooth integrands.
    """
    if t <= 0:
        raise DomainError("circle radius must be positive")
    sample = CircleSample(t=t, k_samples=k0, tol=tol)
    prev = None
    k = k0
    while k <= k_max:
        _, vals = circle_values(f, t, k)
        mags = np.abs(vals)
        m = float(np.max(mags))
        sample.values.append(m)
        sample.k_samples = k
        if not np.isfinite(m):
            raise DomainError(f"non-finite values on the circle |z| = {t}")
        if prev is not None and abs(m - prev) <= tol * (1.0 + m):
            sample.converged = True
            left = np.roll(mags, 1)
            right = np.roll(mags, -1)
            is_peak = (mags >= left) & (mags >= right)
            peak_idx = np.nonzero(is_peak & (mags >= m * (1.0 - 1e-3)))[0]
            if peak_idx.size > 8:
                peak_idx = peak_idx[np.argsort(mags[peak_idx])[-8:]]
            if peak_idx.size:
                dth = 2.0 * math.pi / k
                lo = (peak_idx - 1.0) * dth
                hi = (peak_idx + 1.0) * dth
                m = max(m, _golden_refine_max(f, t, lo, hi))
            sample.polished = m
            return m, sample
        prev = m
        k *= 2
    raise OscillationError(
        f"max on |z| = {t} did not stabilize to {tol} within {k_max} samples"
    )


def max_modulus(f, t: float, tol: float = 1e-9) -> float:
    """Maximum of |f| on the circle |z| = t, by adaptive angular refinement."""
    value, _ = max_modulus_sample(f, t, tol=tol)
    return value


@dataclass
class RadiusEstimate:
    """Result of limsup-emulation radius estimation."""

    rho: float
    entire: bool
    lacunary: bool
    confidence: str  # "high" | "low"
    limit: float  # extrapolated limsup |f_k|^(1/k)
    window_maxima: np.ndarray
    window_centers: np.ndarray
    polynomial: bool = False


def radius_of_convergence(s: TaylorSeries) -> RadiusEstimate:
    """Estimate rho = 1/limsup |f_k|^(1/k) from a truncated stream.

    Uses windowed maxima of |f_k|^(1/k) (window ~ K/4, half-window stride)
    extrapolated against 1/k by least squares; plain last-coefficient
    estimates fail on lacunary series. Flags: `entire` when the extrapolated
    limsup is ~0 or the per-window maxima collapse superexponentially,
    `lacunary`/low confidence for collapsing or gap-ridden patterns.
    All-zero tails report rho = inf with the polynomial flag.
    """
    K = s.order
    lg = s.log_mags
    finite_idx = np.nonzero(np.isfinite(lg))[0]
    if finite_idx.size == 0 or finite_idx.max() == 0:
        return RadiusEstimate(math.inf, True, False, "high", 0.0,
                              np.array([]), np.array([]), polynomial=True)
    last = int(finite_idx.max())
    if last <= K // 2 and K >= 8:
        # tail of exact zeros: a polynomial stream
        return RadiusEstimate(math.inf, True, False, "high", 0.0,
                              np.array([]), np.array([]), polynomial=True)
    if finite_idx.size < 16:
        raise DomainError("radius estimation needs at least 16 nonzero coefficients")

    k = np.arange(1, K + 1, dtype=float)
    ell = lg[1:] / k  # log2 |f_k|^(1/k)
    w = max(4, math.ceil(K / 4))
    stride = max(1, w // 2)
    centers, maxima_log = [], []
    start = 0
    while start < K:
        window = ell[start: start + w]
        fin = window[np.isfinite(window)]
        if fin.size:
            centers.append(start + 1 + (min(w, K - start) - 1) / 2.0)
            maxima_log.append(float(fin.max()))
        start += stride
    centers = np.asarray(centers)
    maxima_log = np.asarray(maxima_log)
    maxima = np.exp2(maxima_log)

    # least-squares extrapolation of window maxima against 1/k
    x = 1.0 / centers
    if centers.size >= 2:
        A = np.column_stack([np.ones_like(x), x])
        sol, *_ = np.linalg.lstsq(A, maxima, rcond=None)
        limit = float(sol[0])
        fitted = A @ sol
        scatter = float(np.sqrt(np.mean((maxima - fitted) ** 2)))
        rel_scatter = scatter / max(float(np.max(maxima)), 1e-300)
    else:
        limit = float(maxima[-1])
        rel_scatter = 0.0

    collapse = bool(maxima_log.max() - maxima_log.min() > 100.0)
    tail_zero_frac = float(np.mean(~np.isfinite(lg[K // 2:])))
    gappy = tail_zero_frac > 0.5
    lacunary = collapse or gappy
    entire = collapse or (limit < 0.05)
    rho = math.inf if entire else 1.0 / limit
    confidence = "low" if (lacunary or rel_scatter > 0.2) else "high"
    return RadiusEstimate(rho, entire, lacunary, confidence, max(limit, 0.0),
                          maxima, centers)


def degree_detect(s: TaylorSeries, tol: float) -> float | int | None:
    """Degree of a stream that represents a polynomial, else None.

    d is the largest k with |f_k| > tol * max|f_j|. The verdict is
    "not a polynomial" (None) when coefficients above 0.01*tol*max persist
    beyond d, or when d exceeds a quarter of the truncation order (not
    enough margin to certify the tail). The zero stream reports -inf.
    """
    mags = np.abs(s.coeffs)
    mx = float(mags.max()) if mags.size else 0.0
    if mx == 0.0:
        return NEG_INF
    above = np.nonzero(mags > tol * mx)[0]
    if above.size == 0:
        return NEG_INF
    d = int(above.max())
    if d > s.order // 4:
        return None
    tail = mags[d + 1:]
    if tail.size and float(tail.max()) > 0.01 * tol * mx:
        return None
    return d


def clean_tail(s: TaylorSeries, d: int) -> bool:
    """True when every coefficient beyond index d is an exact zero.

    Consults the log channel, so magnitudes that merely underflowed in
    double precision still count as nonzero.
    """
    if d < 0:
        d = -1
    return bool(np.all(~np.isfinite(s.log_mags[d + 1:])))


@dataclass
class ZeroCount:
    """Argument-principle count over a circle, with the radius actually used."""

    count: int
    t_used: float
    raw: float
    k_samples: int


def count_zeros_in_disk(g, t: float, tol: float = 1e-3, k0: int = 256,
                        k_max: int = 1 << 17) -> ZeroCount:
    """Number of zeros of g in the closed disk of radius t, with multiplicity.

    Computes the winding number of g along |z| = t by trapezoid quadrature
    of the logarithmic derivative; the derivative along the circle comes
    from spectral (FFT) differentiation of the sampled values, so the raw
    integral converges geometrically for analytic g. A result is accepted
    only when the raw value is within 0.25 of the same integer at two
    successive refinement levels. When a zero is suspected on the circle,
    the radius is perturbed outward by up to tol and the radius used is
    reported.
    """
    if t <= 0:
        raise DomainError("disk radius must be positive")
    boundary_hits = 0
    for t_used in (t, t + 0.5 * tol, t + tol):
        prev: tuple[float, int] | None = None
        k = k0
        while k <= k_max:
            _, vals = circle_values(g, t_used, k)
            mags = np.abs(vals)
            vmax = float(mags.max())
            if vmax == 0.0 or not np.isfinite(vmax) or float(mags.min()) < 1e-13 * vmax:
                boundary_hits += 1
                break  # boundary zero suspected: try a perturbed radius
            freqs = np.fft.fftfreq(k, d=1.0 / k)
            dvals = np.fft.ifft(1j * freqs * np.fft.fft(vals))
            raw = float(np.mean(dvals / vals).imag)
            nearest = int(round(raw))
            if abs(raw - nearest) < 0.25:
                if prev is not None and prev[1] == nearest and abs(prev[0] - nearest) < 0.25:
                    return ZeroCount(count=nearest, t_used=t_used, raw=raw, k_samples=k)
                prev = (raw, nearest)
            else:
                prev = None
            k *= 2
        else:
            raise UnresolvedError(
                f"winding integral on |z| = {t_used} did not stabilize to an integer"
            )
    raise BoundaryZeroError(
        f"a zero lies within {tol} of every candidate circle near |z| = {t} "
        f"({boundary_hits} radii tried)"
    )
