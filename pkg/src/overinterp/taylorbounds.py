"""Coefficient-decay certificates for functions with many zeros in a disk.

Implements the constant system attached to a base radius r in (0,1), the
zero-decrement inequality M(r,g) <= M(s,g) * (2rs/(r^2+s^2))^N for g with
N zeros in the closed r-disk, decay certificates |f_k| <= M(R,f)/R_+^(n+1) * a^N,
the doubling constant of the polynomial-degree cap argument, and a
constructive witness generator f = P + omega*h whose zero count is known
by construction.

All logarithms below are natural; every constant is a ratio of logs, so
the base cancels (recorded here to prevent base bugs).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DivergesError, DomainError, NotApplicableError
from .numcore import CatalogFunction, ComplexPoly, TaylorSeries, max_modulus


def r_plus(R: float) -> float:
    """max(R, 1), the radius floor used by the decay certificates."""
    return max(R, 1.0)


@dataclass(frozen=True)
class DiskConstants:
    """Constant system for a base radius r in (0,1).

    s = (2r+1)/3 is the comparison radius, a1 = 2rs/(r^2+s^2) the
    zero-decrement base, a = a1^(1/4) the certificate base, A the zero-count
    threshold multiplier, and delta solves r^delta = a. All fields are
    recomputable from r alone.
    """

    r: float
    s: float
    a1: float
    a2: float
    a: float
    A: float
    delta: float


def disk_constants(r: float) -> DiskConstants:
    """Constants (s, a1, a2, a, A, delta) attached to the radius r."""
    if not 0.0 < r < 1.0:
        raise DomainError("base radius must lie in (0, 1)")
    s = (2.0 * r + 1.0) / 3.0
    a1 = 2.0 * r * s / (r * r + s * s)
    a2 = math.sqrt(a1)
    a = math.sqrt(a2)
    A = max(-4.0 * (math.log(5.0) - math.log(1.0 - r)) / math.log(a1), 1.0)
    delta = math.log(a) / math.log(r)
    return DiskConstants(r=r, s=s, a1=a1, a2=a2, a=a, A=A, delta=delta)


def zero_decrement_check(g, r: float, s: float, N: int, slack: float = 1e-8,
                         sample_tol: float = 1e-10) -> dict:
    """Check M(r,g) <= M(s,g) * (2rs/(r^2+s^2))^N for g with N zeros in the r-disk.

    The zero count is caller-supplied (e.g. by construction); the inequality
    is verified empirically from sampled circle maxima.
    """
    if not (0 < r < s):
        raise DomainError("need 0 < r < s")
    if N < 0:
        raise DomainError("zero count must be nonnegative")
    lhs = max_modulus(g, r, tol=sample_tol)
    factor = 2.0 * r * s / (r * r + s * s)
    rhs = max_modulus(g, s, tol=sample_tol) * factor ** N
    return {"lhs": lhs, "rhs": rhs, "holds": lhs <= rhs * (1.0 + slack),
            "factor": factor}


@dataclass(frozen=True)
class DecayCertificate:
    """Coefficient bound |f_k| <= MRf / R_+^(n+1) * a^N for n < k <= floor(delta*N).

    Issued only when N >= A(n+1). The k-range may be empty (delta*N <= n+1),
    which is flagged rather than rejected.
    """

    n: int
    N: int
    R: float
    MRf: float
    k_lo: int          # exclusive
    k_hi: int          # inclusive, floor(delta*N)
    bound: float
    empty: bool
    constants: DiskConstants

    def k_range(self) -> range:
        return range(self.k_lo + 1, self.k_hi + 1)

    def per_k_bounds(self) -> dict[int, float]:
        return {k: self.bound for k in self.k_range()}


def coeff_bound(dc: DiskConstants, n: int, N: int, R: float, MRf: float) -> DecayCertificate:
    """Decay certificate for the Taylor coefficients of f.

    Preconditions: N >= A(n+1) (else NotApplicableError) and R >= (r+2)/3
    with f analytic on the closed R-disk (caller's responsibility).
    """
    if R < (dc.r + 2.0) / 3.0 - 1e-15:
        raise DomainError("need R >= (r+2)/3")
    if MRf < 0:
        raise DomainError("MRf must be nonnegative")
    if N < dc.A * (n + 1):
        raise NotApplicableError(
            f"zero count N={N} below threshold A(n+1)={dc.A * (n + 1):.3f}"
        )
    k_hi = math.floor(dc.delta * N)
    bound = MRf / r_plus(R) ** (n + 1) * dc.a ** N
    return DecayCertificate(n=n, N=N, R=R, MRf=MRf, k_lo=n, k_hi=k_hi,
                            bound=bound, empty=(k_hi <= n), constants=dc)


def _truncated_root_product(roots: np.ndarray, K: int) -> np.ndarray:
    """First K+1 coefficients of prod (z - root). Low orders are exact."""
    c = np.zeros(K + 1, dtype=complex)
    c[0] = 1.0
    top = 0
    for w in roots:
        # multiply by (z - w), truncated: new[k] = c[k-1] - w*c[k]
        upto = min(top + 1, K)
        shifted = np.empty(upto + 1, dtype=complex)
        shifted[0] = -w * c[0]
        shifted[1: upto + 1] = c[:upto] - w * c[1: upto + 1]
        c[: upto + 1] = shifted
        top = upto
    return c


def synth_witness(P: ComplexPoly, roots: Sequence[complex], h: CatalogFunction | None,
                  wid: str = "witness") -> CatalogFunction:
    """Assemble f = P + omega*h with omega = prod (z - root).

    f - P = omega*h has at least len(roots) zeros in any disk containing the
    roots, by construction, which makes decay certificates testable without
    solving an inverse problem. Evaluation keeps omega in product form to
    avoid the coefficient overflow of expanding a high-degree polynomial.
    """
    roots = np.asarray(list(roots), dtype=complex)

    def ev(z):
        zz = np.atleast_1d(np.asarray(z, dtype=complex))
        out = np.asarray(P.eval(zz), dtype=complex).copy()
        if h is not None and roots.size:
            w = np.ones_like(zz)
            for lo in range(0, roots.size, 64):
                chunk = roots[lo: lo + 64]
                w = w * np.prod(zz[:, None] - chunk[None, :], axis=1)
            out = out + w * np.asarray(h.eval(zz), dtype=complex)
        elif h is not None:
            out = out + np.asarray(h.eval(zz), dtype=complex)
        return out if np.asarray(z).shape else complex(out[0])

    def taylor(K: int) -> TaylorSeries:
        c = np.zeros(K + 1, dtype=complex)
        m = min(K + 1, P.coeffs.size)
        c[:m] = P.coeffs[:m]
        if h is not None:
            hs = h.taylor(K).coeffs[: K + 1]
            if roots.size:
                om = _truncated_root_product(roots, K)
                prod = np.convolve(om, hs)[: K + 1]
            else:
                prod = hs
            c[: prod.size] += prod
        return TaylorSeries(c)

    rho = h.rho_known if h is not None else math.inf
    return CatalogFunction(id=wid, eval=ev, taylor=taylor, rho_known=rho)


@dataclass(frozen=True)
class DoublingResult:
    """Doubling constant C and the polynomial degree cap log C / log 2."""

    C: float
    degree_cap: float
    terms_summed: int


def doubling_constant(n0: int, a: float, N: Callable[[int], float] | Sequence[float],
                      tail_tol: float = 1e-18, horizon: int = 200000) -> DoublingResult:
    """C = sum_{n=0}^{n0} 2^n + sum_{n>=n0} 2^(n+1) a^N(n), summed to machine tail.

    The tail is summed until terms drop below tail_tol (below the double
    resolution of the leading terms); if the horizon is exhausted first the
    schedule is not summable and DivergesError is raised.
    """
    if n0 < 0:
        raise DomainError("n0 must be nonnegative")
    if not 0.0 <= a < 1.0:
        raise DivergesError(f"decay base a={a} must satisfy 0 <= a < 1")
    if callable(N):
        sched = N
        limit = horizon
    else:
        seq = list(N)
        sched = lambda n: seq[n]  # noqa: E731
        limit = len(seq) - n0
    head = float(2 ** (n0 + 1) - 1)
    tail = 0.0
    n = n0
    terms = 0
    while terms < limit:
        Nn = float(sched(n))
        if Nn < 0:
            raise DomainError("zero-count schedule must be nonnegative")
        term = 2.0 ** (n + 1) * a ** Nn
        tail += term
        terms += 1
        if term < tail_tol:
            C = head + tail
            return DoublingResult(C=C, degree_cap=math.log2(C), terms_summed=terms)
        n += 1
    raise DivergesError(
        f"tail terms did not fall below {tail_tol} within {terms} terms"
    )
