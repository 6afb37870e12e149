"""Lagrange/Newton interpolation in a disk and its explicit remainder bound.

Interpolants are built by Newton divided differences and kept in Newton
form internally (far more stable for clustered nodes); conversion to
monomial coefficients is explicit and reports a conditioning factor.
Confluent nodes are supported only at the origin, via Taylor data, which
covers the Pade limit; general Hermite data is out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConditioningError, DomainError
from .numcore import CatalogFunction, ComplexPoly, _vec_eval, max_modulus

_KAPPA_CAP = 1e12


@dataclass(frozen=True)
class NodeSet:
    """Interpolation nodes z_0..z_n inside the closed disk of radius r."""

    nodes: tuple
    r: float

    def __init__(self, nodes: Sequence[complex], r: float):
        nodes = tuple(complex(z) for z in nodes)
        if r < 0:
            raise DomainError("enclosing radius must be nonnegative")
        if any(abs(z) > r * (1 + 1e-12) + 1e-15 for z in nodes):
            raise DomainError("all nodes must satisfy |z| <= r")
        # duplicates are permitted only at the origin (Taylor data covers them)
        for i, a in enumerate(nodes):
            for b in nodes[i + 1:]:
                if abs(a - b) < 1e-14 and abs(a) > 1e-14:
                    raise DomainError(
                        "repeated nodes are supported only at the origin"
                    )
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "r", float(r))

    def __len__(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class RemainderBound:
    """Value of the interpolation remainder bound, recomputable from fields.

    value = MRf * R/(R-s) * ((s+r)/(R-r))^(n+1).
    """

    r: float
    s: float
    R: float
    n: int
    MRf: float
    value: float


def remainder_bound(r: float, s: float, R: float, n: int, MRf: float) -> RemainderBound:
    """Uniform bound for M(s, f - L_n f) with nodes in the disk of radius r.

    Requires 0 <= r < R, 0 < s < R, MRf = M(R, f) >= 0.
    """
    if not (0 <= r < R):
        raise DomainError("need 0 <= r < R")
    if not (0 < s < R):
        raise DomainError("need 0 < s < R")
    if MRf < 0:
        raise DomainError("MRf must be nonnegative")
    value = MRf * (R / (R - s)) * ((s + r) / (R - r)) ** (n + 1)
    return RemainderBound(r=r, s=s, R=R, n=n, MRf=MRf, value=value)


@dataclass
class InterpResult:
    """Monomial-form interpolant with Newton internals and conditioning data.

    kappa estimates the cancellation amplification of evaluating the Newton
    form on the node disk, relative to the data scale; it is capped at 1e12.
    """

    poly: ComplexPoly
    kappa: float
    newton_coeffs: np.ndarray
    nodes: tuple


def _taylor_coeffs(f, count: int) -> np.ndarray:
    if isinstance(f, CatalogFunction):
        return f.taylor(count - 1).coeffs[:count]
    if isinstance(f, ComplexPoly):
        c = np.zeros(count, dtype=complex)
        m = min(count, f.coeffs.size)
        c[:m] = f.coeffs[:m]
        return c
    raise DomainError("repeated origin nodes need Taylor data (catalog function)")


def newton_coefficients(f, nodes: NodeSet) -> np.ndarray:
    """Divided-difference coefficients of f at the given nodes.

    Repeated nodes must all sit at the origin; the corresponding divided
    differences are Taylor coefficients of f at 0.
    """
    z = np.array(sorted(nodes.nodes, key=lambda w: abs(w)), dtype=complex)
    n1 = len(z)
    ev = f.eval if isinstance(f, (CatalogFunction, ComplexPoly)) else f
    zero_block = int(np.sum(np.abs(z) < 1e-14))
    taylor = _taylor_coeffs(f, n1) if zero_block > 1 else None

    table = np.zeros((n1, n1), dtype=complex)
    table[:, 0] = _vec_eval(ev, z)
    if zero_block > 1:
        table[:zero_block, 0] = taylor[0]
    for j in range(1, n1):
        for i in range(n1 - j):
            if abs(z[i + j] - z[i]) < 1e-14:
                # confluent block at the origin: divided difference = f_j
                table[i, j] = taylor[j]
            else:
                gap = z[i + j] - z[i]
                num = table[i + 1, j - 1] - table[i, j - 1]
                table[i, j] = num / gap
                if not np.isfinite(table[i, j]):
                    raise ConditioningError(
                        f"divided-difference overflow at node gap {abs(gap):.3e}",
                        gap=abs(gap),
                    )
    return table[0, :].copy(), z


def _newton_eval(coeffs: np.ndarray, z_nodes: np.ndarray, z):
    zz = np.asarray(z, dtype=complex)
    out = np.full(zz.shape, coeffs[-1], dtype=complex)
    for j in range(len(coeffs) - 2, -1, -1):
        out = out * (zz - z_nodes[j]) + coeffs[j]
    return out if zz.shape else complex(out)


def lagrange_detailed(f, nodes: NodeSet) -> InterpResult:
    """Interpolating polynomial of f at the nodes, with conditioning report."""
    dd, z = newton_coefficients(f, nodes)
    # explicit Newton -> monomial conversion
    poly = ComplexPoly([dd[-1]])
    for j in range(len(dd) - 2, -1, -1):
        poly = poly * ComplexPoly([-z[j], 1.0]) + ComplexPoly([dd[j]])
    # cancellation amplification on |z| <= r, relative to the data scale
    growth = 0.0
    basis = 1.0
    for j, c in enumerate(dd):
        growth += abs(c) * basis
        if j < len(z):
            basis *= nodes.r + abs(z[j])
    fvals = np.abs(_vec_eval(f.eval if isinstance(f, (CatalogFunction, ComplexPoly)) else f, z))
    kappa = min(_KAPPA_CAP, max(1.0, growth / (1.0 + float(fvals.max(initial=0.0)))))
    return InterpResult(poly=poly, kappa=kappa, newton_coeffs=dd, nodes=tuple(z))


def lagrange(f, nodes: NodeSet) -> ComplexPoly:
    """Interpolating polynomial of degree <= n at n+1 nodes (Newton form)."""
    return lagrange_detailed(f, nodes).poly


def verify_remainder(f: CatalogFunction, nodes: NodeSet, s: float, R: float,
                     slack: float = 1e-8, sample_tol: float = 1e-10) -> dict:
    """Measure both sides of the remainder inequality and compare.

    lhs is the sampled maximum of |f - L_n f| on |z| = s (evaluated in
    Newton form); rhs is the bound with MRf estimated on |z| = R.
    """
    if not (0 < s < R):
        raise DomainError("need 0 < s < R")
    if nodes.r >= R:
        raise DomainError("need node radius r < R")
    dd, z = newton_coefficients(f, nodes)

    def diff(w):
        return _vec_eval(f.eval, np.asarray(w, dtype=complex)) - _newton_eval(dd, z, w)

    lhs = max_modulus(diff, s, tol=sample_tol)
    MRf = max_modulus(f, R, tol=sample_tol)
    bound = remainder_bound(nodes.r, s, R, len(nodes) - 1, MRf)
    return {
        "lhs": lhs,
        "rhs": bound.value,
        "holds": lhs <= bound.value * (1.0 + slack),
        "bound": bound,
        "MRf": MRf,
    }
