"""Logarithmic Mahler measures in one and two variables.

One variable uses Jensen's formula on certified roots.  Two variables
integrate the one-variable Jensen value of ``p(x, .)`` over ``x`` on the unit
circle.  That integrand is continuous but has kinks where an inner root
crosses the unit circle; those points are located by bisection and the
smooth pieces between them are integrated by composite Gauss-Legendre
quadrature, doubling the node count until successive estimates agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy

from .laurent import CxLaurentPoly, IntLaurentPoly, univariate_roots

GAUSS_ORDER = 16
_GL_X, _GL_W = np.polynomial.legendre.leggauss(GAUSS_ORDER)
_TRIM = 1e-13
# roots this close to the circle do not count as outside when locating kinks;
# their log+ contribution is below the margin anyway
_KINK_MARGIN = 1e-9


@dataclass(frozen=True)
class QuadratureConfig:
    nodes: int = 256
    depth: int = 8
    tol: float = 1e-7

    def __post_init__(self):
        if self.nodes < 16:
            raise ValueError("nodes must be >= 16")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.depth < 1:
            raise ValueError("depth must be >= 1")


@dataclass(frozen=True)
class MahlerValue:
    """``value`` is log M in natural-log units, accurate to ``error``.

    ``heuristic`` marks errors that come from a convergence test rather than
    a rigorous bound; ``converged`` is False when refinement hit its depth
    limit before reaching tolerance.
    """

    value: float
    error: float = 0.0
    heuristic: bool = False
    converged: bool = True

    def __add__(self, other):
        return MahlerValue(self.value + other.value, self.error + other.error,
                           self.heuristic or other.heuristic, self.converged and other.converged)

    def scaled(self, k):
        return MahlerValue(k * self.value, abs(k) * self.error, self.heuristic, self.converged)


def mahler_1d_jensen(p) -> MahlerValue:
    """log M of a univariate Laurent polynomial: log|lead| + sum log+|root|."""
    if p.arity != 1:
        raise ValueError("mahler_1d_jensen needs a univariate polynomial")
    if p.is_zero():
        raise ValueError("Mahler measure of the zero polynomial is undefined")
    roots = univariate_roots(p)
    lead_items = list(p.items())[-1][1]
    if isinstance(p, IntLaurentPoly):
        lead, lead_r = lead_items, 0.0
    else:
        lead, lead_r = lead_items
    a = abs(lead)
    value = math.log(a)
    error = lead_r / (a - lead_r) if lead_r else 0.0
    for z, r in roots:
        m = abs(z)
        value += max(0.0, math.log(m))
        if r:
            hi = max(0.0, math.log(m + r)) - max(0.0, math.log(m))
            lo = max(0.0, math.log(m)) - (max(0.0, math.log(m - r)) if m > r else 0.0)
            error += max(hi, lo)
    return MahlerValue(value, error)


# ---------------------------------------------------------------------------
# integer polynomial helpers for content extraction


def _poly_divmod_q(a, b):
    """Division of ascending Fraction coefficient lists."""
    a = list(a)
    out = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        k = len(a) - len(b)
        q = a[-1] / b[-1]
        out[k] = q
        for i, c in enumerate(b):
            a[i + k] -= q * c
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return out, a


def _poly_gcd_z(a, b):
    """Primitive integer gcd of two integer polynomials (ascending lists)."""
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    while b and any(b):
        _, r = _poly_divmod_q(a, b)
        a, b = b, r
    if not a:
        return [1]
    den = math.lcm(*[x.denominator for x in a])
    ints = [int(x * den) for x in a]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    if ints[-1] < 0:
        ints = [-x for x in ints]
    return ints


def _w1_content(C):
    """Split an integer coefficient matrix ``C[i, j]`` (w1^i w2^j) as h(w1) * Q."""
    cols = []
    for j in range(C.shape[1]):
        col = [int(x) for x in C[:, j]]
        while col and col[-1] == 0:
            col.pop()
        if col:
            cols.append((j, col))
    h = _poly_gcd_z(cols[0][1], [])
    for _, col in cols[1:]:
        if len(h) == 1:
            break
        h = _poly_gcd_z(h, col)
    if len(h) == 1:
        return [1], C
    rows = C.shape[0] - len(h) + 1
    Q = np.zeros((rows, C.shape[1]), dtype=object)
    for j, col in cols:
        q, r = _poly_divmod_q([Fraction(x) for x in col], [Fraction(x) for x in h])
        assert not any(r)
        for i, x in enumerate(q):
            assert x.denominator == 1
            Q[i, j] = int(x)
    return h, Q


def _dense(p):
    """Coefficient matrix of ``p`` after clearing the monomial factor."""
    items = list(p.items())
    lo = [min(e[k] for e, _ in items) for k in range(2)]
    hi = [max(e[k] for e, _ in items) for k in range(2)]
    shape = (hi[0] - lo[0] + 1, hi[1] - lo[1] + 1)
    if isinstance(p, IntLaurentPoly):
        C = np.zeros(shape, dtype=object)
        radius = 0.0
        for e, c in items:
            C[e[0] - lo[0], e[1] - lo[1]] = c
    else:
        C = np.zeros(shape, dtype=complex)
        radius = 0.0
        for e, (v, r) in items:
            C[e[0] - lo[0], e[1] - lo[1]] = complex(v)
            radius += r
    return C, radius


def _fiber_coefficients(C, ts):
    """Coefficients (ascending in w2) of p(e(t), w2) for each t."""
    x = np.exp(2j * np.pi * np.asarray(ts, dtype=float))
    powers = x[:, None] ** np.arange(C.shape[0])[None, :]
    return powers @ C.astype(complex)


def _jensen_batch(V):
    """Vectorized Jensen values and outside-root counts for rows of ``V``.

    Row ``k`` holds ascending coefficients of a polynomial in one variable.
    """
    n, width = V.shape
    mags = np.abs(V)
    scale = mags.max(axis=1)
    values = np.empty(n)
    counts = np.zeros(n, dtype=int)
    live = mags > _TRIM * scale[:, None]
    deg = np.where(live.any(axis=1), width - 1 - np.argmax(live[:, ::-1], axis=1), -1)
    for d in np.unique(deg):
        idx = np.nonzero(deg == d)[0]
        if d < 0:
            values[idx] = -np.inf
            continue
        lead = V[idx, d]
        values[idx] = np.log(np.abs(lead))
        if d == 0:
            continue
        if d == 1:
            r = -V[idx, 0] / lead
            a = np.abs(r)
            values[idx] += np.log(np.maximum(a, 1.0))
            counts[idx] = a > 1 + _KINK_MARGIN
            continue
        comp = np.zeros((len(idx), d, d), dtype=complex)
        comp[:, 0, :] = -(V[idx, :d][:, ::-1]) / lead[:, None]
        comp[:, np.arange(1, d), np.arange(d - 1)] = 1.0
        roots = np.linalg.eigvals(comp)
        a = np.abs(roots)
        values[idx] += np.log(np.maximum(a, 1.0)).sum(axis=1)
        counts[idx] = (a > 1 + _KINK_MARGIN).sum(axis=1)
    return values, counts


def _kinks(C, n):
    """Points in [0, 1) where the number of inner roots outside the circle changes."""
    ts = np.arange(n) / n
    _, counts = _jensen_batch(_fiber_coefficients(C, ts))
    nxt = np.roll(counts, -1)
    idx = np.nonzero(counts != nxt)[0]
    if len(idx) == 0:
        return np.array([])
    lo = ts[idx].copy()
    hi = lo + 1.0 / n
    left = counts[idx]
    for _ in range(44):
        mid = 0.5 * (lo + hi)
        _, c = _jensen_batch(_fiber_coefficients(C, mid))
        same = c == left
        lo = np.where(same, mid, lo)
        hi = np.where(same, hi, mid)
    return np.sort(np.mod(0.5 * (lo + hi), 1.0))


def _piecewise_gauss(C, breaks, n):
    """Integrate the fiber Jensen value over [0, 1] with ~n nodes."""
    edges = np.unique(np.concatenate([[0.0], breaks, [1.0]]))
    a_list, b_list = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        if b - a <= 0:
            continue
        panels = max(1, math.ceil((b - a) * n / GAUSS_ORDER))
        e = np.linspace(a, b, panels + 1)
        a_list.append(e[:-1])
        b_list.append(e[1:])
    a = np.concatenate(a_list)
    b = np.concatenate(b_list)
    half = 0.5 * (b - a)
    nodes = (0.5 * (a + b))[:, None] + half[:, None] * _GL_X[None, :]
    values, _ = _jensen_batch(_fiber_coefficients(C, nodes.ravel()))
    values = values.reshape(nodes.shape)
    panel_sums = (values * _GL_W[None, :]).sum(axis=1) * half
    return math.fsum(panel_sums)


_X, _Y = sympy.symbols("x y")


def squarefree_parts(p: IntLaurentPoly):
    """Write an integer bivariate ``p`` as c * monomial * prod q_i^k_i.

    Returns ``(c, [(q_i, k_i), ...])`` with each ``q_i`` squarefree and
    nonconstant.  Repeated factors are common in norm products and spoil
    the eigenvalue-based inner Jensen values, so they are removed first.
    """
    shifted, _ = p.normalize_monomial()
    poly = sympy.Poly.from_dict(dict(shifted.items()), _X, _Y, domain="ZZ")
    c, parts = poly.sqf_list()
    out = []
    for q, k in parts:
        terms = {m: int(v) for m, v in q.terms()}
        out.append((IntLaurentPoly(terms, 2), int(k)))
    return int(c), out


def mahler_2d(p, cfg: QuadratureConfig | None = None) -> MahlerValue:
    """log M of a bivariate Laurent polynomial.

    The outer variable is the first one (``w1``); the inner Jensen value is
    taken in the second.  Integer input is first split into squarefree
    factors, and a factor depending only on the outer variable is measured
    exactly.
    """
    cfg = cfg or QuadratureConfig()
    if p.arity != 2:
        raise ValueError("mahler_2d needs a bivariate polynomial")
    if p.is_zero():
        raise ValueError("Mahler measure of the zero polynomial is undefined")
    if isinstance(p, IntLaurentPoly) and not p.is_constant():
        c, parts = squarefree_parts(p)
        total = MahlerValue(math.log(abs(c)))
        for q, k in parts:
            total = total + _mahler_2d_single(q, cfg).scaled(k)
        return total
    return _mahler_2d_single(p, cfg)


def _mahler_2d_single(p, cfg):
    C, radius = _dense(p)
    base = MahlerValue(0.0)
    if isinstance(p, IntLaurentPoly):
        h, C = _w1_content(C)
        if len(h) > 1:
            base = mahler_1d_jensen(IntLaurentPoly.from_coeffs(h))
    if C.shape[1] == 1:
        # no dependence on w2: a univariate measure in w1
        col = C[:, 0]
        if isinstance(p, IntLaurentPoly):
            q = IntLaurentPoly.from_coeffs([int(x) for x in col])
        else:
            q = CxLaurentPoly({(i,): (complex(v), 0.0) for i, v in enumerate(col) if v != 0}, 1)
        return base + mahler_1d_jensen(q)
    C = np.asarray(C, dtype=complex)
    prev = None
    diff = math.inf
    est = 0.0
    for level in range(cfg.depth + 1):
        n = cfg.nodes * 2 ** level
        est = _piecewise_gauss(C, _kinks(C, n), n)
        if prev is not None:
            diff = abs(est - prev)
            if diff < cfg.tol:
                break
        prev = est
    converged = diff < cfg.tol
    scale = np.abs(C).max()
    inner = radius / scale if scale else 0.0
    return base + MahlerValue(est, float(diff + inner), heuristic=True, converged=converged)


def direct_double_integral_oracle(p, resolution: int) -> float:
    """Plain Riemann sum of log|p| on a ``resolution`` x ``resolution`` torus grid.

    Nodes where ``|p| < 1e-14`` are skipped.  Meant as an independent
    cross-check only.
    """
    if p.arity != 2:
        raise ValueError("bivariate polynomial required")
    if p.is_zero():
        raise ValueError("zero polynomial")
    C, _ = _dense(p)
    C = np.asarray(C, dtype=complex)
    t = np.arange(resolution) / resolution
    x = np.exp(2j * np.pi * t)
    X = x[:, None] ** np.arange(C.shape[0])[None, :]
    Y = x[:, None] ** np.arange(C.shape[1])[None, :]
    total = 0.0
    chunk = max(1, 2 ** 22 // resolution)
    for start in range(0, resolution, chunk):
        vals = np.abs((X[start:start + chunk] @ C) @ Y.T)
        mask = vals >= 1e-14
        total += np.log(vals[mask]).sum()
    return total / resolution ** 2
