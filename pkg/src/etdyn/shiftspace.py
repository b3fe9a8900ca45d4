"""Finite windows of ET configurations and the half-space region calculators.

A configuration assigns a torus value (a float in [0, 1)) to every integer
point of a box.  The f-relation holds at every placement of f inside one
u3-level; the g-relation holds along every u3-column.  Bottom levels are
filled row by row through the (0, a) corner of f, upper levels through the
monic top coefficient of g.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classify import SystemPresentation, is_triangular

RESIDUAL_LIMIT = 1e-9


class WindowError(ValueError):
    pass


class InconsistentCell(ArithmeticError):
    def __init__(self, coord, residual):
        super().__init__(f"relation at {coord} has residual {residual:.3g}")
        self.coord = coord
        self.residual = residual


def torus_distance(v):
    """Distance to 0 in R/Z, elementwise."""
    v = np.asarray(v, dtype=float)
    return np.abs(v - np.round(v))


@dataclass(frozen=True)
class WindowConfigSpace:
    dims: tuple
    system: SystemPresentation
    a: int
    f_terms: tuple  # ((k1, k2), coeff) pairs
    g_coeffs: tuple  # ascending, monic
    free_set: tuple

    @property
    def f_placements(self):
        L1, L2, L3 = self.dims
        return (L1 - self.a) * (L2 - self.a) * L3

    @property
    def g_placements(self):
        L1, L2, L3 = self.dims
        return L1 * L2 * (L3 - self.g_degree)

    @property
    def g_degree(self):
        return len(self.g_coeffs) - 1

    @property
    def size(self):
        return math.prod(self.dims)


def build_window(system: SystemPresentation, dims) -> WindowConfigSpace:
    dims = tuple(int(d) for d in dims)
    if len(dims) != 3 or min(dims) < 1:
        raise WindowError("dims must be three positive integers")
    triangular, a = is_triangular(system.f)
    g_coeffs = system.g.coeffs_1d()
    if not triangular:
        raise WindowError("f is not triangular")
    if g_coeffs[-1] != 1:
        raise WindowError("g is not monic")
    d = len(g_coeffs) - 1
    L1, L2, L3 = dims
    if L1 < a + 1 or L2 < a + 1:
        raise WindowError(f"window {dims} is smaller than the f stencil (span {a})")
    if L3 < d + 1:
        raise WindowError(f"window {dims} is smaller than the g stencil (span {d})")
    free = []
    for n3 in range(d):
        for n2 in range(L2):
            for n1 in range(L1):
                if n2 < a or n1 > L1 - 1 - a:
                    free.append((n1, n2, n3))
    return WindowConfigSpace(dims, system, a, tuple(system.f.items()), tuple(g_coeffs), tuple(free))


@dataclass
class WindowConfig:
    space: WindowConfigSpace
    values: np.ndarray  # shape dims, entries in [0, 1)

    @property
    def free_set(self):
        return self.space.free_set

    def __getitem__(self, coord):
        return float(self.values[tuple(coord)])

    def items(self):
        L1, L2, L3 = self.space.dims
        for n1 in range(L1):
            for n2 in range(L2):
                for n3 in range(L3):
                    yield (n1, n2, n3), float(self.values[n1, n2, n3])


def complete_window(space: WindowConfigSpace, seeds) -> WindowConfig:
    """Fill the window from values on ``space.free_set``.

    ``seeds`` maps free coordinates to values in [0, 1).
    """
    L1, L2, L3 = space.dims
    a = space.a
    x = np.zeros(space.dims)
    missing = [c for c in space.free_set if c not in seeds]
    if missing:
        raise WindowError(f"no seed for free coordinate {missing[0]}")
    free = set(space.free_set)
    for c, v in seeds.items():
        c = tuple(c)
        if c not in free:
            raise WindowError(f"{c} is not a free coordinate")
        x[c] = float(v) % 1.0
    corner = dict(space.f_terms)[(0, a)]
    others = [(k, c) for k, c in space.f_terms if k != (0, a)]
    width = L1 - a
    d = space.g_degree
    for n3 in range(d):
        for n2 in range(a, L2):
            acc = np.zeros(width)
            base = n2 - a
            for (k1, k2), c in others:
                acc += c * x[k1:k1 + width, base + k2, n3]
            # corner coefficient is +-1, its own inverse
            x[:width, n2, n3] = np.mod(-corner * acc, 1.0)
    g = space.g_coeffs
    for n3 in range(d, L3):
        acc = np.zeros((L1, L2))
        for j in range(d):
            acc += g[j] * x[:, :, n3 - d + j]
        x[:, :, n3] = np.mod(-acc, 1.0)
    cfg = WindowConfig(space, x)
    res, where = _worst_residual(cfg)
    if res >= RESIDUAL_LIMIT:
        raise InconsistentCell(where, res)
    return cfg


def _relation_values(cfg):
    """Arrays of f- and g-relation values at every placement."""
    space = cfg.space
    x = cfg.values
    L1, L2, L3 = space.dims
    a = space.a
    fv = np.zeros((L1 - a, L2 - a, L3))
    for (k1, k2), c in space.f_terms:
        fv += c * x[k1:k1 + L1 - a, k2:k2 + L2 - a, :]
    d = space.g_degree
    gv = np.zeros((L1, L2, L3 - d))
    for j, c in enumerate(space.g_coeffs):
        gv += c * x[:, :, j:j + L3 - d]
    return fv, gv


def _worst_residual(cfg):
    fv, gv = _relation_values(cfg)
    best, where = 0.0, None
    for arr, tag in ((fv, "f"), (gv, "g")):
        if arr.size:
            dist = torus_distance(arr)
            i = np.unravel_index(np.argmax(dist), dist.shape)
            if dist[i] > best:
                best, where = float(dist[i]), (tag,) + tuple(int(v) for v in i)
    return best, where


def verify_window(cfg: WindowConfig) -> float:
    """Largest distance to 0 in R/Z over all relation placements."""
    return _worst_residual(cfg)[0]


def relation_matrix(space: WindowConfigSpace) -> np.ndarray:
    """Real matrix of all stencil relations, one row per placement."""
    L1, L2, L3 = space.dims
    index = {c: i for i, c in enumerate(np.ndindex(*space.dims))}
    rows = []
    a = space.a
    for n3 in range(L3):
        for n2 in range(L2 - a):
            for n1 in range(L1 - a):
                r = np.zeros(len(index))
                for (k1, k2), c in space.f_terms:
                    r[index[(n1 + k1, n2 + k2, n3)]] += c
                rows.append(r)
    d = space.g_degree
    for n3 in range(L3 - d):
        for n2 in range(L2):
            for n1 in range(L1):
                r = np.zeros(len(index))
                for j, c in enumerate(space.g_coeffs):
                    r[index[(n1, n2, n3 + j)]] += c
                rows.append(r)
    return np.array(rows)


# ---------------------------------------------------------------------------
# half-space regions


def region_membership(N: int, point) -> str:
    """``"S_N"``, ``"U_N"`` or ``"neither"`` for an integer 3-vector.

    S_N = {m2 >= 0, m3 >= N} u {m2 >= N};  U_N = {0 <= m2 < N, 0 <= m3 < N}.
    With N = 1 these are the future S (read as {m2 >= 0, m3 >= 1} u {m2 >= 1})
    and the present U = Z e1.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    _, m2, m3 = point
    if (m2 >= 0 and m3 >= N) or m2 >= N:
        return "S_N"
    if 0 <= m2 < N and 0 <= m3 < N:
        return "U_N"
    return "neither"


def section4_bounds(M: int, N: int, K: float, h: float):
    """Return (2 M N log K, N^2 h): the counting bound and the scaled entropy."""
    if not M < N:
        raise ValueError("need M < N")
    if N < 1 or K < 2 or h < 0:
        raise ValueError("need N >= 1, K >= 2, h >= 0")
    return 2 * M * N * math.log(K), N * N * h
