"""Rank-two subgroups of Z^3 and planar lattices in Z^2."""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction


class RankError(ValueError):
    pass


def _xgcd(a, b):
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _det2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _rank2(r1, r2):
    """True iff two integer 3-vectors are independent over Q."""
    c = (r1[1] * r2[2] - r1[2] * r2[1], r1[2] * r2[0] - r1[0] * r2[2], r1[0] * r2[1] - r1[1] * r2[0])
    return any(c)


def hermite_rows(rows):
    """Row-style Hermite normal form of an integer matrix with independent rows.

    Pivots are positive, entries above a pivot are reduced into [0, pivot).
    """
    m = [list(r) for r in rows]
    ncols = len(m[0])
    pivot_row = 0
    for col in range(ncols):
        if pivot_row == len(m):
            break
        # gcd-eliminate column `col` below pivot_row
        for i in range(pivot_row + 1, len(m)):
            a, b = m[pivot_row][col], m[i][col]
            if b == 0:
                continue
            g, x, y = _xgcd(a, b)
            ra, rb = m[pivot_row], m[i]
            m[pivot_row] = [x * p + y * q for p, q in zip(ra, rb)]
            m[i] = [(-b // g) * p + (a // g) * q for p, q in zip(ra, rb)]
        if m[pivot_row][col] == 0:
            continue
        if m[pivot_row][col] < 0:
            m[pivot_row] = [-v for v in m[pivot_row]]
        piv = m[pivot_row][col]
        for i in range(pivot_row):
            q = m[i][col] // piv
            if q:
                m[i] = [p - q * r for p, r in zip(m[i], m[pivot_row])]
        pivot_row += 1
    if any(not any(r) for r in m):
        raise RankError("rows are not independent")
    return tuple(tuple(r) for r in m)


@dataclass(frozen=True)
class SublatticeBasis:
    """A rank-two subgroup of Z^3 given by two basis rows."""

    rows: tuple
    canonical: bool = False

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if len(rows) != 2 or any(len(r) != 3 for r in rows):
            raise ValueError("need two integer 3-vectors")
        if not _rank2(*rows):
            raise RankError("basis rows are dependent")
        object.__setattr__(self, "rows", rows)

    def __str__(self):
        return ";".join(",".join(str(x) for x in r) for r in self.rows)

    def scaled(self, k):
        return normal_form([[k * x for x in r] for r in self.rows])

    def contains(self, v):
        """True iff the integer vector v lies in the subgroup."""
        (a, b) = self.rows
        # solve x*a + y*b = v over Q using a nonzero 2x2 minor
        for i, j in itertools.combinations(range(3), 2):
            d = a[i] * b[j] - a[j] * b[i]
            if d:
                x = Fraction(v[i] * b[j] - v[j] * b[i], d)
                y = Fraction(a[i] * v[j] - a[j] * v[i], d)
                break
        if x.denominator != 1 or y.denominator != 1:
            return False
        return all(x * a[k] + y * b[k] == v[k] for k in range(3))


def normal_form(rows) -> SublatticeBasis:
    rows = [tuple(int(x) for x in r) for r in rows]
    if len(rows) != 2 or not _rank2(*rows):
        raise RankError("need two independent rows")
    return SublatticeBasis(hermite_rows(rows), canonical=True)


def parse_lattice(text: str) -> SublatticeBasis:
    """Parse ``"a,b,c;d,e,f"`` into a canonical basis."""
    try:
        rows = [[int(x) for x in part.split(",")] for part in text.split(";")]
    except ValueError as exc:
        raise ValueError(f"bad lattice {text!r}") from exc
    if len(rows) != 2 or any(len(r) != 3 for r in rows):
        raise ValueError(f"bad lattice {text!r}: need two rows of three integers")
    return normal_form(rows)


@dataclass(frozen=True)
class LatticeCase:
    """Case of a rank-two subgroup.

    ``tag`` is ``"planar"``, ``"axis"`` or ``"generic"``.  For generic
    lattices ``n`` spans the intersection with Z^2 x {0} and ``{n, m}`` is an
    exact basis with ``m[2] > 0``.  For axis lattices ``axis`` is the
    positive generator ``c`` of the intersection with Z e3.
    """

    tag: str
    lattice: SublatticeBasis
    n: tuple | None = None
    m: tuple | None = None
    axis: int | None = None

    @property
    def m3(self):
        return self.m[2]


def classify_lattice(lat: SublatticeBasis) -> LatticeCase:
    if not lat.canonical:
        lat = normal_form(lat.rows)
    b1, b2 = lat.rows
    if b1[2] == 0 and b2[2] == 0:
        return LatticeCase("planar", lat)
    if _det2(b1[:2], b2[:2]) == 0:
        x, y = _primitive_kernel(b1[:2], b2[:2])
        c = abs(x * b1[2] + y * b2[2])
        return LatticeCase("axis", lat, axis=c)
    g = math.gcd(b1[2], b2[2])
    x, y = b2[2] // g, -b1[2] // g
    n = tuple(x * p + y * q for p, q in zip(b1, b2))
    if next(v for v in n if v) < 0:
        n = tuple(-v for v in n)
        x, y = -x, -y
    # complete (x, y) to a unimodular matrix [[x, y], [p, q]]
    _, q, mp = _xgcd(x, y)
    p = -mp
    m = tuple(p * a + q * b for a, b in zip(b1, b2))
    if m[2] < 0:
        m = tuple(-v for v in m)
    # reduce m modulo n on the first nonzero coordinate of n
    i = next(k for k, v in enumerate(n) if v)
    k = m[i] // n[i]
    m = tuple(a - k * b for a, b in zip(m, n))
    return LatticeCase("generic", lat, n=n, m=m)


def _primitive_kernel(a, b):
    """Primitive (x, y) with x*a + y*b = 0 for parallel 2-vectors a, b."""
    if not any(a):
        return 1, 0
    i = 0 if (a[0] or b[0]) else 1
    g = math.gcd(a[i], b[i])
    return b[i] // g, -a[i] // g


@dataclass(frozen=True)
class PlanarLattice:
    rows: tuple

    @property
    def index(self):
        return abs(_det2(*self.rows))


def planar_projection(case: LatticeCase) -> PlanarLattice:
    if case.tag != "generic":
        raise ValueError("planar projection is defined for generic lattices")
    return PlanarLattice((case.n[:2], case.m[:2]))


def smith_normal_form(a):
    """Smith form ``A = U @ D @ V`` of a nonsingular 2x2 integer matrix.

    Returns ``(U, D, V)`` as nested tuples; ``D = diag(d1, d2)`` with
    ``0 < d1 | d2`` and ``U``, ``V`` unimodular.
    """
    a = [list(map(int, r)) for r in a]
    if _det2(*a) == 0:
        raise ValueError("singular matrix")
    # track L @ A @ R = D with L, R unimodular, then U = L^-1, V = R^-1
    L = [[1, 0], [0, 1]]
    R = [[1, 0], [0, 1]]
    m = [row[:] for row in a]

    def row_op(M, T):
        return [[sum(T[i][k] * M[k][j] for k in range(2)) for j in range(2)] for i in range(2)]

    def col_op(M, T):
        return [[sum(M[i][k] * T[k][j] for k in range(2)) for j in range(2)] for i in range(2)]

    while True:
        # move a nonzero entry of smallest magnitude to (0, 0)
        entries = [(abs(m[i][j]), i, j) for i in range(2) for j in range(2) if m[i][j]]
        _, i, j = min(entries)
        if i:
            P = [[0, 1], [1, 0]]
            m, L = row_op(m, P), row_op(L, P)
        if j:
            P = [[0, 1], [1, 0]]
            m, R = col_op(m, P), col_op(R, P)
        done = True
        if m[1][0]:
            q = m[1][0] // m[0][0]
            T = [[1, 0], [-q, 1]]
            m, L = row_op(m, T), row_op(L, T)
            done = done and m[1][0] == 0
        if m[0][1]:
            q = m[0][1] // m[0][0]
            T = [[1, -q], [0, 1]]
            m, R = col_op(m, T), col_op(R, T)
            done = done and m[0][1] == 0
        if not done:
            continue
        if m[1][1] % m[0][0]:
            # fold d2 into the first row and repeat
            T = [[1, 1], [0, 1]]
            m, L = row_op(m, T), row_op(L, T)
            continue
        break
    if m[0][0] < 0:
        T = [[-1, 0], [0, 1]]
        m, L = row_op(m, T), row_op(L, T)
    if m[1][1] < 0:
        T = [[1, 0], [0, -1]]
        m, L = row_op(m, T), row_op(L, T)
    U = _inv_unimodular(L)
    V = _inv_unimodular(R)
    D = ((m[0][0], 0), (0, m[1][1]))
    return tuple(map(tuple, U)), D, tuple(map(tuple, V))


def _inv_unimodular(M):
    d = _det2(*M)
    if d not in (1, -1):
        raise AssertionError("not unimodular")
    return [[M[1][1] * d, -M[0][1] * d], [-M[1][0] * d, M[0][0] * d]]


@dataclass(frozen=True)
class TorsionPoint:
    """A character of Z^2 / L stored as exact turns: ``omega_i = exp(2 pi i t_i)``."""

    turns: tuple

    def value(self):
        return tuple(cmath.exp(2j * math.pi * float(t)) for t in self.turns)

    def pairing(self, v):
        """Turns of omega^v; an integer iff omega^v == 1."""
        return sum(t * x for t, x in zip(self.turns, v))


def dual_torsion_points(lat: PlanarLattice) -> list:
    """All characters of Z^2 / L as exact turn pairs in [0, 1)^2."""
    B = [list(r) for r in lat.rows]
    # theta is a character iff B @ theta is integral; with B = U D V,
    # theta = V^-1 D^-1 k for k in Z/d1 x Z/d2.
    U, D, V = smith_normal_form(B)
    Vi = _inv_unimodular([list(r) for r in V])
    d1, d2 = D[0][0], D[1][1]
    out = set()
    for k1 in range(d1):
        for k2 in range(d2):
            y = (Fraction(k1, d1), Fraction(k2, d2))
            th = tuple(Vi[i][0] * y[0] + Vi[i][1] * y[1] for i in range(2))
            out.add(tuple(t - math.floor(t) for t in th))
    return [TorsionPoint(t) for t in sorted(out)]


def enumerate_sublattices(bound: int) -> list:
    """Distinct rank-two subgroups with a basis whose entries lie in [-bound, bound]."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    rng = range(-bound, bound + 1)
    vecs = [v for v in itertools.product(rng, repeat=3) if any(v)]
    seen = set()
    for a, b in itertools.combinations(vecs, 2):
        if _rank2(a, b):
            seen.add(hermite_rows([a, b]))
    return [SublatticeBasis(r, canonical=True) for r in sorted(seen)]
