"""Membership in the class ET, mixing certificates and structural reports."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import mpmath

from .laurent import (
    Ball,
    IntLaurentPoly,
    RootRefinementError,
    newton_polygon,
    twist_and_specialize,
    univariate_roots,
)

CYCLOTOMIC_CUTOFF = 1e-4


class UndecidedRootError(ArithmeticError):
    """A root's certified disc touches the unit circle."""

    def __init__(self, root, radius):
        super().__init__(f"cannot decide |z| > 1 for root {root} (radius {radius:.3g})")
        self.root = root
        self.radius = radius


@dataclass(frozen=True)
class SystemPresentation:
    """The module R_3 / <f(u1, u2), g(u3)>.

    ``g`` is stored as a univariate polynomial; its variable is u3.
    ``tol`` optionally overrides the quadrature tolerance for this system.
    """

    name: str
    f: IntLaurentPoly
    g: IntLaurentPoly
    tol: float | None = None

    def __post_init__(self):
        if self.f.arity != 2 or self.g.arity != 1:
            raise ValueError("f must be bivariate and g univariate")
        if self.f.is_zero() or self.g.is_zero():
            raise ValueError("f and g must be nonzero")
        if self.g.has_negative_exponents():
            raise ValueError("g must be an ordinary polynomial")


def is_expanding(g: IntLaurentPoly):
    """Return ``(expanding, margin)`` where margin = min |z| - 1, pessimistic.

    Raises :class:`UndecidedRootError` if a root disc meets the unit circle.
    """
    if g.arity != 1 or g.is_zero():
        raise ValueError("need a nonzero univariate polynomial")
    if g.has_negative_exponents():
        return False, -1.0
    roots = univariate_roots(g)
    if roots.zeros_at_origin:
        return False, -1.0
    if not roots.roots:
        return False, math.inf
    margin = math.inf
    for z, r in roots:
        a = abs(z)
        if abs(a - 1) <= r:
            if not _has_unimodular_factor(g):
                raise UndecidedRootError(z, r)
            # an exact root on the circle: g is certainly not expanding
            return False, min(margin, a - r - 1)
        margin = min(margin, a - r - 1)
    monic = list(g.items())[-1][1] == 1
    return (monic and margin > 0), margin


def _has_unimodular_factor(g):
    """True iff g shares a factor with its reciprocal u^d g(1/u).

    Every root of an integer polynomial on the unit circle is such a common
    root, so a constant gcd rules the circle out.
    """
    from .mahler import _poly_gcd_z

    coeffs = g.coeffs_1d()
    return len(_poly_gcd_z(coeffs, coeffs[::-1])) > 1


def is_triangular(f: IntLaurentPoly):
    """Return ``(triangular, a)``; ``a`` is 0 when the hull is not a corner triangle."""
    if f.is_zero():
        return False, 0
    hull = newton_polygon(f)
    if len(hull) != 3 or hull[0] != (0, 0):
        return False, 0
    a = hull[1][0]
    if a <= 0 or hull[1] != (a, 0) or hull[2] != (0, a):
        return False, 0
    corners_ok = all(abs(f.coeff(c)) == 1 for c in hull)
    return corners_ok, a


@dataclass
class ETReport:
    is_expanding: bool
    margin: float
    is_triangular: bool
    a: int
    diagnostics: list = field(default_factory=list)

    @property
    def is_ET(self):
        return self.is_expanding and self.is_triangular

    def summary(self):
        if self.is_ET:
            return f"ET: yes (a={self.a}, margin={self.margin:.12g})"
        return "ET: no (" + "; ".join(self.diagnostics) + ")"


def is_ET(system: SystemPresentation) -> ETReport:
    expanding, margin = is_expanding(system.g)
    triangular, a = is_triangular(system.f)
    diags = []
    if list(system.g.items())[-1][1] != 1:
        diags.append("g is not monic")
    if margin <= 0:
        diags.append("g has a root in the closed unit disc")
    elif not expanding and not diags:
        diags.append("g is not expanding")
    if not triangular:
        if a == 0:
            diags.append("Newton polygon of f is not a corner triangle")
        else:
            diags.append("a corner coefficient of f is not +-1")
    return ETReport(expanding, margin, triangular, a, diags)


def _is_prime(p):
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def eisenstein(g: IntLaurentPoly, p: int) -> bool:
    """Eisenstein's criterion at the prime ``p``."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    coeffs = g.coeffs_1d()
    if len(coeffs) < 2:
        return False
    lead, rest = coeffs[-1], coeffs[:-1]
    return lead % p != 0 and all(c % p == 0 for c in rest) and coeffs[0] % (p * p) != 0


# ---------------------------------------------------------------------------
# mixing


@dataclass(frozen=True)
class MixingEntry:
    n: tuple
    status: str  # "certified" or "inconclusive"
    witness: tuple | None = None  # (x1, x2, zeta) centers
    value: float | None = None  # |x^n - 1|
    error: float | None = None


@dataclass
class MixingReport:
    bound: int
    entries: list

    @property
    def all_certified(self):
        return all(e.status == "certified" for e in self.entries)

    def certified(self):
        return [e for e in self.entries if e.status == "certified"]


def variety_points(system, radii=(1.0, 1.1, 0.9), nodes=64, extra_x1=()):
    """Points (x1, x2, zeta) as Balls on the variety of <f, g>, in a fixed order."""
    x1s = [Ball(complex(x), abs(complex(x)) * 2.0 ** -52) for x in extra_x1]
    for rho in radii:
        for k in range(nodes):
            x = rho * cmath.exp(2j * math.pi * k / nodes)
            x1s.append(Ball(x, rho * 4 * 2.0 ** -52))
    zetas = univariate_roots(system.g).balls()
    points = []
    for x1 in x1s:
        fiber = twist_and_specialize(system.f, specialize={0: x1})
        if fiber.is_zero() or all(e == (0,) for e, _ in fiber.items()):
            continue
        try:
            x2s = univariate_roots(fiber, radius_bound=1e-9).balls()
        except (RootRefinementError, ValueError):
            continue
        for x2 in x2s:
            if abs(x2.center) <= x2.radius:
                continue
            for z in zetas:
                points.append((x1, x2, z))
    return points


def _monomial_ball(point, n):
    b = Ball(1 + 0j)
    for x, k in zip(point, n):
        if k:
            b = b * (x ** k)
    return b


def mixing_sweep(system: SystemPresentation, bound: int, radii=(1.0, 1.1, 0.9), nodes=64,
                 extra_x1=()) -> MixingReport:
    """Certify u^n - 1 outside <f, g> for every nonzero n in the box |n_i| <= bound.

    A certificate is a variety point where |u^n - 1| exceeds its propagated
    error.  Exponents with no such point are reported as inconclusive.
    """
    points = variety_points(system, radii, nodes, extra_x1)
    rng = range(-bound, bound + 1)
    entries = []
    for n in ((a, b, c) for a in rng for b in rng for c in rng):
        if n == (0, 0, 0):
            continue
        entry = MixingEntry(n, "inconclusive")
        for pt in points:
            val = _monomial_ball(pt, n)
            d = abs(val.center - 1)
            if d - val.radius > 0:
                entry = MixingEntry(n, "certified", tuple(x.center for x in pt), d, val.radius)
                break
        entries.append(entry)
    return MixingReport(bound, entries)


def recheck_witness(system, entry: MixingEntry, dps=40) -> float:
    """Re-evaluate |u^n - 1| at a stored witness with refined roots.

    The stored x1 is kept; x2 and zeta are re-solved at ``dps`` digits.
    Returns the recomputed value.
    """
    x1, x2, zeta = entry.witness
    with mpmath.workdps(dps):
        x1m = mpmath.mpc(x1)
        fiber = twist_and_specialize(system.f, specialize={0: x1m})
        r2 = univariate_roots(fiber, as_mp=True, dps=dps + 20).centers()
        rg = univariate_roots(system.g, as_mp=True, dps=dps + 20).centers()
        x2m = min(r2, key=lambda z: abs(z - x2))
        zm = min(rg, key=lambda z: abs(z - zeta))
        n1, n2, n3 = entry.n
        v = x1m ** n1 * x2m ** n2 * zm ** n3
        return float(abs(v - 1))


# ---------------------------------------------------------------------------
# structural reports


@dataclass(frozen=True)
class ZeroEntropyReport:
    system: str
    zero_entropy: bool
    reason: str


def zero_entropy_report(system: SystemPresentation) -> ZeroEntropyReport:
    """The full Z^3-action has zero entropy when f and g are both nonconstant.

    The defining prime ideal then needs two independent generators, so it is
    not principal and the action carries no entropy.
    """
    f_const = not (system.f.depends_on(0) or system.f.depends_on(1))
    if f_const or system.g.degree() < 1:
        raise ValueError("zero-entropy report needs nonconstant f(u1, u2) and g(u3)")
    return ZeroEntropyReport(
        system.name,
        True,
        "two independent nonconstant relations f(u1,u2) and g(u3): the associated "
        "ideal is not principal, so the Z^3-action has zero entropy",
    )


def is_cpe_sublattice(system, lattice, cfg=None, delta: float = CYCLOTOMIC_CUTOFF):
    """Completely positive entropy test for the sub-action of ``lattice``.

    Returns ``(cpe, evidence)``; evidence holds the tested log Mahler measure.
    Relies on Kronecker's theorem: log M vanishes exactly on products of
    cyclotomic polynomials and monomials.
    """
    from .entropy import Finite, sublattice_entropy
    from .lattice import classify_lattice
    from .mahler import mahler_1d_jensen, mahler_2d

    case = classify_lattice(lattice)
    if case.tag == "generic":
        res = sublattice_entropy(system, lattice, cfg)
        assert isinstance(res, Finite)
        mv = res.value
        source = "relation"
    elif case.tag == "axis":
        mv = mahler_1d_jensen(system.g)
        source = "g"
    else:
        mv = mahler_2d(system.f, cfg)
        source = "f"
    evidence = {"case": case.tag, "source": source, "log_mahler": mv.value, "error": mv.error}
    return mv.value > delta, evidence
