"""Entropy of rank-two sub-actions and Z^2-entropy equivalence.

For a generic rank-two subgroup with exact basis {n, m} (n in the
u1,u2-plane, m3 > 0) the sub-action is governed by a single relation in
w1 = u^n, w3 = u^m.  It is built in two steps:

1. ``norm_product``: the product of f(omega1 u1, omega2 u2) over all
   characters omega of Z^2/L, where L is the planar projection of the
   subgroup, rewritten in w1 = u^n', w2 = u^m'.  This equals the eliminated
   relation raised to its multiplicity, up to a unit.
2. ``g_twisted_relation``: the product over the roots zeta of g of
   F(w1, w3 zeta^-m3), cleared by |g(0)|^(m3 * span) and made primitive.

The entropy is the logarithmic Mahler measure of the result.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field

import mpmath

from .classify import SystemPresentation, is_ET
from .laurent import (
    CxLaurentPoly,
    IntLaurentPoly,
    LatticeSupportError,
    reexpress_on_lattice,
    twist_and_specialize,
    univariate_roots,
)
from .lattice import (
    PlanarLattice,
    SublatticeBasis,
    classify_lattice,
    dual_torsion_points,
    normal_form,
    planar_projection,
)
from .mahler import MahlerValue, QuadratureConfig, mahler_1d_jensen, mahler_2d

log = logging.getLogger(__name__)

ROUNDING_RESIDUAL = 1e-6
ESCALATED_DPS = 60


class NumericFailure(ArithmeticError):
    pass


class EntropyError(RuntimeError):
    def __init__(self, stage, cause):
        super().__init__(f"{stage} failed: {cause}")
        self.stage = stage
        self.cause = cause


# ---------------------------------------------------------------------------
# relation construction


def _torsion_value(tp, mp_mode):
    if mp_mode:
        return tuple(mpmath.expjpi(2 * mpmath.mpf(t.numerator) / t.denominator) for t in tp.turns)
    return tp.value()


def _norm_product_cx(f, lat, mp_mode):
    prod = None
    for tp in dual_torsion_points(lat):
        w = _torsion_value(tp, mp_mode)
        twisted = twist_and_specialize(f, scale={0: w[0], 1: w[1]})
        prod = twisted if prod is None else prod * twisted
    return prod


def norm_product(f: IntLaurentPoly, lat: PlanarLattice, seed: int = 0) -> IntLaurentPoly:
    """Product of ``f`` over the character twists of Z^2/L, in lattice coordinates."""
    if f.is_zero():
        raise ValueError("f must be nonzero")
    if lat.index == 1:
        return reexpress_on_lattice(f, lat.rows)
    last = None
    for mp_mode in (False, True):
        with mpmath.workdps(ESCALATED_DPS):
            prod = _norm_product_cx(f, lat, mp_mode)
            rounded, residual = prod.round_to_int()
        if residual < ROUNDING_RESIDUAL:
            break
        last = residual
        log.debug("norm product residual %.3g, escalating precision", residual)
    else:
        raise NumericFailure(f"norm product rounding residual {last:.3g}")
    try:
        result = reexpress_on_lattice(rounded, lat.rows)
    except LatticeSupportError as exc:
        raise AssertionError(f"norm product not supported on the lattice: {exc}") from exc
    _spot_check_norm(f, lat, result, seed)
    return result


def _spot_check_norm(f, lat, result, seed, points=8):
    rng = random.Random(seed)
    tps = [tp.value() for tp in dual_torsion_points(lat)]
    (a, b), (c, d) = lat.rows
    for _ in range(points):
        u = [complex(mpmath.expjpi(2 * rng.random())) for _ in range(2)]
        direct = 1
        for w1, w2 in tps:
            direct *= f(w1 * u[0], w2 * u[1])
        w = (u[0] ** a * u[1] ** b, u[0] ** c * u[1] ** d)
        got = result(*w)
        if abs(direct - got) > ROUNDING_RESIDUAL * max(1.0, abs(direct)):
            raise NumericFailure(f"norm product spot check failed: {direct} vs {got}")


def g_twisted_relation(fbar: IntLaurentPoly, g: IntLaurentPoly, m3: int) -> IntLaurentPoly:
    """Primitive integer relation in (w1, w3) obtained by w2 -> w3 zeta^-m3.

    The product runs over the roots of ``g`` with multiplicity and is cleared
    by |g(0)|^(|m3| * span) where span is the w2-degree span of ``fbar``.
    """
    if m3 == 0:
        raise ValueError("m3 must be nonzero")
    if fbar.arity != 2 or fbar.is_zero():
        raise ValueError("fbar must be a nonzero bivariate polynomial")
    g0 = g.coeff((0,))
    if g0 == 0:
        raise ValueError("g(0) must be nonzero")
    shifted, low = fbar.normalize_monomial()
    span = shifted.max_exponents()[1]
    clearing = abs(g0) ** (abs(m3) * span)
    last = None
    for dps in (None, ESCALATED_DPS):
        if dps is None:
            balls = univariate_roots(g).balls()
            prod = CxLaurentPoly.constant(complex(clearing), 2)
        else:
            with mpmath.workdps(dps):
                roots = univariate_roots(g, as_mp=True, dps=dps + 20)
                balls = roots.balls()
                prod = CxLaurentPoly.constant(mpmath.mpc(clearing), 2)
        with mpmath.workdps(dps or 15):
            for zeta in balls:
                twist = zeta ** (-m3)
                prod = prod * twist_and_specialize(shifted, scale={1: twist})
            rounded, residual = prod.round_to_int()
        if residual < ROUNDING_RESIDUAL:
            break
        last = residual
        log.debug("twisted relation residual %.3g, escalating precision", residual)
    else:
        raise NumericFailure(f"twisted relation rounding residual {last:.3g}")
    deg_g = len(univariate_roots(g))
    # restore the monomial factor removed above (w1^low1 w3^low2 per root)
    result = rounded.shift((low[0] * deg_g, low[1] * deg_g))
    return result.primitive()


# ---------------------------------------------------------------------------
# results


@dataclass(frozen=True)
class Finite:
    value: MahlerValue
    relation: IntLaurentPoly | None = None
    variant = "finite"


@dataclass(frozen=True)
class MultipleOfLogMahlerG:
    """Entropy is an unknown positive multiple of log M(g) fixed by the geometry."""

    base: MahlerValue
    geometry_key: str
    f_key: str
    variant = "multiple_of_log_mahler_g"


@dataclass(frozen=True)
class PlanarStructural:
    f_key: str
    variant = "planar_structural"


EntropyResult = Finite | MultipleOfLogMahlerG | PlanarStructural


def f_key(f: IntLaurentPoly) -> str:
    return str(f.primitive())


def generic_relation(system: SystemPresentation, lattice: SublatticeBasis) -> IntLaurentPoly:
    """Integer relation in (w1, w3) whose Mahler measure is the generic entropy."""
    case = classify_lattice(lattice)
    if case.tag != "generic":
        raise ValueError("generic_relation needs a generic lattice")
    stage = "norm_product"
    try:
        fbar = norm_product(system.f, planar_projection(case))
        stage = "g_twisted_relation"
        return g_twisted_relation(fbar, system.g, case.m3)
    except (ArithmeticError, ValueError) as exc:
        raise EntropyError(stage, exc) from exc


def sublattice_entropy(system: SystemPresentation, lattice: SublatticeBasis,
                       cfg: QuadratureConfig | None = None, check_et: bool = True) -> EntropyResult:
    """Entropy of the sub-action of a rank-two subgroup."""
    if check_et and not is_ET(system).is_ET:
        raise ValueError(f"system {system.name!r} is not ET")
    lattice = normal_form(lattice.rows)
    case = classify_lattice(lattice)
    if case.tag == "planar":
        return PlanarStructural(f_key(system.f))
    if case.tag == "axis":
        return MultipleOfLogMahlerG(mahler_1d_jensen(system.g), str(lattice), f_key(system.f))
    relation = generic_relation(system, lattice)
    try:
        value = mahler_2d(relation, cfg)
    except (ArithmeticError, ValueError) as exc:
        raise EntropyError("mahler_2d", exc) from exc
    return Finite(value, relation)


# ---------------------------------------------------------------------------
# equivalence


@dataclass(frozen=True)
class EquivalenceRow:
    lattice: SublatticeBasis
    result1: EntropyResult | None
    result2: EntropyResult | None
    verdict: str  # equal, distinct, structural-equal, incomparable, inconclusive
    note: str = ""


@dataclass
class EquivalenceReport:
    rows: list = field(default_factory=list)

    @property
    def verdict(self):
        kinds = {r.verdict for r in self.rows}
        if "distinct" in kinds:
            return "not-equivalent"
        if kinds <= {"equal", "structural-equal"}:
            return "equivalent"
        return "inconclusive"


def compare_results(r1, r2, tol):
    """Row verdict for two entropy results.

    Finite values closer than ``tol`` plus both errors are equal; further
    apart than twice that they are distinct; in between is inconclusive.
    """
    if type(r1) is not type(r2):
        return "incomparable"
    if isinstance(r1, Finite):
        bound = tol + r1.value.error + r2.value.error
        diff = abs(r1.value.value - r2.value.value)
        if diff < bound:
            return "equal"
        if diff > 2 * bound:
            return "distinct"
        return "inconclusive"
    if isinstance(r1, MultipleOfLogMahlerG):
        if r1.geometry_key != r2.geometry_key or r1.f_key != r2.f_key:
            return "incomparable"
        bound = tol + r1.base.error + r2.base.error
        diff = abs(r1.base.value - r2.base.value)
        if diff < bound:
            return "structural-equal"
        if diff > 2 * bound:
            return "distinct"
        return "inconclusive"
    return "structural-equal" if r1.f_key == r2.f_key else "incomparable"


def entropy_equivalent(sys1, sys2, family, cfg: QuadratureConfig | None = None,
                       tol: float = 1e-5) -> EquivalenceReport:
    report = EquivalenceReport()
    for lat in family:
        try:
            r1 = sublattice_entropy(sys1, lat, cfg)
            r2 = sublattice_entropy(sys2, lat, cfg)
        except (EntropyError, ArithmeticError, ValueError) as exc:
            report.rows.append(EquivalenceRow(lat, None, None, "inconclusive", str(exc)))
            continue
        report.rows.append(EquivalenceRow(lat, r1, r2, compare_results(r1, r2, tol)))
    return report
