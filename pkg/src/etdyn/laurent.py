"""Sparse Laurent polynomials in up to three variables.

Integer polynomials (:class:`IntLaurentPoly`) are exact and use Python's
arbitrary precision integers.  Complex polynomials (:class:`CxLaurentPoly`)
carry an error radius next to every coefficient so that twisted products can
be rounded back to integers with a checked residual.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import mpmath
import numpy as np
import sympy

Exponent = tuple  # tuple[int, ...]

DOUBLE_EPS = 2.0 ** -52
ROOT_RADIUS_BOUND = 1e-12


class PolynomialSyntaxError(ValueError):
    """Raised by :func:`parse_poly`; ``offset`` is the byte offset of the problem."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class LatticeSupportError(ValueError):
    def __init__(self, exponent):
        super().__init__(f"exponent {exponent} is not in the lattice")
        self.exponent = exponent


class RootRefinementError(ArithmeticError):
    def __init__(self, achieved):
        super().__init__(f"root refinement reached radius {achieved:.3g} only")
        self.achieved = achieved


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class IntLaurentPoly:
    """Immutable sparse Laurent polynomial with integer coefficients.

    ``terms`` maps exponent tuples of length ``arity`` to nonzero ints.
    """

    __slots__ = ("_terms", "arity", "_key")

    def __init__(self, terms: Mapping[Exponent, int] | None = None, arity: int = 1):
        if arity not in (1, 2, 3):
            raise ValueError("arity must be 1, 2 or 3")
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != arity:
                raise ValueError(f"exponent {exp} does not have arity {arity}")
            if isinstance(c, bool) or int(c) != c:
                raise TypeError(f"non-integer coefficient {c!r}")
            c = int(c)
            if c:
                clean[exp] = c
        self._terms = dict(sorted(clean.items()))
        self.arity = arity
        self._key = tuple(self._terms.items())

    # construction helpers
    @classmethod
    def constant(cls, c, arity=1):
        return cls({(0,) * arity: c}, arity)

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls({tuple(exp): coeff}, len(exp))

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int]):
        """Univariate polynomial from ascending coefficients."""
        return cls({(i,): c for i, c in enumerate(coeffs)}, 1)

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def coeff(self, exp):
        return self._terms.get(tuple(exp), 0)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntLaurentPoly.constant(other, self.arity)
        if not isinstance(other, IntLaurentPoly):
            return NotImplemented
        return self.arity == other.arity and self._key == other._key

    def __hash__(self):
        return hash((self.arity, self._key))

    def __repr__(self):
        return f"IntLaurentPoly({format_poly(self)!r}, arity={self.arity})"

    def __str__(self):
        return format_poly(self)

    # ring operations
    def _coerce(self, other):
        if isinstance(other, int):
            return IntLaurentPoly.constant(other, self.arity)
        if isinstance(other, IntLaurentPoly):
            if other.arity != self.arity:
                raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")
            return other
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return IntLaurentPoly(out, self.arity)

    __radd__ = __add__

    def __neg__(self):
        return IntLaurentPoly({e: -c for e, c in self._terms.items()}, self.arity)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = _add_exp(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return IntLaurentPoly(out, self.arity)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = IntLaurentPoly.constant(1, self.arity)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # structure
    def content(self):
        g = 0
        for c in self._terms.values():
            g = math.gcd(g, c)
        return g

    def primitive(self):
        """Divide by the content; sign chosen so the lex-largest term is positive."""
        if self.is_zero():
            raise ValueError("zero polynomial has no primitive part")
        g = self.content()
        last = next(reversed(self._terms.values()))
        if last < 0:
            g = -g
        return IntLaurentPoly({e: c // g for e, c in self._terms.items()}, self.arity)

    def min_exponents(self):
        return tuple(min(e[i] for e in self._terms) for i in range(self.arity))

    def max_exponents(self):
        return tuple(max(e[i] for e in self._terms) for i in range(self.arity))

    def shift(self, exp):
        """Multiply by the monomial u^exp."""
        return IntLaurentPoly({_add_exp(e, exp): c for e, c in self._terms.items()}, self.arity)

    def normalize_monomial(self):
        """Return (q, k) with self = u^k * q and q a polynomial not divisible by any u_i."""
        if self.is_zero():
            return self, (0,) * self.arity
        k = self.min_exponents()
        return self.shift(tuple(-x for x in k)), k

    def is_constant(self):
        return all(e == (0,) * self.arity for e in self._terms)

    def depends_on(self, var):
        return any(e[var] != 0 for e in self._terms)

    def has_negative_exponents(self):
        return any(x < 0 for e in self._terms for x in e)

    def degree(self):
        """Degree of a univariate polynomial (highest exponent)."""
        if self.arity != 1:
            raise ValueError("degree() is for univariate polynomials")
        return max(e[0] for e in self._terms) if self._terms else -1

    def coeffs_1d(self):
        """Ascending coefficient list of a univariate polynomial with exponents >= 0."""
        if self.arity != 1 or self.has_negative_exponents():
            raise ValueError("need a univariate ordinary polynomial")
        if self.is_zero():
            return []
        out = [0] * (self.degree() + 1)
        for (e,), c in self._terms.items():
            out[e] = c
        return out

    def evaluate(self, *point):
        """Evaluate at a point; arguments may be complex scalars or numpy arrays."""
        if len(point) != self.arity:
            raise ValueError("wrong number of arguments")
        total = 0
        for e, c in self._terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x ** k
            total = total + term
        return total

    __call__ = evaluate

    def to_cx(self):
        return CxLaurentPoly({e: (complex(c), 0.0) for e, c in self._terms.items()}, self.arity)


@dataclass(frozen=True)
class Ball:
    """Complex disc ``center +- radius``; ``center`` may be complex or mpc."""

    center: complex
    radius: float = 0.0

    def __mul__(self, other):
        if not isinstance(other, Ball):
            other = Ball(other)
        c = self.center * other.center
        a, b = abs(self.center), abs(other.center)
        r = a * other.radius + b * self.radius + self.radius * other.radius
        return Ball(c, float(r + _eps_of(c) * abs(c)))

    def inverse(self):
        a = abs(self.center)
        if a <= self.radius:
            raise ZeroDivisionError("ball contains zero")
        c = 1 / self.center
        r = self.radius / (a * (a - self.radius))
        return Ball(c, float(r + _eps_of(c) * abs(c)))

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = Ball(_one_like(self.center))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


def _eps_of(x):
    if isinstance(x, (mpmath.mpc, mpmath.mpf)):
        return float(mpmath.mpf(2) ** (-mpmath.mp.prec + 1))
    return DOUBLE_EPS


def _one_like(x):
    if isinstance(x, (mpmath.mpc, mpmath.mpf)):
        return mpmath.mpc(1)
    return 1 + 0j


class CxLaurentPoly:
    """Sparse Laurent polynomial with complex coefficients and error radii.

    Each term stores ``(value, radius)``; the true coefficient lies within
    ``radius`` of ``value``.  Values are Python complex numbers, or
    ``mpmath.mpc`` when working at extended precision.
    """

    __slots__ = ("_terms", "arity")

    def __init__(self, terms: Mapping[Exponent, tuple] | None = None, arity: int = 1):
        clean = {}
        for exp, (v, r) in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != arity:
                raise ValueError(f"exponent {exp} does not have arity {arity}")
            if v == 0 and r == 0:
                continue
            clean[exp] = (v, float(r))
        self._terms = dict(sorted(clean.items()))
        self.arity = arity

    @classmethod
    def constant(cls, c, arity=1, radius=0.0):
        return cls({(0,) * arity: (c, radius)}, arity)

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def max_radius(self):
        return max((r for _, r in self._terms.values()), default=0.0)

    def __add__(self, other):
        if isinstance(other, IntLaurentPoly):
            other = other.to_cx()
        if other.arity != self.arity:
            raise ValueError("arity mismatch")
        out = dict(self._terms)
        for e, (v, r) in other._terms.items():
            if e in out:
                v0, r0 = out[e]
                s = v0 + v
                out[e] = (s, r0 + r + _eps_of(s) * abs(s))
            else:
                out[e] = (v, r)
        return CxLaurentPoly(out, self.arity)

    def __mul__(self, other):
        if isinstance(other, IntLaurentPoly):
            other = other.to_cx()
        if not isinstance(other, CxLaurentPoly):
            b = other if isinstance(other, Ball) else Ball(other)
            return CxLaurentPoly(
                {e: _ball_tuple(Ball(v, r) * b) for e, (v, r) in self._terms.items()}, self.arity
            )
        if other.arity != self.arity:
            raise ValueError("arity mismatch")
        acc = {}
        for e1, (v1, r1) in self._terms.items():
            a1 = abs(v1)
            for e2, (v2, r2) in other._terms.items():
                e = _add_exp(e1, e2)
                p = v1 * v2
                rad = a1 * r2 + abs(v2) * r1 + r1 * r2
                if e in acc:
                    s, rr, mag = acc[e]
                    acc[e] = (s + p, rr + rad, mag + abs(p))
                else:
                    acc[e] = (p, rad, abs(p))
        out = {}
        for e, (s, rr, mag) in acc.items():
            # summation rounding: bounded by (k+1) eps times the sum of magnitudes
            out[e] = (s, float(rr + 4 * _eps_of(s) * mag * max(1, len(self._terms))))
        return CxLaurentPoly(out, self.arity)

    __rmul__ = __mul__

    def evaluate(self, *point):
        total = 0
        for e, (v, _) in self._terms.items():
            term = v
            for x, k in zip(point, e):
                if k:
                    term = term * x ** k
            total = total + term
        return total

    __call__ = evaluate

    def round_to_int(self):
        """Round every coefficient to the nearest integer.

        Returns ``(poly, residual)`` where residual bounds the distance of
        each true coefficient from the chosen integer.
        """
        out = {}
        residual = 0.0
        for e, (v, r) in self._terms.items():
            re_part = mpmath.mpf(v.real) if isinstance(v, mpmath.mpc) else v.real
            n = int(mpmath.nint(re_part)) if isinstance(re_part, mpmath.mpf) else int(round(re_part))
            res = float(abs(v - n)) + r
            residual = max(residual, res)
            if n:
                out[e] = n
        return IntLaurentPoly(out, self.arity), residual

    def __repr__(self):
        body = ", ".join(f"{e}: {complex(v):.6g}±{r:.1g}" for e, (v, r) in self._terms.items())
        return f"CxLaurentPoly({{{body}}}, arity={self.arity})"


def _ball_tuple(b):
    return (b.center, b.radius)


def _as_cx(p):
    return p.to_cx() if isinstance(p, IntLaurentPoly) else p


# ---------------------------------------------------------------------------
# parsing and formatting

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\d*\.\d+)|(\d+)|(u\d)|(\^)|(\*)|(\+)|(-)|(\()|(\)))")


def _tokenize(text):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        kind = ("FLOAT", "INT", "VAR", "^", "*", "+", "-", "(", ")")[m.lastindex - 1]
        if kind == "FLOAT":
            raise PolynomialSyntaxError("non-integer coefficient", start)
        out.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    out.append(("END", "", n))
    return out


class _Parser:
    def __init__(self, text, arity):
        self.toks = _tokenize(text)
        self.i = 0
        self.arity = arity
        self.alias = None

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise PolynomialSyntaxError(f"expected {kind}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term() * sign
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                acc = acc * self.factor()
            elif kind in ("INT", "VAR", "("):
                acc = acc * self.factor()  # implicit multiplication
            else:
                return acc

    def factor(self):
        kind, text, pos = self.peek()
        if kind == "INT":
            self.take()
            return IntLaurentPoly.constant(int(text), self.arity)
        if kind == "VAR":
            self.take()
            var = self.variable(int(text[1:]), pos)
            k = 1
            if self.peek()[0] == "^":
                self.take()
                neg = False
                if self.peek()[0] == "-":
                    self.take()
                    neg = True
                k = int(self.take("INT")[1])
                k = -k if neg else k
            exp = [0] * self.arity
            exp[var] = k
            return IntLaurentPoly.monomial(exp)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            if self.peek()[0] == "^":
                self.take()
                inner = inner ** int(self.take("INT")[1])
            return inner
        raise PolynomialSyntaxError(f"unexpected {text or 'end of input'!r}", pos)

    def variable(self, index, pos):
        if self.arity == 1:
            # a single variable may be written under any index (e.g. u3 for g)
            if self.alias is None:
                self.alias = index
            elif self.alias != index:
                raise PolynomialSyntaxError(f"second variable u{index} in a univariate polynomial", pos)
            return 0
        if not 1 <= index <= self.arity:
            raise PolynomialSyntaxError(f"variable u{index} exceeds arity {self.arity}", pos)
        return index - 1


def parse_poly(text: str, arity: int) -> IntLaurentPoly:
    """Parse an integer Laurent polynomial such as ``"1 + u1 + u2"``."""
    if arity not in (1, 2, 3):
        raise ValueError("arity must be 1, 2 or 3")
    p = _Parser(text, arity)
    result = p.expr()
    p.take("END")
    return result


def format_poly(p: IntLaurentPoly, names: Sequence[str] | None = None) -> str:
    """Canonical text: lexicographic term order, ``3*u1^2*u2^-1`` style."""
    if names is None:
        names = [f"u{i + 1}" for i in range(p.arity)]
    if p.is_zero():
        return "0"
    parts = []
    for exp, c in p.items():
        mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, exp) if k)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


# ---------------------------------------------------------------------------
# geometry


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[tuple]) -> list:
    """Extreme points, counterclockwise from the lexicographic minimum."""
    pts = sorted(set(map(tuple, points)))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for pt in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], pt) <= 0:
            lower.pop()
        lower.append(pt)
    for pt in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], pt) <= 0:
            upper.pop()
        upper.append(pt)
    return lower[:-1] + upper[:-1]


def newton_polygon(p: IntLaurentPoly) -> list:
    if p.arity != 2:
        raise ValueError("newton_polygon needs a bivariate polynomial")
    if p.is_zero():
        raise ValueError("zero polynomial has no Newton polygon")
    return convex_hull(e for e, _ in p.items())


def reexpress_on_lattice(p, basis):
    """Rewrite ``p(u)`` in coordinates ``w`` with ``u^(a*b1 + b*b2) = w1^a w2^b``.

    Works for integer and complex polynomials of arity 2.
    """
    (a11, a12), (a21, a22) = basis
    det = a11 * a22 - a12 * a21
    if det == 0:
        raise ValueError("singular lattice basis")
    out = {}
    for e, c in p.items():
        x, y = e
        na = x * a22 - y * a21
        nb = a11 * y - a12 * x
        if na % det or nb % det:
            raise LatticeSupportError(e)
        out[(na // det, nb // det)] = c
    return type(p)(out, 2)


def twist_and_specialize(p, scale: Mapping[int, object] | None = None,
                         specialize: Mapping[int, object] | None = None) -> CxLaurentPoly:
    """Substitute ``u_i -> s_i * u_i`` for ``i`` in ``scale`` and ``u_j -> v_j``
    for ``j`` in ``specialize`` (dropping that variable).

    Scale and specialization values may be numbers or :class:`Ball`.
    """
    scale = dict(scale or {})
    specialize = dict(specialize or {})
    for v in scale.values():
        c = v.center if isinstance(v, Ball) else v
        if c == 0:
            raise ZeroDivisionError("twist scalar must be nonzero")
    keep = [i for i in range(p.arity) if i not in specialize]
    if not keep:
        raise ValueError("cannot specialize every variable")
    balls = {i: (v if isinstance(v, Ball) else Ball(_to_complex(v))) for i, v in scale.items()}
    balls.update({i: (v if isinstance(v, Ball) else Ball(_to_complex(v))) for i, v in specialize.items()})
    # keep every coefficient at extended precision when any factor is
    mp = any(isinstance(b.center, (mpmath.mpc, mpmath.mpf)) for b in balls.values())
    out = {}
    for e, c in _as_cx(p).items():
        b = Ball(mpmath.mpc(c[0]) if mp else c[0], c[1])
        for i, k in enumerate(e):
            if k and i in balls:
                b = b * (balls[i] ** k)
        ne = tuple(e[i] for i in keep)
        if ne in out:
            v0, r0 = out[ne]
            s = v0 + b.center
            out[ne] = (s, r0 + b.radius + _eps_of(s) * abs(s))
        else:
            out[ne] = (b.center, b.radius)
    return CxLaurentPoly(out, len(keep))


def _to_complex(v):
    if isinstance(v, (mpmath.mpc, mpmath.mpf)):
        return mpmath.mpc(v)
    return complex(v)


# ---------------------------------------------------------------------------
# univariate roots


@dataclass(frozen=True)
class RootList:
    """Roots of a univariate polynomial after deflating ``u^k``.

    ``roots`` holds ``(center, radius)`` pairs with multiplicity; the disc
    around each center is certified to contain a root.
    """

    roots: tuple
    zeros_at_origin: int
    leading: complex

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def centers(self):
        return [z for z, _ in self.roots]

    def balls(self):
        return [Ball(z, r) for z, r in self.roots]


def _dense_univariate(p):
    """Ascending (value, radius) lists after removing the u^k factor."""
    if p.arity != 1:
        raise ValueError("univariate polynomial required")
    if p.is_zero():
        raise ValueError("zero polynomial has no roots")
    items = list(_as_cx(p).items()) if isinstance(p, IntLaurentPoly) else list(p.items())
    lo = min(e[0] for e, _ in items)
    hi = max(e[0] for e, _ in items)
    vals = [0j] * (hi - lo + 1)
    rads = [0.0] * (hi - lo + 1)
    for (e,), (v, r) in items:
        vals[e - lo] = v
        rads[e - lo] = r
    return vals, rads, lo


def _aberth(coeffs_desc, start, dps, maxiter=400):
    """Aberth-Ehrlich refinement in mpmath at ``dps`` digits."""
    n = len(start)
    z = [mpmath.mpc(s) for s in start]
    dc = [c * (n - i) for i, c in enumerate(coeffs_desc[:-1])]
    target = mpmath.mpf(10) ** (-(dps - 8))
    for _ in range(maxiter):
        biggest = mpmath.mpf(0)
        new = list(z)
        for i in range(n):
            pv = mpmath.polyval(coeffs_desc, z[i])
            dv = mpmath.polyval(dc, z[i])
            if pv == 0:
                continue
            if dv == 0:
                w = pv / (dv + target)
            else:
                w = pv / dv
            s = mpmath.fsum(1 / (z[i] - z[j]) for j in range(n) if j != i and z[i] != z[j])
            step = w / (1 - w * s)
            new[i] = z[i] - step
            biggest = max(biggest, abs(step) / max(1, abs(z[i])))
        z = new
        if biggest < target:
            break
    return z


def _inclusion_radii(coeffs_desc, rads_desc, z):
    """Weierstrass inclusion discs, merged into clusters.

    Disc ``i`` has radius ``n * |W_i|`` where ``W_i`` is the Weierstrass
    correction computed with the worst-case coefficient perturbation.
    """
    n = len(z)
    lead = abs(coeffs_desc[0]) - rads_desc[0]
    if lead <= 0:
        return [math.inf] * n
    radii = []
    for i in range(n):
        absz = abs(z[i])
        pv = abs(mpmath.polyval(coeffs_desc, z[i]))
        pert = sum(r * absz ** (n - k) for k, r in enumerate(rads_desc))
        denom = lead
        for j in range(n):
            if j != i:
                denom *= abs(z[i] - z[j])
        if denom == 0:
            radii.append(math.inf)
            continue
        radii.append(float(n * (pv + pert) / denom))
    # merge overlapping discs; each component holds as many roots as discs
    comp = list(range(n))

    def find(a):
        while comp[a] != a:
            comp[a] = comp[comp[a]]
            a = comp[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if float(abs(z[i] - z[j])) <= radii[i] + radii[j]:
                comp[find(i)] = find(j)
    out = []
    for i in range(n):
        members = [j for j in range(n) if find(j) == find(i)]
        if len(members) == 1:
            out.append(radii[i])
        else:
            out.append(max(float(abs(z[i] - z[j])) + radii[j] for j in members))
    return out


def _squarefree_split(p):
    """``[(q, k), ...]`` with ``p ~ prod q^k`` if ``p`` has a repeated factor, else None."""
    q, _ = p.normalize_monomial()
    _, parts = sympy.Poly(q.coeffs_1d()[::-1], sympy.Symbol("x"), domain="ZZ").sqf_list()
    if all(k == 1 for _, k in parts):
        return None
    return [(IntLaurentPoly.from_coeffs([int(c) for c in f.all_coeffs()[::-1]]), int(k)) for f, k in parts]


def _combine_roots(p, split, radius_bound, as_mp, dps):
    # roots of repeated factors are found once, on the squarefree part
    roots = []
    for q, k in split:
        if q.degree() < 1:
            continue
        roots.extend(univariate_roots(q, radius_bound, as_mp, dps).roots * k)
    roots.sort(key=lambda zr: (float(zr[0].real), float(zr[0].imag)))
    _, low = p.normalize_monomial()
    lead = list(p.items())[-1][1]
    return RootList(tuple(roots), low[0], complex(lead))


def univariate_roots(p, radius_bound: float = ROOT_RADIUS_BOUND, as_mp: bool = False,
                     dps: int = 50) -> RootList:
    """Roots of a univariate Laurent polynomial with certified radii.

    Starting values come from companion-matrix eigenvalues; they are polished
    by Aberth iteration at ``dps`` decimal digits and enclosed by Weierstrass
    discs.  ``RootRefinementError`` is raised if some radius exceeds
    ``radius_bound``.
    """
    if isinstance(p, IntLaurentPoly) and p.arity == 1 and p.degree() >= 2:
        split = _squarefree_split(p)
        if split is not None:
            return _combine_roots(p, split, radius_bound, as_mp, dps)
    vals, rads, k = _dense_univariate(p)
    lead = vals[-1]
    deg = len(vals) - 1
    if deg == 0:
        return RootList((), k, lead)
    with mpmath.workdps(dps):
        desc = [mpmath.mpc(v) for v in reversed(vals)]
        rdesc = list(reversed(rads))
        if deg == 1:
            z = [-desc[1] / desc[0]]
        else:
            start = np.roots(np.array([complex(v) for v in desc]))
            if len(start) < deg or not np.all(np.isfinite(start)):
                start = [cmath.exp(2j * math.pi * (i + 0.25) / deg) for i in range(deg)]
            z = _aberth(desc, list(start), dps)
        radii = _inclusion_radii(desc, rdesc, z)
        order = sorted(range(deg), key=lambda i: (float(z[i].real), float(z[i].imag)))
        worst = max(radii)
        if worst > radius_bound:
            raise RootRefinementError(worst)
        if as_mp:
            roots = tuple((+z[i], radii[i]) for i in order)
        else:
            roots = tuple((complex(z[i]), radii[i] + DOUBLE_EPS * float(abs(z[i]))) for i in order)
    return RootList(roots, k, lead)

