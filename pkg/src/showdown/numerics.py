"""Shared numerical kernels.

Bracketed scalar root finding, adaptive quadrature, a nested-bisection solver
for intersecting two monotone implicit curves, and two exact function
algebras: exponential polynomials (sums of c * x**j * exp(k*x)) and piecewise
polynomials on [0, 1].  The algebras are closed under the operations the game
solvers need (products, antiderivatives), so every table value downstream is
computed without quadrature error.

Everything here is pure and allocation-light; values are immutable and safe
to share across threads.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

__all__ = [
    "NumericsError",
    "BracketError",
    "AccuracyError",
    "Bracket",
    "solve_root",
    "solve_root_2d",
    "integrate_adaptive",
    "ExpPoly",
    "PiecewisePoly",
    "piecewise_product_integral",
]

_EPS = 2.220446049250313e-16


class NumericsError(Exception):
    """Base class for numerical failures raised by this package."""


class BracketError(NumericsError):
    """The supplied interval does not bracket a sign change."""


class AccuracyError(NumericsError):
    """An iterative scheme could not reach the requested accuracy."""


@dataclass(frozen=True)
class Bracket:
    """A finite interval [lo, hi] expected to bracket a root."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError(f"bracket ends must be finite, got [{self.lo}, {self.hi}]")
        if not self.lo < self.hi:
            raise ValueError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")


def solve_root(
    f: Callable[[float], float],
    bracket: Bracket | tuple[float, float],
    tol: float = 1e-12,
) -> float:
    """Root of a continuous f inside `bracket`, by bisection plus a secant polish.

    f must change sign across the bracket (an endpoint evaluating to exactly
    zero is returned as-is).  The result always lies inside the initial
    bracket and the final bracket width is at most `tol`.  Deterministic.

    Raises BracketError when there is no sign change and NumericsError when f
    returns a non-finite value.
    """
    if not isinstance(bracket, Bracket):
        bracket = Bracket(*bracket)
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    lo, hi = bracket.lo, bracket.hi
    flo, fhi = f(lo), f(hi)
    for x, v in ((lo, flo), (hi, fhi)):
        if not math.isfinite(v):
            raise NumericsError(f"f({x}) = {v} is not finite")
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo < 0.0) == (fhi < 0.0):
        raise BracketError(
            f"no sign change on [{lo}, {hi}]: f(lo) = {flo}, f(hi) = {fhi}"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break  # interval no longer splittable in floats
        fmid = f(mid)
        if not math.isfinite(fmid):
            raise NumericsError(f"f({mid}) = {fmid} is not finite")
        if fmid == 0.0:
            return mid
        if (fmid < 0.0) == (flo < 0.0):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
    # One secant step across the final bracket sharpens the last few bits.
    if fhi != flo:
        x = hi - fhi * (hi - lo) / (fhi - flo)
        if lo <= x <= hi:
            return x
    return 0.5 * (lo + hi)


def _scan_curve(
    res: Callable[[float], float],
    grid: Sequence[float],
    tol: float,
) -> float | None:
    """Root of res along `grid`'s span: grid scan for a sign change, then bisect.

    Non-finite residual values (poles at box edges) are skipped.  Returns None
    when no bracket is found.
    """
    prev_x: float | None = None
    prev_v = 0.0
    for x in grid:
        v = res(x)
        if not math.isfinite(v):
            prev_x = None
            continue
        if v == 0.0:
            return x
        if prev_x is not None and (v < 0.0) != (prev_v < 0.0):
            return solve_root(res, Bracket(prev_x, x), tol)
        prev_x, prev_v = x, v
    return None


def solve_root_2d(
    res_a: Callable[[float, float], float],
    res_b: Callable[[float, float], float],
    tol: float = 1e-12,
    *,
    scan: int = 129,
) -> tuple[float, float]:
    """Intersection of two implicit curves in the unit box.

    res_a(x, y) = 0 must define y as a decreasing function of x and
    res_b(x, y) = 0 an increasing one, so the gap y_a(x) - y_b(x) is monotone
    in x and crosses zero at most once.  The solver bisects the gap in x; each
    inner solve brackets its curve by a y-grid scan and bisects.  This needs
    no derivatives and converges whenever both curves are single-valued.

    Raises NumericsError with diagnostics when an inner solve cannot bracket
    its curve or when the gap never changes sign.
    """
    ys = [i / (scan - 1) for i in range(scan)]
    xs = [i / (scan - 1) for i in range(scan)]

    def curve_y(res: Callable[[float, float], float], x: float) -> float | None:
        return _scan_curve(lambda y: res(x, y), ys, tol)

    def gap(x: float) -> float | None:
        ya = curve_y(res_a, x)
        yb = curve_y(res_b, x)
        if ya is None or yb is None:
            return None
        return ya - yb

    prev: tuple[float, float] | None = None
    lo = hi = glo = ghi = None
    for x in xs:
        g = gap(x)
        if g is None:
            prev = None
            continue
        if g == 0.0:
            ya = curve_y(res_a, x)
            assert ya is not None
            return x, ya
        if prev is not None and (g < 0.0) != (prev[1] < 0.0):
            (lo, glo), (hi, ghi) = prev, (x, g)
            break
        prev = (x, g)
    if lo is None:
        raise NumericsError("curve gap never changes sign on the scan grid")

    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        gm = gap(mid)
        if gm is None:
            raise NumericsError(f"inner curve solve failed to bracket at x = {mid}")
        if gm == 0.0:
            lo = hi = mid
            break
        if (gm < 0.0) == (glo < 0.0):
            lo, glo = mid, gm
        else:
            hi, ghi = mid, gm

    x_star = 0.5 * (lo + hi)
    ya = curve_y(res_a, x_star)
    yb = curve_y(res_b, x_star)
    if ya is None or yb is None:
        raise NumericsError(f"inner curve solve failed to bracket at x = {x_star}")
    return x_star, 0.5 * (ya + yb)


def integrate_adaptive(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-12,
    max_depth: int = 60,
) -> float:
    """Definite integral of f over [a, b] to absolute accuracy about `tol`.

    Interval-halving Simpson with Richardson extrapolation as the embedded
    higher-order rule; the error budget is split between halves.  Panels whose
    error estimate falls below the float rounding floor are accepted, so the
    achievable accuracy degrades gracefully to ~eps * integral(|f|) for
    large-magnitude integrands.  Deterministic.

    Raises AccuracyError when a panel still fails its budget at `max_depth`
    and NumericsError when f returns a non-finite value.
    """
    if a == b:
        return 0.0
    if b < a:
        return -integrate_adaptive(f, b, a, tol, max_depth)

    def ev(x: float) -> float:
        v = f(x)
        if not math.isfinite(v):
            raise NumericsError(f"integrand({x}) = {v} is not finite")
        return v

    def simpson(x0: float, x2: float, f0: float, f1: float, f2: float) -> float:
        return (x2 - x0) * (f0 + 4.0 * f1 + f2) / 6.0

    def recurse(
        x0: float,
        x2: float,
        f0: float,
        f1: float,
        f2: float,
        whole: float,
        budget: float,
        depth: int,
    ) -> float:
        xm = 0.5 * (x0 + x2)
        fl = ev(0.5 * (x0 + xm))
        fr = ev(0.5 * (xm + x2))
        left = simpson(x0, xm, f0, fl, f1)
        right = simpson(xm, x2, f1, fr, f2)
        err = left + right - whole
        floor = 30.0 * _EPS * (abs(left) + abs(right))
        if abs(err) <= 15.0 * budget or abs(err) <= floor:
            return left + right + err / 15.0
        if depth >= max_depth:
            raise AccuracyError(
                f"quadrature did not converge on [{x0}, {x2}] "
                f"(error estimate {err / 15.0:.3e}, budget {budget:.3e})"
            )
        half = 0.5 * budget
        return recurse(x0, xm, f0, fl, f1, left, half, depth + 1) + recurse(
            xm, x2, f1, fr, f2, right, half, depth + 1
        )

    fa, fm, fb = ev(a), ev(0.5 * (a + b)), ev(b)
    return recurse(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 0)


# ---------------------------------------------------------------------------
# Exponential polynomials
# ---------------------------------------------------------------------------


def _exp_monomial_integral(j: int, k: int, a: float, b: float) -> float:
    """Integral of x**j * exp(k*x) over [a, b] with 0 <= a <= b.

    Expands exp(k*x) into its power series; every term is non-negative, so
    the sum is perfectly conditioned.  Terms decay factorially past m ~ k*b.
    """
    total = 0.0
    coef = 1.0  # k**m / m!
    m = 0
    while True:
        p = j + m + 1
        total += coef * (b**p - a**p) / p
        m += 1
        coef *= k / m
        # past the series peak, stop once the next term bound is negligible
        if m > k * b and coef * b ** (j + m + 1) <= 1e-17 * total:
            return total
        if m > 10_000:  # unreachable for sane exponents; guards infinite loops
            raise AccuracyError(f"series for x^{j} e^{k}x did not converge")


class ExpPoly:
    """Exact finite sum  f(x) = sum c[j,k] * x**j * exp(k*x)  with j, k >= 0.

    The family is a ring (closed under + and *) and closed under
    antidifferentiation, which keeps the game's win-probability integrals
    exact up to float rounding.  Instances are immutable; arithmetic returns
    new instances in canonical merged-key form with exact zeros dropped.
    """

    __slots__ = ("_terms", "_by_k")

    def __init__(
        self,
        terms: dict[tuple[int, int], float]
        | Iterable[tuple[tuple[int, int], float]]
        | None = None,
    ) -> None:
        merged: dict[tuple[int, int], float] = {}
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        for (j, k), c in items:
            j, k, c = int(j), int(k), float(c)
            if j < 0 or k < 0:
                raise ValueError(f"exponents must be non-negative, got ({j}, {k})")
            if c != 0.0:
                merged[(j, k)] = merged.get((j, k), 0.0) + c
        # canonical key order makes evaluation independent of construction order
        self._terms = {key: c for key, c in sorted(merged.items()) if c != 0.0}
        by_k: dict[int, list[float]] = {}
        for (j, k), c in self._terms.items():
            coeffs = by_k.setdefault(k, [])
            if len(coeffs) <= j:
                coeffs.extend([0.0] * (j + 1 - len(coeffs)))
            coeffs[j] = c
        self._by_k = by_k

    @classmethod
    def constant(cls, c: float) -> "ExpPoly":
        return cls({(0, 0): c})

    @property
    def terms(self) -> dict[tuple[int, int], float]:
        return dict(self._terms)

    def __call__(self, x: float) -> float:
        total = 0.0
        for k, coeffs in self._by_k.items():
            acc = 0.0
            for c in reversed(coeffs):
                acc = acc * x + c
            total += acc if k == 0 else acc * math.exp(k * x)
        return total

    def __add__(self, other: "ExpPoly | float") -> "ExpPoly":
        if isinstance(other, (int, float)):
            other = ExpPoly.constant(float(other))
        if not isinstance(other, ExpPoly):
            return NotImplemented
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out.get(key, 0.0) + c
        return ExpPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "ExpPoly":
        return ExpPoly({key: -c for key, c in self._terms.items()})

    def __sub__(self, other: "ExpPoly | float") -> "ExpPoly":
        return self + (-other if isinstance(other, ExpPoly) else -float(other))

    def __rsub__(self, other: float) -> "ExpPoly":
        return (-self) + float(other)

    def __mul__(self, other: "ExpPoly | float") -> "ExpPoly":
        if isinstance(other, (int, float)):
            c = float(other)
            return ExpPoly({key: c * v for key, v in self._terms.items()})
        if not isinstance(other, ExpPoly):
            return NotImplemented
        # gather per-key products and sum them exactly rounded, so the
        # coefficients (and hence evaluations) are operand-order independent
        parts: dict[tuple[int, int], list[float]] = {}
        for (j1, k1), c1 in self._terms.items():
            for (j2, k2), c2 in other._terms.items():
                parts.setdefault((j1 + j2, k1 + k2), []).append(c1 * c2)
        return ExpPoly({key: math.fsum(vals) for key, vals in parts.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ExpPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are defined")
        out = ExpPoly.constant(1.0)
        for _ in range(n):
            out = out * self
        return out

    def antiderivative(self) -> "ExpPoly":
        """Antiderivative with zero constant of integration.

        Uses integral(x**j * exp(k*x)) = x**j exp(kx)/k - (j/k) * integral of
        x**(j-1) exp(kx) for k != 0, and the power rule for k = 0.
        """
        out: dict[tuple[int, int], float] = {}
        for (j, k), c in self._terms.items():
            if k == 0:
                key = (j + 1, 0)
                out[key] = out.get(key, 0.0) + c / (j + 1)
            else:
                coef = c
                for i in range(j, -1, -1):
                    term = coef / k
                    out[(i, k)] = out.get((i, k), 0.0) + term
                    coef = -term * i
        return ExpPoly(out)

    def integral(self, a: float, b: float) -> float:
        """Exact definite integral over [a, b].

        For 0 <= a <= b each monomial integrates by the everywhere-positive
        series sum_m k**m/m! * (b**p - a**p)/p with p = j + m + 1, which is
        free of the cancellation the antiderivative's closed form suffers
        when j greatly exceeds k (its coefficients reach j!/k**j).  Outside
        that range it falls back to the antiderivative difference.
        """
        if a == b:
            return 0.0
        if b < a:
            return -self.integral(b, a)
        if a < 0.0:
            anti = self.antiderivative()
            return anti(b) - anti(a)
        return math.fsum(
            c * _exp_monomial_integral(j, k, a, b)
            for (j, k), c in self._terms.items()
        )

    def __repr__(self) -> str:
        inner = ", ".join(
            f"({j},{k}): {c:g}" for (j, k), c in sorted(self._terms.items())
        )
        return f"ExpPoly({{{inner}}})"


# ---------------------------------------------------------------------------
# Piecewise polynomials on [0, 1]
# ---------------------------------------------------------------------------


class PiecewisePoly:
    """Piecewise polynomial: breakpoints covering [lo, hi] and one coefficient
    tuple (ascending powers of the global variable) per segment.

    Products and definite integrals are exact; this is the natural home for
    products of the score CDFs, which are constant-then-linear.
    """

    __slots__ = ("breakpoints", "coeffs")

    def __init__(
        self,
        breakpoints: Sequence[float],
        coeffs: Sequence[Sequence[float]],
    ) -> None:
        bp = tuple(float(x) for x in breakpoints)
        if len(bp) < 2 or any(b1 <= b0 for b0, b1 in zip(bp, bp[1:])):
            raise ValueError(f"breakpoints must be strictly increasing, got {bp}")
        if len(coeffs) != len(bp) - 1:
            raise ValueError("need exactly one coefficient tuple per segment")
        self.breakpoints = bp
        self.coeffs = tuple(tuple(float(c) for c in cs) or (0.0,) for cs in coeffs)

    @classmethod
    def constant(cls, c: float, lo: float = 0.0, hi: float = 1.0) -> "PiecewisePoly":
        return cls((lo, hi), ((c,),))

    @property
    def lo(self) -> float:
        return self.breakpoints[0]

    @property
    def hi(self) -> float:
        return self.breakpoints[-1]

    def _segment(self, x: float) -> int:
        i = bisect_right(self.breakpoints, x) - 1
        return min(max(i, 0), len(self.coeffs) - 1)

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs[self._segment(x)]):
            acc = acc * x + c
        return acc

    def _merged_breakpoints(self, other: "PiecewisePoly") -> tuple[float, ...]:
        if (self.lo, self.hi) != (other.lo, other.hi):
            raise ValueError("operands must cover the same interval")
        return tuple(sorted(set(self.breakpoints) | set(other.breakpoints)))

    def __mul__(self, other: "PiecewisePoly | float") -> "PiecewisePoly":
        if isinstance(other, (int, float)):
            return self.affine(float(other), 0.0)
        if not isinstance(other, PiecewisePoly):
            return NotImplemented
        bp = self._merged_breakpoints(other)
        out = []
        for b0, b1 in zip(bp, bp[1:]):
            mid = 0.5 * (b0 + b1)
            c1 = self.coeffs[self._segment(mid)]
            c2 = other.coeffs[other._segment(mid)]
            prod = [0.0] * (len(c1) + len(c2) - 1)
            for i, a in enumerate(c1):
                for j, b in enumerate(c2):
                    prod[i + j] += a * b
            out.append(tuple(prod))
        return PiecewisePoly(bp, out)

    __rmul__ = __mul__

    def __add__(self, other: "PiecewisePoly | float") -> "PiecewisePoly":
        if isinstance(other, (int, float)):
            return self.affine(1.0, float(other))
        if not isinstance(other, PiecewisePoly):
            return NotImplemented
        bp = self._merged_breakpoints(other)
        out = []
        for b0, b1 in zip(bp, bp[1:]):
            mid = 0.5 * (b0 + b1)
            c1 = self.coeffs[self._segment(mid)]
            c2 = other.coeffs[other._segment(mid)]
            n = max(len(c1), len(c2))
            out.append(
                tuple(
                    (c1[i] if i < len(c1) else 0.0) + (c2[i] if i < len(c2) else 0.0)
                    for i in range(n)
                )
            )
        return PiecewisePoly(bp, out)

    __radd__ = __add__

    def affine(self, scale: float, shift: float) -> "PiecewisePoly":
        """scale * self + shift, segment by segment."""
        out = []
        for cs in self.coeffs:
            scaled = [scale * c for c in cs]
            scaled[0] += shift
            out.append(tuple(scaled))
        return PiecewisePoly(self.breakpoints, out)

    def integral(self, a: float, b: float) -> float:
        """Exact definite integral over [a, b] (clipped to the covered span)."""
        if b < a:
            return -self.integral(b, a)
        a = max(a, self.lo)
        b = min(b, self.hi)
        if b <= a:
            return 0.0
        total = 0.0
        for i, (b0, b1) in enumerate(zip(self.breakpoints, self.breakpoints[1:])):
            s0, s1 = max(a, b0), min(b, b1)
            if s1 <= s0:
                continue
            for p, c in enumerate(self.coeffs[i]):
                total += c * (s1 ** (p + 1) - s0 ** (p + 1)) / (p + 1)
        return total

    @staticmethod
    def product(factors: Sequence["PiecewisePoly"]) -> "PiecewisePoly":
        if not factors:
            return PiecewisePoly.constant(1.0)
        out = factors[0]
        for f in factors[1:]:
            out = out * f
        return out

    def __repr__(self) -> str:
        return f"PiecewisePoly(breakpoints={self.breakpoints}, coeffs={self.coeffs})"


def piecewise_product_integral(
    factors: Sequence[PiecewisePoly], a: float, b: float
) -> float:
    """Exact integral over [a, b] of a product of piecewise polynomials."""
    return PiecewisePoly.product(factors).integral(a, b)
