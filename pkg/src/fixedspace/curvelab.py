"""Exhaustive curve statistics over small prime fields.

Every parameter point of a family is enumerated (no sampling and no
isomorphism reduction), so each report is an exact rational table that can be
compared with the group-theoretic prediction.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import isqrt
from typing import Any, Optional, Sequence

import numpy as np

from fixedspace.bruteforce import QuadraticExtension, default_workers
from fixedspace.distributions import DistributionTable, affine_rank_bounds, alpha, alpha_xi_genus1
from fixedspace.exactmath import format_scalar
from fixedspace.grouporders import GSpCoset, Symplectic

__all__ = [
    "SingularCurveError",
    "InfeasibleFieldError",
    "CurveSample",
    "BetaReport",
    "quadratic_character",
    "elliptic_points",
    "elliptic_group_structure",
    "elliptic_sample",
    "hyperelliptic_sample",
    "shape_ell_rank",
    "ell_torsion_rank",
    "legendre_to_short",
    "beta_elliptic",
    "is_separable",
    "hyperelliptic_point_counts",
    "genus2_class_number",
    "in_weil_bracket",
    "nonseparable_mask",
    "beta_genus2_divisibility",
    "affine_bounds_check",
    "REPORT_SCHEMA",
]

ELLIPTIC_GUARD = 1024
GENUS2_GUARD = 64

FAMILIES = ("short_weierstrass", "legendre")


class SingularCurveError(ValueError):
    pass


class InfeasibleFieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, isqrt(n) + 1))


def _check_prime_field(q: int, guard: int) -> None:
    if not _is_prime(q) or q == 2:
        raise ValueError(f"q must be an odd prime, got {q}")
    if q > guard:
        raise InfeasibleFieldError(f"q = {q} exceeds the enumeration guard {guard}")


def quadratic_character(q: int) -> np.ndarray:
    """chi[x] in {0, 1, -1} for x in F_q."""
    chi = -np.ones(q, dtype=np.int64)
    chi[0] = 0
    chi[np.unique((np.arange(1, q, dtype=np.int64) ** 2) % q)] = 1
    return chi


# --------------------------------------------------------------------------
# elliptic curves y^2 = x^3 + a x + b


@dataclass(frozen=True)
class CurveSample:
    """One curve with its point counts and l-adic invariants."""

    family: str
    params: tuple[int, ...]
    q: int
    n1: int
    n2: Optional[int] = None
    rank: Optional[int] = None
    class_number: Optional[int] = None
    divisible: Optional[bool] = None


def _check_short(a: int, b: int, q: int) -> None:
    if q <= 3:
        raise ValueError("short Weierstrass models need characteristic > 3")
    if (4 * a ** 3 + 27 * b ** 2) % q == 0:
        raise SingularCurveError(f"y^2 = x^3 + {a}x + {b} is singular mod {q}")


def elliptic_points(a: int, b: int, q: int) -> list[Optional[tuple[int, int]]]:
    """All points, with None for the point at infinity."""
    pts: list[Optional[tuple[int, int]]] = [None]
    roots: dict[int, list[int]] = {}
    for y in range(q):
        roots.setdefault(y * y % q, []).append(y)
    for x in range(q):
        for y in roots.get((x ** 3 + a * x + b) % q, ()):
            pts.append((x, y))
    return pts


def _ec_add(P, Q, a: int, q: int):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2) % q == 0:
            return None
        lam = (3 * x1 * x1 + a) * pow(2 * y1, -1, q) % q
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, q) % q
    x3 = (lam * lam - x1 - x2) % q
    return x3, (lam * (x1 - x3) - y1) % q


def _ec_mul(k: int, P, a: int, q: int):
    R = None
    while k:
        if k & 1:
            R = _ec_add(R, P, a, q)
        P = _ec_add(P, P, a, q)
        k >>= 1
    return R


def _factor(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def elliptic_group_structure(a: int, b: int, q: int) -> tuple[int, int]:
    """(d1, d2) with E(F_q) = Z/d1 x Z/d2, d1 | d2, by point enumeration and orders."""
    _check_prime_field(q, ELLIPTIC_GUARD)
    _check_short(a, b, q)
    pts = elliptic_points(a, b, q)
    n = len(pts)
    primes = _factor(n)
    exponent = 1
    for P in pts:
        order = n
        for p in primes:
            while order % p == 0 and _ec_mul(order // p, P, a, q) is None:
                order //= p
        exponent = max(exponent, order)
    d1 = n // exponent
    if exponent % d1 or (q - 1) % d1:
        raise ArithmeticError(f"inconsistent group structure {d1} x {exponent} for ({a}, {b}) mod {q}")
    return d1, exponent


def shape_ell_rank(shape: Sequence[int], ell: int) -> int:
    return sum(1 for d in shape if d % ell == 0)


def _division_values(a, b, q: int, n: int, xs: np.ndarray) -> np.ndarray:
    """psi_n(x) for odd n, at every x in ``xs``; a and b may be arrays.

    Even-index polynomials are carried divided by y, with y^2 replaced by
    F = x^3 + a x + b.
    """
    a = np.asarray(a, dtype=np.int64)[..., None] % q
    b = np.asarray(b, dtype=np.int64)[..., None] % q
    x = xs % q
    F = (x * x % q * x + a * x + b) % q
    F2 = F * F % q
    inv2 = pow(2, -1, q)
    x2 = x * x % q
    x3 = x2 * x % q
    x4 = x2 * x2 % q
    x6 = x4 * x2 % q
    cache: dict[int, np.ndarray] = {
        0: np.zeros_like(F),
        1: np.ones_like(F),
        2: np.full_like(F, 2),
        3: (3 * x4 + 6 * a * x2 % q + 12 * b * x % q - a * a % q) % q,
        4: 4
        * (x6 + 5 * a * x4 % q + 20 * b * x3 % q - 5 * (a * a % q) * x2 % q - 4 * (a * b % q) * x % q
           - 8 * b * b % q - a * a % q * a) % q,
    }

    def f(k: int) -> np.ndarray:
        if k in cache:
            return cache[k]
        m = k // 2
        if k % 2:
            t1 = f(m + 2) * pow3(f(m)) % q
            t2 = f(m - 1) * pow3(f(m + 1)) % q
            if m % 2 == 0:
                t1 = t1 * F2 % q
            else:
                t2 = t2 * F2 % q
            out = (t1 - t2) % q
        else:
            inner = (f(m + 2) * (f(m - 1) ** 2 % q) - f(m - 2) * (f(m + 1) ** 2 % q)) % q
            out = f(m) * inner % q * inv2 % q
        cache[k] = out
        return out

    def pow3(v):
        return v * v % q * v % q

    if n % 2 == 0:
        raise ValueError("only odd division polynomials are evaluated")
    return f(n)


def ell_torsion_rank(a, b, q: int, ell: int, chi: Optional[np.ndarray] = None):
    """l-rank of E(F_q)[l] via roots of the l-division polynomial; a, b may be arrays."""
    if ell % 2 == 0 or q % ell == 0:
        raise ValueError("need an odd l prime to q")
    xs = np.arange(q, dtype=np.int64)
    chi = quadratic_character(q) if chi is None else chi
    psi = _division_values(a, b, q, ell, xs)
    a_ = np.asarray(a, dtype=np.int64)[..., None]
    b_ = np.asarray(b, dtype=np.int64)[..., None]
    F = (xs ** 3 + a_ * xs + b_) % q
    roots = np.sum((psi == 0) & (chi[F] == 1), axis=-1)
    size = 1 + 2 * roots
    rank = np.where(size == 1, 0, np.where(size == ell, 1, 2))
    if not np.all((size == 1) | (size == ell) | (size == ell * ell)):
        raise ArithmeticError("l-torsion count is not a power of l")
    return int(rank) if np.ndim(rank) == 0 else rank


def elliptic_sample(a: int, b: int, q: int, ell: int) -> CurveSample:
    """Point count and l-rank of y^2 = x^3 + a x + b, with the Hasse bound enforced."""
    d1, d2 = elliptic_group_structure(a, b, q)
    n1 = d1 * d2
    if (n1 - q - 1) ** 2 > 4 * q:
        raise ArithmeticError(f"#E = {n1} violates the Hasse bound for q = {q}")
    r = shape_ell_rank((d1, d2), ell)
    return CurveSample("short_weierstrass", (a % q, b % q), q, n1, rank=r, divisible=n1 % ell == 0)


def legendre_to_short(lam: int, q: int) -> tuple[int, int]:
    """Short Weierstrass coefficients of y^2 = x(x - 1)(x - lam)."""
    a2, a4, a6 = -(1 + lam), lam, 0
    inv3 = pow(3, -1, q)
    A = (a4 - a2 * a2 * inv3) % q
    B = (a6 - a2 * a4 * inv3 + 2 * a2 ** 3 * pow(27, -1, q)) % q
    return A, B


def _family_params(family: str, q: int) -> list[tuple[int, ...]]:
    if family == "short_weierstrass":
        return [(a, b) for a in range(q) for b in range(q) if (4 * a ** 3 + 27 * b * b) % q]
    if family == "legendre":
        return [(lam,) for lam in range(2, q)]
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def _elliptic_rank_counts(family: str, q: int, ell: int, params: list[tuple[int, ...]]) -> Counter:
    if not params:
        return Counter()
    if family == "legendre":
        ab = [legendre_to_short(p[0], q) for p in params]
    else:
        ab = params
    chi = quadratic_character(q)
    a = np.array([p[0] for p in ab], dtype=np.int64)
    b = np.array([p[1] for p in ab], dtype=np.int64)
    out: Counter = Counter()
    step = max(1, 2 ** 20 // q)
    for i in range(0, len(a), step):
        ranks = ell_torsion_rank(a[i:i + step], b[i:i + step], q, ell, chi)
        out.update(int(r) for r in ranks)
    return out


@dataclass
class BetaReport:
    """Empirical family statistics next to the group-theoretic prediction."""

    family: str
    q: int
    ell: int
    xi: int
    sample_size: int
    counts: dict[int, int]
    empirical: DistributionTable
    predicted: DistributionTable
    deviations: dict[int, Fraction]
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def sqrt_q_scale(self) -> str:
        return f"1/sqrt({self.q})"

    def max_deviation(self) -> Fraction:
        return max(self.deviations.values())

    def within(self, c) -> bool:
        """All deviations below c / sqrt(q), decided exactly."""
        c = Fraction(c)
        return all(d * d * self.q < c * c for d in self.deviations.values())

    def to_dict(self) -> dict[str, Any]:
        d = {
            "family": self.family,
            "q": self.q,
            "ell": self.ell,
            "xi": self.xi,
            "sample_size": self.sample_size,
            "empirical": {str(k): format_scalar(v) for k, v in self.empirical.sorted_items()},
            "predicted": {str(k): format_scalar(v) for k, v in self.predicted.sorted_items()},
            "deviations": {str(k): format_scalar(v) for k, v in sorted(self.deviations.items())},
            "sqrt_q_scale": self.sqrt_q_scale,
        }
        if self.extra:
            d["extra"] = self.extra
        return d

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["family", "q", "ell", "xi", "sample_size", "rank", "count", "empirical", "predicted", "deviation"])
        for k in sorted(self.deviations):
            w.writerow([
                self.family, self.q, self.ell, self.xi, self.sample_size, k, self.counts.get(k, 0),
                format_scalar(self.empirical[k]), format_scalar(self.predicted[k]), format_scalar(self.deviations[k]),
            ])
        return buf.getvalue()


#: JSON schema of a serialized BetaReport.
REPORT_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["family", "q", "ell", "xi", "sample_size", "empirical", "predicted", "deviations", "sqrt_q_scale"],
    "properties": {
        "family": {"type": "string"},
        "q": {"type": "integer"},
        "ell": {"type": "integer"},
        "xi": {"type": "integer"},
        "sample_size": {"type": "integer", "minimum": 0},
        "empirical": {"type": "object", "additionalProperties": {"type": "string"}},
        "predicted": {"type": "object", "additionalProperties": {"type": "string"}},
        "deviations": {"type": "object", "additionalProperties": {"type": "string"}},
        "sqrt_q_scale": {"type": "string"},
        "extra": {"type": "object"},
    },
}


def _split(items: list, workers: int) -> list[list]:
    return [items[i::workers] for i in range(workers)]


def beta_elliptic(q: int, ell: int, family: str = "short_weierstrass", workers: Optional[int] = None) -> BetaReport:
    """Rational l-torsion ranks over every member of an elliptic family over F_q.

    The prediction is alpha(1, .) when q = 1 mod l and the GSp_2 coset
    distribution with multiplier q mod l otherwise.
    """
    _check_prime_field(q, ELLIPTIC_GUARD)
    if q <= 3:
        raise ValueError("elliptic families here need q > 3")
    if ell % 2 == 0 or not _is_prime(ell) or q % ell == 0:
        raise ValueError("l must be an odd prime different from the characteristic")
    workers = default_workers() if workers is None else workers
    params = _family_params(family, q)
    if workers <= 1:
        counts = _elliptic_rank_counts(family, q, ell, params)
    else:
        counts = Counter()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for c in pool.map(_elliptic_rank_counts, [family] * workers, [q] * workers, [ell] * workers,
                              _split(params, workers)):
                counts.update(c)
    xi = q % ell
    n = len(params)
    if xi == 1:
        spec = Symplectic(1, ell)
        predicted = {r: alpha(1, r, ell) for r in range(3)}
    else:
        spec = GSpCoset(1, ell, xi)
        predicted = {r: alpha_xi_genus1(xi, r, ell) for r in range(3)}
    empirical = {r: Fraction(counts.get(r, 0), n) for r in range(3)}
    return BetaReport(
        family=family,
        q=q,
        ell=ell,
        xi=xi,
        sample_size=n,
        counts={r: counts.get(r, 0) for r in range(3)},
        empirical=DistributionTable(spec, empirical, "empirical", {"family": family, "q": q}),
        predicted=DistributionTable(spec, predicted, "formula"),
        deviations={r: abs(empirical[r] - predicted[r]) for r in range(3)},
    )


# --------------------------------------------------------------------------
# hyperelliptic curves y^2 = f(x), f monic


def _poly_mod(coeffs: Sequence[int], p: int) -> list[int]:
    c = [x % p for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        f = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, v in enumerate(b):
            a[shift + i] = (a[shift + i] - f * v) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def is_separable(f: Sequence[int], q: int) -> bool:
    """gcd(f, f') == 1 over F_q; ``f`` lists coefficients lowest degree first."""
    a = _poly_mod(f, q)
    b = _poly_mod([i * c for i, c in enumerate(f)][1:], q)
    if not b:
        return False
    while b:
        a, b = b, _poly_rem(a, b, q)
    return len(a) == 1


def _extension_powers(q: int, d: int) -> tuple[np.ndarray, np.ndarray]:
    """Coordinates (u, v) of x^i = u + v t for every x in F_{q^2}, shape (d + 1, q^2).

    Elements are x = a + b t with t^2 = -c1 t - c0 irreducible; the quadratic
    character of x is that of its norm a^2 - c1 a b + c0 b^2 in F_q.
    """
    c0, c1 = QuadraticExtension(q).modulus
    a = np.tile(np.arange(q, dtype=np.int64), q)
    b = np.repeat(np.arange(q, dtype=np.int64), q)
    us = [np.ones_like(a)]
    vs = [np.zeros_like(a)]
    for _ in range(d):
        u, v = us[-1], vs[-1]
        # (u + v t)(a + b t) = ua + (ub + va) t + vb t^2
        vb = v * b % q
        us.append((u * a - c0 * vb) % q)
        vs.append((u * b + v * a - c1 * vb) % q)
    return np.array(us), np.array(vs)


def _extension_chi(u, v, q: int, chi: np.ndarray) -> np.ndarray:
    c0, c1 = QuadraticExtension(q).modulus
    return chi[(u * u - c1 * u % q * v + c0 * v % q * v) % q]


def hyperelliptic_point_counts(f: Sequence[int], q: int) -> tuple[int, int]:
    """(#C(F_q), #C(F_{q^2})) for the smooth model of y^2 = f(x), deg f odd."""
    d = len(f) - 1
    if d % 2 == 0 or f[-1] % q != 1:
        raise ValueError("expected a monic polynomial of odd degree")
    chi = quadratic_character(q)
    xs = np.arange(q, dtype=np.int64)
    vals = np.zeros(q, dtype=np.int64)
    for c in reversed(f):
        vals = (vals * xs + c) % q
    n1 = 1 + q + int(chi[vals].sum())
    us, vs = _extension_powers(q, d)
    coeffs = np.array([c % q for c in f], dtype=np.int64)[:, None]
    u = (coeffs * us).sum(axis=0) % q
    v = (coeffs * vs).sum(axis=0) % q
    n2 = 1 + q * q + int(_extension_chi(u, v, q, chi).sum())
    return n1, n2


def _class_number(n1, n2, q: int, genus: int):
    if genus == 1:
        return n1
    s1 = q + 1 - n1
    s2 = q * q + 1 - n2
    e2 = (s1 * s1 - s2) // 2
    return 1 - s1 + e2 - q * s1 + q * q


def genus2_class_number(f: Sequence[int], q: int) -> int:
    """h = L(1) for y^2 = f(x), f monic separable of degree 5 (or 3, giving #E(F_q)).

    The L-polynomial 1 - s1 T + e2 T^2 - q s1 T^3 + q^2 T^4 is rebuilt from
    the point counts over F_q and F_{q^2} by Newton's identities.
    """
    _check_prime_field(q, ELLIPTIC_GUARD)
    d = len(f) - 1
    if d not in (3, 5):
        raise ValueError(f"degree must be 3 or 5, got {d}")
    if not is_separable(f, q):
        raise ValueError(f"{list(f)} is not separable mod {q}")
    n1, n2 = hyperelliptic_point_counts(f, q)
    h = _class_number(n1, n2, q, (d - 1) // 2)
    if not in_weil_bracket(h, q, (d - 1) // 2):
        raise ArithmeticError(f"h = {h} violates the Weil bound for q = {q}")
    return h


def hyperelliptic_sample(f: Sequence[int], q: int, ell: int) -> CurveSample:
    h = genus2_class_number(f, q)
    n1, n2 = hyperelliptic_point_counts(f, q)
    return CurveSample(f"hyperelliptic_deg{len(f) - 1}", tuple(c % q for c in f), q, n1, n2,
                       class_number=h, divisible=h % ell == 0)


def in_weil_bracket(h, q: int, genus: int = 2):
    """(sqrt q - 1)^(2g) <= h <= (sqrt q + 1)^(2g), decided in integers; h may be an array."""
    h = np.asarray(h, dtype=object if genus > 2 else np.int64)
    if genus == 1:
        # |h - q - 1| <= 2 sqrt q
        t = h - q - 1
        return t * t <= 4 * q
    if genus != 2:
        raise ValueError("genus 1 or 2 only")
    # (sqrt q -+ 1)^4 = (q^2 + 6q + 1) -+ 4(q + 1) sqrt q
    base = q * q + 6 * q + 1
    k2 = 16 * (q + 1) ** 2 * q
    lo = base - h  # need 4(q+1) sqrt q >= lo
    hi = h - base  # need 4(q+1) sqrt q >= hi
    ok_lo = (lo <= 0) | (lo * lo <= k2)
    ok_hi = (hi <= 0) | (hi * hi <= k2)
    out = ok_lo & ok_hi
    return bool(out) if np.ndim(out) == 0 else out


def _index(coeffs: Sequence[int], q: int) -> int:
    # mixed radix index of (c_0, ..., c_{d-1}) with c_0 fastest
    idx = 0
    for c in reversed(coeffs):
        idx = idx * q + c
    return idx


def nonseparable_mask(q: int, d: int) -> np.ndarray:
    """Boolean array over monic f of degree d (indexed by c_0 + c_1 q + ...): True if f has a square factor."""
    mask = np.zeros(q ** d, dtype=bool)

    def monic(k):
        for cs in product(range(q), repeat=k):
            yield list(cs) + [1]

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % q
        return out

    for k in range(1, d // 2 + 1):
        for g in monic(k):
            g2 = mul(g, g)
            for h in monic(d - 2 * k):
                mask[_index(mul(g2, h)[:-1], q)] = True
    return mask


def _grid_counts(q: int, d: int, lead_values: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    """N1 and N2 for every monic f of degree d whose c_{d-1} lies in ``lead_values``.

    Axis i of the result runs over c_i. Sums of c_i x^i are linear in the
    coefficients, so each x costs one broadcast pass over the grid.
    """
    chi = quadratic_character(q)
    lead_values = np.asarray(lead_values, dtype=np.int64)
    axes = []
    for i in range(d):
        vals = np.arange(q, dtype=np.int64) if i < d - 1 else lead_values
        s = [1] * d
        s[i] = len(vals)
        axes.append(vals.reshape(s))
    shape = (q,) * (d - 1) + (len(lead_values),)
    n1 = np.full(shape, 1 + q, dtype=np.int64)
    for x in range(q):
        acc = pow(x, d, q)
        for i in range(d):
            acc = acc + axes[i] * pow(x, i, q)
        n1 += chi[acc % q]
    us, vs = _extension_powers(q, d)
    n2 = np.full(shape, 1 + q * q, dtype=np.int64)
    for k in range(q * q):
        u = int(us[d, k])
        v = int(vs[d, k])
        for i in range(d):
            u = u + axes[i] * int(us[i, k])
            v = v + axes[i] * int(vs[i, k])
        n2 += _extension_chi(u % q, v % q, q, chi)
    return n1, n2


def _divisibility_counts(q: int, ell: int, d: int, lead_values: list[int]) -> dict[str, int]:
    n1, n2 = _grid_counts(q, d, lead_values)
    genus = (d - 1) // 2
    h = _class_number(n1, n2, q, genus)
    bad = nonseparable_mask(q, d).reshape((q,) * d, order="F")[..., lead_values]
    good = ~bad
    hs = h[good]
    weil_ok = in_weil_bracket(hs, q, genus)
    return {
        "separable": int(good.sum()),
        "divisible": int(np.sum(hs % ell == 0)),
        "weil_violations": int(np.sum(~weil_ok)),
        "h_min": int(hs.min()) if hs.size else 0,
        "h_max": int(hs.max()) if hs.size else 0,
    }


def beta_genus2_divisibility(q: int, ell: int, workers: Optional[int] = None, degree: int = 5) -> BetaReport:
    """Frequency of l | h over all monic separable f of the given odd degree over F_q.

    Entry 1 is "l divides h", entry 0 its complement; the prediction is
    1 - alpha(g, 0) with g = (degree - 1) / 2.
    """
    _check_prime_field(q, GENUS2_GUARD)
    if degree not in (3, 5):
        raise ValueError("degree must be 3 or 5")
    if (q - 1) % ell:
        raise ValueError(f"q = {q} is not 1 mod l = {ell}")
    workers = default_workers() if workers is None else workers
    leads = list(range(q))
    if workers <= 1:
        parts = [_divisibility_counts(q, ell, degree, leads)]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_divisibility_counts, [q] * workers, [ell] * workers, [degree] * workers,
                                  _split(leads, workers)))
    n = sum(p["separable"] for p in parts)
    div = sum(p["divisible"] for p in parts)
    violations = sum(p["weil_violations"] for p in parts)
    if violations:
        raise ArithmeticError(f"{violations} class numbers violate the Weil bound")
    genus = (degree - 1) // 2
    a0 = alpha(genus, 0, ell)
    spec = Symplectic(genus, ell)
    empirical = {0: Fraction(n - div, n), 1: Fraction(div, n)}
    predicted = {0: a0, 1: 1 - a0}
    return BetaReport(
        family=f"hyperelliptic_deg{degree}",
        q=q,
        ell=ell,
        xi=q % ell,
        sample_size=n,
        counts={0: n - div, 1: div},
        empirical=DistributionTable(spec, empirical, "empirical", {"descriptor": "1 if l | h else 0"}),
        predicted=DistributionTable(spec, predicted, "formula", {"descriptor": "1 if l | h else 0"}),
        deviations={k: abs(empirical[k] - predicted[k]) for k in (0, 1)},
        extra={
            "monic_total": q ** degree,
            "h_range": [min(p["h_min"] for p in parts), max(p["h_max"] for p in parts)],
        },
    )


# --------------------------------------------------------------------------
# ideal class groups of affine models


def _in_ell_multiples(P, pts, ell: int, a: int, q: int) -> bool:
    return any(_ec_mul(ell, Q, a, q) == P for Q in pts)


def affine_bounds_check(q: int, ell: int, s: int = 1) -> dict[str, Any]:
    """Check the affine class-group rank bounds on genus-1 families over F_q.

    s = 1: y^2 = x^3 + a x + b with S = {O}; the ideal class group is E(F_q).
    s = 2: y^2 = x^3 + a x + c^2 with S = {O, (0, c)}; the ideal class group
    is E(F_q) / <(0, c)>, whose l-rank is rank E[l] minus [P not in l E].
    ``epsilon`` is the largest deviation of any cumulative Jacobian-rank
    frequency from its prediction.
    """
    _check_prime_field(q, 127)
    if (q - 1) % ell:
        raise ValueError(f"q = {q} is not 1 mod l = {ell}")
    if s not in (1, 2):
        raise ValueError("s must be 1 or 2")
    chi = quadratic_character(q)
    jac: Counter = Counter()
    cl: Counter = Counter()
    pairs: Counter = Counter()
    for a in range(q):
        for t in range(q):
            b = t if s == 1 else t * t % q
            if (4 * a ** 3 + 27 * b * b) % q == 0:
                continue
            rj = ell_torsion_rank(a, b, q, ell, chi)
            rc = rj
            if s == 2 and rj > 0:
                pts = elliptic_points(a, b, q)
                if not _in_ell_multiples((0, t), pts, ell, a, q):
                    rc = rj - 1
            jac[rj] += 1
            cl[rc] += 1
            pairs[(rj, rc)] += 1
    n = sum(jac.values())
    ranks = range(3)
    pred = {r: alpha(1, r, ell) for r in ranks}
    jac_p = {r: Fraction(jac.get(r, 0), n) for r in ranks}
    cl_p = {r: Fraction(cl.get(r, 0), n) for r in ranks}
    eps = Fraction(0)
    for r in ranks:
        eps = max(eps,
                  abs(sum(jac_p[j] for j in ranks if j <= r) - sum(pred[j] for j in ranks if j <= r)),
                  abs(sum(jac_p[j] for j in ranks if j >= r) - sum(pred[j] for j in ranks if j >= r)))
    rows = []
    holds = True
    for r in ranks:
        le = sum(cl_p[j] for j in ranks if j <= r)
        ge = sum(cl_p[j] for j in ranks if j >= r)
        lo_le, lo_ge = affine_rank_bounds(1, s, r, eps, ell)
        ok = le >= lo_le and ge >= lo_ge
        holds &= ok
        rows.append({"r": r, "p_le": le, "bound_le": lo_le, "p_ge": ge, "bound_ge": lo_ge, "holds": ok})
    drops = Counter(rj - rc for (rj, rc) in pairs.elements())
    return {
        "q": q,
        "ell": ell,
        "s": s,
        "sample_size": n,
        "epsilon": eps,
        "jacobian": jac_p,
        "class_group": cl_p,
        "rank_drops": dict(drops),
        "rows": rows,
        "holds": holds,
    }
