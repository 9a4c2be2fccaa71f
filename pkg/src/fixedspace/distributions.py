"""Fixed-space distributions of random elements of Sp_{2g}, GSp cosets and GU_n.

The symplectic recursion rests on the decomposition V = E_1(x) + E_1(x)^perp:
an element is a nondegenerate subspace W, a unipotent element of Sp(W), and
an element of Sp(W^perp) without eigenvalue 1.  Hence

    Phi(g)     = nu(g) - sum_{j>=1} S(g,j) U(j) Phi(g-j)
    alpha(g,r) = nu(g)^-1 sum_{j>=0} S(g,j) U(j,r) Phi(g-j)

with U(0, r) = [r == 0], so that alpha(g, 0) = Phi(g) / nu(g).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Optional, Union

from fixedspace.exactmath import ExactScalar, RatFun, coerce_ell, format_scalar, parse_scalar
from fixedspace.grouporders import (
    GeneralLinear,
    GroupSpec,
    GSpCoset,
    Symplectic,
    Unitary,
    fw_product,
    orth_order,
    sp_order,
    sp_subspace_count,
    sp_unipotent_total,
    unitary_order,
    unitary_subspace_count,
    unitary_unipotent_total,
)
from fixedspace.partitions import all_partitions, symplectic_partitions

__all__ = [
    "DistributionTable",
    "Descriptor",
    "unipotent_fixed_count",
    "phi_count",
    "phi",
    "alpha",
    "alpha_table",
    "alpha_limit",
    "phi_limit",
    "alpha_xi_genus1",
    "unitary_phi",
    "unitary_unipotent_fixed_count",
    "unitary_alpha",
    "unitary_alpha_table",
    "unitary_alpha_limit",
    "trigonal_table",
    "affine_rank_bounds",
    "fw_gap",
    "formula_table",
]

# A fixed-space descriptor: a dimension, or the cyclic orders of an abelian
# group (sorted ascending; () is the trivial group).
Descriptor = Union[int, tuple[int, ...]]

PROVENANCES = ("formula", "brute-force", "empirical")


def _zero(ell: ExactScalar) -> ExactScalar:
    return ell * 0


def _one(ell: ExactScalar) -> ExactScalar:
    return ell ** 0


def _is_symbolic(ell: ExactScalar) -> bool:
    return isinstance(ell, RatFun)


# --------------------------------------------------------------------------
# symplectic


@lru_cache(maxsize=None)
def _unipotent_fixed_count(g: int, r: int, ell: ExactScalar) -> ExactScalar:
    if g == 0:
        return _one(ell) if r == 0 else _zero(ell)
    inverse_mass = _zero(ell)
    for part in symplectic_partitions(2 * g, r):
        mult, tails = part.multiplicities, part.tail_sums
        twice_exp = (
            sum(s * s for s in tails.values())
            - sum(c * c for c in mult.values())
            + sum(c for i, c in mult.items() if i % 2 == 0)
        )
        if twice_exp % 2:
            raise ArithmeticError(f"odd unipotent-radical dimension for {part.parts}")
        mass = ell ** (twice_exp // 2)
        for i, c in mult.items():
            if i % 2:
                mass = mass * sp_order(c // 2, ell)
            else:
                mass = mass * orth_order(c, ell)
        inverse_mass = inverse_mass + 1 / mass
    return sp_order(g, ell) * inverse_mass


def unipotent_fixed_count(g: int, r: int, ell=None) -> ExactScalar:
    """Number of unipotent u in Sp_{2g}(F_l) with dim ker(u - 1) == r."""
    if g < 0 or r < 0:
        raise ValueError("g and r must be nonnegative")
    if r > 2 * g:
        return _zero(coerce_ell(ell))
    return _unipotent_fixed_count(g, r, coerce_ell(ell))


@lru_cache(maxsize=None)
def _phi_count(g: int, ell: ExactScalar) -> ExactScalar:
    if g == 0:
        return _one(ell)
    out = sp_order(g, ell)
    for j in range(1, g + 1):
        out = out - sp_subspace_count(g, j, ell) * sp_unipotent_total(j, ell) * _phi_count(g - j, ell)
    return out


def phi_count(g: int, ell=None) -> ExactScalar:
    """Number of x in Sp_{2g}(F_l) with x - 1 invertible; Phi(0) = 1."""
    if g < 0:
        raise ValueError("g must be nonnegative")
    return _phi_count(g, coerce_ell(ell))


def phi(g: int, ell=None) -> ExactScalar:
    ell = coerce_ell(ell)
    return phi_count(g, ell) / sp_order(g, ell)


@lru_cache(maxsize=None)
def _alpha(g: int, r: int, ell: ExactScalar) -> ExactScalar:
    total = _zero(ell)
    # U(j, r) vanishes unless 2j >= r
    for j in range((r + 1) // 2, g + 1):
        total = total + sp_subspace_count(g, j, ell) * _unipotent_fixed_count(j, r, ell) * _phi_count(g - j, ell)
    return total / sp_order(g, ell)


def alpha(g: int, r: int, ell=None) -> ExactScalar:
    """Proportion of Sp_{2g}(F_l) whose fixed space has dimension exactly r."""
    if g < 1:
        raise ValueError(f"g must be positive, got {g}")
    if not 0 <= r <= 2 * g:
        raise ValueError(f"r must lie in [0, {2 * g}], got {r}")
    return _alpha(g, r, coerce_ell(ell))


def alpha_table(g: int, ell=None) -> dict[int, ExactScalar]:
    return {r: alpha(g, r, ell) for r in range(2 * g + 1)}


def _require_numeric(ell, what: str) -> Fraction:
    x = coerce_ell(ell)
    if _is_symbolic(x):
        raise ValueError(f"{what} needs a concrete l; limits have no rational-function form here")
    if x.denominator != 1 or x < 2:
        raise ValueError(f"{what} needs an integer l >= 2, got {ell}")
    return x


def _tail(ell: Fraction, g: int) -> Fraction:
    # sum_{j > g} l^-j
    return ell ** (-g) / (ell - 1)


def alpha_limit(r: int, tail_bound, ell) -> tuple[Fraction, Fraction]:
    """Truncation of alpha(infinity, r) with its tail bound.

    Returns ``(alpha(g*, r), l^-g* / (l - 1))`` for the least admissible g*
    whose tail bound is below ``tail_bound``.
    """
    ell = _require_numeric(ell, "alpha_limit")
    tail_bound = Fraction(tail_bound)
    if tail_bound <= 0:
        raise ValueError("tail_bound must be positive")
    if r < 0:
        raise ValueError("r must be nonnegative")
    g = max(1, (r + 1) // 2)
    while _tail(ell, g) >= tail_bound:
        g += 1
    return alpha(g, r, ell), _tail(ell, g)


def phi_limit(tail_bound, ell) -> tuple[Fraction, Fraction]:
    return alpha_limit(0, tail_bound, ell)


def alpha_xi_genus1(xi: int, r: int, ell=None) -> ExactScalar:
    """Fixed-space proportions on the multiplier-xi coset of GSp_2, xi != 1."""
    ell = coerce_ell(ell)
    if _is_symbolic(ell):
        if xi == 1:
            raise ValueError("xi = 1 is the symplectic case; use alpha(1, r)")
    else:
        if ell.denominator != 1:
            raise ValueError("l must be an integer")
        if (xi - 1) % int(ell) == 0:
            raise ValueError("xi = 1 mod l is the symplectic case; use alpha(1, r)")
        if xi % int(ell) == 0:
            raise ValueError(f"xi = {xi} is not a unit mod {ell}")
    if r == 0:
        return (ell - 2) / (ell - 1)
    if r == 1:
        return 1 / (ell - 1)
    if r == 2:
        return _zero(ell)
    raise ValueError(f"r must be 0, 1 or 2, got {r}")


# --------------------------------------------------------------------------
# unitary


@lru_cache(maxsize=None)
def _unitary_unipotent_fixed_count(n: int, r: int, m: ExactScalar) -> ExactScalar:
    if n == 0:
        return _one(m) if r == 0 else _zero(m)
    inverse_mass = _zero(m)
    for part in all_partitions(n, r):
        mult, tails = part.multiplicities, part.tail_sums
        mass = m ** (sum(s * s for s in tails.values()) - sum(c * c for c in mult.values()))
        for c in mult.values():
            mass = mass * unitary_order(c, m)
        inverse_mass = inverse_mass + 1 / mass
    return unitary_order(n, m) * inverse_mass


def unitary_unipotent_fixed_count(n: int, r: int, m=None) -> ExactScalar:
    """Number of unipotent u in GU_n with dim ker(u - 1) == r."""
    if n < 0 or r < 0:
        raise ValueError("n and r must be nonnegative")
    if r > n:
        return _zero(coerce_ell(m))
    return _unitary_unipotent_fixed_count(n, r, coerce_ell(m))


@lru_cache(maxsize=None)
def _unitary_phi(n: int, m: ExactScalar) -> ExactScalar:
    if n == 0:
        return _one(m)
    out = unitary_order(n, m)
    for j in range(1, n + 1):
        out = out - unitary_subspace_count(n, j, m) * unitary_unipotent_total(j, m) * _unitary_phi(n - j, m)
    return out


def unitary_phi(n: int, m=None) -> ExactScalar:
    """Number of elements of GU_n without eigenvalue 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _unitary_phi(n, coerce_ell(m))


@lru_cache(maxsize=None)
def _unitary_alpha(n: int, r: int, m: ExactScalar) -> ExactScalar:
    total = _zero(m)
    for j in range(r, n + 1):
        total = total + unitary_subspace_count(n, j, m) * _unitary_unipotent_fixed_count(j, r, m) * _unitary_phi(n - j, m)
    return total / unitary_order(n, m)


def unitary_alpha(n: int, r: int, m=None) -> ExactScalar:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 0 <= r <= n:
        raise ValueError(f"r must lie in [0, {n}], got {r}")
    return _unitary_alpha(n, r, coerce_ell(m))


def unitary_alpha_table(n: int, m=None) -> dict[int, ExactScalar]:
    return {r: unitary_alpha(n, r, m) for r in range(n + 1)}


def unitary_alpha_limit(r: int, m, tail_bound) -> tuple[Fraction, Fraction]:
    """Truncation of alpha_U(infinity, r) and the geometric tail bound m^-n/(m-1)."""
    m = _require_numeric(m, "unitary_alpha_limit")
    tail_bound = Fraction(tail_bound)
    if tail_bound <= 0:
        raise ValueError("tail_bound must be positive")
    n = max(1, r)
    while _tail(m, n) >= tail_bound:
        n += 1
    return unitary_alpha(n, r, m), _tail(m, n)


# --------------------------------------------------------------------------
# tables and applications


@dataclass
class DistributionTable:
    """Exact distribution of a fixed-space descriptor over a group or a family."""

    group: GroupSpec
    entries: dict[Descriptor, ExactScalar]
    provenance: str = "formula"
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def total(self) -> ExactScalar:
        vals = list(self.entries.values())
        out = vals[0] * 0
        for v in vals:
            out = out + v
        return out

    def __getitem__(self, key: Descriptor) -> ExactScalar:
        return self.entries[key]

    def get(self, key: Descriptor, default=None):
        return self.entries.get(key, default)

    def evaluate(self, ell) -> DistributionTable:
        """Specialize a symbolic table at a concrete value."""
        out = {k: (v(ell) if isinstance(v, RatFun) else v) for k, v in self.entries.items()}
        return DistributionTable(self.group, out, self.provenance, dict(self.meta))

    def sorted_items(self) -> list[tuple[Descriptor, ExactScalar]]:
        return sorted(self.entries.items(), key=lambda kv: _descriptor_key(kv[0]))

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {}
        d.update(_group_fields(self.group))
        d["provenance"] = self.provenance
        d["entries"] = [
            {"descriptor": _descriptor_json(k), "value": format_scalar(v)} for k, v in self.sorted_items()
        ]
        if self.meta:
            d["meta"] = self.meta
        return d

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        head = _group_fields(self.group)
        w.writerow(list(head) + ["provenance", "descriptor", "value"])
        for k, v in self.sorted_items():
            w.writerow(
                ["" if x is None else x for x in head.values()]
                + [self.provenance, _descriptor_text(k), format_scalar(v)]
            )
        return buf.getvalue()

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> DistributionTable:
        group = _group_from_fields(d)
        entries = {_descriptor_from_json(e["descriptor"]): parse_scalar(e["value"]) for e in d["entries"]}
        return cls(group, entries, d["provenance"], dict(d.get("meta", {})))

    @classmethod
    def from_json(cls, text: str) -> DistributionTable:
        return cls.from_dict(json.loads(text))


#: JSON schema of a serialized DistributionTable.
TABLE_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["group", "rank", "ell_or_m", "modulus", "provenance", "entries"],
    "properties": {
        "group": {"enum": ["sp", "gsp", "gu", "gl"]},
        "rank": {"type": "integer", "minimum": 1},
        "ell_or_m": {"oneOf": [{"type": "integer", "minimum": 2}, {"const": "l"}]},
        "modulus": {"type": ["integer", "null"]},
        "xi": {"type": "integer"},
        "provenance": {"enum": list(PROVENANCES)},
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["descriptor", "value"],
                "properties": {
                    "descriptor": {
                        "oneOf": [
                            {"type": "integer", "minimum": 0},
                            {"type": "array", "items": {"type": "integer", "minimum": 2}},
                        ]
                    },
                    "value": {"type": "string"},
                },
            },
        },
        "meta": {"type": "object"},
    },
}


def _descriptor_key(k: Descriptor):
    if isinstance(k, tuple):
        return (1, len(k), k)
    return (0, k, ())


def _descriptor_json(k: Descriptor):
    return list(k) if isinstance(k, tuple) else k


def _descriptor_from_json(x) -> Descriptor:
    return tuple(x) if isinstance(x, list) else int(x)


def _descriptor_text(k: Descriptor) -> str:
    if isinstance(k, tuple):
        return " x ".join(f"Z/{d}" for d in k) if k else "1"
    return str(k)


def _group_fields(spec: GroupSpec) -> dict[str, Any]:
    if isinstance(spec, Symplectic):
        return {"group": "sp", "rank": spec.g, "ell_or_m": _sym(spec.ell), "modulus": spec.modulus}
    if isinstance(spec, GSpCoset):
        return {"group": "gsp", "rank": spec.g, "ell_or_m": spec.ell, "modulus": spec.modulus, "xi": spec.xi}
    if isinstance(spec, Unitary):
        return {"group": "gu", "rank": spec.n, "ell_or_m": _sym(spec.m), "modulus": None}
    if isinstance(spec, GeneralLinear):
        return {"group": "gl", "rank": spec.n, "ell_or_m": _sym(spec.ell), "modulus": spec.ell}
    raise TypeError(f"unknown group spec {spec!r}")


def _sym(x):
    return "l" if x is None else x


def _group_from_fields(d: dict[str, Any]) -> GroupSpec:
    kind, rank = d["group"], d["rank"]
    ell = None if d["ell_or_m"] == "l" else d["ell_or_m"]
    if kind == "sp":
        e = 1
        if ell is not None and d.get("modulus"):
            while ell ** e < d["modulus"]:
                e += 1
        return Symplectic(rank, ell, e)
    if kind == "gsp":
        e = 1
        while ell ** e < d["modulus"]:
            e += 1
        return GSpCoset(rank, ell, d["xi"], e)
    if kind == "gu":
        return Unitary(rank, ell)
    if kind == "gl":
        return GeneralLinear(rank, ell)
    raise ValueError(f"unknown group kind {kind!r}")


def formula_table(spec: GroupSpec) -> DistributionTable:
    """The closed-form fixed-space distribution for a group spec (field case only)."""
    if isinstance(spec, Symplectic):
        if spec.e != 1:
            raise ValueError("no closed form for modulus l^e with e > 1; use the brute-force oracle")
        entries = alpha_table(spec.g, spec.ell)
    elif isinstance(spec, GSpCoset):
        if spec.e != 1:
            raise ValueError("no closed form for modulus l^e with e > 1; use the brute-force oracle")
        if spec.xi % spec.ell == 1:
            entries = alpha_table(spec.g, spec.ell)
        elif spec.g == 1:
            entries = {r: alpha_xi_genus1(spec.xi, r, spec.ell) for r in range(3)}
        else:
            raise ValueError("closed forms on GSp cosets with xi != 1 exist only for g = 1")
    elif isinstance(spec, Unitary):
        entries = unitary_alpha_table(spec.n, spec.m)
    else:
        raise ValueError(f"no fixed-space formula for {spec!r}")
    return DistributionTable(spec, entries, "formula")


def trigonal_table(m=None) -> DistributionTable:
    """Rational l-torsion of y^3 = f(x), deg f = 4, at a prime inert in Z[zeta_3].

    Keys are torsion ranks 0, 2, 4, 6; the model group is GU_3 over F_{m^2}
    with m = l.
    """
    entries = {2 * j: unitary_alpha(3, j, m) for j in range(4)}
    return DistributionTable(Unitary(3, m if m is None or isinstance(m, int) else None), entries, "formula",
                             {"family": "y^3 = f(x), deg f = 4", "descriptor": "torsion rank"})


def affine_rank_bounds(g: int, s: int, r: int, epsilon=0, ell=None) -> tuple[ExactScalar, ExactScalar]:
    """Lower bounds for P(rank cl <= r) and P(rank cl >= r) of an affine ring with |S| = s.

    ``(sum_{j<=r} alpha(g,j) - eps, sum_{j=r+s}^{2g} alpha(g,j) - eps)``,
    clamped at 0 for concrete l.
    """
    if s < 1:
        raise ValueError("s = |S| must be at least 1")
    if r < 0:
        raise ValueError("r must be nonnegative")
    ell = coerce_ell(ell)
    epsilon = Fraction(epsilon)
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    table = alpha_table(g, ell)
    low = _zero(ell)
    for j in range(0, min(r, 2 * g) + 1):
        low = low + table[j]
    high = _zero(ell)
    for j in range(r + s, 2 * g + 1):
        high = high + table[j]
    if _is_symbolic(ell):
        if epsilon:
            raise ValueError("a nonzero epsilon needs a concrete l")
        return low, high
    return max(low - epsilon, Fraction(0)), max(high - epsilon, Fraction(0))


def fw_gap(g: int, ell=None) -> ExactScalar:
    """prod_{j<=2g}(1 - l^-j) - alpha(g, 0): the GL_{2g} heuristic minus the symplectic value."""
    ell = coerce_ell(ell)
    return fw_product(2 * g, ell) - alpha(g, 0, ell)
