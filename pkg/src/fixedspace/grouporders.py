"""Orders of finite classical groups and related counts.

Every function takes ``ell`` (or ``m`` for unitary groups) as a concrete
integer, a :class:`~fractions.Fraction`, ``None`` or the indeterminate
:data:`~fixedspace.exactmath.L`; ``None`` and ``L`` give symbolic results.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Optional, Union

from fixedspace.exactmath import ExactScalar, coerce_ell

__all__ = [
    "Symplectic",
    "GSpCoset",
    "Unitary",
    "GeneralLinear",
    "GroupSpec",
    "sp_order",
    "sp_subspace_count",
    "sp_unipotent_total",
    "orth_order",
    "unitary_order",
    "unitary_unipotent_total",
    "unitary_subspace_count",
    "gl_order",
    "fw_product",
]


@dataclass(frozen=True)
class Symplectic:
    """Sp_{2g} over Z/ell^e (a field when e == 1); ``ell=None`` means symbolic."""

    g: int
    ell: Optional[int] = None
    e: int = 1

    def __post_init__(self):
        _check_dims(self.g, "g")
        _check_exponent(self.ell, self.e)

    @property
    def modulus(self) -> Optional[int]:
        return None if self.ell is None else self.ell ** self.e

    @property
    def dim(self) -> int:
        return 2 * self.g


@dataclass(frozen=True)
class GSpCoset:
    """Symplectic similitudes of multiplier ``xi`` in GSp_{2g}(Z/ell^e)."""

    g: int
    ell: int
    xi: int
    e: int = 1

    def __post_init__(self):
        _check_dims(self.g, "g")
        _check_exponent(self.ell, self.e)
        if gcd(self.xi, self.ell) != 1:
            raise ValueError(f"multiplier {self.xi} is not a unit mod {self.ell}")

    @property
    def modulus(self) -> int:
        return self.ell ** self.e

    @property
    def dim(self) -> int:
        return 2 * self.g


@dataclass(frozen=True)
class Unitary:
    """GU_n over the field with m^2 elements; ``m`` is the size of the fixed field."""

    n: int
    m: Optional[int] = None

    def __post_init__(self):
        _check_dims(self.n, "n")

    @property
    def dim(self) -> int:
        return self.n


@dataclass(frozen=True)
class GeneralLinear:
    n: int
    ell: Optional[int] = None

    def __post_init__(self):
        _check_dims(self.n, "n")

    @property
    def dim(self) -> int:
        return self.n


GroupSpec = Union[Symplectic, GSpCoset, Unitary, GeneralLinear]


def _check_dims(k: int, name: str) -> None:
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"{name} must be a positive integer, got {k!r}")


def _check_exponent(ell, e) -> None:
    if not isinstance(e, int) or e < 1:
        raise ValueError(f"exponent must be a positive integer, got {e!r}")
    if ell is None and e != 1:
        raise ValueError("a modulus l^e with e > 1 needs a concrete l")


def _check_nonneg(k: int, name: str) -> None:
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"{name} must be a nonnegative integer, got {k!r}")


@lru_cache(maxsize=None)
def _sp_order(g: int, ell: ExactScalar) -> ExactScalar:
    if g == 0:
        return ell ** 0
    return _sp_order(g - 1, ell) * ell ** (2 * g - 1) * (ell ** (2 * g) - 1)


def sp_order(g: int, ell=None) -> ExactScalar:
    """|Sp_{2g}(F_l)| = prod_{j<=g} l^(2j-1) (l^(2j) - 1)."""
    _check_nonneg(g, "g")
    return _sp_order(g, coerce_ell(ell))


def sp_subspace_count(g: int, r: int, ell=None) -> ExactScalar:
    """Number of nondegenerate 2r-dimensional subspaces of a symplectic 2g-space."""
    _check_nonneg(g, "g")
    _check_nonneg(r, "r")
    if r > g:
        raise ValueError(f"subspace rank {r} exceeds g = {g}")
    ell = coerce_ell(ell)
    return _sp_order(g, ell) / (_sp_order(r, ell) * _sp_order(g - r, ell))


def sp_unipotent_total(g: int, ell=None) -> ExactScalar:
    """Steinberg's count of unipotent elements, l^(2 g^2)."""
    _check_nonneg(g, "g")
    return coerce_ell(ell) ** (2 * g * g)


@lru_cache(maxsize=None)
def _orth_order(n: int, ell: ExactScalar) -> ExactScalar:
    m, odd = divmod(n, 2)
    prod = ell ** 0
    for i in range(1, m + 1):
        prod = prod * (ell ** (2 * i) - 1)
    if odd:
        return ell ** (m * m) * prod
    # harmonic mean of |SO^+_{2m}| and |SO^-_{2m}|; not an integer
    return ell ** (m * m - 2 * m) * prod


def orth_order(n: int, ell=None) -> ExactScalar:
    """|SO_n(F_l)| for odd n; for even n the harmonic mean of the two forms."""
    _check_nonneg(n, "n")
    if n == 0:
        raise ValueError("orth_order is defined for n >= 1")
    return _orth_order(n, coerce_ell(ell))


@lru_cache(maxsize=None)
def _unitary_order(n: int, m: ExactScalar) -> ExactScalar:
    if n == 0:
        return m ** 0
    sign = -1 if n % 2 else 1
    return _unitary_order(n - 1, m) * m ** (n - 1) * (m ** n - sign)


def unitary_order(n: int, m=None) -> ExactScalar:
    """|GU_n| = m^(n(n-1)/2) prod_{i<=n} (m^i - (-1)^i)."""
    _check_nonneg(n, "n")
    return _unitary_order(n, coerce_ell(m))


def unitary_unipotent_total(n: int, m=None) -> ExactScalar:
    _check_nonneg(n, "n")
    return coerce_ell(m) ** (n * n - n)


def unitary_subspace_count(n: int, r: int, m=None) -> ExactScalar:
    """Number of nondegenerate r-dimensional subspaces of a hermitian n-space."""
    _check_nonneg(n, "n")
    _check_nonneg(r, "r")
    if r > n:
        raise ValueError(f"subspace dimension {r} exceeds n = {n}")
    m = coerce_ell(m)
    return _unitary_order(n, m) / (_unitary_order(r, m) * _unitary_order(n - r, m))


def gl_order(n: int, ell=None) -> ExactScalar:
    _check_nonneg(n, "n")
    ell = coerce_ell(ell)
    out = ell ** 0
    for i in range(n):
        out = out * (ell ** n - ell ** i)
    return out


def fw_product(n: int, ell=None) -> ExactScalar:
    """prod_{j=1}^{n} (1 - l^-j), the large-n proportion of GL_n with no fixed vector."""
    _check_nonneg(n, "n")
    ell = coerce_ell(ell)
    out = ell ** 0
    for j in range(1, n + 1):
        out = out * (1 - ell ** (-j))
    return out
