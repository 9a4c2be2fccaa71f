"""Exhaustive enumeration of small matrix groups over finite rings.

Ring elements are plain ints in ``range(ring.size)``; the ring object carries
the arithmetic.  Matrices are tuples of row tuples.  Groups are enumerated
column by column: a candidate column must already satisfy every form
identity it takes part in, so only group elements are ever completed.
"""

from __future__ import annotations

import os
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterator, Optional, Sequence

import numpy as np

from fixedspace.distributions import DistributionTable
from fixedspace.grouporders import GeneralLinear, GroupSpec, GSpCoset, Symplectic, Unitary

__all__ = [
    "IntegersMod",
    "PrimeField",
    "QuadraticExtension",
    "InfeasibleError",
    "FEASIBILITY_GUARD",
    "ring_for",
    "standard_gram",
    "enumerate_group",
    "fixed_space",
    "kernel_shape",
    "rank",
    "kernel_basis",
    "empirical_group_distribution",
    "random_element",
    "eigenspace_split",
    "check_eigenspace_split",
    "crt_product_check",
]

FEASIBILITY_GUARD = 2 ** 32

Matrix = tuple[tuple[int, ...], ...]


class InfeasibleError(ValueError):
    """The requested enumeration exceeds the feasibility guard."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_power(n: int) -> Optional[tuple[int, int]]:
    for p in range(2, n + 1):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            return (p, e) if n == 1 else None
    return None


class _Ring:
    size: int
    is_field: bool

    def add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def neg(self, a: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    def conj(self, a: int) -> int:
        return a

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    @cached_property
    def add_table(self) -> np.ndarray:
        q = self.size
        return np.array([[self.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)

    @cached_property
    def mul_table(self) -> np.ndarray:
        q = self.size
        return np.array([[self.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)

    @cached_property
    def conj_table(self) -> np.ndarray:
        return np.array([self.conj(a) for a in range(self.size)], dtype=np.int64)


class IntegersMod(_Ring):
    def __init__(self, n: int):
        if n < 2:
            raise ValueError("modulus must be at least 2")
        self.n = self.size = n
        self.is_field = _is_prime(n)

    def add(self, a, b):
        return (a + b) % self.n

    def sub(self, a, b):
        return (a - b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def inv(self, a):
        return pow(a, -1, self.n)

    def __repr__(self):
        return f"IntegersMod({self.n})"

    def __eq__(self, other):
        return type(other) is type(self) and other.n == self.n

    def __hash__(self):
        return hash((type(self).__name__, self.n))


class PrimeField(IntegersMod):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        super().__init__(p)

    def __repr__(self):
        return f"PrimeField({self.n})"


class QuadraticExtension(_Ring):
    """F_{p^2} = F_p[t]/(t^2 + c1 t + c0); a + b t is stored as ``a + p*b``.

    ``conj`` is the Frobenius x -> x^p, the involution fixing F_p.
    """

    def __init__(self, p: int, modulus: Optional[tuple[int, int]] = None):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.size = p * p
        self.is_field = True
        if modulus is None:
            modulus = next(
                (c0, c1)
                for c1 in range(p)
                for c0 in range(p)
                if all((t * t + c1 * t + c0) % p for t in range(p))
            )
        c0, c1 = modulus
        if any((t * t + c1 * t + c0) % p == 0 for t in range(p)):
            raise ValueError(f"t^2 + {c1} t + {c0} is reducible mod {p}")
        self.modulus = (c0 % p, c1 % p)

    def split(self, x: int) -> tuple[int, int]:
        return x % self.p, x // self.p

    def join(self, a: int, b: int) -> int:
        return a % self.p + self.p * (b % self.p)

    def add(self, x, y):
        a, b = self.split(x)
        c, d = self.split(y)
        return self.join(a + c, b + d)

    def neg(self, x):
        a, b = self.split(x)
        return self.join(-a, -b)

    def mul(self, x, y):
        a, b = self.split(x)
        c, d = self.split(y)
        c0, c1 = self.modulus
        bd = b * d
        return self.join(a * c - bd * c0, a * d + b * c - bd * c1)

    def pow(self, x: int, k: int) -> int:
        out, base = 1, x
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.pow(x, self.size - 2)

    def conj(self, x):
        return self.pow(x, self.p)

    def norm(self, x: int) -> int:
        return self.mul(x, self.conj(x)) % self.p

    def __repr__(self):
        return f"QuadraticExtension({self.p}, {self.modulus})"


# --------------------------------------------------------------------------
# linear algebra


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(ring: _Ring, A: Matrix, B: Matrix) -> Matrix:
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = 0
            for t in range(k):
                acc = ring.add(acc, ring.mul(A[i][t], B[t][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_sub_identity(ring: _Ring, A: Matrix) -> list[list[int]]:
    return [[ring.sub(A[i][j], 1) if i == j else A[i][j] for j in range(len(A))] for i in range(len(A))]


def _echelon(ring: _Ring, rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over a field; returns (rows, pivot columns)."""
    M = [list(r) for r in rows]
    pivots: list[int] = []
    if not M:
        return M, pivots
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(M)) if M[i][c]), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        s = ring.inv(M[r][c])
        M[r] = [ring.mul(s, v) for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [ring.sub(a, ring.mul(f, b)) for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(ring: _Ring, rows: Sequence[Sequence[int]]) -> int:
    if not ring.is_field:
        raise ValueError(f"rank needs a field, got {ring!r}")
    if isinstance(ring, IntegersMod):
        return _rank_mod_p(rows, ring.n)
    return len(_echelon(ring, [list(r) for r in rows])[1])


def _rank_mod_p(rows, p: int) -> int:
    M = [list(r) for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(M)) if M[i][c] % p), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        s = pow(M[r][c], -1, p)
        pivot_row = M[r]
        for i in range(r + 1, len(M)):
            f = (M[i][c] * s) % p
            if f:
                row = M[i]
                M[i] = [(a - f * b) % p for a, b in zip(row, pivot_row)]
        r += 1
        if r == len(M):
            break
    return r


def kernel_basis(ring: _Ring, rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> list[tuple[int, ...]]:
    """Basis of {v : M v = 0} over a field."""
    if not ring.is_field:
        raise ValueError(f"kernel_basis needs a field, got {ring!r}")
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [tuple(int(i == j) for i in range(ncols)) for j in range(ncols)]
    R, pivots = _echelon(ring, [list(r) for r in rows])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = ring.neg(R[i][f])
        basis.append(tuple(v))
    return basis


def kernel_shape(M: Sequence[Sequence[int]], ell: int, e: int) -> tuple[int, ...]:
    """Cyclic orders of {v in (Z/l^e)^n : M v = 0}, ascending; () when trivial.

    M is diagonalized by unimodular row and column operations over the local
    ring Z/l^e, pivoting on an entry of least l-adic valuation.
    """
    n_mod = ell ** e
    A = [[x % n_mod for x in row] for row in M]
    ncols = len(A[0]) if A else 0

    def val(x: int) -> int:
        if x == 0:
            return e
        v = 0
        while x % ell == 0:
            x //= ell
            v += 1
        return v

    vals: list[int] = []
    while A and A[0]:
        best = min(((val(A[i][j]), i, j) for i in range(len(A)) for j in range(len(A[0]))))
        v, pi, pj = best
        if v >= e:
            vals.extend([e] * len(A[0]))
            break
        A[0], A[pi] = A[pi], A[0]
        for row in A:
            row[0], row[pj] = row[pj], row[0]
        unit_inv = pow(A[0][0] // ell ** v, -1, n_mod)
        for i in range(1, len(A)):
            if A[i][0]:
                f = (A[i][0] // ell ** v) * unit_inv % n_mod
                A[i] = [(a - f * b) % n_mod for a, b in zip(A[i], A[0])]
        for j in range(1, len(A[0])):
            if A[0][j]:
                f = (A[0][j] // ell ** v) * unit_inv % n_mod
                for row in A:
                    row[j] = (row[j] - f * row[0]) % n_mod
        vals.append(v)
        A = [row[1:] for row in A[1:]]
    # square input: columns beyond the rows contribute full cyclic factors
    vals.extend([e] * (ncols - len(vals)))
    return tuple(sorted(ell ** min(v, e) for v in vals if v > 0))


def fixed_space(x: Matrix, ring: _Ring):
    """Descriptor of ker(x - 1): its dimension over a field, else its group shape."""
    M = mat_sub_identity(ring, x)
    if ring.is_field:
        return len(x) - rank(ring, M)
    if isinstance(ring, IntegersMod):
        pe = _prime_power(ring.n)
        if pe is None:
            raise ValueError(f"kernel shape needs a prime-power modulus, got {ring.n}")
        return kernel_shape(M, *pe)
    raise ValueError(f"unsupported ring {ring!r}")


# --------------------------------------------------------------------------
# enumeration


def standard_gram(kind: str, n: int, ring: _Ring) -> Matrix:
    """Gram matrix of the standard form: blocks [[0, 1], [-1, 0]] or the identity."""
    if kind == "symplectic":
        if n % 2:
            raise ValueError("symplectic forms need even dimension")
        G = [[0] * n for _ in range(n)]
        for k in range(0, n, 2):
            G[k][k + 1] = 1
            G[k + 1][k] = ring.neg(1)
        return tuple(tuple(r) for r in G)
    if kind == "hermitian":
        return identity(n)
    raise ValueError(f"unknown form kind {kind!r}")


def ring_for(spec: GroupSpec) -> _Ring:
    if isinstance(spec, (Symplectic, GSpCoset)):
        if spec.ell is None:
            raise ValueError("enumeration needs a concrete l")
        if spec.e == 1:
            return PrimeField(spec.ell)
        return IntegersMod(spec.ell ** spec.e)
    if isinstance(spec, Unitary):
        if spec.m is None:
            raise ValueError("enumeration needs a concrete m")
        if not _is_prime(spec.m):
            raise ValueError("unitary enumeration supports prime m only")
        return QuadraticExtension(spec.m)
    if isinstance(spec, GeneralLinear):
        if spec.ell is None:
            raise ValueError("enumeration needs a concrete l")
        return PrimeField(spec.ell)
    raise TypeError(f"unknown group spec {spec!r}")


class _FormEnumerator:
    """Enumerates {A : B(A v, A w) = xi B(v, w)} column by column.

    B(v, w) = v^T G sigma(w) where sigma is the ring's involution
    (trivial for symplectic forms).
    """

    def __init__(self, ring: _Ring, gram: Matrix, xi: int = 1, hermitian: bool = False):
        self.ring = ring
        self.n = n = len(gram)
        self.gram = gram
        self.hermitian = hermitian
        q = ring.size
        self.vectors = np.array(list(product(range(q), repeat=n)), dtype=np.int64)
        self.right = ring.conj_table[self.vectors] if hermitian else self.vectors
        self.target = [[ring.mul(xi, gram[i][j]) for j in range(n)] for i in range(n)]
        self.self_form = self.form_against_all(self.vectors)

    def _pairing(self, left: Sequence[int]) -> list[int]:
        # coefficients of w -> B(left, w) before the involution
        R, G, n = self.ring, self.gram, self.n
        out = []
        for k in range(n):
            acc = 0
            for i in range(n):
                acc = R.add(acc, R.mul(left[i], G[i][k]))
            out.append(acc)
        return out

    def form_against_all(self, left) -> np.ndarray:
        """B(left, v) for every vector v; ``left`` may be one vector or all of them."""
        add, mul = self.ring.add_table, self.ring.mul_table
        if isinstance(left, np.ndarray) and left.ndim == 2:
            # row-wise B(v, v)
            G = np.array(self.gram, dtype=np.int64)
            acc = np.zeros(len(left), dtype=np.int64)
            for k in range(self.n):
                coef = np.zeros(len(left), dtype=np.int64)
                for i in range(self.n):
                    if G[i, k]:
                        coef = add[coef, mul[left[:, i], G[i, k]]]
                acc = add[acc, mul[coef, self.right[:, k]]]
            return acc
        w = self._pairing(left)
        acc = np.zeros(len(self.vectors), dtype=np.int64)
        for k, c in enumerate(w):
            if c:
                acc = add[acc, mul[c, self.right[:, k]]]
        return acc

    def candidates(self, prefix_forms: list[np.ndarray], j: int) -> np.ndarray:
        mask = self.self_form == self.target[j][j]
        # the zero vector (index 0) is never a column; excluding it leaves no
        # dead ends over a field, which keeps column-wise sampling uniform
        mask[0] = False
        for i, arr in enumerate(prefix_forms):
            mask &= arr == self.target[i][j]
        return np.nonzero(mask)[0]

    def walk(self, first: Optional[Sequence[int]] = None) -> Iterator[Matrix]:
        top = self.candidates([], 0)
        if first is not None:
            keep = set(first)
            top = [t for t in top if t in keep]
        for idx in top:
            yield from self._walk([int(idx)], [self.form_against_all(self.vectors[idx])])

    def _walk(self, cols: list[int], forms: list[np.ndarray]) -> Iterator[Matrix]:
        j = len(cols)
        if j == self.n:
            V = self.vectors
            yield tuple(tuple(int(V[c][i]) for c in cols) for i in range(self.n))
            return
        for idx in self.candidates(forms, j):
            idx = int(idx)
            if j + 1 == self.n:
                yield from self._walk(cols + [idx], forms)
            else:
                yield from self._walk(cols + [idx], forms + [self.form_against_all(self.vectors[idx])])

    def top_level(self) -> list[int]:
        return [int(i) for i in self.candidates([], 0)]

    def random(self, rng: random.Random) -> Matrix:
        cols: list[int] = []
        forms: list[np.ndarray] = []
        for j in range(self.n):
            cands = self.candidates(forms, j)
            idx = int(cands[rng.randrange(len(cands))])
            cols.append(idx)
            forms.append(self.form_against_all(self.vectors[idx]))
        V = self.vectors
        return tuple(tuple(int(V[c][i]) for c in cols) for i in range(self.n))


def _gl_walk(ring: _Ring, n: int, first: Optional[Sequence[int]] = None) -> Iterator[Matrix]:
    vecs = list(product(range(ring.size), repeat=n))
    index = {v: i for i, v in enumerate(vecs)}

    def extend_span(span: frozenset, v) -> frozenset:
        out = set(span)
        for s in span:
            sv = vecs[s]
            for a in range(ring.size):
                out.add(index[tuple(ring.add(x, ring.mul(a, y)) for x, y in zip(sv, v))])
        return frozenset(out)

    zero = frozenset({index[(0,) * n]})

    def rec(cols: list[int], span: frozenset):
        if len(cols) == n:
            yield tuple(tuple(vecs[c][i] for c in cols) for i in range(n))
            return
        for i in range(len(vecs)):
            if i in span:
                continue
            if not cols and first is not None and i not in first:
                continue
            yield from rec(cols + [i], extend_span(span, vecs[i]))

    yield from rec([], zero)


def _enumerator(spec: GroupSpec) -> tuple[_Ring, Optional[_FormEnumerator]]:
    ring = ring_for(spec)
    n = spec.dim
    space = ring.size ** (n * n)
    if space > FEASIBILITY_GUARD:
        raise InfeasibleError(
            f"{spec} has a candidate space of {ring.size}^{n * n} = {space} matrices, above the guard 2^32"
        )
    if isinstance(spec, Symplectic):
        return ring, _FormEnumerator(ring, standard_gram("symplectic", n, ring))
    if isinstance(spec, GSpCoset):
        return ring, _FormEnumerator(ring, standard_gram("symplectic", n, ring), xi=spec.xi % ring.size)
    if isinstance(spec, Unitary):
        return ring, _FormEnumerator(ring, standard_gram("hermitian", n, ring), hermitian=True)
    return ring, None


def enumerate_group(spec: GroupSpec) -> Iterator[Matrix]:
    """Yield every element of the group exactly once, in a fixed order."""
    ring, en = _enumerator(spec)
    if en is None:
        yield from _gl_walk(ring, spec.dim)
    else:
        yield from en.walk()


def _tally(spec: GroupSpec, first: Optional[list[int]]) -> Counter:
    ring, en = _enumerator(spec)
    walker = _gl_walk(ring, spec.dim, first) if en is None else en.walk(first)
    return Counter(fixed_space(x, ring) for x in walker)


def _top_level(spec: GroupSpec) -> list[int]:
    ring, en = _enumerator(spec)
    if en is None:
        return list(range(1, ring.size ** spec.dim))
    return en.top_level()


def default_workers() -> int:
    return max(1, int(os.environ.get("FIXEDSPACE_JOBS", "1")))


def empirical_group_distribution(spec: GroupSpec, workers: Optional[int] = None) -> DistributionTable:
    """Exact fixed-space frequencies of a group, by exhaustive enumeration.

    The enumeration can be split over ``workers`` processes by first column;
    the merged table does not depend on the split.
    """
    workers = default_workers() if workers is None else workers
    if workers <= 1:
        counts = _tally(spec, None)
    else:
        top = _top_level(spec)
        chunks = [top[i::workers] for i in range(workers)]
        counts = Counter()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for c in pool.map(_tally, [spec] * len(chunks), chunks):
                counts.update(c)
    order = sum(counts.values())
    ring = ring_for(spec)
    if ring.is_field:
        entries = {r: Fraction(counts.get(r, 0), order) for r in range(spec.dim + 1)}
    else:
        entries = {k: Fraction(v, order) for k, v in counts.items()}
    return DistributionTable(spec, entries, "brute-force", {"order": order})


def random_element(spec: GroupSpec, rng: random.Random) -> Matrix:
    """Uniform random element of a form-preserving group.

    Columns are drawn one at a time, uniformly among those consistent with
    the columns already chosen; works above the enumeration guard.
    """
    ring = ring_for(spec)
    if not ring.is_field:
        raise ValueError("random_element needs a field; over Z/l^e column-wise sampling is not uniform")
    n = spec.dim
    if isinstance(spec, Symplectic):
        en = _FormEnumerator(ring, standard_gram("symplectic", n, ring))
    elif isinstance(spec, GSpCoset):
        en = _FormEnumerator(ring, standard_gram("symplectic", n, ring), xi=spec.xi % ring.size)
    elif isinstance(spec, Unitary):
        en = _FormEnumerator(ring, standard_gram("hermitian", n, ring), hermitian=True)
    else:
        raise ValueError("random_element supports form-preserving groups only")
    return en.random(rng)


# --------------------------------------------------------------------------
# generalized 1-eigenspace


def _span_rank(ring, vectors) -> int:
    return rank(ring, [list(v) for v in vectors]) if vectors else 0


def _apply(ring, A: Matrix, v) -> tuple[int, ...]:
    return tuple(
        _dot(ring, A[i], v) for i in range(len(A))
    )


def _dot(ring, a, b) -> int:
    acc = 0
    for x, y in zip(a, b):
        acc = ring.add(acc, ring.mul(x, y))
    return acc


def eigenspace_split(x: Matrix, ring: _Ring, gram: Optional[Matrix] = None):
    """Bases of E_1(x) = ker (x - 1)^n and of its symplectic orthogonal."""
    if not ring.is_field:
        raise ValueError("eigenspace_split needs a field")
    n = len(x)
    gram = standard_gram("symplectic", n, ring) if gram is None else gram
    N = tuple(tuple(r) for r in mat_sub_identity(ring, x))
    P = identity(n)
    for _ in range(n):
        P = mat_mul(ring, P, N)
    E = kernel_basis(ring, [list(r) for r in P], n)
    # w in E^perp iff (e^T G) w = 0 for every basis vector e
    constraints = [[_dot(ring, e, [gram[i][k] for i in range(n)]) for k in range(n)] for e in E]
    C = kernel_basis(ring, constraints, n) if constraints else kernel_basis(ring, [], n)
    return E, C


def check_eigenspace_split(x: Matrix, ring: _Ring, E, C, gram: Optional[Matrix] = None) -> dict[str, bool]:
    """The five properties of the split, each as a boolean."""
    n = len(x)
    gram = standard_gram("symplectic", n, ring) if gram is None else gram
    N = tuple(tuple(r) for r in mat_sub_identity(ring, x))
    out = {}
    out["direct_sum"] = len(E) + len(C) == n and _span_rank(ring, list(E) + list(C)) == n
    stable_e = all(_span_rank(ring, list(E) + [_apply(ring, x, v)]) == len(E) for v in E)
    stable_c = all(_span_rank(ring, list(C) + [_apply(ring, x, v)]) == len(C) for v in C)
    out["stable"] = stable_e and stable_c
    nil = True
    for v in E:
        w = v
        for _ in range(max(1, len(E))):
            w = _apply(ring, N, w)
        nil &= not any(w)
    out["unipotent_on_E"] = nil
    out["invertible_on_complement"] = _span_rank(ring, [_apply(ring, N, v) for v in C]) == len(C)
    gram_E = [[_dot(ring, e, _apply(ring, gram, f)) for f in E] for e in E]
    out["nondegenerate_on_E"] = (not E) or rank(ring, gram_E) == len(E)
    return out


# --------------------------------------------------------------------------
# CRT independence


def crt_product_check(ell1: int, ell2: int, g: int = 1) -> dict:
    """Fixed spaces mod ell1 and mod ell2 over Sp_{2g}(Z/ell1 ell2) are independent."""
    if ell1 == ell2 or not (_is_prime(ell1) and _is_prime(ell2)):
        raise ValueError("need two distinct primes")
    n = ell1 * ell2
    ring = IntegersMod(n)
    dim = 2 * g
    if n ** (dim * dim) > FEASIBILITY_GUARD:
        raise InfeasibleError(f"Sp_{dim}(Z/{n}) is above the enumeration guard")
    en = _FormEnumerator(ring, standard_gram("symplectic", dim, ring))
    f1, f2 = PrimeField(ell1), PrimeField(ell2)
    joint: Counter = Counter()
    for x in en.walk():
        x1 = tuple(tuple(a % ell1 for a in row) for row in x)
        x2 = tuple(tuple(a % ell2 for a in row) for row in x)
        joint[(fixed_space(x1, f1), fixed_space(x2, f2))] += 1
    order = sum(joint.values())
    m1: Counter = Counter()
    m2: Counter = Counter()
    for (a, b), c in joint.items():
        m1[a] += c
        m2[b] += c
    ranks = range(dim + 1)
    joint_p = {(a, b): Fraction(joint.get((a, b), 0), order) for a in ranks for b in ranks}
    marg1 = {a: Fraction(m1.get(a, 0), order) for a in ranks}
    marg2 = {b: Fraction(m2.get(b, 0), order) for b in ranks}
    factorizes = all(joint_p[(a, b)] == marg1[a] * marg2[b] for a in ranks for b in ranks)
    field1 = empirical_group_distribution(Symplectic(g, ell1), workers=1).entries
    field2 = empirical_group_distribution(Symplectic(g, ell2), workers=1).entries
    return {
        "moduli": (ell1, ell2),
        "order": order,
        "joint": joint_p,
        "marginal_1": marg1,
        "marginal_2": marg2,
        "factorizes": factorizes,
        "marginals_match_fields": marg1 == field1 and marg2 == field2,
    }
