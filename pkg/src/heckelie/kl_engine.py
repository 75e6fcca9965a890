"""Kazhdan-Lusztig polynomials for S_n and the multiplicity machinery.

The polynomials are computed by the classical recursion with mu-coefficient
bookkeeping and memoized per rank.  Composition multiplicities on the Verma
side are P_{w, y_R}(1), on the standard-module side P_{w_LR, y_LR}(1), with
the distinguished coset representatives taken against the stabilizer
parabolic of lambda + rho.  Inverting the unitriangular Verma multiplicity
matrix predicts functor images of simple modules in the Grothendieck group.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass

from .errors import PreconditionError
from .root_weyl import (
    CosetData,
    ParabolicData,
    Permutation,
    Weight,
    bruhat_leq,
    coset_data,
    dot_action,
    symmetric_group,
    tensor_weight_decompose,
)


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial in q, coefficients by ascending degree."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @staticmethod
    def zero() -> "IntPolynomial":
        return IntPolynomial(())

    @staticmethod
    def one() -> "IntPolynomial":
        return IntPolynomial((1,))

    @staticmethod
    def q_power(k: int) -> "IntPolynomial":
        return IntPolynomial((0,) * k + (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + IntPolynomial(tuple(-x for x in other.coeffs))

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self or not other:
            return IntPolynomial.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, value: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = "q" if k == 1 else f"q^{k}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        text = "+".join(parts)
        return text.replace("+-", "-")


_P_ZERO = IntPolynomial.zero()
_P_ONE = IntPolynomial.one()


class KLCache:
    """Two-level memo cache for KL polynomials, keyed by (n, x, y).

    Thread contract: concurrent reads are safe, writes take a lock.  When a
    path is supplied (or the KL_CACHE environment variable is set) the cache
    is loaded from and persisted to a flat JSON key-value file.
    """

    def __init__(self, path: str | None = None):
        self._tables: dict[int, dict] = {}
        self._lock = threading.Lock()
        self.path = path if path is not None else os.environ.get("KL_CACHE")
        if self.path and os.path.exists(self.path):
            self._load()

    def _key(self, x: Permutation, y: Permutation) -> tuple:
        return (x.images, y.images)

    def get(self, n: int, x: Permutation, y: Permutation):
        return self._tables.get(n, {}).get(self._key(x, y))

    def put(self, n: int, x: Permutation, y: Permutation, p: IntPolynomial):
        with self._lock:
            self._tables.setdefault(n, {})[self._key(x, y)] = p

    def _load(self):
        with open(self.path) as fh:
            raw = json.load(fh)
        for key, coeffs in raw.items():
            n_s, x_s, y_s = key.split("|")
            n = int(n_s)
            x = Permutation(tuple(int(c) for c in x_s.split(",")))
            y = Permutation(tuple(int(c) for c in y_s.split(",")))
            self._tables.setdefault(n, {})[self._key(x, y)] = IntPolynomial(tuple(coeffs))

    def save(self):
        if not self.path:
            return
        raw = {}
        for n, table in sorted(self._tables.items()):
            for (xi, yi), p in sorted(table.items()):
                key = f"{n}|{','.join(map(str, xi))}|{','.join(map(str, yi))}"
                raw[key] = list(p.coeffs)
        with open(self.path, "w") as fh:
            json.dump(raw, fh, sort_keys=True)


_default_cache = KLCache()


def kl_polynomial(x: Permutation, y: Permutation, cache: KLCache | None = None) -> IntPolynomial:
    """P_{x,y}(q), with P_{x,y} = 0 for x not below y in Bruhat order."""
    if x.rank != y.rank:
        raise PreconditionError("rank mismatch in KL polynomial")
    cache = cache or _default_cache
    return _kl(x, y, cache)


def _mu(z: Permutation, w: Permutation, cache: KLCache) -> int:
    diff = w.length - z.length
    if diff <= 0 or diff % 2 == 0:
        return 0
    return _kl(z, w, cache).coeff((diff - 1) // 2)


def _kl(x: Permutation, y: Permutation, cache: KLCache) -> IntPolynomial:
    if x == y:
        return _P_ONE
    if not bruhat_leq(x, y):
        return _P_ZERO
    n = x.rank
    hit = cache.get(n, x, y)
    if hit is not None:
        return hit
    s_idx = y.left_descents()[0]
    s = Permutation.s(n, s_idx)
    sy = s * y
    sx = s * x
    c = 1 if sx.length < x.length else 0
    p = IntPolynomial.q_power(1 - c) * _kl(sx, sy, cache) + IntPolynomial.q_power(c) * _kl(
        x, sy, cache
    )
    for z in symmetric_group(n):
        if z.length >= sy.length or not bruhat_leq(x, z) or not bruhat_leq(z, sy):
            continue
        if (s * z).length > z.length:
            continue
        m = _mu(z, sy, cache)
        if m:
            p = p - IntPolynomial.q_power((y.length - z.length) // 2) * (
                _kl(x, z, cache) * IntPolynomial((m,))
            )
    cache.put(n, x, y, p)
    return p


def _check_multiplicity_preconditions(lam: Weight, w: Permutation, y: Permutation, side: str):
    if not (lam + Weight.rho(lam.rank)).is_dominant():
        raise PreconditionError("lambda + rho must be dominant integral")
    if w.rank != lam.rank or y.rank != lam.rank:
        raise PreconditionError("rank mismatch between weight and group elements")
    if side == "standard":
        n = lam.rank
        for u, name in ((w, "w"), (y, "y")):
            if tensor_weight_decompose(lam, dot_action(u, lam), n) is None:
                raise PreconditionError(
                    f"lambda - {name}.lambda is not a weight of the tensor power"
                )
    elif side != "verma":
        raise PreconditionError(f"unknown side {side!r}")


def stabilizer_parabolic(lam: Weight) -> ParabolicData:
    return ParabolicData.stabilizer_of(lam + Weight.rho(lam.rank))


def multiplicity(
    lam: Weight, w: Permutation, y: Permutation, side: str, cache: KLCache | None = None
) -> int:
    """Composition multiplicity [M(w.lam) : L(y.lam)] (side="verma") or
    [M(lam, w.lam) : L(lam, y.lam)] (side="standard")."""
    _check_multiplicity_preconditions(lam, w, y, side)
    J = stabilizer_parabolic(lam)
    if side == "verma":
        y_r = coset_data(y, J).w_R
        return kl_polynomial(w, y_r, cache)(1)
    w_lr = coset_data(w, J).w_LR
    y_lr = coset_data(y, J).w_LR
    return kl_polynomial(w_lr, y_lr, cache)(1)


def right_coset_longest_reps(lam: Weight) -> list[Permutation]:
    """Longest elements of the cosets w W_{lam+rho}, sorted by length.

    These index both Verma and simple classes with infinitesimal character
    determined by lam.
    """
    J = stabilizer_parabolic(lam)
    reps = sorted(
        {coset_data(w, J).w_R for w in symmetric_group(lam.rank)},
        key=lambda w: (w.length, w.images),
    )
    return reps


def double_coset_longest_reps(lam: Weight) -> list[Permutation]:
    J = stabilizer_parabolic(lam)
    reps = sorted(
        {coset_data(w, J).w_LR for w in symmetric_group(lam.rank)},
        key=lambda w: (w.length, w.images),
    )
    return reps


def verma_multiplicity_matrix(lam: Weight, cache: KLCache | None = None):
    """Unitriangular matrix [M(w.lam):L(y.lam)] over right-coset longest reps."""
    reps = right_coset_longest_reps(lam)
    mat = [[kl_polynomial(w, y, cache)(1) for y in reps] for w in reps]
    return reps, mat


def _invert_unitriangular(mat: list[list[int]]) -> list[list[int]]:
    n = len(mat)
    inv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    # forward substitution; mat is upper unitriangular in the rep order
    for i in range(n - 1, -1, -1):
        for j in range(n - 1, i, -1):
            c = sum(mat[i][k] * inv[k][j] for k in range(i + 1, n))
            inv[i][j] = -c
    return inv


def membership_composition(lam: Weight, w: Permutation, ell: int):
    return tensor_weight_decompose(lam, dot_action(w, lam), ell)


def grothendieck_simple_image(
    lam: Weight, w: Permutation, cache: KLCache | None = None
) -> dict[Permutation, int]:
    """Formal image of the simple class [L(w.lam)] under the functor,
    expanded in simple standard-module-quotient classes.

    Returns a map from double-coset longest representatives to integers; the
    simple-to-simple theorem predicts a single class with coefficient one, or
    the empty map, but the raw sum is returned so that prediction can be
    *checked* rather than assumed.
    """
    n = lam.rank
    rho = Weight.rho(n)
    if not (lam + rho).is_dominant():
        raise PreconditionError("lambda + rho must be dominant integral")
    J = stabilizer_parabolic(lam)
    reps, mat = verma_multiplicity_matrix(lam, cache)
    inv = _invert_unitriangular(mat)
    w_r = coset_data(w, J).w_R
    idx = reps.index(w_r)
    # [L(w.lam)] = sum_y inv[idx][y] [M(y.lam)]
    out: dict[Permutation, int] = {}
    for j, y in enumerate(reps):
        c = inv[idx][j]
        if c == 0:
            continue
        if membership_composition(lam, y, n) is None:
            continue  # the functor kills this Verma class
        # [M(lam, y.lam)] = sum_z P_{y_LR, z_LR}(1) [L(lam, z.lam)]
        y_lr = coset_data(y, J).w_LR
        for z in double_coset_longest_reps(lam):
            if membership_composition(lam, z, n) is None:
                continue
            m = kl_polynomial(y_lr, coset_data(z, J).w_LR, cache)(1)
            if m:
                out[z] = out.get(z, 0) + c * m
    return {z: c for z, c in out.items() if c != 0}
