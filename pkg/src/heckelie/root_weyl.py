"""Type-A weight arithmetic and symmetric group combinatorics.

Weights are points of the rank-n weight space carried as full n-tuples of
exact rationals in the epsilon-basis; two tuples differing by a multiple of
(1,...,1) describe the same weight, and the canonical representative has
coordinate sum zero.  The Weyl group is the symmetric group acting by
coordinate permutation, with the rho-shifted dot action on top.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

from .errors import PreconditionError, RankMismatchError
from .linalg import QZERO


def _canonical(coords: tuple) -> tuple:
    n = len(coords)
    mean = sum(coords, QZERO) / n
    return tuple(mpq(c) - mean for c in coords)


@dataclass(frozen=True)
class Weight:
    """A weight in canonical (sum-zero) coordinates."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", _canonical(tuple(mpq(c) for c in self.coords)))

    @property
    def rank(self) -> int:
        return len(self.coords)

    @staticmethod
    def zero(n: int) -> "Weight":
        return Weight((QZERO,) * n)

    @staticmethod
    def rho(n: int) -> "Weight":
        # half sum of positive roots: ((n-1)/2, (n-3)/2, ..., -(n-1)/2)
        return Weight(tuple(mpq(n - 1 - 2 * i, 2) for i in range(n)))

    @staticmethod
    def eps(n: int, i: int) -> "Weight":
        """Image of the i-th coordinate functional (1-based) in the weight space."""
        return Weight(tuple(mpq(1) if j == i - 1 else QZERO for j in range(n)))

    @staticmethod
    def alpha(n: int, i: int) -> "Weight":
        """Simple root alpha_i = eps_i - eps_{i+1} (1-based i)."""
        if not 1 <= i <= n - 1:
            raise PreconditionError(f"alpha index {i} out of range for rank {n}")
        c = [QZERO] * n
        c[i - 1] = mpq(1)
        c[i] = mpq(-1)
        return Weight(tuple(c))

    def __add__(self, other: "Weight") -> "Weight":
        self._check_rank(other)
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check_rank(other)
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def _check_rank(self, other: "Weight"):
        if self.rank != other.rank:
            raise RankMismatchError(f"weight ranks differ: {self.rank} vs {other.rank}")

    def pairing_h(self, i: int):
        """<self, h_i> = coord_i - coord_{i+1} (1-based i); representative independent."""
        return self.coords[i - 1] - self.coords[i]

    def is_integral(self) -> bool:
        return all(self.pairing_h(i).denominator == 1 for i in range(1, self.rank))

    def is_dominant(self) -> bool:
        return all(self.pairing_h(i) >= 0 for i in range(1, self.rank)) and self.is_integral()

    def in_root_lattice_positive(self) -> bool:
        """Membership in the nonnegative integer span of the simple roots."""
        partial = QZERO
        for c in self.coords[:-1]:
            partial += c
            if partial.denominator != 1 or partial < 0:
                return False
        return True

    def height(self):
        """Sum of simple-root coefficients (defined for root lattice elements)."""
        total = QZERO
        partial = QZERO
        for c in self.coords[:-1]:
            partial += c
            total += partial
        return total

    def permuted(self, w: "Permutation") -> "Weight":
        """w acting by permutation of coordinates: (w.v)_{w(i)} = v_i."""
        if w.rank != self.rank:
            raise RankMismatchError("permutation/weight rank mismatch")
        out = [QZERO] * self.rank
        for i, c in enumerate(self.coords):
            out[w.images[i] - 1] = c
        return Weight(tuple(out))

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def parse_weight(text: str) -> Weight:
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    parts = [p for p in s.split(",") if p.strip()]
    if not parts:
        raise PreconditionError(f"cannot parse weight literal {text!r}")
    try:
        return Weight(tuple(mpq(p.strip()) for p in parts))
    except ValueError as exc:
        raise PreconditionError(f"cannot parse weight literal {text!r}") from exc


@dataclass(frozen=True)
class Permutation:
    """Element of the symmetric group in one-line notation (1-based images)."""

    images: tuple

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise PreconditionError(f"not a permutation: {imgs}")
        object.__setattr__(self, "images", imgs)

    @property
    def rank(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(1, n + 1)))

    @staticmethod
    def s(n: int, i: int) -> "Permutation":
        """Simple transposition s_i swapping i and i+1 (1-based)."""
        if not 1 <= i <= n - 1:
            raise PreconditionError(f"simple reflection index {i} out of range for rank {n}")
        imgs = list(range(1, n + 1))
        imgs[i - 1], imgs[i] = imgs[i], imgs[i - 1]
        return Permutation(tuple(imgs))

    @staticmethod
    def transposition(n: int, i: int, j: int) -> "Permutation":
        imgs = list(range(1, n + 1))
        imgs[i - 1], imgs[j - 1] = imgs[j - 1], imgs[i - 1]
        return Permutation(tuple(imgs))

    @staticmethod
    def from_word(n: int, word) -> "Permutation":
        w = Permutation.identity(n)
        for i in word:
            w = w * Permutation.s(n, i)
        return w

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """(w*v)(x) = w(v(x)): the right factor acts first."""
        if self.rank != other.rank:
            raise RankMismatchError("permutation ranks differ")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        out = [0] * self.rank
        for i, img in enumerate(self.images):
            out[img - 1] = i + 1
        return Permutation(tuple(out))

    @property
    def length(self) -> int:
        imgs = self.images
        n = len(imgs)
        return sum(1 for i in range(n) for j in range(i + 1, n) if imgs[i] > imgs[j])

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.rank + 1))

    def left_descents(self) -> list[int]:
        inv = self.inverse().images
        return [i for i in range(1, self.rank) if inv[i - 1] > inv[i]]

    def right_descents(self) -> list[int]:
        return [i for i in range(1, self.rank) if self.images[i - 1] > self.images[i]]

    def reduced_word(self) -> tuple:
        """Canonical reduced word: repeatedly strip the smallest left descent."""
        word = []
        w = self
        while not w.is_identity():
            i = w.left_descents()[0]
            word.append(i)
            w = Permutation.s(w.rank, i) * w
        return tuple(word)

    def __str__(self) -> str:
        return "[" + ",".join(str(i) for i in self.images) + "]"


_WORD_RE = re.compile(r"^\s*(?:s(\d+)\s*)+$")


def parse_permutation(text: str, n: int | None = None) -> Permutation:
    """Accepts one-line "[2,1,3]", compact digits "213", or a word "s1 s2"."""
    s = text.strip()
    if _WORD_RE.match(s) or s in ("e", "id"):
        if n is None:
            raise PreconditionError("rank required to parse a reflection word")
        if s in ("e", "id"):
            return Permutation.identity(n)
        word = [int(t) for t in re.findall(r"s(\d+)", s)]
        return Permutation.from_word(n, word)
    if s.startswith("[") and s.endswith("]"):
        imgs = [int(p) for p in s[1:-1].split(",") if p.strip()]
    elif s.isdigit():
        imgs = [int(ch) for ch in s]
    else:
        raise PreconditionError(f"cannot parse permutation literal {text!r}")
    w = Permutation(tuple(imgs))
    if n is not None and w.rank != n:
        raise RankMismatchError(f"permutation {text!r} has rank {w.rank}, expected {n}")
    return w


@lru_cache(maxsize=None)
def symmetric_group(n: int) -> tuple:
    """All of S_n sorted by (length, one-line notation) for reproducibility."""
    perms = [Permutation(p) for p in itertools.permutations(range(1, n + 1))]
    return tuple(sorted(perms, key=lambda w: (w.length, w.images)))


def longest_element(n: int) -> Permutation:
    return Permutation(tuple(range(n, 0, -1)))


@dataclass(frozen=True)
class ParabolicData:
    """A standard parabolic subgroup of S_n given by simple generators J."""

    n: int
    generators: frozenset

    def __post_init__(self):
        gens = frozenset(int(i) for i in self.generators)
        if any(not 1 <= i <= self.n - 1 for i in gens):
            raise PreconditionError(f"parabolic generators {sorted(gens)} out of range")
        object.__setattr__(self, "generators", gens)

    @staticmethod
    def stabilizer_of(xi: Weight) -> "ParabolicData":
        """The stabilizer parabolic of a dominant weight xi (in the plain action)."""
        gens = {i for i in range(1, xi.rank) if xi.pairing_h(i) == 0}
        return ParabolicData(xi.rank, frozenset(gens))

    def elements(self) -> tuple:
        return _parabolic_elements(self.n, self.generators)

    def longest(self) -> Permutation:
        return max(self.elements(), key=lambda w: (w.length, w.images))


@lru_cache(maxsize=None)
def _parabolic_elements(n: int, generators: frozenset) -> tuple:
    gens = [Permutation.s(n, i) for i in sorted(generators)]
    seen = {Permutation.identity(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                u = w * g
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return tuple(sorted(seen, key=lambda w: (w.length, w.images)))


def dot_action(w: Permutation, lam: Weight) -> Weight:
    """The rho-shifted action w(lam + rho) - rho, canonicalized."""
    if w.rank != lam.rank:
        raise RankMismatchError("rank mismatch in dot action")
    rho = Weight.rho(lam.rank)
    return (lam + rho).permuted(w) - rho


@dataclass(frozen=True)
class CosetData:
    w_L: Permutation
    w_R: Permutation
    w_LR: Permutation
    w_min: Permutation


def coset_data(w: Permutation, J: ParabolicData) -> CosetData:
    """Longest elements of W_J w, w W_J, W_J w W_J and the minimal coset rep."""
    if w.rank != J.n:
        raise RankMismatchError("rank mismatch in coset data")
    elems = J.elements()
    key = lambda u: (u.length, u.images)
    left = [u * w for u in elems]
    right = [w * u for u in elems]
    double = [u * w * v for u in elems for v in elems]
    return CosetData(
        w_L=max(left, key=key),
        w_R=max(right, key=key),
        w_LR=max(double, key=key),
        w_min=min(left, key=key),
    )


def bruhat_leq(x: Permutation, y: Permutation) -> bool:
    """Bruhat order by the dominance criterion on one-line notation."""
    if x.rank != y.rank:
        raise RankMismatchError("rank mismatch in Bruhat comparison")
    if x.length > y.length:
        return False
    n = x.rank
    for i in range(1, n):
        xs = sorted(x.images[:i], reverse=True)
        ys = sorted(y.images[:i], reverse=True)
        if any(a > b for a, b in zip(xs, ys)):
            return False
    return True


def tensor_weight_decompose(lam: Weight, mu: Weight, ell: int):
    """The unique composition (l_1,...,l_n) of ell with
    lam - mu = sum l_i eps_i  modulo (1,...,1), or None if none exists.

    Decides membership of lam - mu in the weight set of the ell-fold tensor
    power of the vector representation.
    """
    if lam.rank != mu.rank:
        raise RankMismatchError("rank mismatch in tensor weight decomposition")
    n = lam.rank
    diff = lam - mu
    # need l_i = diff_i + ell/n nonnegative integers
    shift = mpq(ell, n)
    out = []
    for c in diff.coords:
        v = c + shift
        if v.denominator != 1 or v < 0:
            return None
        out.append(int(v))
    assert sum(out) == ell
    return tuple(out)


@lru_cache(maxsize=None)
def min_coset_reps(n: int, generators: frozenset) -> tuple:
    """Minimal-length representatives of W_n / W_J, sorted by (length, one-line)."""
    sub = set(_parabolic_elements(n, generators))
    reps = []
    seen = set()
    for w in symmetric_group(n):
        if w in seen:
            continue
        reps.append(w)
        for u in sub:
            seen.add(w * u)
    return tuple(reps)


def coset_decompose(w: Permutation, generators: frozenset) -> tuple:
    """Write w = w_min * u with u in W_J and w_min the minimal coset rep."""
    n = w.rank
    u = Permutation.identity(n)
    cur = w
    # strip right descents lying in J
    changed = True
    while changed:
        changed = False
        for i in sorted(generators):
            if cur.images[i - 1] > cur.images[i]:
                s = Permutation.s(n, i)
                cur = cur * s
                u = s * u
                changed = True
    return cur, u
