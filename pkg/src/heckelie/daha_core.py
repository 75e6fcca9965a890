"""Element arithmetic in the degenerate affine Hecke algebra of GL_l.

Elements are kept in normal form: finite sums  c * w * (e1^a1 ... el^al)
with the group part on the left and the commuting polynomial part on the
right.  Products are straightened with the divided-difference form of the
cross relation,

    p * s_i  =  s_i * (s_i p)  -  d_i(p),

where d_i is the Demazure operator (p - s_i p)/(e_i - e_{i+1}); for linear p
this is exactly the defining relation  s_a x - s_a(x) s_a = -<a, x>.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from gmpy2 import mpq

from .errors import DegreeOverflowError, PreconditionError, RankMismatchError
from .root_weyl import Permutation

DEGREE_CAP = 16

# polynomial part: dict exponent-tuple -> mpq
Poly = dict


def _poly_clean(p: Poly) -> Poly:
    return {e: c for e, c in p.items() if c}


def poly_mul(a: Poly, b: Poly, rank: int) -> Poly:
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if sum(e) > DEGREE_CAP:
                raise DegreeOverflowError(
                    f"polynomial degree {sum(e)} exceeds cap {DEGREE_CAP}"
                )
            out[e] = out.get(e, mpq(0)) + ca * cb
    return _poly_clean(out)


def poly_perm(w: Permutation, p: Poly) -> Poly:
    """w acting on the polynomial generators: w(e_j) = e_{w(j)}."""
    out: Poly = {}
    for e, c in p.items():
        ne = [0] * len(e)
        for j, a in enumerate(e):
            ne[w.images[j] - 1] = a
        ne = tuple(ne)
        out[ne] = out.get(ne, mpq(0)) + c
    return _poly_clean(out)


def _poly_sub(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, mpq(0)) - c
    return _poly_clean(out)


def demazure(i: int, p: Poly, rank: int) -> Poly:
    """(p - s_i p) / (e_i - e_{i+1}), exact division in the i-th pair."""
    s = Permutation.s(rank, i)
    num = _poly_sub(p, poly_perm(s, p))
    # divide by x - y in variables x = e_i, y = e_{i+1}:
    # x^a y^b - x^b y^a = (x - y) * sum_{k} ... ; do it monomial pair by pair
    out: Poly = {}
    done = set()
    for e, c in num.items():
        if e in done:
            continue
        a, b = e[i - 1], e[i]
        se = list(e)
        se[i - 1], se[i] = b, a
        se = tuple(se)
        done.add(e)
        done.add(se)
        if a == b:
            if c:
                raise DegreeOverflowError("demazure division failed")  # pragma: no cover
            continue
        # antisymmetry of p - s_i p pairs each monomial with its swap
        cc = c if a > b else num.get(se, mpq(0))
        c_lo = num.get(se, mpq(0)) if a > b else c
        if c_lo != -cc:
            raise DegreeOverflowError("demazure division failed")  # pragma: no cover
        lo, hi = min(a, b), max(a, b)
        # x^hi y^lo - x^lo y^hi = (x-y) * (x y)^lo * (x^{d-1} + ... + y^{d-1})
        for k in range(hi - lo):
            ne = list(e)
            ne[i - 1] = lo + k
            ne[i] = hi - 1 - k
            ne = tuple(ne)
            out[ne] = out.get(ne, mpq(0)) + cc
    return _poly_clean(out)


def poly_eval(p: Poly, point: tuple):
    total = mpq(0)
    for e, c in p.items():
        v = c
        for a, x in zip(e, point):
            if a:
                v *= x**a
        total += v
    return total


@dataclass
class HeckeElement:
    """Normal-form element of H_l: map (w, exponent vector) -> coefficient."""

    rank: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {k: mpq(v) for k, v in self.terms.items() if v}

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero(rank: int) -> "HeckeElement":
        return HeckeElement(rank, {})

    @staticmethod
    def one(rank: int) -> "HeckeElement":
        return HeckeElement.group(Permutation.identity(rank))

    @staticmethod
    def scalar(rank: int, c) -> "HeckeElement":
        e0 = (0,) * rank
        return HeckeElement(rank, {(Permutation.identity(rank).images, e0): mpq(c)})

    @staticmethod
    def group(w: Permutation) -> "HeckeElement":
        return HeckeElement(w.rank, {(w.images, (0,) * w.rank): mpq(1)})

    @staticmethod
    def gen_s(rank: int, i: int) -> "HeckeElement":
        return HeckeElement.group(Permutation.s(rank, i))

    @staticmethod
    def gen_eps(rank: int, i: int) -> "HeckeElement":
        if not 1 <= i <= rank:
            raise PreconditionError(f"polynomial generator index {i} out of range")
        e = [0] * rank
        e[i - 1] = 1
        return HeckeElement(rank, {(Permutation.identity(rank).images, tuple(e)): mpq(1)})

    # -- ring structure ------------------------------------------------
    def _check(self, other: "HeckeElement"):
        if self.rank != other.rank:
            raise RankMismatchError("Hecke element ranks differ")

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, mpq(0)) + c
        return HeckeElement(self.rank, out)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, mpq(0)) - c
        return HeckeElement(self.rank, out)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement(self.rank, {k: -c for k, c in self.terms.items()})

    def scale(self, c) -> "HeckeElement":
        c = mpq(c)
        return HeckeElement(self.rank, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HeckeElement)
            and self.rank == other.rank
            and self.terms == other.terms
        )

    def is_zero(self) -> bool:
        return not self.terms

    def max_degree(self) -> int:
        return max((sum(e) for (_, e) in self.terms), default=0)

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        rank = self.rank
        out: dict = {}
        word_cache: dict = {}
        for (w1, e1), c1 in self.terms.items():
            for (w2, e2), c2 in other.terms.items():
                c = c1 * c2
                if w2 not in word_cache:
                    word_cache[w2] = Permutation(w2).reduced_word()
                # straighten (poly e1) * w2 into sum of u * p
                cur: dict = {Permutation.identity(rank).images: {e1: mpq(1)}}
                for idx in word_cache[w2]:
                    s = Permutation.s(rank, idx)
                    nxt: dict = {}
                    for u_imgs, poly in cur.items():
                        u = Permutation(u_imgs)
                        us = (u * s).images
                        sp = poly_perm(s, poly)
                        acc = nxt.setdefault(us, {})
                        for e, cc in sp.items():
                            acc[e] = acc.get(e, mpq(0)) + cc
                        d = demazure(idx, poly, rank)
                        if d:
                            acc = nxt.setdefault(u_imgs, {})
                            for e, cc in d.items():
                                acc[e] = acc.get(e, mpq(0)) - cc
                    cur = {u: _poly_clean(p) for u, p in nxt.items()}
                    cur = {u: p for u, p in cur.items() if p}
                w1p = Permutation(w1)
                p2 = {e2: mpq(1)}
                for u_imgs, poly in cur.items():
                    full = poly_mul(poly, p2, rank)
                    wu = (w1p * Permutation(u_imgs)).images
                    for e, cc in full.items():
                        key = (wu, e)
                        out[key] = out.get(key, mpq(0)) + c * cc
        return HeckeElement(self.rank, out)

    # -- views ----------------------------------------------------------
    def group_poly_split(self) -> dict:
        """Map one-line tuple -> Poly, grouping terms by group part."""
        out: dict = {}
        for (w, e), c in self.terms.items():
            out.setdefault(w, {})[e] = c
        return out

    def is_pure_polynomial(self) -> bool:
        ident = Permutation.identity(self.rank).images
        return all(w == ident for (w, _) in self.terms)

    def polynomial_part(self) -> Poly:
        ident = Permutation.identity(self.rank).images
        return {e: c for (w, e), c in self.terms.items() if w == ident}

    def __str__(self) -> str:
        return format_element(self)

    __repr__ = __str__

    def __hash__(self):  # pragma: no cover - elements used as values, not keys
        return hash((self.rank, frozenset(self.terms.items())))


def evaluation(x: HeckeElement) -> HeckeElement:
    """The evaluation homomorphism: w -> w, e_i -> sum_{j<i} s_{ji}."""
    rank = x.rank
    ev_gen = []
    for i in range(1, rank + 1):
        acc = HeckeElement.zero(rank)
        for j in range(1, i):
            acc = acc + HeckeElement.group(Permutation.transposition(rank, j, i))
        ev_gen.append(acc)
    out = HeckeElement.zero(rank)
    for (w, e), c in x.terms.items():
        term = HeckeElement.group(Permutation(w)).scale(c)
        for i, a in enumerate(e):
            for _ in range(a):
                term = term * ev_gen[i]
        out = out + term
    return out


def is_central(x: HeckeElement) -> bool:
    """True iff x commutes with s_1..s_{l-1} and e_1 (hence with all of H_l)."""
    rank = x.rank
    gens = [HeckeElement.gen_s(rank, i) for i in range(1, rank)]
    gens.append(HeckeElement.gen_eps(rank, 1))
    return all((x * g - g * x).is_zero() for g in gens)


def is_symmetric_polynomial(x: HeckeElement) -> bool:
    """Independent characterisation of the center: a pure polynomial fixed by
    every variable permutation."""
    if not x.is_pure_polynomial():
        return False
    p = x.polynomial_part()
    for i in range(1, x.rank):
        if _poly_sub(p, poly_perm(Permutation.s(x.rank, i), p)):
            return False
    return True


def twist(x: HeckeElement, c) -> HeckeElement:
    """Automorphism fixing the group part and shifting each e_i by c."""
    c = mpq(c)
    rank = x.rank
    if c == 0:
        return HeckeElement(rank, dict(x.terms))
    out = HeckeElement.zero(rank)
    for (w, e), coeff in x.terms.items():
        term = HeckeElement.group(Permutation(w)).scale(coeff)
        for i, a in enumerate(e):
            if a:
                shifted = HeckeElement.gen_eps(rank, i + 1) + HeckeElement.scalar(rank, c)
                for _ in range(a):
                    term = term * shifted
        out = out + term
    return out


# -- parsing and printing -------------------------------------------------


def _format_monomial(e: tuple) -> str:
    parts = []
    for i, a in enumerate(e):
        if a == 1:
            parts.append(f"e{i + 1}")
        elif a > 1:
            parts.append(f"e{i + 1}^{a}")
    return "*".join(parts)


def format_element(x: HeckeElement) -> str:
    """ASCII form like "w[2,1,3]*e1^2*e3 + 1/2"."""
    if not x.terms:
        return "0"
    ident = Permutation.identity(x.rank).images
    chunks = []
    for (w, e), c in sorted(x.terms.items()):
        factors = []
        if w != ident:
            factors.append("w[" + ",".join(map(str, w)) + "]")
        mono = _format_monomial(e)
        if mono:
            factors.append(mono)
        if not factors:
            chunks.append(str(c))
            continue
        body = "*".join(factors)
        if c == 1:
            chunks.append(body)
        elif c == -1:
            chunks.append(f"-{body}")
        else:
            chunks.append(f"{c}*{body}")
    text = " + ".join(chunks)
    return text.replace("+ -", "- ")


_TOKEN_W = re.compile(r"^w\[([0-9,\s]+)\]$")
_TOKEN_E = re.compile(r"^e(\d+)(?:\^(\d+))?$")


def parse_element(text: str, rank: int) -> HeckeElement:
    """Parse the grammar produced by format_element."""
    s = text.replace("-", "+-").replace("++-", "+-")
    out = HeckeElement.zero(rank)
    for chunk in s.split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        coeff = mpq(1)
        if chunk.startswith("-"):
            coeff = -coeff
            chunk = chunk[1:].strip()
        w = Permutation.identity(rank)
        e = [0] * rank
        for tok in chunk.split("*"):
            tok = tok.strip()
            if not tok:
                raise PreconditionError(f"bad element chunk {chunk!r}")
            mw = _TOKEN_W.match(tok)
            me = _TOKEN_E.match(tok)
            if mw:
                imgs = tuple(int(p) for p in mw.group(1).split(","))
                w = Permutation(imgs)
                if w.rank != rank:
                    raise RankMismatchError("permutation rank mismatch in element")
            elif me:
                idx = int(me.group(1))
                if not 1 <= idx <= rank:
                    raise PreconditionError(f"generator e{idx} out of range")
                e[idx - 1] += int(me.group(2) or 1)
            else:
                if tok == "-":
                    coeff = -coeff
                    continue
                try:
                    coeff *= mpq(tok)
                except ValueError as exc:
                    raise PreconditionError(f"bad token {tok!r} in element") from exc
        out = out + HeckeElement(rank, {(w.images, tuple(e)): coeff})
    return out
