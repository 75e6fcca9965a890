"""Truncated sl_n highest-weight modules and the direct construction of the
functor into Hecke-algebra modules.

Verma modules are realized on PBW monomials in the negative root vectors
(positive roots ordered by height, then lexicographically), truncated at a
fixed depth; simple quotients come from the per-weight radical of the
contravariant (Shapovalov) form.  The functor takes the lambda-weight space
of X tensor V^{tensor l}, quotients by the images of the simple lowering
operators from the (lambda + alpha_i)-spaces, and installs the W-action by
slot swaps together with the y-operators

    y_i = Omega_{0i} + sum_{j<i} s_{ji} + (n-1)/2,

where Omega couples X with tensor slot i via dual bases of sl_n and the
slot-slot couplings Omega_{ji} + 1/n collapse to coordinate swaps.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from gmpy2 import mpq

from .errors import (
    InternalInvariantError,
    PreconditionError,
    TruncationError,
)
from .hecke_modules import FinModule, check_relations, zero_module
from .linalg import (
    QZERO,
    QuotientMap,
    identity,
    inverse,
    mat_mul,
    mat_vec,
    nullspace,
    transpose,
    zeros,
)
from .root_weyl import Weight, tensor_weight_decompose


@lru_cache(maxsize=None)
def positive_roots(n: int) -> tuple:
    """Pairs (a, b), a < b, for eps_a - eps_b; sorted by height then lex."""
    roots = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    return tuple(sorted(roots, key=lambda ab: (ab[1] - ab[0], ab)))


def sl_matrix_unit(n: int, a: int, b: int) -> list:
    """The n x n matrix unit E_ab (1-based indices)."""
    m = zeros(n, n)
    m[a - 1][b - 1] = mpq(1)
    return m


def omega_on_v_tensor_v(n: int) -> list:
    """Omega acting on V (x) V: sum over dual bases of sl_n.

    Built from the definition (Cartan dual bases plus paired root vectors);
    the identity Omega = swap - 1/n is a theorem checked in tests, not an
    assumption of this construction.
    """
    d = n * n
    out = zeros(d, d)

    def kron_add(x, y):
        for i in range(n):
            for j in range(n):
                if x[i][j]:
                    for k in range(n):
                        for l in range(n):
                            if y[k][l]:
                                out[i * n + k][j * n + l] += x[i][j] * y[k][l]

    # Cartan part: dual bases of the traceless diagonal subalgebra.
    # basis h_i = E_ii - E_{i+1,i+1}; dual basis h^i has (h^i|h_j) = delta_ij.
    hs = []
    for i in range(1, n):
        h = zeros(n, n)
        h[i - 1][i - 1] = mpq(1)
        h[i][i] = mpq(-1)
        hs.append(h)
    # Gram matrix of the trace form on the h_i, then invert to express duals
    gram = [
        [sum((hs[i][k][k] * hs[j][k][k] for k in range(n)), QZERO) for j in range(n - 1)]
        for i in range(n - 1)
    ]
    ginv = inverse(gram)
    for i in range(n - 1):
        hdual = zeros(n, n)
        for j in range(n - 1):
            if ginv[i][j]:
                for k in range(n):
                    hdual[k][k] += ginv[i][j] * hs[j][k][k]
        kron_add(hdual, hs[i])
    for a, b in positive_roots(n):
        e = sl_matrix_unit(n, a, b)
        f = sl_matrix_unit(n, b, a)
        kron_add(e, f)
        kron_add(f, e)
    return out


@dataclass
class TruncatedOModule:
    """Highest-weight module known on all weights within a fixed depth."""

    n: int
    mu: Weight
    depth: int
    dims: dict
    action: dict  # (a, b) -> {source Weight: matrix into the (nu + eps_a - eps_b)-space}
    label: str = "module"

    def weight_dim(self, nu: Weight) -> int:
        diff = self.mu - nu
        if not diff.in_root_lattice_positive():
            return 0
        if diff.height() > self.depth:
            raise TruncationError(
                f"{self.label} truncated at depth {self.depth}, "
                f"weight at height {diff.height()} requested"
            )
        return self.dims.get(nu, 0)

    def op(self, a: int, b: int, nu: Weight):
        """Matrix of E_ab from the nu-space (None when either side is 0)."""
        if self.weight_dim(nu) == 0:
            return None
        target = nu + Weight.eps(self.n, a) - Weight.eps(self.n, b)
        if self.weight_dim(target) == 0:
            return None
        return self.action[(a, b)][nu]


def _monomials(n: int, depth: int):
    """All PBW exponent vectors with total height <= depth, grouped by the
    root-lattice element they lower by."""
    roots = positive_roots(n)
    heights = [b - a for a, b in roots]
    all_monos = []

    def rec(idx, remaining, current):
        if idx == len(roots):
            all_monos.append(tuple(current))
            return
        for e in range(remaining // heights[idx] + 1):
            rec(idx + 1, remaining - e * heights[idx], current + [e])

    rec(0, depth, [])
    return sorted(all_monos)


class _VermaBuilder:
    """Straightening engine: E_ab acting on PBW monomials over v_mu."""

    def __init__(self, n: int, mu: Weight, depth: int):
        self.n = n
        self.mu = mu
        self.depth = depth
        self.roots = positive_roots(n)
        self.root_index = {ab: k for k, ab in enumerate(self.roots)}
        self.heights = [b - a for a, b in self.roots]
        self.memo: dict = {}

    def mono_height(self, mono: tuple) -> int:
        return sum(e * h for e, h in zip(mono, self.heights))

    def mono_weight(self, mono: tuple) -> Weight:
        w = self.mu
        for e, (a, b) in zip(mono, self.roots):
            if e:
                step = Weight.eps(self.n, a) - Weight.eps(self.n, b)
                for _ in range(e):
                    w = w - step
        return w

    def act(self, a: int, b: int, mono: tuple) -> dict:
        """E_ab . (f^mono v_mu) as a combination of PBW monomials.

        Results beyond the truncation depth are dropped (they are outside
        the module); a == b gives the diagonal gl-weight action.
        """
        key = (a, b, mono)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        out: dict = {}
        if not any(mono):
            if a == b:
                out = {mono: self.mu.coords[a - 1]}
            elif a > b:
                # lowering: E_ab = f for the positive root (b, a)
                idx = self.root_index[(b, a)]
                if self.mono_height(mono) + (a - b) <= self.depth:
                    unit = tuple(1 if k == idx else 0 for k in range(len(self.roots)))
                    out = {unit: mpq(1)}
            # raising kills the highest-weight vector
        elif a == b:
            w = self.mono_weight(mono)
            out = {mono: w.coords[a - 1]}
        else:
            j = next(k for k, e in enumerate(mono) if e)
            c, d = self.roots[j]  # leading PBW factor is f_{(c,d)} = E_dc
            rest = tuple(e - 1 if k == j else e for k, e in enumerate(mono))
            # E_ab f_{dc} = f_{dc} E_ab + [E_ab, E_dc]
            for m2, coeff in self.act(a, b, rest).items():
                for m3, c3 in self.left_mul_f(j, m2).items():
                    out[m3] = out.get(m3, QZERO) + coeff * c3
            # [E_ab, E_dc] = delta_bd E_ac - delta_ca E_db
            if b == d:
                if a == c:
                    # E_aa - E_dd (wait: delta terms coincide) handled below
                    for m2, coeff in self.act(a, c, rest).items():
                        out[m2] = out.get(m2, QZERO) + coeff
                    for m2, coeff in self.act(d, b, rest).items():
                        out[m2] = out.get(m2, QZERO) - coeff
                else:
                    for m2, coeff in self.act(a, c, rest).items():
                        out[m2] = out.get(m2, QZERO) + coeff
            elif c == a:
                for m2, coeff in self.act(d, b, rest).items():
                    out[m2] = out.get(m2, QZERO) - coeff
        out = {m: c for m, c in out.items() if c}
        self.memo[key] = out
        return out

    def left_mul_f(self, j: int, mono: tuple) -> dict:
        """f_{roots[j]} . mono, restoring PBW order."""
        first = next((k for k, e in enumerate(mono) if e), None)
        if first is None or j <= first:
            if self.mono_height(mono) + self.heights[j] > self.depth:
                return {}
            return {tuple(e + 1 if k == j else e for k, e in enumerate(mono)): mpq(1)}
        c, d = self.roots[j]
        return self.act(d, c, mono)


def verma_truncated(mu: Weight, depth: int, label: str | None = None) -> TruncatedOModule:
    """Truncated Verma module on PBW monomials to the given depth."""
    if depth < 0:
        raise PreconditionError("depth must be nonnegative")
    n = mu.rank
    builder = _VermaBuilder(n, mu, depth)
    monos = _monomials(n, depth)
    by_weight: dict = {}
    for m in monos:
        by_weight.setdefault(builder.mono_weight(m), []).append(m)
    index = {}
    dims = {}
    for w, ms in by_weight.items():
        ms.sort()
        dims[w] = len(ms)
        for k, m in enumerate(ms):
            index[m] = (w, k)
    action: dict = {}
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            if a == b:
                continue
            per_weight: dict = {}
            step = Weight.eps(n, a) - Weight.eps(n, b)
            for w, ms in by_weight.items():
                target = w + step
                tms = by_weight.get(target)
                diff = mu - target
                within = diff.in_root_lattice_positive() and diff.height() <= depth
                if not within:
                    continue
                rows = len(tms) if tms else 0
                mat = zeros(rows, len(ms))
                for col, m in enumerate(ms):
                    for m2, coeff in builder.act(a, b, m).items():
                        w2, r = index[m2]
                        if w2 != target:
                            raise InternalInvariantError("weight grading violated")
                        mat[r][col] = coeff
                per_weight[w] = mat
            action[(a, b)] = per_weight
    return TruncatedOModule(n, mu, depth, dims, action, label=label or f"M({mu})")


def _shapovalov_gram(verma: TruncatedOModule, builder: _VermaBuilder, ms: list) -> list:
    """Gram matrix of the contravariant form on one weight space."""
    k = len(ms)
    gram = zeros(k, k)
    for i, m in enumerate(ms):
        # apply tau(f^m) = e_{bN}^{mN} ... e_{b1}^{m1}, rightmost factor first
        for j, m2 in enumerate(ms):
            elem = {m2: mpq(1)}
            for r, e in enumerate(m):
                a, b = builder.roots[r]
                for _ in range(e):
                    nxt: dict = {}
                    for mono, c in elem.items():
                        for mono2, c2 in builder.act(a, b, mono).items():
                            nxt[mono2] = nxt.get(mono2, QZERO) + c * c2
                    elem = {mm: cc for mm, cc in nxt.items() if cc}
            empty = tuple(0 for _ in builder.roots)
            gram[i][j] = elem.get(empty, QZERO)
    return gram


def simple_truncated(mu: Weight, depth: int) -> TruncatedOModule:
    """Quotient of the truncated Verma by the radical of the contravariant
    form, weight space by weight space."""
    verma = verma_truncated(mu, depth)
    n = mu.rank
    builder = _VermaBuilder(n, mu, depth)
    monos = _monomials(n, depth)
    by_weight: dict = {}
    for m in monos:
        by_weight.setdefault(builder.mono_weight(m), []).append(m)
    qmaps = {}
    dims = {}
    for w, ms in sorted(by_weight.items(), key=lambda kv: ((mu - kv[0]).height(), kv[0].coords)):
        ms.sort()
        gram = _shapovalov_gram(verma, builder, ms)
        if gram != transpose(gram):
            raise InternalInvariantError("contravariant form is not symmetric")
        qmap = QuotientMap(len(ms), nullspace(gram))
        qmaps[w] = qmap
        dims[w] = qmap.qdim
    action: dict = {}
    for (a, b), per_weight in verma.action.items():
        new_pw = {}
        step = Weight.eps(n, a) - Weight.eps(n, b)
        for w, mat in per_weight.items():
            target = w + step
            qs, qt = qmaps[w], qmaps.get(target)
            if qt is None:
                continue
            # the radical is a submodule: images of radical vectors must die
            for v in qs.span.basis():
                if any(qt.project(mat_vec(mat, v))):
                    raise InternalInvariantError("Shapovalov radical is not invariant")
            cols = [qt.project(mat_vec(mat, qs.lift(e))) for e in identity(qs.qdim)]
            new_pw[w] = transpose(cols) if cols else []
        action[(a, b)] = new_pw
    return TruncatedOModule(n, mu, depth, dims, action, label=f"L({mu})")


def required_depth(mu: Weight, lam: Weight, ell: int) -> int:
    """Safe truncation depth for computing the functor value at lambda."""
    diff = mu - lam
    h = diff.height()
    base = int(h) if h.denominator == 1 and h > 0 else 0
    return base + ell + 2


# -- the functor, directly ----------------------------------------------------


def _tensor_basis(x: TruncatedOModule, lam: Weight, ell: int):
    """Basis of (X tensor V^{tensor l})_lam: triples (nu, x-index, word)."""
    n = x.n
    basis = []
    for word in itertools.product(range(1, n + 1), repeat=ell):
        nu = lam
        for c in word:
            nu = nu - Weight.eps(n, c)
        d = x.weight_dim(nu)
        for k in range(d):
            basis.append((nu, k, word))
    return basis


def f_lambda_direct(x: TruncatedOModule, lam: Weight, ell: int) -> FinModule:
    """The functor value: lambda-weight space of X tensor V^{tensor l} modulo
    the images of the simple lowering operators, carrying the Hecke action."""
    n = x.n
    if lam.rank != n:
        raise PreconditionError("weight rank does not match the module")
    if not lam.is_integral():
        raise PreconditionError("lambda must be integral")
    if ell < 1:
        raise PreconditionError("tensor power must be positive")
    basis = _tensor_basis(x, lam, ell)
    if not basis:
        return zero_module(ell)
    index = {trip: k for k, trip in enumerate(basis)}
    d = len(basis)

    def f_image(i: int, trip) -> list:
        """f_i = E_{i+1,i} applied diagonally, as a vector in the lam-space."""
        nu, k, word = trip
        vec = [QZERO] * d
        mat = x.op(i + 1, i, nu)
        if mat is not None:
            nu2 = nu + Weight.eps(n, i + 1) - Weight.eps(n, i)
            for r in range(len(mat)):
                if mat[r][k]:
                    vec[index[(nu2, r, word)]] += mat[r][k]
        for slot, c in enumerate(word):
            if c == i:
                word2 = word[:slot] + (i + 1,) + word[slot + 1 :]
                vec[index[(nu, k, word2)]] += mpq(1)
        return vec

    null_vectors = []
    for i in range(1, n):
        upper = _tensor_basis(x, lam + Weight.alpha(n, i), ell)
        for trip in upper:
            null_vectors.append(f_image(i, trip))
    qmap = QuotientMap(d, null_vectors)

    def swap_mat(i: int) -> list:
        mat = zeros(d, d)
        for col, (nu, k, word) in enumerate(basis):
            word2 = word[: i - 1] + (word[i], word[i - 1]) + word[i + 1 :]
            mat[index[(nu, k, word2)]][col] = mpq(1)
        return mat

    def omega_0(i: int) -> list:
        """Omega coupling X with tensor slot i (1-based)."""
        mat = zeros(d, d)
        for col, (nu, k, word) in enumerate(basis):
            j = word[i - 1]
            mat[col][col] += nu.coords[j - 1]
            for b in range(1, n + 1):
                if b == j:
                    continue
                op = x.op(j, b, nu)
                if op is None:
                    continue
                nu2 = nu + Weight.eps(n, j) - Weight.eps(n, b)
                word2 = word[: i - 1] + (b,) + word[i:]
                for r in range(len(op)):
                    if op[r][k]:
                        mat[index[(nu2, r, word2)]][col] += op[r][k]
        return mat

    swaps = {i: swap_mat(i) for i in range(1, ell)}
    half = mpq(n - 1, 2)
    big_s = [swaps[i] for i in range(1, ell)]
    big_y = []
    for i in range(1, ell + 1):
        y = omega_0(i)
        for j in range(1, i):
            # s_{ji} as a product of adjacent swaps: conjugate s_{i-1} down
            word = list(range(j, i - 1)) + [i - 1] + list(range(i - 2, j - 1, -1))
            m = identity(d)
            for t in word:
                m = mat_mul(m, swaps[t])
            for r in range(d):
                for c2 in range(d):
                    if m[r][c2]:
                        y[r][c2] += m[r][c2]
        for r in range(d):
            y[r][r] += half
        big_y.append(y)

    # operators must preserve the quotiented subspace (theorem; verified)
    for op in big_s + big_y:
        for v in null_vectors:
            if any(qmap.project(mat_vec(op, v))):
                raise InternalInvariantError("Hecke operator does not preserve the coinvariants")
    s_mats = [qmap.induced_matrix(m) for m in big_s]
    y_mats = [qmap.induced_matrix(m) for m in big_y]

    cyclic = None
    decomp = tensor_weight_decompose(lam, x.mu, ell)
    if decomp is not None and x.weight_dim(x.mu) >= 1:
        word = tuple(c for c, mult in enumerate(decomp, start=1) for _ in range(mult))
        vec = [QZERO] * d
        vec[index[(x.mu, 0, word)]] = mpq(1)
        proj = qmap.project(vec)
        if any(proj):
            cyclic = proj

    mod = FinModule(ell, qmap.qdim, s_mats, y_mats, cyclic=cyclic)
    report = check_relations(mod)
    if not report.ok:
        raise InternalInvariantError(f"functor output violates relations: {report.message}")
    return mod


def coinvariant_vectors_all_roots(x: TruncatedOModule, lam: Weight, ell: int) -> list:
    """Spanning vectors of sum over ALL positive roots of e_{-alpha} applied to
    the (lam+alpha)-spaces; used to test that simple lowering operators
    already span the coinvariant kernel."""
    n = x.n
    basis = _tensor_basis(x, lam, ell)
    index = {trip: k for k, trip in enumerate(basis)}
    d = len(basis)
    out = []
    for a, b in positive_roots(n):
        step = Weight.eps(n, a) - Weight.eps(n, b)
        upper = _tensor_basis(x, lam + step, ell)
        for nu, k, word in upper:
            vec = [QZERO] * d
            mat = x.op(b, a, nu)
            if mat is not None:
                nu2 = nu - step
                for r in range(len(mat)):
                    if mat[r][k]:
                        vec[index[(nu2, r, word)]] += mat[r][k]
            for slot, c in enumerate(word):
                if c == a:
                    word2 = word[:slot] + (b,) + word[slot + 1 :]
                    vec[index[(nu, k, word2)]] += mpq(1)
            out.append(vec)
    return out
