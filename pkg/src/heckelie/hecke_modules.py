"""Finite-dimensional modules over the degenerate affine Hecke algebra.

Modules are explicit exact-rational matrices for the generators s_1..s_{l-1}
and e_1..e_l.  Standard modules are induced from one-dimensional segment
representations on the basis of minimal coset representatives; decomposition
machinery (radical series via the characteristic-zero trace form, semisimple
layer splitting via endomorphism kernels) is fully exact.

Intertwiner and endomorphism computations are reduced to the joint
generalized eigenspace blocks of the commuting e-operators: any map commuting
with the e-action preserves those blocks, which shrinks the linear systems
from dim^2 unknowns to the sum of squared block sizes.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import sympy
from gmpy2 import mpq

from .daha_core import HeckeElement
from .errors import (
    InternalInvariantError,
    PreconditionError,
    RankMismatchError,
    SplittingError,
)
from .linalg import (
    EchelonSpan,
    QONE,
    QZERO,
    QuotientMap,
    charpoly,
    flatten,
    identity,
    inverse,
    lin_solve,
    mat_mul,
    mat_sub,
    mat_vec,
    nullspace,
    rational_roots,
    row_space_basis,
    trace_product,
    transpose,
    zeros,
)
from .root_weyl import Permutation, coset_decompose, min_coset_reps, symmetric_group

# -- segments ---------------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    """A segment [a, b] of rationals with b - a + 1 a nonnegative integer."""

    a: object
    b: object

    def __post_init__(self):
        a, b = mpq(self.a), mpq(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        length = b - a + 1
        if length.denominator != 1 or length < 0:
            raise PreconditionError(f"[{a},{b}] is not a segment")

    @property
    def length(self) -> int:
        return int(self.b - self.a + 1)

    def __str__(self) -> str:
        return f"[{self.a},{self.b}]"


@dataclass(frozen=True)
class SegmentSequence:
    """Ordered sequence of segments; order matters for induction."""

    segments: tuple

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))

    @property
    def total_length(self) -> int:
        return sum(seg.length for seg in self.segments)

    def nonzero(self) -> "SegmentSequence":
        return SegmentSequence(tuple(s for s in self.segments if s.length > 0))

    def composition(self) -> tuple:
        return tuple(s.length for s in self.nonzero().segments)

    def zeta(self) -> list:
        """The e-eigenvalues on the cyclic vector, position by position."""
        out = []
        for seg in self.nonzero().segments:
            out.extend(seg.a + r for r in range(seg.length))
        return out

    def parabolic_generators(self) -> frozenset:
        """Simple indices internal to the segments (the inducing parabolic)."""
        gens = set()
        pos = 0
        for length in self.composition():
            gens.update(range(pos + 1, pos + length))
            pos += length
        return frozenset(gens)

    def __str__(self) -> str:
        return ";".join(str(s) for s in self.segments)


def parse_segments(text: str) -> SegmentSequence:
    """Parse "[0,1];[-1,-1]" style literals."""
    segs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not (chunk.startswith("[") and chunk.endswith("]")):
            raise PreconditionError(f"cannot parse segment literal {chunk!r}")
        parts = chunk[1:-1].split(",")
        if len(parts) != 2:
            raise PreconditionError(f"cannot parse segment literal {chunk!r}")
        try:
            segs.append(Segment(mpq(parts[0].strip()), mpq(parts[1].strip())))
        except ValueError as exc:
            raise PreconditionError(f"cannot parse segment literal {chunk!r}") from exc
    return SegmentSequence(tuple(segs))


# -- modules ----------------------------------------------------------------


@dataclass
class FinModule:
    """Explicit module: matrices for s_1..s_{l-1} and e_1..e_l."""

    rank: int
    dim: int
    s_mats: list
    eps_mats: list
    cyclic: list | None = None
    basis_labels: list = field(default_factory=list)

    def generators(self) -> list:
        return list(self.s_mats) + list(self.eps_mats)

    def perm_matrix(self, w: Permutation):
        """Matrix of a group element, via its reduced word."""
        if w.rank != self.rank:
            raise RankMismatchError("permutation rank does not match module rank")
        m = identity(self.dim)
        for i in w.reduced_word():
            m = mat_mul(m, self.s_mats[i - 1])
        return m

    def to_json(self) -> str:
        data = {
            "rank": self.rank,
            "dim": self.dim,
            "s": [[[str(x) for x in row] for row in m] for m in self.s_mats],
            "eps": [[[str(x) for x in row] for row in m] for m in self.eps_mats],
            "cyclic": [str(x) for x in self.cyclic] if self.cyclic is not None else None,
        }
        return json.dumps(data, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "FinModule":
        data = json.loads(text)
        try:
            mod = FinModule(
                rank=int(data["rank"]),
                dim=int(data["dim"]),
                s_mats=[[[mpq(x) for x in row] for row in m] for m in data["s"]],
                eps_mats=[[[mpq(x) for x in row] for row in m] for m in data["eps"]],
                cyclic=[mpq(x) for x in data["cyclic"]] if data.get("cyclic") else None,
            )
        except (KeyError, ValueError, TypeError) as exc:
            raise PreconditionError(f"malformed module JSON: {exc}") from exc
        report = check_relations(mod)
        if not report.ok:
            raise PreconditionError(f"module JSON violates relations: {report.message}")
        return mod


def zero_module(rank: int) -> FinModule:
    return FinModule(rank, 0, [[] for _ in range(rank - 1)], [[] for _ in range(rank)])


def one_dim_rep(seg: Segment) -> FinModule | None:
    """The character of H_{b-a+1}: every s_i acts by 1, e_i by a+i-1.

    Zero-length segments return None (the rank-0 convention marker).
    """
    length = seg.length
    if length == 0:
        return None
    s_mats = [[[mpq(1)]] for _ in range(length - 1)]
    eps_mats = [[[seg.a + i]] for i in range(length)]
    return FinModule(length, 1, s_mats, eps_mats, cyclic=[mpq(1)])


def induce_standard(delta: SegmentSequence) -> FinModule:
    """The standard module: basis indexed by minimal-length representatives
    of W_l modulo the composition parabolic; dim = l!/(l_1!...l_k!)."""
    seq = delta.nonzero()
    ell = seq.total_length
    if ell < 1:
        raise PreconditionError("standard module needs total segment length >= 1")
    gens = seq.parabolic_generators()
    reps = min_coset_reps(ell, gens)
    index = {w.images: k for k, w in enumerate(reps)}
    zeta = seq.zeta()
    d = len(reps)

    def act(x: HeckeElement):
        mat = zeros(d, d)
        for col, w in enumerate(reps):
            prod = x * HeckeElement.group(w)
            for (u, e), c in prod.terms.items():
                val = c
                for j, a in enumerate(e):
                    if a:
                        val *= zeta[j] ** a
                u_min, _ = coset_decompose(Permutation(u), gens)
                mat[index[u_min.images]][col] += val
        return mat

    s_mats = [act(HeckeElement.gen_s(ell, i)) for i in range(1, ell)]
    eps_mats = [act(HeckeElement.gen_eps(ell, i)) for i in range(1, ell + 1)]
    cyclic = [mpq(1) if k == index[Permutation.identity(ell).images] else QZERO for k in range(d)]
    mod = FinModule(ell, d, s_mats, eps_mats, cyclic=cyclic, basis_labels=[str(w) for w in reps])
    report = check_relations(mod)
    if not report.ok:
        raise InternalInvariantError(f"induced module violates relations: {report.message}")
    return mod


# -- relation checking -------------------------------------------------------


@dataclass
class RelationReport:
    ok: bool
    message: str | None = None
    lhs: list | None = None
    rhs: list | None = None


def check_relations(mod: FinModule) -> RelationReport:
    """Exact verification of all defining relations; reports the first failure."""
    ell, d = mod.rank, mod.dim
    if len(mod.s_mats) != ell - 1 or len(mod.eps_mats) != ell:
        return RelationReport(False, "wrong number of generator matrices")
    one = identity(d)

    def fail(msg, a, b):
        return RelationReport(False, msg, a, b)

    for i, s in enumerate(mod.s_mats, start=1):
        ss = mat_mul(s, s)
        if ss != one:
            return fail(f"s{i}^2 != 1", ss, one)
    for i in range(1, ell - 1):
        a = mat_mul(mod.s_mats[i - 1], mat_mul(mod.s_mats[i], mod.s_mats[i - 1]))
        b = mat_mul(mod.s_mats[i], mat_mul(mod.s_mats[i - 1], mod.s_mats[i]))
        if a != b:
            return fail(f"braid relation s{i},s{i + 1} fails", a, b)
    for i in range(1, ell):
        for j in range(i + 2, ell):
            a = mat_mul(mod.s_mats[i - 1], mod.s_mats[j - 1])
            b = mat_mul(mod.s_mats[j - 1], mod.s_mats[i - 1])
            if a != b:
                return fail(f"commuting relation s{i},s{j} fails", a, b)
    for i in range(ell):
        for j in range(i + 1, ell):
            a = mat_mul(mod.eps_mats[i], mod.eps_mats[j])
            b = mat_mul(mod.eps_mats[j], mod.eps_mats[i])
            if a != b:
                return fail(f"[e{i + 1},e{j + 1}] != 0", a, b)
    for i in range(1, ell):
        s = mod.s_mats[i - 1]
        for j in range(1, ell + 1):
            sj = i + 1 if j == i else i if j == i + 1 else j
            pairing = mpq(1) if j == i else mpq(-1) if j == i + 1 else QZERO
            lhs = mat_sub(mat_mul(s, mod.eps_mats[j - 1]), mat_mul(mod.eps_mats[sj - 1], s))
            rhs = [[-pairing if r == c else QZERO for c in range(d)] for r in range(d)]
            if lhs != rhs:
                return fail(f"cross relation s{i},e{j} fails", lhs, rhs)
    return RelationReport(True)


# -- linear-algebra helpers on modules ---------------------------------------


def _coords(basis: list, v: list) -> list:
    """Coordinates of v in the span of basis vectors (raises if outside)."""
    cols = transpose(basis)
    sol = lin_solve(cols, v)
    if sol is None:
        raise InternalInvariantError("vector not in claimed invariant subspace")
    return sol


def _restrict_op(op: list, basis: list) -> list:
    """Matrix of an operator on an invariant subspace with the given basis."""
    cols = [_coords(basis, mat_vec(op, b)) for b in basis]
    return transpose(cols) if cols else []


def spin(mod: FinModule, vectors: list) -> list:
    """Echelon basis of the submodule generated by the given vectors."""
    span = EchelonSpan(mod.dim)
    frontier = [v for v in vectors if span.add(v) is not None]
    gens = mod.generators()
    while frontier:
        new = []
        for v in frontier:
            for g in gens:
                w = mat_vec(g, v)
                if span.add(w) is not None:
                    new.append(w)
        frontier = new
    return span.basis()


def restrict_module(mod: FinModule, basis: list) -> FinModule:
    """The module structure on an invariant subspace (basis must be invariant)."""
    sub = FinModule(
        mod.rank,
        len(basis),
        [_restrict_op(g, basis) for g in mod.s_mats],
        [_restrict_op(g, basis) for g in mod.eps_mats],
    )
    return sub


def quotient_module(mod: FinModule, null_vectors: list) -> tuple[FinModule, QuotientMap]:
    qmap = QuotientMap(mod.dim, null_vectors)
    quo = FinModule(
        mod.rank,
        qmap.qdim,
        [qmap.induced_matrix(g) for g in mod.s_mats],
        [qmap.induced_matrix(g) for g in mod.eps_mats],
        cyclic=qmap.project(mod.cyclic) if mod.cyclic is not None else None,
    )
    return quo, qmap


# -- joint generalized eigenspace blocks --------------------------------------


def _mat_power(a: list, k: int) -> list:
    out = identity(len(a))
    for _ in range(k):
        out = mat_mul(out, a)
    return out


def joint_blocks(mats: list, dim: int) -> list:
    """Decompose Q^dim into joint generalized eigenspaces of commuting
    matrices; returns [(eigenvalue tuple, basis vectors)] sorted by tuple."""
    blocks = [((), identity(dim))]
    for m in mats:
        new = []
        for chars, basis in blocks:
            r = _restrict_op(m, basis)
            k = len(basis)
            roots = rational_roots(charpoly(r))
            total = 0
            for c in sorted(roots):
                shifted = [[r[i][j] - (c if i == j else QZERO) for j in range(k)] for i in range(k)]
                kern = nullspace(_mat_power(shifted, k))
                if not kern:
                    continue
                vectors = [
                    [sum((kv[t] * basis[t][x] for t in range(k)), QZERO) for x in range(dim)]
                    for kv in kern
                ]
                new.append((chars + (c,), vectors))
                total += len(kern)
            if total != k:
                raise SplittingError("generalized eigenvalues are not all rational")
        blocks = new
    return sorted(blocks, key=lambda bc: bc[0])


def _adapted(mod: FinModule):
    """(blocks, P, Pinv): change of basis grouping joint e-eigenspaces."""
    blocks = joint_blocks(mod.eps_mats, mod.dim)
    vectors = [v for _, basis in blocks for v in basis]
    p = transpose(vectors)
    pinv = inverse(p)
    if pinv is None:
        raise InternalInvariantError("adapted basis is singular")
    spans = []
    pos = 0
    for chars, basis in blocks:
        spans.append((chars, pos, pos + len(basis)))
        pos += len(basis)
    return spans, p, pinv


def intertwiner_space(m: FinModule, n: FinModule) -> list:
    """Basis of {T : T g_M = g_N T for all generators g}."""
    if m.rank != n.rank:
        raise RankMismatchError("intertwiners need equal ranks")
    if m.dim == 0 or n.dim == 0:
        return []
    sm, pm, pm_inv = _adapted(m)
    sn, pn, pn_inv = _adapted(n)
    # unknown entries: (row in N-adapted, col in M-adapted) with equal characters
    slots = []
    for chars_n, lo_n, hi_n in sn:
        for chars_m, lo_m, hi_m in sm:
            if chars_n == chars_m:
                slots.extend(
                    (r, c) for r in range(lo_n, hi_n) for c in range(lo_m, hi_m)
                )
    if not slots:
        return []
    slot_index = {rc: k for k, rc in enumerate(slots)}
    u = len(slots)
    gens_m = [mat_mul(pm_inv, mat_mul(g, pm)) for g in m.generators()]
    gens_n = [mat_mul(pn_inv, mat_mul(g, pn)) for g in n.generators()]
    rows = []
    for gm, gn in zip(gens_m, gens_n):
        for r in range(n.dim):
            for s in range(m.dim):
                row = [QZERO] * u
                nonzero = False
                for k in range(m.dim):
                    idx = slot_index.get((r, k))
                    if idx is not None and gm[k][s]:
                        row[idx] += gm[k][s]
                        nonzero = True
                for k in range(n.dim):
                    idx = slot_index.get((k, s))
                    if idx is not None and gn[r][k]:
                        row[idx] -= gn[r][k]
                        nonzero = True
                if nonzero:
                    rows.append(row)
    sols = nullspace(rows) if rows else [
        [QONE if i == j else QZERO for j in range(u)] for i in range(u)
    ]
    out = []
    for sol in sols:
        t_ad = zeros(n.dim, m.dim)
        for (r, c), k in slot_index.items():
            t_ad[r][c] = sol[k]
        out.append(mat_mul(pn, mat_mul(t_ad, pm_inv)))
    return out


def endomorphism_space(mod: FinModule) -> list:
    return intertwiner_space(mod, mod)


def _invertible_combination(mats: list, dim: int):
    """Deterministic search for an invertible element of a matrix span."""
    k = len(mats)
    if k == 0:
        return None
    tried = 0
    for coeffs in itertools.product(range(dim + 1), repeat=k):
        if not any(coeffs):
            continue
        tried += 1
        if tried > 20000:
            raise SplittingError("invertible intertwiner search exhausted")
        cand = zeros(dim, dim)
        for c, t in zip(coeffs, mats):
            if c:
                for i in range(dim):
                    row_c, row_t = cand[i], t[i]
                    for j in range(dim):
                        if row_t[j]:
                            row_c[j] += c * row_t[j]
        if inverse(cand) is not None:
            return cand
    return None


def iso_test(m: FinModule, n: FinModule):
    """An invertible intertwiner m -> n, or None if the modules differ."""
    if m.rank != n.rank or m.dim != n.dim:
        return None
    if m.dim == 0:
        return []
    space = intertwiner_space(m, n)
    return _invertible_combination(space, m.dim)


# -- algebra closure and radical ----------------------------------------------


def _group_images(mod: FinModule) -> list:
    """Matrices of all group elements, in (length, one-line) order."""
    images = {Permutation.identity(mod.rank).images: identity(mod.dim)}
    out = []
    for w in symmetric_group(mod.rank):
        if w.images not in images:
            i = w.left_descents()[0]
            rest = Permutation.s(mod.rank, i) * w
            images[w.images] = mat_mul(mod.s_mats[i - 1], images[rest.images])
        out.append(images[w.images])
    return out


def _polynomial_algebra(mod: FinModule) -> list:
    """Basis of the commutative algebra generated by the e-matrices."""
    d = mod.dim
    span = EchelonSpan(d * d)
    basis = []
    one = identity(d)
    span.add(flatten(one))
    basis.append(one)
    frontier = [one]
    while frontier:
        new = []
        for b in frontier:
            for g in mod.eps_mats:
                cand = mat_mul(g, b)
                if span.add(flatten(cand)) is not None:
                    basis.append(cand)
                    new.append(cand)
        frontier = new
    return basis


def algebra_basis(mod: FinModule) -> list:
    """Basis of the image of H_l in End(M).

    The algebra is spanned a priori by (group image) * (polynomial image), so
    a single echelon pass over those products suffices — no closure iteration.
    """
    if mod.dim == 0:
        return []
    poly = _polynomial_algebra(mod)
    span = EchelonSpan(mod.dim * mod.dim)
    basis = []
    for w in _group_images(mod):
        for p in poly:
            cand = mat_mul(w, p)
            if span.add(flatten(cand)) is not None:
                basis.append(cand)
    return basis


def radical_matrices(basis: list) -> list:
    """Basis of the Jacobson radical via the trace form (characteristic zero)."""
    a = len(basis)
    if a == 0:
        return []
    gram = [[trace_product(basis[i], basis[j]) for j in range(a)] for i in range(a)]
    out = []
    for coeffs in nullspace(gram):
        mat = zeros(len(basis[0]), len(basis[0]))
        for c, b in zip(coeffs, basis):
            if c:
                for i, row in enumerate(b):
                    for j, x in enumerate(row):
                        if x:
                            mat[i][j] += c * x
        out.append(mat)
    return out


# -- decomposition -------------------------------------------------------------


def _split_semisimple(mod: FinModule) -> list:
    """Simple summands of a semisimple module, via endomorphism kernels."""
    if mod.dim == 0:
        return []
    endos = endomorphism_space(mod)
    if not endos:
        raise InternalInvariantError("endomorphism space lost the identity")
    if len(endos) == 1:
        return [mod]
    x = sympy.Symbol("x")
    for t in endos:
        # skip scalars
        if all(t[i][j] == (t[0][0] if i == j else 0) for i in range(mod.dim) for j in range(mod.dim)):
            continue
        cp = charpoly(t)
        poly = sympy.Poly(
            sum(sympy.Rational(str(c)) * x**i for i, c in enumerate(cp)), x, domain="QQ"
        )
        for fac, _mult in sorted(sympy.factor_list(poly)[1], key=lambda fm: fm[0].degree()):
            coeffs = [mpq(str(c)) for c in reversed(fac.all_coeffs())]
            pt = zeros(mod.dim, mod.dim)
            power = identity(mod.dim)
            for c in coeffs:
                if c:
                    for i in range(mod.dim):
                        for j in range(mod.dim):
                            if power[i][j]:
                                pt[i][j] += c * power[i][j]
                power = mat_mul(power, t)
            for kern in (nullspace(pt), nullspace(_mat_power(pt, mod.dim))):
                if 0 < len(kern) < mod.dim:
                    sub = restrict_module(mod, kern)
                    quo, _ = quotient_module(mod, kern)
                    return _split_semisimple(sub) + _split_semisimple(quo)
    raise SplittingError("semisimple module does not split over the rationals")


def composition_factors(mod: FinModule) -> list:
    """Multiset of (simple FinModule, multiplicity), via the radical series
    of the generated matrix algebra."""
    if mod.dim == 0:
        return []
    alg = algebra_basis(mod)
    rad = radical_matrices(alg)
    # radical series of the module: M > rad(A)M > rad(A)^2 M > ...
    layers_bases = [identity(mod.dim)]
    while True:
        prev = layers_bases[-1]
        vectors = [mat_vec(r, v) for r in rad for v in prev]
        basis = row_space_basis(vectors, mod.dim)
        if not basis:
            break
        layers_bases.append(basis)
    simples = []
    for k, basis in enumerate(layers_bases):
        sub = restrict_module(mod, basis)
        if k + 1 < len(layers_bases):
            inner = [_coords(basis, v) for v in layers_bases[k + 1]]
            layer, _ = quotient_module(sub, inner)
        else:
            layer = sub
        simples.extend(_split_semisimple(layer))
    out: list = []
    for s in simples:
        for k, (rep, mult) in enumerate(out):
            if iso_test(rep, s) is not None:
                out[k] = (rep, mult + 1)
                break
        else:
            out.append((s, 1))
    return out


def is_simple(mod: FinModule) -> bool:
    """Simplicity via Burnside: the image algebra is all of End(M).

    A simple-but-not-absolutely-irreducible module is surfaced as an error
    rather than silently misclassified.
    """
    if mod.dim == 0:
        return False
    alg = algebra_basis(mod)
    if len(alg) == mod.dim * mod.dim:
        return True
    if radical_matrices(alg):
        return False
    # semisimple but not the full matrix algebra: several factors, or a
    # division-algebra endomorphism ring
    if len(_split_semisimple(mod)) > 1:
        return False
    raise SplittingError("simple module is not absolutely irreducible")


def simple_quotient(mod: FinModule) -> FinModule:
    """Quotient by rad(A)M; requires a distinguished cyclic vector and a
    simple head (true for standard modules)."""
    if mod.cyclic is None:
        raise PreconditionError("simple_quotient needs a distinguished cyclic vector")
    if mod.dim == 0:
        raise PreconditionError("simple_quotient of the zero module")
    alg = algebra_basis(mod)
    rad = radical_matrices(alg)
    null_vectors = [mat_vec(r, v) for r in rad for v in identity(mod.dim)]
    quo, _ = quotient_module(mod, null_vectors)
    if quo.cyclic is None or not any(quo.cyclic):
        raise PreconditionError("cyclic vector dies in the head")  # pragma: no cover
    if not is_simple(quo):
        raise PreconditionError("head of the module is not simple")
    return quo


def central_character(mod: FinModule) -> list:
    """The W-orbit (sorted multiset) of joint generalized e-eigenvalues."""
    if mod.dim == 0:
        raise PreconditionError("zero module has no central character")
    blocks = joint_blocks(mod.eps_mats, mod.dim)
    multisets = {tuple(sorted(chars)) for chars, _ in blocks}
    if len(multisets) != 1:
        raise PreconditionError("module carries several central characters")
    return list(multisets.pop())
