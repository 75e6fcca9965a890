"""Dense exact rational linear algebra kernel.

Matrices are plain lists of rows, entries are ``gmpy2.mpq``.  Everything here
is deliberately unsophisticated: the desk-scale dimensions of this project
(<= 120, typically <= 24) never justify sparsity or modular tricks, and the
acceptance checks demand bit-exact results.
"""

from __future__ import annotations

from gmpy2 import mpq

from .errors import InternalInvariantError

Q = mpq
QZERO = mpq(0)
QONE = mpq(1)

Vec = list
Mat = list  # list of rows


def qstr(x) -> str:
    return str(mpq(x))


def qparse(s: str):
    return mpq(s.strip())


def zeros(r: int, c: int) -> Mat:
    return [[QZERO] * c for _ in range(r)]


def identity(n: int) -> Mat:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = QONE
    return m


def mat_copy(a: Mat) -> Mat:
    return [row[:] for row in a]


def mat_add(a: Mat, b: Mat) -> Mat:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Mat, b: Mat) -> Mat:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a: Mat) -> Mat:
    c = mpq(c)
    return [[c * x for x in row] for row in a]


def mat_mul(a: Mat, b: Mat) -> Mat:
    if not a:
        return []
    nb = len(b)
    out = []
    bt = list(zip(*b)) if b else []
    for row in a:
        orow = []
        for col in bt:
            s = QZERO
            for x, y in zip(row, col):
                if x and y:
                    s += x * y
            orow.append(s)
        out.append(orow)
    # a is r x nb, b is nb x c
    if a and len(a[0]) != nb:
        raise InternalInvariantError("matrix shape mismatch in mat_mul")
    return out


def mat_vec(a: Mat, v: Vec) -> Vec:
    return [sum((x * y for x, y in zip(row, v)), QZERO) for row in a]


def mat_eq(a: Mat, b: Mat) -> bool:
    if len(a) != len(b):
        return False
    return all(ra == rb for ra, rb in zip(a, b))


def is_zero_mat(a: Mat) -> bool:
    return all(not x for row in a for x in row)


def transpose(a: Mat) -> Mat:
    return [list(col) for col in zip(*a)] if a else []


def commutator(a: Mat, b: Mat) -> Mat:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def trace(a: Mat):
    return sum((a[i][i] for i in range(len(a))), QZERO)


def trace_product(a: Mat, b: Mat):
    """tr(a*b) without forming the product."""
    s = QZERO
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if x:
                y = b[j][i]
                if y:
                    s += x * y
    return s


def rref(a: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = mat_copy(a)
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        prow = m[r]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], prow)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Mat) -> int:
    return len(rref(a)[1])


def nullspace(a: Mat) -> list[Vec]:
    """Basis of the right kernel {v : a v = 0}."""
    if not a:
        return []
    cols = len(a[0])
    r, pivots = rref(a)
    pivset = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivset:
            continue
        v = [QZERO] * cols
        v[free] = QONE
        for i, p in enumerate(pivots):
            v[p] = -r[i][free]
        basis.append(v)
    return basis


def lin_solve(a: Mat, b: Vec) -> Vec | None:
    """One solution of a x = b, or None if inconsistent."""
    if not a:
        return [] if not any(b) else None
    cols = len(a[0])
    aug = [row[:] + [bv] for row, bv in zip(a, b)]
    r, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [QZERO] * cols
    for i, p in enumerate(pivots):
        x[p] = r[i][cols]
    return x


def inverse(a: Mat) -> Mat | None:
    n = len(a)
    aug = [row[:] + identity(n)[i] for i, row in enumerate(a)]
    r, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in r]


def det(a: Mat):
    """Determinant by fraction-friendly Gaussian elimination."""
    n = len(a)
    m = mat_copy(a)
    d = QONE
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c]), None)
        if pr is None:
            return QZERO
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            d = -d
        d *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def charpoly(a: Mat) -> list:
    """Coefficients [c0, c1, ..., 1] of det(xI - a), ascending degree.

    Faddeev-LeVerrier; exact over the rationals.
    """
    n = len(a)
    coeffs = [QZERO] * n + [QONE]
    m = identity(n)
    c = QONE
    for k in range(1, n + 1):
        m = mat_mul(a, m)
        c = -trace(m) / k
        coeffs[n - k] = c
        for i in range(n):
            m[i][i] += c
    return coeffs


def rational_roots(coeffs: list) -> list:
    """All rational roots (without multiplicity) of a polynomial given by
    ascending coefficients; uses sympy's exact factorisation."""
    import sympy

    x = sympy.Symbol("x")
    poly = sum(sympy.Rational(str(c)) * x**i for i, c in enumerate(coeffs))
    if poly == 0:
        raise InternalInvariantError("zero polynomial has no root list")
    out = []
    _, factors = sympy.factor_list(sympy.Poly(poly, x, domain="QQ"))
    for fac, _mult in factors:
        if fac.degree() == 1:
            c1, c0 = fac.all_coeffs()
            out.append(mpq(str(sympy.Rational(-c0, c1))))
    return sorted(out)


class EchelonSpan:
    """Incrementally maintained echelonised spanning set of Q-vectors.

    Rows are stored keyed by pivot position with pivot entry 1; membership
    testing and insertion are a single forward reduction.
    """

    def __init__(self, width: int):
        self.width = width
        self.rows: dict[int, list] = {}

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec) -> list:
        v = list(vec)
        for p, row in self.rows.items():
            x = v[p]
            if x:
                v = [a - x * b for a, b in zip(v, row)]
        return v

    def add(self, vec) -> int | None:
        """Insert vec; returns its pivot if independent, else None.

        Rows are kept fully reduced (zero at every other pivot), so a single
        forward pass in reduce() is a complete reduction.
        """
        v = self.reduce(vec)
        for p in range(self.width):
            if v[p]:
                inv = 1 / v[p]
                v = [x * inv for x in v]
                for q, row in self.rows.items():
                    f = row[p]
                    if f:
                        self.rows[q] = [a - f * b for a, b in zip(row, v)]
                self.rows[p] = v
                return p
        return None

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def basis(self) -> list[list]:
        return [self.rows[p] for p in sorted(self.rows)]


def row_space_basis(vectors: list[Vec], width: int) -> list[Vec]:
    span = EchelonSpan(width)
    for v in vectors:
        span.add(v)
    return span.basis()


def flatten(a: Mat) -> Vec:
    return [x for row in a for x in row]


def unflatten(v: Vec, rows: int, cols: int) -> Mat:
    return [list(v[i * cols : (i + 1) * cols]) for i in range(rows)]


class QuotientMap:
    """Linear quotient V -> V/N for N given by spanning vectors.

    Coordinates on the quotient are the non-pivot coordinates of V after
    reduction modulo an echelon basis of N; this keeps quotient bases
    reproducible.
    """

    def __init__(self, dim: int, null_vectors: list[Vec]):
        self.dim = dim
        self.span = EchelonSpan(dim)
        for v in null_vectors:
            self.span.add(v)
        pivots = set(self.span.rows)
        self.coords = [i for i in range(dim) if i not in pivots]
        self.qdim = len(self.coords)

    def project(self, vec: Vec) -> Vec:
        red = self.span.reduce(vec)
        return [red[i] for i in self.coords]

    def lift(self, qvec: Vec) -> Vec:
        """A representative in V of a quotient vector.

        Uses the section supported on non-pivot coordinates; well defined for
        mapping induced operators since those preserve the kernel.
        """
        v = [QZERO] * self.dim
        for i, c in zip(self.coords, qvec):
            v[i] = c
        return v

    def induced_matrix(self, op: Mat) -> Mat:
        """Matrix of the operator induced on the quotient (op must preserve N)."""
        cols = []
        for j in range(self.qdim):
            e = [QZERO] * self.qdim
            e[j] = QONE
            cols.append(self.project(mat_vec(op, self.lift(e))))
        return transpose(cols) if cols else []
