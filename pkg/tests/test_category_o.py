"""Truncated highest-weight modules and the direct tensor-space functor."""

import pytest
from gmpy2 import mpq

from heckelie.category_o import (
    TruncatedOModule,
    _tensor_basis,
    coinvariant_vectors_all_roots,
    f_lambda_direct,
    omega_on_v_tensor_v,
    positive_roots,
    required_depth,
    simple_truncated,
    sl_matrix_unit,
    verma_truncated,
)
from heckelie.errors import PreconditionError, TruncationError
from heckelie.hecke_modules import FinModule, check_relations
from heckelie.linalg import QZERO, QuotientMap, identity, inverse, mat_mul, zeros
from heckelie.root_weyl import Weight


# -- the coupling operator on V (x) V ------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4])
def test_omega_is_swap_minus_projector(n):
    omega = omega_on_v_tensor_v(n)
    d = n * n
    expected = zeros(d, d)
    for i in range(n):
        for j in range(n):
            expected[j * n + i][i * n + j] += mpq(1)  # coordinate swap
            expected[i * n + j][i * n + j] -= mpq(1, n)
    assert omega == expected


def _classical_r_matrix(n):
    """r = sum_{a<b} E_ab (x) E_ba + (1/2) sum_i h^i (x) h_i on V (x) V."""
    d = n * n
    out = zeros(d, d)

    def kron_add(x, y, scale=mpq(1)):
        for i in range(n):
            for j in range(n):
                if x[i][j]:
                    for k in range(n):
                        for l in range(n):
                            if y[k][l]:
                                out[i * n + k][j * n + l] += scale * x[i][j] * y[k][l]

    hs = []
    for i in range(1, n):
        h = zeros(n, n)
        h[i - 1][i - 1] = mpq(1)
        h[i][i] = mpq(-1)
        hs.append(h)
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
        kron_add(hdual, hs[i], mpq(1, 2))
    for a, b in positive_roots(n):
        kron_add(sl_matrix_unit(n, a, b), sl_matrix_unit(n, b, a))
    return out


@pytest.mark.parametrize("n", [2, 3, 4])
def test_r_matrix_scalar_identity(n):
    # (r + 1/(2n)) (u_j (x) u_k) = (1/2) delta_{jk} u_j (x) u_k for j <= k
    r = _classical_r_matrix(n)
    for j in range(n):
        for k in range(j, n):
            col = j * n + k
            for row in range(n * n):
                expected = QZERO
                if row == col:
                    expected = (mpq(1, 2) if j == k else QZERO) - mpq(1, 2 * n)
                assert r[row][col] == expected
    # and r plus its swap-conjugate reassembles the full coupling
    swap = zeros(n * n, n * n)
    for i in range(n):
        for j in range(n):
            swap[j * n + i][i * n + j] = mpq(1)
    assert omega_on_v_tensor_v(n) == [
        [
            r[i][j] + mat_mul(swap, mat_mul(r, swap))[i][j]
            for j in range(n * n)
        ]
        for i in range(n * n)
    ]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_casimir_half_sum_eigenvalue_on_v(n):
    """The operator (1/2) sum_k h_k h^k + sum_{alpha>0} e_{-alpha} e_alpha + 1/(2n)
    acts on the basis vector u_j of V by the scalar j - 1/2 (not by
    -(n - 2j + 1)/2; the two differ by n/2 and only the former is consistent
    with the cyclic-vector eigenvalues checked in the acceptance suite)."""
    op = zeros(n, n)
    hs = []
    for i in range(1, n):
        h = zeros(n, n)
        h[i - 1][i - 1] = mpq(1)
        h[i][i] = mpq(-1)
        hs.append(h)
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
        half = mat_mul(hs[i], hdual)
        for r in range(n):
            for c in range(n):
                op[r][c] += mpq(1, 2) * half[r][c]
    for a, b in positive_roots(n):
        lower = mat_mul(sl_matrix_unit(n, b, a), sl_matrix_unit(n, a, b))
        for r in range(n):
            for c in range(n):
                op[r][c] += lower[r][c]
    for j in range(n):
        op[j][j] += mpq(1, 2 * n)
    expected = [[mpq(j + 1) - mpq(1, 2) if i == j else QZERO for j in range(n)] for i in range(n)]
    assert op == expected


# -- truncated Verma and simple modules ---------------------------------------------


def test_verma_weight_dimensions_sl2():
    mu = Weight.zero(2)
    verma = verma_truncated(mu, 4)
    alpha = Weight.alpha(2, 1)
    for k in range(5):
        assert verma.weight_dim(mu - Weight((QZERO, QZERO)) - _scale(alpha, k)) == 1
    with pytest.raises(TruncationError):
        verma.weight_dim(mu - _scale(alpha, 5))
    # weights outside the negative root cone are empty
    assert verma.weight_dim(mu + alpha) == 0


def _scale(w: Weight, k: int) -> Weight:
    out = w
    for _ in range(k - 1):
        out = out + w
    return out if k else Weight.zero(w.rank)


def test_verma_weight_dimensions_sl3():
    mu = Weight.zero(3)
    verma = verma_truncated(mu, 3)
    a1, a2 = Weight.alpha(3, 1), Weight.alpha(3, 2)
    assert verma.weight_dim(mu - a1) == 1
    assert verma.weight_dim(mu - a2) == 1
    # Kostant partition: alpha1 + alpha2 = (alpha1) + (alpha2) or (alpha13)
    assert verma.weight_dim(mu - a1 - a2) == 2
    # 2*alpha1 + alpha2 = f1^2 f2 or f1 f13: two PBW monomials
    assert verma.weight_dim(mu - a1 - a1 - a2) == 2


def test_verma_lowering_raising_commutator():
    # [e_alpha, f_alpha] acts on the mu-space by <mu, h_alpha>
    mu = Weight((2, 0, 0))
    verma = verma_truncated(mu, 3)
    nu = mu - Weight.alpha(3, 1)
    down = verma.op(2, 1, mu)
    up = verma.op(1, 2, nu)
    assert mat_mul(up, down) == [[mu.pairing_h(1)]]


def test_simple_truncated_trivial_module():
    for n in (2, 3):
        mu = Weight.zero(n)
        triv = simple_truncated(mu, 3)
        assert triv.weight_dim(mu) == 1
        assert triv.weight_dim(mu - Weight.alpha(n, 1)) == 0
        assert triv.weight_dim(mu - Weight.alpha(n, n - 1)) == 0


def test_simple_truncated_sl2_fundamental():
    # <mu, h> = 1: two weight spaces survive, the third dies
    mu = Weight((1, 0))
    simple = simple_truncated(mu, 3)
    alpha = Weight.alpha(2, 1)
    assert simple.weight_dim(mu) == 1
    assert simple.weight_dim(mu - alpha) == 1
    assert simple.weight_dim(mu - _scale(alpha, 2)) == 0


def test_verma_truncation_errors():
    with pytest.raises(PreconditionError):
        verma_truncated(Weight.zero(2), -1)


# -- the direct functor -------------------------------------------------------------


def test_f_lambda_direct_principal_series():
    lam = Weight.zero(2)
    mod = f_lambda_direct(verma_truncated(lam, required_depth(lam, lam, 2)), lam, 2)
    assert mod.dim == 2
    assert check_relations(mod).ok
    assert mod.cyclic is not None and any(mod.cyclic)


def test_f_lambda_direct_input_validation():
    x = verma_truncated(Weight.zero(2), 4)
    with pytest.raises(PreconditionError):
        f_lambda_direct(x, Weight.zero(3), 2)
    with pytest.raises(PreconditionError):
        f_lambda_direct(x, Weight((mpq(1, 2), 0)), 2)
    with pytest.raises(PreconditionError):
        f_lambda_direct(x, Weight.zero(2), 0)


def _pre_quotient_operators(x: TruncatedOModule, lam: Weight, ell: int):
    """The Hecke operators on the full lambda-weight space of X (x) V^{(x)l},
    before passing to coinvariants; mirrors the production construction so the
    commutation and cross relations can be checked pre-quotient."""
    n = x.n
    basis = _tensor_basis(x, lam, ell)
    index = {trip: k for k, trip in enumerate(basis)}
    d = len(basis)

    def swap_mat(i):
        mat = zeros(d, d)
        for col, (nu, k, word) in enumerate(basis):
            word2 = word[: i - 1] + (word[i], word[i - 1]) + word[i + 1 :]
            mat[index[(nu, k, word2)]][col] = mpq(1)
        return mat

    def omega_0(i):
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
    big_y = []
    for i in range(1, ell + 1):
        y = omega_0(i)
        for j in range(1, i):
            word = list(range(j, i - 1)) + [i - 1] + list(range(i - 2, j - 1, -1))
            m = identity(d)
            for t in word:
                m = mat_mul(m, swaps[t])
            for r in range(d):
                for c in range(d):
                    if m[r][c]:
                        y[r][c] += m[r][c]
        for r in range(d):
            y[r][r] += mpq(n - 1, 2)
        big_y.append(y)
    return d, [swaps[i] for i in range(1, ell)], big_y


@pytest.mark.parametrize("n", [2, 3])
def test_relations_hold_before_quotienting(n):
    # commutativity of the y_i and the cross relations are identities on the
    # whole tensor space, not consequences of the coinvariant quotient
    lam = Weight.zero(n)
    x = verma_truncated(lam, required_depth(lam, lam, n))
    d, big_s, big_y = _pre_quotient_operators(x, lam, n)
    assert d > 0
    pre = FinModule(n, d, big_s, big_y)
    report = check_relations(pre)
    assert report.ok, report.message


@pytest.mark.parametrize("n", [2, 3])
def test_simple_lowering_operators_span_all_root_coinvariants(n):
    # n_- is generated by the simple negative root vectors: quotienting by the
    # simple f_i images alone matches quotienting by every e_{-alpha} image
    lam = Weight.zero(n)
    for x in (
        verma_truncated(lam, required_depth(lam, lam, n)),
        simple_truncated(lam, required_depth(lam, lam, n)),
    ):
        d = len(_tensor_basis(x, lam, n))
        all_roots = coinvariant_vectors_all_roots(x, lam, n)
        qdim_all = QuotientMap(d, all_roots).qdim
        assert f_lambda_direct(x, lam, n).dim == qdim_all
