"""The combinatorial functor: segments, Verma and simple images, classification."""

import json
import math

import pytest
from gmpy2 import mpq

from heckelie.errors import PreconditionError
from heckelie.functor import (
    classification_manifest,
    classify_simples,
    f_of_simple,
    f_of_verma,
    nonzero_condition,
    segments_from_pair,
)
from heckelie.hecke_modules import is_simple, iso_test
from heckelie.kl_engine import stabilizer_parabolic
from heckelie.root_weyl import (
    Permutation,
    Weight,
    coset_data,
    dot_action,
    symmetric_group,
    tensor_weight_decompose,
)

S1 = Permutation.s(3, 1)


def _singular():
    return Weight((mpq(1), mpq(1), mpq(0))) - Weight.rho(3)


# -- segment construction -----------------------------------------------------------


def test_segments_from_pair_examples():
    lam = Weight.zero(3)
    assert str(segments_from_pair(lam, lam, 3)) == "[1,1];[0,0];[-1,-1]"
    mu = dot_action(S1, lam)
    # the middle segment is empty but retained in the record
    assert str(segments_from_pair(lam, mu, 3)) == "[0,1];[1,0];[-1,-1]"
    far = Weight((-4, 2, 2))
    assert segments_from_pair(lam, far, 3) is None


def test_segments_from_pair_validation():
    with pytest.raises(PreconditionError):
        segments_from_pair(Weight((mpq(1, 2), 0, 0)), Weight.zero(3), 3)
    with pytest.raises(PreconditionError):
        segments_from_pair(Weight.zero(3), Weight.zero(3), 0)


# -- Verma images -------------------------------------------------------------------


def test_f_of_verma_dimensions():
    lam2 = Weight.zero(2)
    assert f_of_verma(lam2, lam2, 2).dim == 2
    lam3 = Weight.zero(3)
    assert f_of_verma(lam3, dot_action(S1, lam3), 3).dim == 3
    assert f_of_verma(lam3, Weight((-4, 2, 2)), 3).dim == 0


def test_f_of_verma_dim_is_tensor_weight_multiplicity():
    # dim F(M(mu)) = dim (V^{(x)l})_{lam-mu} = l!/prod(l_i!)
    for lam in (Weight.zero(3), _singular(), Weight((mpq(-1), mpq(1), mpq(0)))):
        for w in symmetric_group(3):
            mu = dot_action(w, lam)
            comp = tensor_weight_decompose(lam, mu, 3)
            if comp is None:
                continue
            expected = math.factorial(3)
            for li in comp:
                expected //= math.factorial(li)
            assert f_of_verma(lam, mu, 3).dim == expected


def test_f_of_verma_accepts_non_dominant_lambda():
    lam = Weight((mpq(-1), mpq(1), mpq(0)))
    assert not (lam + Weight.rho(3)).is_dominant()
    mod = f_of_verma(lam, lam, 3)
    assert mod.dim > 0


# -- nonzero condition --------------------------------------------------------------


def test_nonzero_condition_regular_is_vacuous():
    lam = Weight.zero(3)
    assert all(nonzero_condition(lam, w) for w in symmetric_group(3))


def test_nonzero_condition_singular_case():
    lam = _singular()
    # the internal assertion cross-checks the coset reformulation on every call
    values = {w.images: nonzero_condition(lam, w) for w in symmetric_group(3)}
    assert values[(1, 2, 3)] is True
    assert values[(2, 1, 3)] is True  # s1 fixes (1,1,0), same dot-orbit point
    assert any(not v for v in values.values())
    # condition depends only on the weight w.lam
    for w in symmetric_group(3):
        for v in symmetric_group(3):
            if dot_action(w, lam) == dot_action(v, lam):
                assert values[w.images] == values[v.images]


def test_nonzero_condition_validation():
    with pytest.raises(PreconditionError):
        nonzero_condition(Weight((mpq(-1), mpq(1), mpq(0))), Permutation.identity(3))
    with pytest.raises(PreconditionError):
        nonzero_condition(Weight.zero(3), Permutation.identity(2))


# -- simple images ------------------------------------------------------------------


def test_f_of_simple_rank2():
    lam = Weight.zero(2)
    head = f_of_simple(lam, Permutation.identity(2))
    assert head.dim == 1 and is_simple(head)
    other = f_of_simple(lam, Permutation.s(2, 1))
    assert other.dim == 1 and is_simple(other)
    assert iso_test(head, other) is None


def test_f_of_simple_zero_cases():
    lam = _singular()
    dims = {}
    for w in symmetric_group(3):
        if tensor_weight_decompose(lam, dot_action(w, lam), 3) is None:
            continue
        dims[w.images] = f_of_simple(lam, w).dim
        assert (dims[w.images] > 0) == nonzero_condition(lam, w)
    assert 0 in dims.values()


def test_f_of_simple_membership_precondition():
    lam = Weight.zero(3)
    # find a w whose dot image leaves the tensor weight set
    for w in symmetric_group(3):
        if tensor_weight_decompose(lam, dot_action(w, lam), 3) is None:
            with pytest.raises(PreconditionError):
                f_of_simple(lam, w)
            break
    else:
        pytest.fail("expected a non-member w at the regular weight")


@pytest.mark.parametrize("lam", [Weight.zero(3), _singular()], ids=["regular", "singular"])
def test_simple_images_iso_iff_same_double_coset(lam):
    J = stabilizer_parabolic(lam)
    images = {}
    for w in symmetric_group(3):
        if tensor_weight_decompose(lam, dot_action(w, lam), 3) is None:
            continue
        images[w] = f_of_simple(lam, w)
    for w, mw in images.items():
        for v, mv in images.items():
            if mw.dim and mv.dim:
                same = coset_data(w, J).w_LR == coset_data(v, J).w_LR
                assert (iso_test(mw, mv) is not None) == same
    # the longest double-coset representative itself never vanishes
    for w, mw in images.items():
        if coset_data(w, J).w_LR == w:
            assert mw.dim > 0


# -- classification -----------------------------------------------------------------


def test_classify_simples_counts():
    assert len(classify_simples(Weight.zero(1))) == 1
    assert len(classify_simples(Weight.zero(2))) == 2
    assert len(classify_simples(Weight.zero(3))) == 4
    assert len(classify_simples(_singular())) == 2


def test_classify_simples_rejects_non_dominant():
    with pytest.raises(PreconditionError):
        classify_simples(Weight((mpq(-1), mpq(1), mpq(0))))


def test_classification_manifest_shape_and_determinism():
    lam = Weight.zero(2)
    text = classification_manifest(lam)
    assert text == classification_manifest(lam)  # byte-identical
    data = json.loads(text)
    assert data["count"] == 2 == len(data["simples"])
    for entry in data["simples"]:
        assert set(entry) == {"w", "word", "dim", "central_character"}
        assert Permutation.from_word(2, entry["word"]).images == tuple(entry["w"])
