"""Combinatorial side of the tensor functor on highest-weight modules.

For integral weights lam, mu the functor sends the Verma module of highest
weight mu to the standard module induced from the segment sequence whose i-th
segment starts at the i-th coordinate of mu + rho and has the length read off
from lam - mu as a weight of the ell-fold tensor power.  Simple modules go to
simple quotients or to zero, decided by an antidominance condition on the
singular directions of lam + rho; the square rank case (n = ell) classifies
all simples with the corresponding central character.
"""

from __future__ import annotations

import json

from .errors import InternalInvariantError, PreconditionError
from .hecke_modules import (
    FinModule,
    Segment,
    SegmentSequence,
    central_character,
    composition_factors,
    induce_standard,
    iso_test,
    simple_quotient,
    zero_module,
)
from .kl_engine import double_coset_longest_reps, stabilizer_parabolic
from .root_weyl import (
    Permutation,
    Weight,
    coset_data,
    dot_action,
    tensor_weight_decompose,
)


def _require_integral(lam: Weight, name: str):
    if not lam.is_integral():
        raise PreconditionError(f"{name} must be an integral weight")


def segments_from_pair(lam: Weight, mu: Weight, ell: int) -> SegmentSequence | None:
    """Segment sequence ([mu'_i, mu'_i + l_i - 1])_i, where mu' = mu + rho and
    (l_i) writes lam - mu as a weight of the ell-th tensor power; None when
    lam - mu is not such a weight.  Zero-length segments are retained in the
    record and dropped only at induction."""
    if ell < 1:
        raise PreconditionError("tensor power must be positive")
    _require_integral(lam, "lam")
    _require_integral(mu, "mu")
    lengths = tensor_weight_decompose(lam, mu, ell)
    if lengths is None:
        return None
    start = (mu + Weight.rho(mu.rank)).coords
    return SegmentSequence(
        tuple(Segment(a, a + li - 1) for a, li in zip(start, lengths))
    )


def f_of_verma(lam: Weight, mu: Weight, ell: int) -> FinModule:
    """Functor image of the Verma module of highest weight mu: the standard
    module of the associated segment sequence, or the zero module."""
    delta = segments_from_pair(lam, mu, ell)
    if delta is None:
        return zero_module(ell)
    return induce_standard(delta)


def nonzero_condition(lam: Weight, w: Permutation) -> bool:
    """Whether the functor image of the simple of highest weight w.lam (dot
    action) is nonzero: w(lam + rho) must be antidominant in every singular
    direction of lam + rho.

    Also asserts the equivalent coset formulations: the condition holds iff
    w.lam agrees with w_L.lam, iff it agrees with w_LR.lam, for the longest
    elements of the cosets of w against the stabilizer of lam + rho.
    """
    if w.rank != lam.rank:
        raise PreconditionError("rank mismatch between weight and permutation")
    rho = Weight.rho(lam.rank)
    xi = lam + rho
    if not xi.is_dominant():
        raise PreconditionError("lam + rho must be dominant integral")
    shifted = xi.permuted(w)
    cond = all(
        shifted.pairing_h(i) <= 0
        for i in range(1, lam.rank)
        if xi.pairing_h(i) == 0
    )
    data = coset_data(w, stabilizer_parabolic(lam))
    mu = dot_action(w, lam)
    via_l = mu == dot_action(data.w_L, lam)
    via_lr = mu == dot_action(data.w_LR, lam)
    if cond != via_l or cond != via_lr:
        raise InternalInvariantError(
            "antidominance condition disagrees with its coset formulation"
        )
    return cond


def f_of_simple(lam: Weight, w: Permutation) -> FinModule:
    """Functor image of the simple of highest weight w.lam, for rank equal to
    the tensor power: the simple quotient of the standard module when the
    antidominance condition holds, the zero module otherwise."""
    ell = lam.rank
    if tensor_weight_decompose(lam, dot_action(w, lam), ell) is None:
        raise PreconditionError("lam - w.lam is not a weight of the tensor power")
    if not nonzero_condition(lam, w):
        return zero_module(ell)
    return simple_quotient(f_of_verma(lam, dot_action(w, lam), ell))


def classify_simples(lam: Weight) -> list[tuple[Permutation, FinModule]]:
    """All simple modules with the central character attached to lam + rho,
    labelled by longest double-coset representatives against the stabilizer
    of lam + rho and filtered by tensor-power membership.

    Asserts that the representatives yield pairwise non-isomorphic simples
    and that they exhaust (and are exhausted by) the composition factors of
    the principal standard module at mu = lam.
    """
    ell = lam.rank
    rho = Weight.rho(ell)
    if not (lam + rho).is_dominant():
        raise PreconditionError("lam + rho must be dominant integral")
    out = []
    for w in double_coset_longest_reps(lam):
        if tensor_weight_decompose(lam, dot_action(w, lam), ell) is None:
            continue
        mod = f_of_simple(lam, w)
        if mod.dim == 0:
            raise InternalInvariantError(
                "longest double-coset representative produced a zero simple"
            )
        out.append((w, mod))
    for i in range(len(out)):
        for j in range(i + 1, len(out)):
            if iso_test(out[i][1], out[j][1]) is not None:
                raise InternalInvariantError(
                    "distinct double cosets produced isomorphic simples"
                )
    factors = composition_factors(f_of_verma(lam, lam, ell))
    for rep, _mult in factors:
        if not any(iso_test(rep, mod) is not None for _, mod in out):
            raise InternalInvariantError(
                "principal standard module has a factor outside the classification"
            )
    for _, mod in out:
        if not any(iso_test(rep, mod) is not None for rep, _m in factors):
            raise InternalInvariantError(
                "classified simple missing from the principal standard module"
            )
    return out


def classification_manifest(lam: Weight) -> str:
    """JSON manifest of the classification: coset labels, dims, central
    character (deterministic key order)."""
    entries = []
    for w, mod in classify_simples(lam):
        entries.append(
            {
                "w": list(w.images),
                "word": list(w.reduced_word()),
                "dim": mod.dim,
                "central_character": [str(c) for c in central_character(mod)],
            }
        )
    data = {
        "lambda": [str(c) for c in lam.coords],
        "count": len(entries),
        "simples": entries,
    }
    return json.dumps(data, sort_keys=True)
