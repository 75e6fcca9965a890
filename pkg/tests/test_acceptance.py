"""The ten acceptance criteria, one test each, all exact (zero tolerance).

Every criterion delegates to heckelie.verify, prints its single PASS/FAIL
line, and records it for the end-of-run summary.  Nothing here is allowed to
weaken a check: a criterion either holds exactly or the test fails with the
criterion's own diagnostic.
"""

import pytest

from heckelie.verify import _CRITERIA

from conftest import ACCEPTANCE_LINES

_NAMES = {
    1: "relation-suite",
    2: "dimension-formula",
    3: "verma-to-standard",
    4: "cyclic-eigenvalues",
    5: "simple-to-simple",
    6: "multiplicity-identity",
    7: "exactness-additivity",
    8: "kl-sanity",
    9: "evaluation-factoring",
    10: "classification-count",
}


@pytest.mark.parametrize(
    "number", sorted(_CRITERIA), ids=[f"{k:02d}-{_NAMES[k]}" for k in sorted(_CRITERIA)]
)
def test_criterion(number):
    result = _CRITERIA[number]()
    line = result.line()
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert result.ok, line
