"""Acceptance criteria, one test per suite.

Each suite re-derives a family of closed-form answers by brute force
and fails on the first mismatch; a PASS/FAIL line per criterion is
printed (visible with ``pytest -s`` or on failure).  The same suites
back the ``coxtools verify`` command.
"""

import pytest

from coxtools.suites import ALL_SUITES

CRITERIA = [
    ("orders", "1: enumeration matches closed-form orders"),
    ("deodhar", "2: reflection decompositions of longest elements"),
    ("core-oracle", "3: cores of normalizers vs brute force"),
    ("centralizer-oracle", "4: centralizers of involutive closures vs brute force"),
    ("center-factor", "5: center-as-direct-factor vs complement search"),
    ("lemma-battery", "6: normalizer/core lemma battery"),
    ("isomorphism", "7: isomorphism decider soundness"),
    ("aut", "8: automorphism accounting"),
    ("hommonoid", "9: central-hom monoid laws"),
    ("richardson", "10: Richardson forms of involutions"),
]


@pytest.mark.parametrize("suite,label", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_acceptance(suite, label):
    result = ALL_SUITES[suite](seed=0)
    print(f"criterion {label}: {result.line()}")
    assert result.passed, f"criterion {label}: {result.detail}"
