"""The compiled join kernel and the pure-Python fallback must agree."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semflow.rdf import kernel

pytestmark = pytest.mark.skipif(
    kernel.join_patterns_c is None, reason="compiled kernel not built")

_ids = st.integers(min_value=0, max_value=6)
_triples = st.lists(st.tuples(_ids, _ids, _ids), max_size=30)

# patterns over 3 variables: slot is either a constant id or a var (-1..-3)
_slot = st.one_of(_ids, st.integers(min_value=-3, max_value=-1))
_patterns = st.lists(st.tuples(_slot, _slot, _slot), min_size=1, max_size=3)


@settings(max_examples=200, deadline=None)
@given(_triples, _patterns)
def test_compiled_matches_pure(triples, patterns):
    from array import array

    s = [t[0] for t in triples]
    p = [t[1] for t in triples]
    o = [t[2] for t in triples]
    flat = [v for pat in patterns for v in pat]
    expected = kernel.join_patterns_py(s, p, o, flat, len(patterns), 3)
    got = kernel.join_patterns_c(
        array("l", s), array("l", p), array("l", o),
        array("l", flat), len(patterns), 3)
    assert sorted(set(got)) == sorted(set(expected))


def test_compiled_rejects_oversized_queries():
    from array import array

    empty = array("l", [])
    with pytest.raises(ValueError):
        kernel.join_patterns_c(empty, empty, empty, array("l", [0, 0, 0]), 1, 65)
