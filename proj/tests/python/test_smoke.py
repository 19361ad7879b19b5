import random

import pytest

import rcomp


def test_worked_example():
    runs, stats = rcomp.build(b"aabbabbabba")
    assert rcomp.render(runs) == "(a,1)(b,1)($,1)(b,2)(a,1)(b,3)(a,3)"
    assert stats["r"] == 7
    assert stats["n"] == 12
    assert rcomp.invert(runs) == b"aabbabbabba"


def test_empty_input():
    runs, stats = rcomp.build(b"")
    assert runs == [(rcomp.SENTINEL, 1)]
    assert stats["k"] == 1


@pytest.mark.parametrize("backend", ["plain", "grouped"])
def test_random_inputs_match_reference(backend):
    rng = random.Random(7)
    for _ in range(40):
        data = bytes(rng.randrange(rng.choice([2, 4, 256])) for _ in range(rng.randrange(300)))
        runs, _ = rcomp.build(data, backend=backend)
        assert runs == rcomp.bwt_reference(data)
        assert rcomp.invert(runs) == data


def test_builder_prepends():
    b = rcomp.Builder()
    b.prepend_bytes(b"abba")
    b.prepend(ord("a"))
    assert b.length == 6
    assert b.validate() == "ok"
    runs, _ = b.finish()
    assert rcomp.invert(runs) == b"aabba"


def test_errors():
    with pytest.raises(rcomp.InvalidAlpha):
        rcomp.Builder(15)
    with pytest.raises(rcomp.MalformedFile):
        rcomp.loads(b"XCMP\x01\x00\x10\x00")
    with pytest.raises(rcomp.MalformedRlbwt):
        rcomp.invert([(1, 2)])
    assert issubclass(rcomp.MalformedFile, rcomp.RcompError)


def test_file_round_trip():
    data = b"\x00\x00\xffabc" * 10
    runs, _ = rcomp.build(data)
    blob = rcomp.dumps(runs, len(data))
    assert blob[:4] == b"RCMP"
    got_runs, n, alpha = rcomp.loads(blob)
    assert (got_runs, n, alpha) == (runs, len(data), 16)
