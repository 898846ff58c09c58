import pytest

import dnascan


def make_params(**overrides):
    p = dnascan.ScenarioParams()
    p.seq_length = 5000
    p.prob_a = 0.3
    p.prob_c = 0.2
    p.prob_g = 0.2
    p.n_random_patterns = 6
    p.rand_len_mean = 8
    p.rand_len_dev = 5
    p.n_sample_patterns = 4
    p.samp_len_mean = 12
    p.samp_len_dev = 4
    p.samp_loc_mean = 2500
    p.samp_loc_dev = 2000
    p.seed = 99
    for key, value in overrides.items():
        setattr(p, key, value)
    return p


def test_version():
    assert dnascan.__version__ == "0.1.0"


def test_rng_determinism():
    a = dnascan.Rng(42)
    b = dnascan.Rng(42)
    assert [a.next() for _ in range(8)] == [b.next() for _ in range(8)]


def test_rng_skip_matches_iteration():
    a = dnascan.Rng(7)
    for _ in range(1000):
        a.next()
    b = dnascan.Rng(7)
    b.skip(1000)
    assert a.state() == b.state()
    assert a.next() == b.next()


def test_find_first():
    assert dnascan.find_first("GATTACA", "TTA") == 2
    assert dnascan.find_first("GATTACA", "GG") == -1


def test_sequential_report():
    r = dnascan.search_sequential("GATTACA", ["TTA", "CA", "A", "ACA", "GG"])
    assert r.matches == 4
    assert r.checksum == 12
    assert r.multi == 3
    assert r.pat_found == [2, 5, 1, 4, -1]
    assert r.seq_matches == [0, 1, 1, 1, 2, 2, 2]
    assert r.text().startswith("Matches: 4\nChecksum: 12\nMulti: 3\n")


def test_engines_agree_on_generated_scenario():
    sc = dnascan.build_scenario(make_params())
    base = dnascan.search_sequential(sc)
    for decomposition in ("patterns", "positions", "nested"):
        assert dnascan.search_parallel(sc, decomposition=decomposition, workers=4) == base
    assert dnascan.search_parallel(sc, workers=2, accumulation="merge", cancellation=True) == base
    for mode in ("distributed", "replicated"):
        assert dnascan.search_distributed(sc, ranks=3, mode=mode) == base


def test_generation_is_deterministic():
    a = dnascan.build_scenario(make_params())
    b = dnascan.build_scenario(make_params(), workers=4)
    assert a.sequence == b.sequence
    assert [p.text for p in a.patterns] == [p.text for p in b.patterns]


def test_sample_patterns_are_contained():
    sc = dnascan.build_scenario(make_params())
    samples = [p for p in sc.patterns if p.provenance == "sample"]
    assert len(samples) == 4
    for pat in samples:
        assert pat.source_location is not None
        start = pat.source_location
        assert sc.sequence[start : start + len(pat)] == pat.text


def test_bad_inputs_raise():
    p = make_params(prob_a=0.9, prob_c=0.9)
    with pytest.raises(ValueError):
        p.validate()
    with pytest.raises(ValueError):
        dnascan.search_parallel("ACGT", ["A"], decomposition="bogus")
    with pytest.raises(ValueError):
        dnascan.search_sequential("ACGX", ["A"])
