import pytest

from uniseq.exact import (
    UnimodalSequence,
    count_p,
    count_table_u_m,
    count_table_ustar_m,
    count_u,
    count_u_m,
    count_ustar,
    count_ustar_m,
    enumerate_all,
    sequence_key,
)
from uniseq.series import strongly_unimodal_series, unimodal_series


def test_enumerate_size_two():
    seqs = enumerate_all(2)
    assert len(seqs) == 3
    encs = sorted(s.encode() for s in seqs)
    # bare peak 2 plus [1|1] with the peak on either side
    assert encs == ["1|1|", "|1|1", "|2|"]


def test_enumerate_size_one():
    assert [s.encode() for s in enumerate_all(1)] == ["|1|"]


def test_enumerate_strict_four():
    seqs = enumerate_all(4, strict=True)
    assert sorted(s.parts() for s in seqs) == [(1, 2, 1), (1, 3), (3, 1), (4,)]


def test_enumeration_guards():
    with pytest.raises(ValueError):
        enumerate_all(23)
    with pytest.raises(ValueError):
        enumerate_all(31, strict=True)
    with pytest.raises(ValueError):
        enumerate_all(0)


def test_sizes_are_exact():
    for n in (5, 9):
        for strict in (False, True):
            for seq in enumerate_all(n, strict):
                assert seq.size == n


def test_swap_is_involution():
    for n in (6, 8):
        seqs = enumerate_all(n)
        swapped = {s.swap() for s in seqs}
        assert swapped == set(seqs)
        for s in seqs:
            assert s.swap().swap() == s


def test_validation():
    with pytest.raises(ValueError):
        UnimodalSequence(left=(2, 1), peak=3)  # left must be nondecreasing
    with pytest.raises(ValueError):
        UnimodalSequence(left=(4,), peak=3)  # exceeds peak
    with pytest.raises(ValueError):
        UnimodalSequence(left=(2, 2), peak=3, strict=True)
    UnimodalSequence(left=(3,), peak=3)  # equal-to-peak allowed when not strict


def test_count_u_m_examples():
    assert count_u_m(3, 1) == 3
    assert count_u_m(4, 2) == 5
    for n in (1, 4, 9):
        assert count_u_m(n, n) == 1
    assert count_u_m(4, 5) == 0
    assert count_u_m(4, 0) == 0


def test_count_ustar_m_examples():
    assert count_ustar_m(4, 2) == 2  # peak 3: [1,3], [3,1]
    assert count_ustar_m(5, 2) == 3  # peak 3: [2,3], [3,2], [1,3,1]
    for n in (3, 6, 10):
        assert count_ustar_m(n, n - 1) == 1
    assert count_ustar_m(5, 5) == 0
    assert count_ustar_m(5, -1) == 0


def test_count_p():
    assert count_p(0) == 1
    assert count_p(1) == 1
    assert count_p(4) == 5
    assert count_p(100) == 190569292


def test_table_matches_pointwise_counts():
    assert count_table_u_m(3) == [3, 2, 1]
    assert count_table_u_m(1) == [1]
    n = 40
    table = count_table_u_m(n)
    assert table == [count_u_m(n, m) for m in range(1, n + 1)]
    stable = count_table_ustar_m(n)
    assert stable == [count_ustar_m(n, m) for m in range(n)]


def test_tables_match_series():
    u = unimodal_series(60)
    us = strongly_unimodal_series(60)
    for n in range(1, 61):
        assert sum(count_table_u_m(n)) == u[n]
        assert sum(count_table_ustar_m(n)) == us[n]


def test_table_guard():
    with pytest.raises(ValueError):
        count_table_u_m(3001)


def test_enumeration_matches_series_small():
    u = unimodal_series(12)
    us = strongly_unimodal_series(14)
    for n in range(1, 13):
        assert len(enumerate_all(n)) == u[n]
    for n in range(1, 15):
        assert len(enumerate_all(n, strict=True)) == us[n]


def test_enumeration_matches_peak_counts():
    n = 9
    by_peak = {}
    for s in enumerate_all(n):
        by_peak[s.peak] = by_peak.get(s.peak, 0) + 1
    assert by_peak == {m: count_u_m(n, m) for m in range(1, n + 1) if count_u_m(n, m)}
    by_peak = {}
    for s in enumerate_all(n, strict=True):
        by_peak[s.peak] = by_peak.get(s.peak, 0) + 1
    expected = {
        m + 1: count_ustar_m(n, m) for m in range(n) if count_ustar_m(n, m)
    }
    assert by_peak == expected


def test_sequence_keys_unique():
    for n, strict in ((10, False), (12, True)):
        seqs = enumerate_all(n, strict)
        keys = {sequence_key(s) for s in seqs}
        assert len(keys) == len(seqs)


def test_count_u_totals():
    assert [count_u(n) for n in range(7)] == [1, 1, 3, 6, 12, 21, 38]
    assert [count_ustar(n) for n in range(7)] == [1, 1, 1, 3, 4, 6, 10]
