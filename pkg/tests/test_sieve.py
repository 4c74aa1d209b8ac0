"""Segmented sieve: prime streams, gap events, Chebyshev sums."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from collisionlab import sieve

# frozen oracle values (first run pinned, cross-checked against published
# prime-counting tables)
PI_1E6 = 78498
PI_1E8 = 5761455
THETA_1E6 = 998484.1750256342
PSI_1E6 = 999586.5974956343


def test_prime_list_golden_prefix():
    assert sieve.prime_list(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert sieve.prime_list(1) == []


def test_base_primes_grow_only_cache():
    a = sieve.base_primes(100)
    b = sieve.base_primes(1000)
    assert list(a) == list(b[: len(a)])
    assert int(b[-1]) == 997


def test_primes_in_window():
    assert list(sieve.primes_in(10, 30)) == [11, 13, 17, 19, 23, 29]
    assert list(sieve.primes_in(2, 2)) == [2]
    assert list(sieve.primes_in(24, 28)) == []


@given(st.integers(min_value=2, max_value=10**6), st.integers(min_value=0, max_value=3000))
@settings(max_examples=40)
def test_primes_in_matches_reference(lo, width):
    hi = lo + width
    table = sieve.base_primes(hi + 1)
    expected = [int(p) for p in table if lo <= p <= hi]
    assert list(sieve.primes_in(lo, hi)) == expected


def test_segment_plan_covers_range():
    plan = sieve.SegmentPlan(2, 10**7, 1 << 18)
    jobs = plan.jobs()
    assert jobs[0][1] == 2 and jobs[-1][2] == 10**7
    for (_, _, prev_hi), (_, lo, _) in zip(jobs, jobs[1:]):
        assert lo == prev_hi
    assert [idx for idx, _, _ in jobs] == list(range(len(jobs)))


def test_segment_plan_validation():
    with pytest.raises(ValueError):
        sieve.SegmentPlan(10, 5, 1 << 18)
    with pytest.raises(ValueError):
        sieve.SegmentPlan(2, 10, 100)  # segment too small


def test_prime_count_pinned():
    assert sieve.prime_count(10**6) == PI_1E6
    assert sieve.prime_count(100) == 25
    assert sieve.prime_count(2) == 1


def test_prime_count_1e8_pinned():
    assert sieve.prime_count(10**8) == PI_1E8


def test_next_prime_after():
    assert sieve.next_prime_after(10**6) == 1000003
    assert sieve.next_prime_after(2) == 3
    assert sieve.next_prime_after(31) == 37


def test_prime_neighbors():
    assert sieve.prime_neighbors(100) == (97, 101)
    assert sieve.prime_neighbors(97) == (97, 101)
    assert sieve.prime_neighbors(3) == (3, 5)
    with pytest.raises(ValueError):
        sieve.prime_neighbors(2)


def test_gap_scan_events_below_1e8():
    events = list(sieve.gap_scan(2, 10**8, 158))
    assert len(events) == 73
    assert events[0] == sieve.GapEvent(p=17051707, gap=180)
    biggest = max(events, key=lambda ev: ev.gap)
    assert biggest == sieve.GapEvent(p=47326693, gap=220)
    assert all(ev.gap >= 158 for ev in events)
    ps = [ev.p for ev in events]
    assert ps == sorted(ps)


def test_gap_scan_first_event_above_2e7():
    events = list(sieve.gap_scan(2 * 10**7, 3 * 10**7, 158))
    assert events[0].p == 20285099
    assert events[0].gap == 164


def test_gap_scan_segmentation_invariance():
    base = list(sieve.gap_scan(10**7, 3 * 10**7, 140))
    assert base, "window chosen to contain events"
    for seg in (1 << 18, 1 << 20):
        assert list(sieve.gap_scan(10**7, 3 * 10**7, 140, segment_size=seg)) == base
    assert list(sieve.gap_scan(10**7, 3 * 10**7, 140, workers=2)) == base


def test_gap_scan_gap_values_are_real_gaps():
    for ev in sieve.gap_scan(10**6, 10**7, 100):
        assert sieve.next_prime_after(ev.p) == ev.p + ev.gap
        prev, _ = sieve.prime_neighbors(ev.p)
        assert prev == ev.p


def test_chebyshev_exact_pinned():
    vals = sieve.chebyshev_exact(10**6)
    assert vals.pi == PI_1E6
    assert vals.theta == pytest.approx(THETA_1E6, abs=1e-6)
    assert vals.psi == pytest.approx(PSI_1E6, abs=1e-6)


def test_chebyshev_exact_small():
    vals = sieve.chebyshev_exact(10)
    assert vals.pi == 4
    assert vals.theta == pytest.approx(sum(math.log(p) for p in (2, 3, 5, 7)), abs=1e-12)
    # psi adds the prime powers 4, 8, 9
    assert vals.psi == pytest.approx(vals.theta + 2 * math.log(2) + math.log(3), abs=1e-12)


def test_chebyshev_exact_limit_guard():
    with pytest.raises(ValueError):
        sieve.chebyshev_exact(sieve.EXACT_SUM_LIMIT + 1)
    with pytest.raises(ValueError):
        sieve.chebyshev_exact(1)


def test_chebyshev_tables_match_exact():
    pi_t, theta_t, psi_t = sieve.chebyshev_tables(10**5)
    vals = sieve.chebyshev_exact(10**5)
    assert pi_t[-1] == vals.pi
    assert theta_t[-1] == pytest.approx(vals.theta, abs=1e-4)
    assert psi_t[-1] == pytest.approx(vals.psi, abs=1e-4)
    for x in (2, 3, 4, 97, 1000, 65537):
        assert pi_t[x] == sieve.prime_count(x)


def test_chebyshev_tables_guard():
    with pytest.raises(ValueError):
        sieve.chebyshev_tables(3 * 10**7)


def test_base_primes_disk_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("COLLISIONLAB_CACHE_DIR", str(tmp_path))
    # the in-process cache is grow-only, so ask past whatever earlier tests built
    need = max(1 << 21, int(sieve._base_cache["limit"]) + 1)
    sieve.base_primes(need)
    cache_file = tmp_path / "base_primes.npy"
    assert cache_file.exists()
    stored = np.load(cache_file)
    assert list(stored[:5]) == [2, 3, 5, 7, 11]
    assert np.array_equal(stored, sieve._base_cache["primes"])

    # a corrupt cache file is ignored, not trusted
    cache_file.write_bytes(b"not numpy data")
    need2 = int(sieve._base_cache["limit"]) + 1
    fresh = sieve.base_primes(need2)
    # prime gaps at this scale are far below 300
    assert int(fresh[0]) == 2 and need2 - 300 <= int(fresh[-1]) <= need2
