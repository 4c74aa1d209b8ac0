"""Certificate scan: coverage, refutation, checkpointing, determinism."""

import json

import pytest

from collisionlab import certificate
from collisionlab.certificate import (
    CertificateConfig,
    coverage_check,
    refute_window,
    run,
)

Q_SMALL = 30_000_000  # four gap events live below this


def small_config(**overrides):
    params = {"q_max": Q_SMALL}
    params.update(overrides)
    return CertificateConfig(**params)


# ---------------------------------------------------------------------------
# configuration

def test_config_validation():
    with pytest.raises(ValueError):
        CertificateConfig(q_max=2)
    with pytest.raises(ValueError):
        CertificateConfig(q_max=100, windows=())
    with pytest.raises(ValueError):
        CertificateConfig(q_max=100, windows=((0, 5),))
    with pytest.raises(ValueError):
        CertificateConfig(q_max=100, windows=((5, 3),))
    with pytest.raises(ValueError):
        CertificateConfig(q_max=100, smooth_bound=1)
    with pytest.raises(ValueError):
        CertificateConfig(q_max=100, gap_min=0)


def test_config_hash_ignores_operational_fields():
    base = small_config()
    moved = small_config(
        checkpoint_path="/tmp/ck.json", witness_path="/tmp/w.jsonl", workers=8
    )
    assert base.config_hash() == moved.config_hash()
    assert base.config_hash() != small_config(q_max=Q_SMALL + 2).config_hash()
    assert base.config_hash() != small_config(smooth_bound=3429).config_hash()


def test_config_hash_pinned():
    assert small_config().config_hash() == (
        "85a2b743ee1c5eeb6b87121843652ca6fffebefe91726d0ff3b0c82dcbb7a740"
    )


# ---------------------------------------------------------------------------
# coverage

def test_coverage_default_geometry():
    cov = coverage_check(456, 156, ((152, 156), (303, 308)))
    assert cov.ok and bool(cov)
    assert len(cov.placements) == 300
    assert all(w is not None for w in cov.placements.values())
    # the first window handles early placements, the second takes over later
    assert cov.placements[0] == (152, 156)
    assert cov.placements[299] == (303, 308)


def test_coverage_single_placement():
    cov = coverage_check(157, 156, ((152, 156), (303, 308)))
    assert cov.ok
    assert list(cov.placements) == [0]


def test_coverage_detects_hole():
    cov = coverage_check(456, 156, ((303, 308),))
    assert not cov.ok
    assert cov.placements[0] is None
    assert cov.placements[152] == (303, 308)


# ---------------------------------------------------------------------------
# single-window refutation

def test_refute_window_finds_first_witness():
    r = refute_window(3, (1, 2), 3)
    assert r is not None
    assert (r.q, r.window, r.witness_offset, r.witness_prime) == (3, (1, 2), 2, 5)


def test_refute_window_none_when_smooth():
    assert refute_window(8, (1, 2), 7) is None


def test_refute_window_known_gap_prime():
    r1 = refute_window(17051707, (152, 156), 3427)
    assert (r1.witness_offset, r1.witness_prime) == (152, 4201)
    r2 = refute_window(17051707, (303, 308), 3427)
    assert (r2.witness_offset, r2.witness_prime) == (303, 9421)
    assert (17051707 + 152) % 4201 == 0
    assert (17051707 + 303) % 9421 == 0


# ---------------------------------------------------------------------------
# full runs

def test_run_pinned_small():
    report = run(small_config())
    assert report.coverage_ok
    assert report.gap_prime_count == 4
    assert report.refuted == {"152-156": 4, "303-308": 4}
    assert report.failures == ()
    assert report.gap_cap_violations == ()
    assert report.segments_total == 8
    assert report.segments_done == 8
    assert report.complete


def test_run_vacuous_when_gap_min_huge():
    report = run(CertificateConfig(q_max=10**6, gap_min=500))
    assert report.gap_prime_count == 0
    assert report.refuted == {"152-156": 0, "303-308": 0}
    assert report.complete


def test_run_refuses_uncovered_windows():
    with pytest.raises(ValueError, match="refusing to run"):
        run(small_config(windows=((303, 308),)))


def test_run_witness_stream(tmp_path):
    path = str(tmp_path / "witnesses.jsonl")
    report = run(small_config(witness_path=path))
    lines = open(path, encoding="utf-8").read().splitlines()
    assert len(lines) == 2 * report.gap_prime_count
    assert lines[0] == '{"q":17051707,"window":"152-156","offset":152,"prime":4201}'
    assert lines[1] == '{"q":17051707,"window":"303-308","offset":303,"prime":9421}'
    for line in lines:
        row = json.loads(line)
        assert (row["q"] + row["offset"]) % row["prime"] == 0
        assert row["prime"] > 3427


def test_run_worker_count_invariance():
    serial = run(small_config()).to_json()
    parallel = run(small_config(workers=2)).to_json()
    assert serial == parallel


def test_run_segment_size_invariance():
    a = run(small_config())
    b = run(small_config(segment_size=1 << 19))
    assert a.gap_prime_count == b.gap_prime_count
    assert a.refuted == b.refuted
    assert a.failures == b.failures
    assert a.gap_cap_violations == b.gap_cap_violations
    assert b.segments_total > a.segments_total


def test_run_records_gap_cap_violations():
    cfg = small_config(gap_cap=157, window_len=156, windows=((1, 156),))
    report = run(cfg)
    assert report.refuted == {"1-156": 4}
    assert report.failures == ()
    assert len(report.gap_cap_violations) == 4
    assert report.gap_cap_violations[0] == (17051707, 180)
    assert all(gap > 157 for _, gap in report.gap_cap_violations)


def test_report_json_layout():
    report = run(CertificateConfig(q_max=10**6, gap_min=500))
    payload = json.loads(report.to_json())
    assert list(payload) == [
        "config",
        "config_hash",
        "coverage_ok",
        "gap_prime_count",
        "refuted",
        "failures",
        "gap_cap_violations",
        "segments_done",
        "segments_total",
        "complete",
    ]
    assert "wall_time_s" not in payload
    timed = json.loads(report.to_json(include_timing=True, version="0.1.0"))
    assert list(timed)[0] == "version"
    assert "wall_time_s" in timed


# ---------------------------------------------------------------------------
# checkpointing and resume

def test_resume_matches_uninterrupted(tmp_path):
    ck = str(tmp_path / "ck.json")
    wit = str(tmp_path / "wit.jsonl")
    cfg = small_config(checkpoint_path=ck, witness_path=wit)

    partial = run(cfg, stop_after_segments=4)
    assert not partial.complete
    assert partial.segments_done == 4

    resumed = run(cfg)
    assert resumed.complete

    wit_ref = str(tmp_path / "wit_ref.jsonl")
    reference = run(small_config(witness_path=wit_ref))
    assert resumed.to_json() == reference.to_json()
    assert open(wit, "rb").read() == open(wit_ref, "rb").read()


def test_checkpoint_rejects_other_config(tmp_path):
    ck = str(tmp_path / "ck.json")
    run(CertificateConfig(q_max=10**6, gap_min=500, checkpoint_path=ck))
    other = CertificateConfig(q_max=2 * 10**6, gap_min=500, checkpoint_path=ck)
    with pytest.raises(ValueError, match="different configuration"):
        run(other)


def test_checkpoint_rejects_misaligned_progress(tmp_path):
    ck = str(tmp_path / "ck.json")
    cfg = CertificateConfig(q_max=10**6, gap_min=500, checkpoint_path=ck)
    state = certificate._fresh_state(cfg.config_hash())
    state["completed_hi"] = 999  # not a segment boundary
    certificate.checkpoint_save(ck, state)
    with pytest.raises(ValueError, match="does not align"):
        run(cfg)


def test_checkpoint_load_validates_schema(tmp_path):
    ck = str(tmp_path / "ck.json")
    state = certificate._fresh_state("deadbeef")
    del state["refuted"]
    certificate.checkpoint_save(ck, state)
    with pytest.raises(ValueError, match="missing field: refuted"):
        certificate.checkpoint_load(ck)

    state = certificate._fresh_state("deadbeef")
    state["gap_prime_count"] = "four"
    certificate.checkpoint_save(ck, state)
    with pytest.raises(ValueError, match="wrong type: gap_prime_count"):
        certificate.checkpoint_load(ck)


def test_checkpoint_save_is_atomic(tmp_path):
    ck = str(tmp_path / "ck.json")
    state = certificate._fresh_state("deadbeef")
    certificate.checkpoint_save(ck, state)
    assert certificate.checkpoint_load(ck) == state
    assert not (tmp_path / "ck.json.tmp").exists()


def test_checkpoint_roundtrip():
    state = certificate._fresh_state("deadbeef")
    assert certificate.checkpoint_roundtrip(state) == state
    bad = dict(state)
    bad["failures"] = [(17, (152, 156))]  # tuples do not survive JSON
    with pytest.raises(ValueError, match="round trip"):
        certificate.checkpoint_roundtrip(bad)
    missing = dict(state)
    del missing["witness_bytes"]
    with pytest.raises(ValueError, match="missing field"):
        certificate.checkpoint_roundtrip(missing)
