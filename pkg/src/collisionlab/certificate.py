"""Prime-gap smoothness certificate: scan, refute, cover.

The claim being re-executed: below a bound Q, every prime q whose gap to
the next prime is at least 158 has, in each of two fixed offset windows, an
element with a prime factor exceeding 3427.  Combined with the gap cap
d(q) <= 456 and the window-covering argument, that rules out any run of 156
consecutive 3427-smooth integers starting below Q - 456.

Structure of a run:

  1. coverage_check proves the configured windows cover every placement a
     smooth run could occupy inside a maximal gap (refuses to run otherwise);
  2. the segmented sieve streams GapEvents in ascending order;
  3. each event is attacked by trial division in every window;
  4. per-segment progress goes to an atomic checkpoint, so an interrupted
     run resumes into a byte-identical report.

Counts and refutations are a pure function of the configuration: worker
count and segment size never change the output (the acceptance suite checks
this at three worker counts).
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass, field
from typing import Optional

from . import arith
from .sieve import DEFAULT_SEGMENT_ODDS, SegmentPlan, _segment_gap_events

__all__ = [
    "CertificateConfig",
    "CoverageResult",
    "WindowRefutation",
    "CertificateReport",
    "coverage_check",
    "refute_window",
    "run",
    "checkpoint_save",
    "checkpoint_load",
    "checkpoint_roundtrip",
]

Window = tuple[int, int]


def _window_key(window: Window) -> str:
    return f"{window[0]}-{window[1]}"


@dataclass(frozen=True, slots=True)
class CertificateConfig:
    q_max: int
    gap_min: int = 158
    windows: tuple[Window, ...] = ((152, 156), (303, 308))
    smooth_bound: int = 3427
    gap_cap: int = 456
    window_len: int = 156
    segment_size: int = DEFAULT_SEGMENT_ODDS
    checkpoint_path: Optional[str] = None
    witness_path: Optional[str] = None
    workers: int = 1

    def __post_init__(self) -> None:
        if self.q_max < 3:
            raise ValueError(f"certificate: q_max must be >= 3, got {self.q_max}")
        if not self.windows:
            raise ValueError("certificate: at least one window is required")
        for a, b in self.windows:
            if not 1 <= a <= b:
                raise ValueError(f"certificate: malformed window [{a}, {b}]")
        if self.smooth_bound < 2:
            raise ValueError(f"certificate: smooth_bound must be >= 2, got {self.smooth_bound}")
        if self.gap_min < 1:
            raise ValueError(f"certificate: gap_min must be >= 1, got {self.gap_min}")

    def config_hash(self) -> str:
        """Hash of the fields that determine the mathematical output.

        Paths and worker count are deliberately excluded: they affect where
        results land and how fast, never what they are.
        """
        payload = json.dumps(
            {
                "q_max": self.q_max,
                "gap_min": self.gap_min,
                "windows": [list(w) for w in self.windows],
                "smooth_bound": self.smooth_bound,
                "gap_cap": self.gap_cap,
                "window_len": self.window_len,
                "segment_size": self.segment_size,
            },
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode()).hexdigest()


@dataclass(frozen=True, slots=True)
class CoverageResult:
    ok: bool
    placements: dict[int, Optional[Window]]

    def __bool__(self) -> bool:
        return self.ok


def coverage_check(
    gap_cap: int, window_len: int, windows: tuple[Window, ...]
) -> CoverageResult:
    """Do the windows rule out every placement of a smooth run inside a gap?

    A hypothetical run of window_len consecutive smooth integers starts at
    z + 1 where z - q ranges over [0, gap_cap - window_len - 1] for the gap
    prime q.  Placement s is covered by window [a, b] when the window sits
    inside the run: a >= s + 1 and b <= s + window_len.
    """
    placements: dict[int, Optional[Window]] = {}
    ok = True
    for s in range(0, gap_cap - window_len):
        hit = next(
            (w for w in windows if w[0] >= s + 1 and w[1] <= s + window_len), None
        )
        placements[s] = hit
        if hit is None:
            ok = False
    return CoverageResult(ok, placements)


@dataclass(frozen=True, slots=True)
class WindowRefutation:
    q: int
    window: Window
    witness_offset: int
    witness_prime: int


def refute_window(q: int, window: Window, bound: int) -> Optional[WindowRefutation]:
    """First element of q+a .. q+b with a prime factor above bound, or None.

    The witness is re-verified on emission: it must divide its element,
    be prime, and exceed the bound.
    """
    a, b = window
    for offset in range(a, b + 1):
        value = q + offset
        if value < 2:
            continue
        split = arith.smooth_split(value, bound)
        if split.cofactor > 1:
            prime = arith.prime_factor_above(value, bound)
            if prime is None or value % prime or prime <= bound or not arith.is_prime(prime):
                raise AssertionError(f"witness extraction failed for {value}")
            return WindowRefutation(q, window, offset, prime)
    return None


@dataclass(frozen=True, slots=True)
class CertificateReport:
    config: CertificateConfig
    coverage_ok: bool
    gap_prime_count: int
    refuted: dict[str, int]
    failures: tuple[tuple[int, Window], ...]
    gap_cap_violations: tuple[tuple[int, int], ...]
    segments_done: int
    segments_total: int
    complete: bool
    wall_time: float

    def to_json(self, include_timing: bool = False, version: Optional[str] = None) -> str:
        """Canonical JSON. Timing is opt-in so reruns stay byte-identical."""
        payload: dict = {}
        if version is not None:
            payload["version"] = version
        payload.update(
            {
                "config": {
                    "q_max": self.config.q_max,
                    "gap_min": self.config.gap_min,
                    "windows": [list(w) for w in self.config.windows],
                    "smooth_bound": self.config.smooth_bound,
                    "gap_cap": self.config.gap_cap,
                    "window_len": self.config.window_len,
                    "segment_size": self.config.segment_size,
                },
                "config_hash": self.config.config_hash(),
                "coverage_ok": self.coverage_ok,
                "gap_prime_count": self.gap_prime_count,
                "refuted": self.refuted,
                "failures": [[q, list(w)] for q, w in self.failures],
                "gap_cap_violations": [list(v) for v in self.gap_cap_violations],
                "segments_done": self.segments_done,
                "segments_total": self.segments_total,
                "complete": self.complete,
            }
        )
        if include_timing:
            payload["wall_time_s"] = round(self.wall_time, 3)
        return json.dumps(payload, separators=(",", ":"))


# ---------------------------------------------------------------------------
# checkpointing

_CHECKPOINT_SCHEMA: dict[str, type] = {
    "config_hash": str,
    "completed_hi": int,
    "gap_prime_count": int,
    "failures": list,
    "segments_done": int,
    "refuted": dict,
    "gap_cap_violations": list,
    "witness_bytes": int,
}


def checkpoint_save(path: str, state: dict) -> None:
    """Write-temp-then-rename so a crash never leaves a torn checkpoint."""
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(state, fh, separators=(",", ":"))
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def checkpoint_load(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        state = json.load(fh)
    for name, kind in _CHECKPOINT_SCHEMA.items():
        if name not in state:
            raise ValueError(f"checkpoint missing field: {name}")
        if not isinstance(state[name], kind):
            raise ValueError(f"checkpoint field has wrong type: {name}")
    return state


def checkpoint_roundtrip(state: dict) -> dict:
    """Serialize and reparse a checkpoint state, verifying nothing drifts."""
    text = json.dumps(state, separators=(",", ":"))
    back = json.loads(text)
    if back != state:
        raise ValueError("checkpoint state does not survive a JSON round trip")
    for name, kind in _CHECKPOINT_SCHEMA.items():
        if name not in back:
            raise ValueError(f"checkpoint missing field: {name}")
        if not isinstance(back[name], kind):
            raise ValueError(f"checkpoint field has wrong type: {name}")
    return back


def _fresh_state(config_hash: str) -> dict:
    return {
        "config_hash": config_hash,
        "completed_hi": 2,
        "gap_prime_count": 0,
        "failures": [],
        "segments_done": 0,
        "refuted": {},
        "gap_cap_violations": [],
        "witness_bytes": 0,
    }


# ---------------------------------------------------------------------------
# the run itself

def _certificate_job(
    args: tuple[int, int, int, int, tuple[Window, ...], int]
) -> tuple[int, list]:
    """One segment: sieve gap events and attack each in every window."""
    idx, slo, shi, gap_min, windows, bound = args
    ps, gaps, _ = _segment_gap_events(slo, shi, gap_min)
    out = []
    for q, gap in zip(ps.tolist(), gaps.tolist()):
        hits = []
        for w in windows:
            r = refute_window(q, w, bound)
            hits.append(None if r is None else (r.witness_offset, r.witness_prime))
        out.append((q, gap, hits))
    return idx, out


def run(config: CertificateConfig, stop_after_segments: Optional[int] = None) -> CertificateReport:
    """Execute the certificate scan under config; resumable via checkpoint.

    stop_after_segments is an operational hook (used by tests and long-run
    babysitting) that ends the run early with complete=False; resuming from
    the checkpoint finishes it with output identical to an uninterrupted run.
    """
    started = time.monotonic()
    cov = coverage_check(config.gap_cap, config.window_len, config.windows)
    if not cov.ok:
        uncovered = [s for s, w in cov.placements.items() if w is None]
        raise ValueError(
            f"certificate: windows leave placements uncovered (first: {uncovered[0]}); refusing to run"
        )

    cfg_hash = config.config_hash()
    state = _fresh_state(cfg_hash)
    if config.checkpoint_path and os.path.exists(config.checkpoint_path):
        state = checkpoint_load(config.checkpoint_path)
        if state["config_hash"] != cfg_hash:
            raise ValueError(
                "checkpoint belongs to a different configuration "
                f"({state['config_hash'][:12]}... != {cfg_hash[:12]}...)"
            )

    jobs = SegmentPlan(2, config.q_max + 1, config.segment_size).jobs()
    boundaries = {2} | {shi for _, _, shi in jobs}
    if state["completed_hi"] not in boundaries:
        raise ValueError(
            f"checkpoint field completed_hi = {state['completed_hi']} does not align with segmentation"
        )
    pending = [j for j in jobs if j[1] >= state["completed_hi"]]
    if stop_after_segments is not None:
        pending = pending[:stop_after_segments]

    witness_fh = None
    if config.witness_path:
        mode = "r+" if os.path.exists(config.witness_path) and state["witness_bytes"] else "w"
        witness_fh = open(config.witness_path, mode, encoding="utf-8")
        if mode == "r+":
            witness_fh.truncate(state["witness_bytes"])
            witness_fh.seek(state["witness_bytes"])

    refuted: dict[str, int] = dict(state["refuted"])
    for w in config.windows:
        refuted.setdefault(_window_key(w), 0)
    failures: list[tuple[int, Window]] = [(q, tuple(w)) for q, w in state["failures"]]
    violations: list[tuple[int, int]] = [tuple(v) for v in state["gap_cap_violations"]]
    gap_prime_count = state["gap_prime_count"]
    segments_done = state["segments_done"]

    job_args = [
        (idx, slo, shi, config.gap_min, config.windows, config.smooth_bound)
        for idx, slo, shi in pending
    ]

    def handle(result: tuple[int, list], shi: int) -> None:
        nonlocal gap_prime_count, segments_done
        _, events = result
        for q, gap, hits in events:
            gap_prime_count += 1
            if gap > config.gap_cap:
                violations.append((q, gap))
            for w, hit in zip(config.windows, hits):
                if hit is None:
                    failures.append((q, w))
                else:
                    refuted[_window_key(w)] += 1
                    if witness_fh is not None:
                        witness_fh.write(
                            json.dumps(
                                {
                                    "q": q,
                                    "window": _window_key(w),
                                    "offset": hit[0],
                                    "prime": hit[1],
                                },
                                separators=(",", ":"),
                            )
                            + "\n"
                        )
        segments_done += 1
        if witness_fh is not None:
            witness_fh.flush()
        if config.checkpoint_path:
            checkpoint_save(
                config.checkpoint_path,
                {
                    "config_hash": cfg_hash,
                    "completed_hi": shi,
                    "gap_prime_count": gap_prime_count,
                    "failures": [[q, list(w)] for q, w in failures],
                    "segments_done": segments_done,
                    "refuted": refuted,
                    "gap_cap_violations": [list(v) for v in violations],
                    "witness_bytes": witness_fh.tell() if witness_fh else 0,
                },
            )

    try:
        workers = config.workers
        if workers == 0:
            import multiprocessing

            workers = multiprocessing.cpu_count()
        if workers > 1 and len(job_args) > 1:
            import multiprocessing

            with multiprocessing.Pool(min(workers, len(job_args))) as pool:
                for result, (_, _, shi) in zip(
                    pool.imap(_certificate_job, job_args), pending
                ):
                    handle(result, shi)
        else:
            for args, (_, _, shi) in zip(job_args, pending):
                handle(_certificate_job(args), shi)
    finally:
        if witness_fh is not None:
            witness_fh.close()

    return CertificateReport(
        config=config,
        coverage_ok=True,
        gap_prime_count=gap_prime_count,
        refuted=refuted,
        failures=tuple(failures),
        gap_cap_violations=tuple(violations),
        segments_done=segments_done,
        segments_total=len(jobs),
        complete=segments_done == len(jobs),
        wall_time=time.monotonic() - started,
    )
