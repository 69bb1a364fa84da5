"""Resumable batch verification over integer ranges.

Each task turns a headline claim into a range certificate: descent success
for every even number (couple search), a small-prime witness for every even
gap, a prime inside every square interval, and totient/primality agreement
for every parabolic candidate.

Progress lives in a line-delimited JSON checkpoint, one record per contiguous
verified subrange.  The file is only ever replaced whole (write a sibling
temp file, fsync, rename), so a killed run leaves the previous parseable
state behind.  Work is split into fixed-size chunks and merged back in
ascending order before anything is written, which keeps the checkpoint
content independent of the worker count.
"""

from __future__ import annotations

import fcntl
import json
import os
import time
from array import array
from dataclasses import dataclass, field
from enum import Enum
from multiprocessing import get_context
from typing import Any, Iterable

from .goldbach import _ensure_flags
from .primes import DEFAULT_CONVENTION, PrimeConvention, _ensure_base_primes, is_prime
from .zn import totient

CHUNK_SIZE = 4096
SCHEMA_VERSION = 1


class Task(Enum):
    GOLDBACH = "goldbach"
    PRE_POLIGNAC = "pre-polignac"
    LEGENDRE = "legendre"
    PARABOLIC = "parabolic"


# tasks whose instances are even numbers (sum targets and gaps)
_EVEN_TASKS = frozenset({Task.GOLDBACH, Task.PRE_POLIGNAC})

# how record statistics combine when subranges are concatenated
_STAT_MERGE: dict[Task, tuple[tuple[str, str, str | None], ...]] = {
    Task.GOLDBACH: (("max", "max_depth", "max_depth_at"),),
    Task.PRE_POLIGNAC: (("max", "max_witness", "max_witness_at"),),
    Task.LEGENDRE: (("max", "max_first_gap", "max_first_gap_at"),),
    Task.PARABOLIC: (("sum", "parabolic", None), ("max", "largest_parabolic_k", None)),
}


class CheckpointError(ValueError):
    """An untrustworthy checkpoint file; the message names the bad line."""

    def __init__(self, path: str, line_no: int, reason: str) -> None:
        super().__init__(f"{path}:{line_no}: {reason}")
        self.path = path
        self.line_no = line_no
        self.reason = reason


@dataclass(frozen=True)
class Checkpoint:
    """One contiguous subrange with its outcome and aggregate statistics."""

    task: Task
    convention: PrimeConvention
    lo: int
    hi: int
    status: str  # "verified" or "counterexample"
    stats: dict[str, int] = field(default_factory=dict)
    timestamp: str = ""
    witness: dict[str, Any] | None = None

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty range [{self.lo}, {self.hi}]")
        if self.status not in ("verified", "counterexample"):
            raise ValueError(f"unknown status {self.status!r}")
        if (self.status == "counterexample") != (self.witness is not None):
            raise ValueError("witness present iff status is counterexample")

    def to_json(self) -> str:
        record: dict[str, Any] = {
            "v": SCHEMA_VERSION,
            "task": self.task.value,
            "convention": self.convention.value,
            "lo": self.lo,
            "hi": self.hi,
            "status": self.status,
            "stats": self.stats,
            "ts": self.timestamp,
        }
        if self.witness is not None:
            record["witness"] = self.witness
        return json.dumps(record, sort_keys=True, separators=(",", ":"))


_REQUIRED_FIELDS = frozenset({"v", "task", "convention", "lo", "hi", "status", "stats", "ts"})


def load_checkpoints(path: str) -> list[Checkpoint]:
    """Parse a checkpoint file; a missing file is an empty history.

    Any defect (bad JSON, wrong schema, overlapping ranges) raises
    CheckpointError naming the offending line.
    """
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except FileNotFoundError:
        return []
    records: list[tuple[int, Checkpoint]] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            raise CheckpointError(path, line_no, "blank line")
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CheckpointError(path, line_no, f"invalid JSON: {exc.msg}") from None
        if not isinstance(obj, dict):
            raise CheckpointError(path, line_no, "expected a JSON object")
        missing = _REQUIRED_FIELDS - obj.keys()
        if missing:
            raise CheckpointError(path, line_no, f"missing field {sorted(missing)[0]!r}")
        unknown = obj.keys() - _REQUIRED_FIELDS - {"witness"}
        if unknown:
            raise CheckpointError(path, line_no, f"unknown field {sorted(unknown)[0]!r}")
        if obj["v"] != SCHEMA_VERSION:
            raise CheckpointError(path, line_no, f"unsupported schema version {obj['v']!r}")
        try:
            task = Task(obj["task"])
            conv = PrimeConvention(obj["convention"])
        except ValueError as exc:
            raise CheckpointError(path, line_no, str(exc)) from None
        lo, hi = obj["lo"], obj["hi"]
        if not isinstance(lo, int) or not isinstance(hi, int) or isinstance(lo, bool) or isinstance(hi, bool):
            raise CheckpointError(path, line_no, "lo/hi must be integers")
        if not isinstance(obj["stats"], dict):
            raise CheckpointError(path, line_no, "stats must be an object")
        try:
            cp = Checkpoint(
                task=task,
                convention=conv,
                lo=lo,
                hi=hi,
                status=obj["status"],
                stats=obj["stats"],
                timestamp=obj["ts"],
                witness=obj.get("witness"),
            )
        except ValueError as exc:
            raise CheckpointError(path, line_no, str(exc)) from None
        records.append((line_no, cp))
    # ranges for one task+convention must never overlap
    by_key: dict[tuple[str, str], list[tuple[int, Checkpoint]]] = {}
    for line_no, cp in records:
        by_key.setdefault((cp.task.value, cp.convention.value), []).append((line_no, cp))
    for group in by_key.values():
        group.sort(key=lambda item: item[1].lo)
        for (_, prev), (line_no, cur) in zip(group, group[1:]):
            if cur.lo <= prev.hi:
                raise CheckpointError(
                    path,
                    line_no,
                    f"range [{cur.lo}, {cur.hi}] overlaps [{prev.lo}, {prev.hi}]",
                )
    return [cp for _, cp in records]


def _order_key(cp: Checkpoint) -> tuple[str, str, int]:
    return (cp.task.value, cp.convention.value, cp.lo)


def _write_checkpoints(path: str, records: Iterable[Checkpoint]) -> None:
    """Replace the file atomically: temp sibling, fsync, rename."""
    tmp = path + ".tmp"
    payload = "".join(cp.to_json() + "\n" for cp in sorted(records, key=_order_key))
    with open(tmp, "w", encoding="utf-8") as handle:
        handle.write(payload)
        handle.flush()
        os.fsync(handle.fileno())
    os.replace(tmp, path)


def _step(task: Task) -> int:
    return 2 if task in _EVEN_TASKS else 1


def _domain_lo(task: Task, conv: PrimeConvention) -> int:
    if task in _EVEN_TASKS:
        # 2 = 1 + 1 and the gap-2 witness q = 1 both need the unit counted
        return 2 if conv is PrimeConvention.INCLUDE1 else 4
    return 1


def instance_count(task: Task, lo: int, hi: int) -> int:
    """Number of task instances in the aligned range [lo, hi]."""
    if hi < lo:
        return 0
    return (hi - lo) // _step(task) + 1


def _uncovered(lo: int, hi: int, covered: list[tuple[int, int]], step: int) -> list[tuple[int, int]]:
    """Maximal aligned subranges of [lo, hi] not touched by covered ranges."""

    def up(v: int) -> int:
        return v + v % 2 if step == 2 else v

    def down(v: int) -> int:
        return v - v % 2 if step == 2 else v

    out = []
    cur = lo
    for c_lo, c_hi in sorted(covered):
        if c_hi < cur or c_lo > hi:
            continue
        if c_lo > cur:
            out.append((cur, down(min(c_lo - 1, hi))))
        cur = max(cur, up(c_hi + 1))
        if cur > hi:
            break
    if cur <= hi:
        out.append((cur, hi))
    return [(a, b) for a, b in out if a <= b]


def _merge_stats(task: Task, acc: dict[str, int] | None, new: dict[str, int]) -> dict[str, int]:
    if acc is None:
        return dict(new)
    acc["instances"] += new["instances"]
    for kind, key, at_key in _STAT_MERGE[task]:
        if kind == "sum":
            acc[key] += new[key]
        elif new[key] > acc[key]:
            acc[key] = new[key]
            if at_key is not None:
                acc[at_key] = new[at_key]
    return acc


# ---------------------------------------------------------------------------
# per-task instance checkers
#
# Shared state is prepared in the parent before any fork, so worker processes
# inherit the tables copy-on-write and every chunk sees identical data.

_W_TASK: Task = Task.GOLDBACH
_W_CONV: PrimeConvention = DEFAULT_CONVENTION
_W_FLAGS: bytearray = bytearray()
_W_PREV: array = array("q", [0, 0])
_W_PRIMES: list[int] = []


def _prev_prime_table(hi: int) -> array:
    """prev[i] = largest prime <= i (unit excluded), as a compact array."""
    global _W_PREV
    if len(_W_PREV) > hi:
        return _W_PREV
    flags = _ensure_flags(hi + 1)
    arr = array("q", bytes(8 * (hi + 1)))
    last = 0
    for i in range(2, hi + 1):
        if flags[i]:
            last = i
        arr[i] = last
    _W_PREV = arr
    return arr


def _prepare(task: Task, conv: PrimeConvention, hi: int) -> None:
    global _W_TASK, _W_CONV, _W_FLAGS, _W_PRIMES
    _W_TASK = task
    _W_CONV = conv
    if task is Task.GOLDBACH:
        _W_FLAGS = _ensure_flags(hi + 1)
        _prev_prime_table(hi)
    elif task is Task.PRE_POLIGNAC:
        _W_FLAGS = _ensure_flags(2 * hi + 2)
        _W_PRIMES = _ensure_base_primes(max(hi, 4))


def _check_goldbach(lo: int, hi: int) -> dict[str, Any]:
    flags = _W_FLAGS
    prev = _W_PREV
    include1 = _W_CONV is PrimeConvention.INCLUDE1
    stats = {"instances": 0, "max_depth": 0, "max_depth_at": 0}
    for two_n in range(lo, hi + 1, 2):
        if two_n == 2:  # domain check admitted it, so 1 counts: couple (1, 1)
            depth = 1
        else:
            p = prev[two_n - 1]
            depth = 1
            while True:
                rem = two_n - p
                if flags[rem] or (include1 and rem == 1):
                    break
                if p <= 2:
                    # last candidate under include1 is the unit itself
                    if include1 and flags[two_n - 1]:
                        depth += 1
                        break
                    witness = {"instance": two_n, "reason": "descent exhausted"}
                    return {"lo": lo, "hi": hi, "stats": stats, "witness": witness}
                p = prev[p - 1]
                depth += 1
        stats["instances"] += 1
        if depth > stats["max_depth"]:
            stats["max_depth"] = depth
            stats["max_depth_at"] = two_n
    return {"lo": lo, "hi": hi, "stats": stats, "witness": None}


def _check_pre_polignac(lo: int, hi: int) -> dict[str, Any]:
    flags = _W_FLAGS
    primes = _W_PRIMES
    include1 = _W_CONV is PrimeConvention.INCLUDE1
    stats = {"instances": 0, "max_witness": 0, "max_witness_at": 0}
    for gap in range(lo, hi + 1, 2):
        if include1 and flags[gap + 1]:
            w = 1
        else:
            w = 0
            for q in primes:
                if q >= gap:
                    break
                if flags[q + gap]:
                    w = q
                    break
            if not w:
                witness = {"instance": gap, "reason": "no prime witness below the gap"}
                return {"lo": lo, "hi": hi, "stats": stats, "witness": witness}
        stats["instances"] += 1
        if w > stats["max_witness"]:
            stats["max_witness"] = w
            stats["max_witness_at"] = gap
    return {"lo": lo, "hi": hi, "stats": stats, "witness": None}


def _check_legendre(lo: int, hi: int) -> dict[str, Any]:
    conv = _W_CONV
    stats = {"instances": 0, "max_first_gap": 0, "max_first_gap_at": 0}
    for n in range(lo, hi + 1):
        base = n * n
        found = -1
        # the upper endpoint (n+1)^2 is a square > 1, never prime, so the
        # interior scan decides the whole closed interval
        for x in range(base, base + 2 * n + 1):
            if is_prime(x, conv):
                found = x
                break
        if found < 0:
            witness = {"instance": n, "reason": "no prime in the square interval"}
            return {"lo": lo, "hi": hi, "stats": stats, "witness": witness}
        stats["instances"] += 1
        gap = found - base
        if gap > stats["max_first_gap"]:
            stats["max_first_gap"] = gap
            stats["max_first_gap_at"] = n
    return {"lo": lo, "hi": hi, "stats": stats, "witness": None}


def _check_parabolic(lo: int, hi: int) -> dict[str, Any]:
    conv = _W_CONV
    stats = {"instances": 0, "parabolic": 0, "largest_parabolic_k": 0}
    for k in range(lo, hi + 1):
        p = k * k + 1
        prime = is_prime(p, conv)
        tot_match = totient(p) == k * k
        if prime != tot_match:
            witness = {
                "instance": k,
                "reason": "primality and totient verdicts disagree",
                "prime": prime,
                "totient_match": tot_match,
            }
            return {"lo": lo, "hi": hi, "stats": stats, "witness": witness}
        stats["instances"] += 1
        if prime:
            stats["parabolic"] += 1
            stats["largest_parabolic_k"] = k
    return {"lo": lo, "hi": hi, "stats": stats, "witness": None}


_CHECKERS = {
    Task.GOLDBACH: _check_goldbach,
    Task.PRE_POLIGNAC: _check_pre_polignac,
    Task.LEGENDRE: _check_legendre,
    Task.PARABOLIC: _check_parabolic,
}


def _run_indexed(item: tuple[int, int, int]) -> tuple[int, dict[str, Any]]:
    idx, lo, hi = item
    return idx, _CHECKERS[_W_TASK](lo, hi)


# ---------------------------------------------------------------------------
# the run itself


@dataclass(frozen=True)
class RunSummary:
    task: Task
    convention: PrimeConvention
    lo: int
    hi: int
    verified: int
    skipped: int
    counterexamples: tuple[dict[str, Any], ...]
    stats: dict[str, int]
    complete: bool
    elapsed: float


def _now() -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())


def verify_range(
    task: Task,
    lo: int,
    hi: int,
    conv: PrimeConvention = DEFAULT_CONVENTION,
    checkpoint_path: str | os.PathLike[str] | None = None,
    worker_count: int = 1,
    *,
    chunk_size: int = CHUNK_SIZE,
    flush_every: int = 8,
) -> RunSummary:
    """Check every instance of [lo, hi] not already covered by the checkpoint.

    The checkpoint (when given) is extended atomically as ascending progress
    accumulates; rerunning over covered ground verifies nothing and skips
    everything.  A counterexample stops the run, is recorded terminally, and
    appears in the summary.
    """
    if lo > hi:
        raise ValueError(f"empty range [{lo}, {hi}]")
    if worker_count < 1:
        raise ValueError(f"worker_count must be positive, got {worker_count}")
    if chunk_size < 1:
        raise ValueError(f"chunk_size must be positive, got {chunk_size}")
    start = time.perf_counter()
    step = _step(task)
    if step == 2:
        lo += lo % 2
        hi -= hi % 2
    floor = _domain_lo(task, conv)
    if lo < floor:
        raise ValueError(
            f"{task.value} instances start at {floor} under {conv.value}, got {lo}"
        )

    def summary(verified: int, skipped: int, cx: tuple[dict[str, Any], ...],
                stats: dict[str, int], complete: bool) -> RunSummary:
        return RunSummary(
            task=task,
            convention=conv,
            lo=lo,
            hi=hi,
            verified=verified,
            skipped=skipped,
            counterexamples=cx,
            stats=stats,
            complete=complete,
            elapsed=time.perf_counter() - start,
        )

    if hi < lo:  # range held no instance of the right parity
        return summary(0, 0, (), {}, True)

    path = None if checkpoint_path is None else os.fspath(checkpoint_path)
    if path is None:
        return _execute(task, conv, lo, hi, step, None, [], worker_count,
                        chunk_size, flush_every, summary)
    lock_fd = os.open(path + ".lock", os.O_CREAT | os.O_RDWR, 0o644)
    try:
        fcntl.flock(lock_fd, fcntl.LOCK_EX)
        existing = load_checkpoints(path)
        mine = [cp for cp in existing if cp.task is task and cp.convention is conv]
        terminal = tuple(cp.witness for cp in mine if cp.status == "counterexample")
        if terminal:
            # the claim is already falsified for this task+convention
            return summary(0, 0, terminal, {}, False)
        return _execute(task, conv, lo, hi, step, path, existing, worker_count,
                        chunk_size, flush_every, summary)
    finally:
        fcntl.flock(lock_fd, fcntl.LOCK_UN)
        os.close(lock_fd)


def _execute(task, conv, lo, hi, step, path, existing, worker_count,
             chunk_size, flush_every, summary) -> RunSummary:
    mine = [cp for cp in existing if cp.task is task and cp.convention is conv]
    covered = [(cp.lo, cp.hi) for cp in mine]
    gaps = _uncovered(lo, hi, covered, step)
    total = instance_count(task, lo, hi)
    to_check = sum(instance_count(task, a, b) for a, b in gaps)
    skipped = total - to_check
    if not gaps:
        return summary(0, skipped, (), {}, True)

    descs: list[tuple[int, int, int]] = []  # (gap id, chunk lo, chunk hi)
    for gap_id, (g_lo, g_hi) in enumerate(gaps):
        count = instance_count(task, g_lo, g_hi)
        for i in range(0, count, chunk_size):
            c_lo = g_lo + i * step
            c_hi = min(g_lo + (i + chunk_size - 1) * step, g_hi)
            descs.append((gap_id, c_lo, c_hi))

    _prepare(task, conv, hi)
    ts = _now()
    closed: list[Checkpoint] = []
    open_rec: dict[str, Any] | None = None
    cx_record: Checkpoint | None = None
    run_stats: dict[str, int] | None = None
    verified = 0
    next_idx = 0
    since_flush = 0
    results: dict[int, dict[str, Any]] = {}

    def current_records() -> list[Checkpoint]:
        out = list(existing) + closed
        if open_rec is not None:
            out.append(Checkpoint(task, conv, open_rec["lo"], open_rec["hi"],
                                  "verified", dict(open_rec["stats"]), ts))
        if cx_record is not None:
            out.append(cx_record)
        return out

    def flush() -> None:
        nonlocal since_flush
        if path is not None:
            _write_checkpoints(path, current_records())
        since_flush = 0

    def advance() -> None:
        """Fold completed chunks, in ascending order, into open records."""
        nonlocal open_rec, cx_record, run_stats, verified, next_idx, since_flush
        while cx_record is None and next_idx < len(descs) and next_idx in results:
            gap_id, c_lo, c_hi = descs[next_idx]
            res = results.pop(next_idx)
            stats = res["stats"]
            run_stats = _merge_stats(task, run_stats, stats)
            verified += stats["instances"]
            prefix_hi = c_hi
            if res["witness"] is not None:
                bad = res["witness"]["instance"]
                prefix_hi = bad - step
            if stats["instances"] > 0:
                if open_rec is not None and open_rec["gap_id"] == gap_id:
                    open_rec["hi"] = prefix_hi
                    _merge_stats(task, open_rec["stats"], stats)
                else:
                    if open_rec is not None:
                        closed.append(Checkpoint(task, conv, open_rec["lo"], open_rec["hi"],
                                                 "verified", open_rec["stats"], ts))
                    open_rec = {"gap_id": gap_id, "lo": c_lo, "hi": prefix_hi,
                                "stats": dict(stats)}
            if res["witness"] is not None:
                bad = res["witness"]["instance"]
                cx_record = Checkpoint(task, conv, bad, bad, "counterexample",
                                       {}, ts, witness=res["witness"])
                break
            next_idx += 1
            since_flush += 1
            if since_flush >= flush_every:
                flush()

    if worker_count > 1 and len(descs) > 1:
        ctx = get_context("fork")
        items = [(idx, c_lo, c_hi) for idx, (_, c_lo, c_hi) in enumerate(descs)]
        with ctx.Pool(min(worker_count, len(descs))) as pool:
            for idx, res in pool.imap_unordered(_run_indexed, items):
                results[idx] = res
                advance()
                if cx_record is not None:
                    pool.terminate()
                    break
    else:
        for idx, (_, c_lo, c_hi) in enumerate(descs):
            results[idx] = _CHECKERS[task](c_lo, c_hi)
            advance()
            if cx_record is not None:
                break

    flush()
    witnesses = () if cx_record is None else (cx_record.witness,)
    complete = cx_record is None and next_idx == len(descs)
    return summary(verified, skipped, witnesses, run_stats or {}, complete)
