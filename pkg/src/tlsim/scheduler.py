"""Interaction-class scheduling of knowledge transfers and the non-rush-hour policy."""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, replace

from .costmodel import InteractionClass, OverheadParams, compute_overhead
from .errors import NoFutureWindow, WrongClass
from .governance import Pipeline

HOUR = 3600.0


@dataclass(frozen=True)
class Schedule:
    """Sorted, non-overlapping ``[start, end)`` dispatch windows in seconds."""

    windows: tuple[tuple[float, float], ...]

    def __post_init__(self):
        windows = tuple((float(s), float(e)) for s, e in self.windows)
        object.__setattr__(self, "windows", windows)
        for s, e in windows:
            if not e > s:
                raise ValueError(f"window [{s}, {e}) must have end > start")
        for (s0, e0), (s1, _) in zip(windows, windows[1:]):
            if s1 < e0:
                raise ValueError(f"windows [{s0}, {e0}) and [{s1}, ...) overlap or are unsorted")

    def contains(self, t: float) -> bool:
        return any(s <= t < e for s, e in self.windows)

    def earliest_dispatch(self, t: float) -> float:
        """``t`` itself when inside a window, else the next window start."""
        for s, e in self.windows:
            if s <= t < e:
                return t
            if s >= t:
                return s
        raise NoFutureWindow(f"no schedule window at or after t={t}")


@dataclass(frozen=True)
class RushProfile:
    """Periodic step function of load multipliers (hourly slots over a day by default)."""

    slots: tuple[float, ...]
    slot_seconds: float = HOUR

    def __post_init__(self):
        object.__setattr__(self, "slots", tuple(float(x) for x in self.slots))
        if not self.slots:
            raise ValueError("rush profile needs at least one slot")
        if any(not (x >= 0 and math.isfinite(x)) for x in self.slots):
            raise ValueError("rush multipliers must be finite and >= 0")
        if not self.slot_seconds > 0:
            raise ValueError("slot_seconds must be > 0")

    def __call__(self, t: float) -> float:
        return self.slots[int(math.floor(t / self.slot_seconds)) % len(self.slots)]

    def breakpoints(self, start: float, end: float) -> list[float]:
        """Slot boundaries strictly inside ``(start, end)``."""
        k = math.floor(start / self.slot_seconds) + 1
        points = []
        while k * self.slot_seconds < end:
            points.append(k * self.slot_seconds)
            k += 1
        return points

    @classmethod
    def combine_max(cls, profiles: Iterable["RushProfile"]) -> "RushProfile | None":
        profiles = list(profiles)
        if not profiles:
            return None
        width = profiles[0].slot_seconds
        n = math.lcm(*(len(p.slots) for p in profiles))
        if any(p.slot_seconds != width for p in profiles):
            raise ValueError("cannot combine profiles with different slot widths")
        return cls(tuple(max(p.slots[i % len(p.slots)] for p in profiles) for i in range(n)), width)


@dataclass(frozen=True)
class TransferJob:
    pipeline: Pipeline
    trigger_time: float
    dispatch_time: float
    payload_bits: int
    theta: float
    schedule: Schedule | None = None

    def __post_init__(self):
        if self.dispatch_time < self.trigger_time:
            raise ValueError("a job cannot dispatch before its trigger")
        if self.payload_bits <= 0:
            raise ValueError("payload_bits must be > 0")

    @property
    def sort_key(self) -> tuple[float, str, str]:
        return (self.dispatch_time, self.pipeline.source, self.pipeline.target)


@dataclass(frozen=True)
class Pending:
    pipeline: Pipeline
    request_time: float


def job_overhead(pipeline: Pipeline, params: OverheadParams, rush: RushProfile | None, t: float) -> float:
    return compute_overhead(
        pipeline.required_bandwidth,
        pipeline.delay_bound,
        pipeline.cls,
        pipeline.security_level,
        params,
        None if rush is None else rush(t),
    )


def sort_jobs(jobs: Iterable[TransferJob]) -> list[TransferJob]:
    return sorted(jobs, key=lambda j: j.sort_key)


class Scheduler:
    """Turns knowledge updates and demand requests into transfer jobs.

    One instance per simulation run; it keeps source availability and the
    FIFO queues of pending on-demand requests.
    """

    def __init__(
        self,
        params: OverheadParams,
        schedules: Mapping[tuple[str, str], Schedule] | None = None,
        rush: Mapping[tuple[str, str], RushProfile | None] | None = None,
        params_overrides: Mapping[tuple[str, str], OverheadParams] | None = None,
    ):
        self.params = params
        self.schedules = dict(schedules or {})
        self.rush = dict(rush or {})
        self.params_overrides = dict(params_overrides or {})
        self.last_update: dict[str, float] = {}
        self.pending: dict[tuple[str, str], deque[float]] = {}

    def params_for(self, pipeline: Pipeline) -> OverheadParams:
        return self.params_overrides.get(pipeline.key, self.params)

    def make_job(self, pipeline: Pipeline, trigger: float, dispatch: float) -> TransferJob:
        theta = job_overhead(pipeline, self.params_for(pipeline), self.rush.get(pipeline.key), dispatch)
        return TransferJob(pipeline, trigger, dispatch, pipeline.payload_bits, theta, self.schedules.get(pipeline.key))

    def on_knowledge_update(self, source: str, t: float, pipelines: Sequence[Pipeline]) -> list[TransferJob]:
        """Jobs released by a new source update.

        Real-time pipelines dispatch at ``t``; scheduled ones at their next
        window. On-demand pipelines only become available, which releases any
        requests already waiting on them.
        """
        self.last_update[source] = t
        jobs = []
        for pipe in pipelines:
            if pipe.source != source:
                raise ValueError(f"pipeline {pipe.key} does not originate at {source!r}")
            if pipe.cls is InteractionClass.REAL_TIME:
                jobs.append(self.make_job(pipe, t, t))
            elif pipe.cls is InteractionClass.NON_REAL_TIME:
                schedule = self.schedules.get(pipe.key)
                if schedule is None:
                    raise ValueError(f"non-real-time pipeline {pipe.key} has no schedule")
                jobs.append(self.make_job(pipe, t, schedule.earliest_dispatch(t)))
            else:
                queue = self.pending.get(pipe.key)
                while queue:
                    jobs.append(self.make_job(pipe, queue.popleft(), t))
        return sort_jobs(jobs)

    def on_demand_request(self, target: str, t: float, pipeline: Pipeline) -> TransferJob | Pending:
        if pipeline.cls is not InteractionClass.ON_DEMAND:
            raise WrongClass(f"pipeline {pipeline.key} is {pipeline.cls.value}, not OnDemand")
        if pipeline.target != target:
            raise ValueError(f"pipeline {pipeline.key} does not serve {target!r}")
        if pipeline.source in self.last_update:
            return self.make_job(pipeline, t, t)
        self.pending.setdefault(pipeline.key, deque()).append(t)
        return Pending(pipeline, t)


def _candidate_instants(job: TransferJob, rush_profile, horizon: float | None) -> list[float]:
    points = []
    for s, e in job.schedule.windows:
        lo = max(s, job.trigger_time)
        if lo >= e:
            continue
        points.append(lo)
        if hasattr(rush_profile, "breakpoints"):
            points.extend(rush_profile.breakpoints(lo, e))
    if horizon is not None:
        points = [p for p in points if p <= horizon]
    return points


def plan_non_rush(
    jobs: Iterable[TransferJob],
    rush_profile,
    params: OverheadParams,
    horizon: float | None = None,
) -> list[TransferJob]:
    """Move each scheduled job to its cheapest admissible instant.

    Candidates are the job's window instants at or after its trigger; the
    class cost is evaluated under ``rush_profile`` and the earliest minimiser
    wins. Planning is greedy per job and never raises a job's overhead.
    ``rush_profile`` is any ``time -> multiplier`` callable; step profiles
    exposing ``breakpoints`` are searched exactly.
    """
    planned = []
    for job in jobs:
        if job.pipeline.cls is not InteractionClass.NON_REAL_TIME or job.schedule is None:
            raise WrongClass(f"job for {job.pipeline.key} is not a scheduled non-real-time job")
        current = job_overhead(job.pipeline, params, rush_profile, job.dispatch_time)
        best_t, best_theta = job.dispatch_time, current
        for t in sorted(set(_candidate_instants(job, rush_profile, horizon))):
            theta = job_overhead(job.pipeline, params, rush_profile, t)
            if theta < best_theta or (theta == best_theta and t < best_t):
                best_t, best_theta = t, theta
        planned.append(replace(job, dispatch_time=best_t, theta=best_theta))
    return sort_jobs(planned)
