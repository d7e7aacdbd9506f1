"""Lowering to the modular ISA and discrete-event simulation of injections.

Two policies are simulated over the same lowered plan:

* sequential T injection (``tdg``): each rotation issues c (factory prep,
  inter-module measurement) pairs on a single factory, the first prep hidden
  behind the rotation's setup phase;
* prefetched Rz injection (``injeqt``): R pipelines concurrently build the
  rotation state and its doubling-angle correction states; the module
  consumes them with one inter-module measurement each, per a geometric
  correction chain. Freed pipelines retarget to the lowest unprepared angle;
  the factory patch stays occupied until its consuming measurement ends.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arch import ArchBundle, ISAKind, OutputKind, LayoutConfig
from .errors import CapacityError, ConfigError
from .pbc import PBCProgram


@dataclass(frozen=True)
class RotationRecord:
    pauli_letters: str
    modules: tuple[int, ...]
    setup_ops: tuple[ISAKind, ...]
    has_injection: bool


@dataclass
class ExecutionPlan:
    num_qubits: int
    num_modules: int
    rotations: list[RotationRecord]
    measurements: list[RotationRecord]

    @property
    def num_rotations(self) -> int:
        return len(self.rotations)


def _setup_ops_for(modules: tuple[int, ...]) -> tuple[ISAKind, ...]:
    k = len(modules)
    ops = [ISAKind.IN_MODULE] * k
    if k > 1:
        ops += [ISAKind.INTER_MODULE] * math.ceil(math.log2(k))
    return tuple(ops)


def lower(pbc: PBCProgram, layout: LayoutConfig) -> ExecutionPlan:
    """Assign qubits to modules in index order and emit per-rotation setup
    operations: one in-module measurement per touched module plus a binary
    GHZ fan-in of inter-module measurements."""
    m = layout.modules_for(pbc.num_qubits)
    if pbc.num_qubits > m * layout.module_capacity:
        raise CapacityError(
            f"{pbc.num_qubits} qubits exceed {m} x {layout.module_capacity}")

    def record(pauli, has_injection: bool) -> RotationRecord:
        modules = tuple(sorted({q // layout.module_capacity
                                for q in pauli.support()}))
        if not modules:
            modules = (0,)
        return RotationRecord(pauli.letters, modules,
                              _setup_ops_for(modules), has_injection)

    return ExecutionPlan(
        num_qubits=pbc.num_qubits,
        num_modules=m,
        rotations=[record(r.pauli, True) for r in pbc.rotations],
        measurements=[record(p, False) for p, _ in pbc.measurements],
    )


@dataclass(frozen=True)
class PrefetchConfig:
    r: int = 1
    overlap_setup: bool = True

    def __post_init__(self):
        if self.r < 1:
            raise ConfigError("R must be >= 1")


@dataclass(frozen=True)
class TimelineEvent:
    start: float
    duration: float
    kind: str
    resource: str
    rotation: int
    error_contrib: float


@dataclass
class Timeline:
    policy: str
    wall_clock: float
    total_error: float
    setup_error: float
    injection_error: float
    rotation_spans: list[float]
    chains: list[int] = field(default_factory=list)
    events: list[TimelineEvent] | None = None

    def dump_csv(self, path: str) -> None:
        if self.events is None:
            raise ValueError("timeline was simulated without event recording")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("start,duration,kind,resource,rotation,error_contrib\n")
            for ev in self.events:
                fh.write(f"{ev.start!r},{ev.duration!r},{ev.kind},"
                         f"{ev.resource},{ev.rotation},{ev.error_contrib!r}\n")


def sample_correction_chain(rng: np.random.Generator) -> int:
    """Number of injections for one rotation: geometric on {1,2,...},
    each correction demanded with probability 1/2."""
    return int(rng.geometric(0.5))


def _sample_attempts(rng: np.random.Generator | None, q: float, size: int) -> int:
    if q <= 0:
        return size
    if rng is None:
        raise ConfigError("stochastic factory requires an attempt rng")
    return int(rng.geometric(1 - q, size=size).sum())


class _Recorder:
    def __init__(self, enabled: bool):
        self.events: list[TimelineEvent] | None = [] if enabled else None

    def emit(self, start, duration, kind, resource, rotation, error):
        if self.events is not None:
            self.events.append(
                TimelineEvent(start, duration, kind, resource, rotation, error))


def _run_setup(rec: RotationRecord, t: float, idx: int, arch: ArchBundle,
               recorder: _Recorder, include_trivial: bool) -> tuple[float, float]:
    """Execute setup ops sequentially; returns (end_time, accumulated_error)."""
    err = 0.0
    next_module = iter(rec.modules)
    for op in rec.setup_ops:
        spec = arch.isa[op]
        if op is ISAKind.IN_MODULE:
            resource = f"module{next(next_module)}"
        elif op is ISAKind.INTER_MODULE:
            resource = "interconnect"
        else:
            resource = "module"
        counted = op in (ISAKind.IN_MODULE, ISAKind.INTER_MODULE) or include_trivial
        contrib = spec.error if counted else 0.0
        recorder.emit(t, spec.steps, op.value, resource, idx, contrib)
        t += spec.steps
        err += contrib
    return t, err


def simulate_tdg(plan: ExecutionPlan, arch: ArchBundle,
                 attempt_rng: np.random.Generator | None = None,
                 record_events: bool = False,
                 include_trivial: bool = False) -> Timeline:
    """Sequential T injection: c (prep, inter-module) pairs per rotation."""
    if arch.factory.output_kind is not OutputKind.T_STATE:
        raise ConfigError(
            f"factory {arch.factory.name!r} emits Rz states directly; "
            "the sequential T-injection policy is undefined for it")
    c = arch.synthesis.c
    f = arch.factory
    tau_c, eps_c = arch.tau_c, arch.eps_c
    recorder = _Recorder(record_events)
    t = 0.0
    setup_error = 0.0
    injection_error = 0.0
    spans: list[float] = []

    def prep_duration() -> float:
        return _sample_attempts(attempt_rng, f.discard_prob, 1) * f.attempt_steps

    for idx, rec in enumerate(plan.rotations):
        setup_start = t
        t, err = _run_setup(rec, t, idx, arch, recorder, include_trivial)
        setup_error += err
        setup_end = t
        module = f"module{rec.modules[0]}"
        # first prep overlaps this rotation's setup ops
        dur = prep_duration()
        recorder.emit(setup_start, dur, "FactoryPrep", "factory0", idx, f.error)
        end = max(setup_end, setup_start + dur) + tau_c
        recorder.emit(end - tau_c, tau_c, "ModuleInjection", module, idx, eps_c)
        for _ in range(c - 1):
            dur = prep_duration()
            recorder.emit(end, dur, "FactoryPrep", "factory0", idx, f.error)
            ready = end + dur
            recorder.emit(ready, tau_c, "ModuleInjection", module, idx, eps_c)
            end = ready + tau_c
        injection_error += c * (f.error + eps_c)
        spans.append(end - setup_end)
        t = end

    for idx, rec in enumerate(plan.measurements):
        t, err = _run_setup(rec, t, plan.num_rotations + idx, arch,
                            recorder, include_trivial)
        setup_error += err

    return Timeline("tdg", t, setup_error + injection_error, setup_error,
                    injection_error, spans, [], recorder.events)


def simulate_injeqt(plan: ExecutionPlan, arch: ArchBundle,
                    prefetch: PrefetchConfig,
                    chain_rng: np.random.Generator | None = None,
                    attempt_rng: np.random.Generator | None = None,
                    chains=None,
                    fixed_chain: int | None = None,
                    record_events: bool = False,
                    include_trivial: bool = False) -> Timeline:
    """Prefetched Rz injection with R concurrent preparation pipelines."""
    f = arch.factory
    two_level = f.output_kind is OutputKind.T_STATE
    c = arch.synthesis.c
    tau_c, eps_c = arch.tau_c, arch.eps_c
    tau_tech, eps_tech = arch.aux.tau_tech, arch.aux.eps_tech
    if two_level:
        state_error = c * (f.error + eps_tech)
    else:
        state_error = f.error
    r = prefetch.r
    recorder = _Recorder(record_events)

    def prep_duration() -> float:
        if two_level:
            base = _sample_attempts(attempt_rng, f.discard_prob, c) * f.attempt_steps
            return base + c * tau_tech
        return _sample_attempts(attempt_rng, f.discard_prob, 1) * f.attempt_steps

    def next_chain(j: int) -> int:
        if fixed_chain is not None:
            return fixed_chain
        if chains is not None:
            return int(chains[j])
        if chain_rng is None:
            raise ConfigError("no chain source: pass chain_rng, chains or fixed_chain")
        return sample_correction_chain(chain_rng)

    t = 0.0
    setup_error = 0.0
    injection_error = 0.0
    spans: list[float] = []
    used_chains: list[int] = []
    busy_until = [0.0] * r
    last_issue = 0.0

    for j, rec in enumerate(plan.rotations):
        setup_start = t
        t, err = _run_setup(rec, t, j, arch, recorder, include_trivial)
        setup_error += err
        setup_end = t
        module = f"module{rec.modules[0]}"
        if prefetch.overlap_setup:
            ps = last_issue if j > 0 else setup_start
        else:
            ps = setup_end

        k = next_chain(j)
        used_chains.append(k)
        # initial wave: angles 0..min(r,k)-1 on the earliest-free pipelines
        order = sorted(range(r), key=lambda p: (max(ps, busy_until[p]), p))
        ready: list[float] = []
        pipe_of: list[int] = []
        for a in range(min(r, k)):
            p = order[a]
            start = max(ps, busy_until[p])
            dur = prep_duration()
            recorder.emit(start, dur, "FactoryPrep", f"pipeline{p}", j,
                          state_error)
            ready.append(start + dur)
            pipe_of.append(p)
        next_angle = min(r, k)
        prev_end = setup_end
        issue = setup_end
        for i in range(k):
            issue = max(setup_end, ready[i], prev_end)
            end = issue + tau_c
            recorder.emit(issue, tau_c, "ModuleInjection", module, j, eps_c)
            p = pipe_of[i]
            busy_until[p] = end
            if next_angle < k:
                dur = prep_duration()
                recorder.emit(end, dur, "FactoryPrep", f"pipeline{p}", j,
                              state_error)
                ready.append(end + dur)
                pipe_of.append(p)
                next_angle += 1
            prev_end = end
        injection_error += k * (state_error + eps_c)
        spans.append(prev_end - setup_end)
        last_issue = issue
        t = prev_end

    for idx, rec in enumerate(plan.measurements):
        t, err = _run_setup(rec, t, plan.num_rotations + idx, arch,
                            recorder, include_trivial)
        setup_error += err

    return Timeline("injeqt", t, setup_error + injection_error, setup_error,
                    injection_error, spans, used_chains, recorder.events)
