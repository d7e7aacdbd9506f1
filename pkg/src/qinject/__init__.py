"""Compiler and cost simulator for magic-state injection policies on
extractor-based fault-tolerant architectures."""

from .analytics import AnalyticReport, analytic, rz_viability
from .arch import (ArchBundle, AuxInjectionModel, FactorySpec, InjectionTech,
                   InstructionSpec, ISAKind, LayoutConfig, OutputKind, Policy,
                   SynthesisModel, aux_injection_cost, default_factories,
                   default_isa, load_config, physical_qubits, tcount)
from .engine import (ExecutionPlan, PrefetchConfig, Timeline, TimelineEvent,
                     lower, sample_correction_chain, simulate_injeqt,
                     simulate_tdg)
from .frontend import Circuit, Gate, GateKind, parse_qasm, parse_qasm_file
from .harness import (CompareResult, SweepResult, TrialMetrics, compare,
                      run_trials, sweep_r)
from .pauli import PauliString
from .pbc import PauliRotation, PBCProgram, compile_to_pbc, conjugate

__all__ = [
    "AnalyticReport", "analytic", "rz_viability",
    "ArchBundle", "AuxInjectionModel", "FactorySpec", "InjectionTech",
    "InstructionSpec", "ISAKind", "LayoutConfig", "OutputKind", "Policy",
    "SynthesisModel", "aux_injection_cost", "default_factories",
    "default_isa", "load_config", "physical_qubits", "tcount",
    "ExecutionPlan", "PrefetchConfig", "Timeline", "TimelineEvent",
    "lower", "sample_correction_chain", "simulate_injeqt", "simulate_tdg",
    "Circuit", "Gate", "GateKind", "parse_qasm", "parse_qasm_file",
    "CompareResult", "SweepResult", "TrialMetrics", "compare",
    "run_trials", "sweep_r",
    "PauliString", "PauliRotation", "PBCProgram", "compile_to_pbc",
    "conjugate",
]

__version__ = "0.1.0"
