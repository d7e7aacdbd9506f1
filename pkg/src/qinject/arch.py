"""Architecture constants and cost models.

Holds the modular-ISA instruction cost table, the factory parameter table,
the synthesis T-count model, the auxiliary-code injection technology costs
and the physical-qubit layout accounting. All defaults are overridable via
a JSON config (see load_config).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from enum import Enum

from .errors import ConfigError, DomainError


class ISAKind(Enum):
    IDLE = "idle"
    AUTOMORPHISM = "automorphism"
    IN_MODULE = "in_module"
    INTER_MODULE = "inter_module"


@dataclass(frozen=True)
class InstructionSpec:
    kind: ISAKind
    steps: float
    error: float

    def __post_init__(self):
        if self.steps <= 0:
            raise ConfigError(f"{self.kind.value}: steps must be > 0")
        if not 0 < self.error < 1:
            raise ConfigError(f"{self.kind.value}: error must be in (0,1)")


def default_isa() -> dict[ISAKind, InstructionSpec]:
    """Central-value instruction costs for the modular extractor ISA."""
    return {
        ISAKind.IDLE: InstructionSpec(ISAKind.IDLE, 8, 10 ** -14.8),
        ISAKind.AUTOMORPHISM: InstructionSpec(ISAKind.AUTOMORPHISM, 14, 10 ** -12.2),
        ISAKind.IN_MODULE: InstructionSpec(ISAKind.IN_MODULE, 120, 10 ** -9.0),
        ISAKind.INTER_MODULE: InstructionSpec(ISAKind.INTER_MODULE, 120, 10 ** -7.4),
    }


class OutputKind(Enum):
    T_STATE = "t"
    RZ_STATE = "rz"


@dataclass(frozen=True)
class FactorySpec:
    name: str
    output_kind: OutputKind
    error: float
    expected_steps: float
    qubits: int
    discard_prob: float

    def __post_init__(self):
        if not 0 <= self.discard_prob < 1:
            raise ConfigError("discard_prob must be in [0,1)")
        if self.expected_steps <= 0 or self.qubits <= 0:
            raise ConfigError("expected_steps and qubits must be > 0")

    @property
    def attempt_steps(self) -> float:
        """Per-attempt time such that geometric retries give expected_steps."""
        return self.expected_steps * (1 - self.discard_prob)


# Distillation discards (~5.5e-3) are negligible and modeled deterministic;
# cultivation and STAR use the quoted worst-case 25% discard rate.
def default_factories() -> dict[str, FactorySpec]:
    return {
        "distillation": FactorySpec("distillation", OutputKind.T_STATE,
                                    4.4e-8, 108.6, 810, 0.0),
        "cultivation": FactorySpec("cultivation", OutputKind.T_STATE,
                                   6e-15, 152.22, 241, 0.25),
        "star": FactorySpec("star", OutputKind.RZ_STATE,
                            3.2e-8, 16.45, 194, 0.25),
    }


def tcount(eps_synth: float) -> int:
    """T gates per rotation at synthesis precision eps_synth."""
    if not 0 < eps_synth < 1:
        raise DomainError(f"eps_synth must be in (0,1), got {eps_synth}")
    return max(1, math.ceil(-10 * math.log10(eps_synth)))


@dataclass(frozen=True)
class SynthesisModel:
    eps_synth: float = 1e-10
    c_override: int | None = None

    @property
    def c(self) -> int:
        if self.c_override is not None:
            if self.c_override < 1:
                raise ConfigError("c must be >= 1")
            return self.c_override
        return tcount(self.eps_synth)


class InjectionTech(Enum):
    LATTICE_SURGERY = "surgery"
    TRANSVERSAL = "transversal"


# default auxiliary surface-code distance per base factory
_DEFAULT_D_AUX = {"distillation": 7, "cultivation": 11, "star": 7}


@dataclass(frozen=True)
class AuxInjectionModel:
    tech: InjectionTech
    d_aux: int
    s: int = 6
    eps_tech: float = 1e-10
    patch_qubits: int | None = None
    step_scale: float = 1.0

    def __post_init__(self):
        if self.d_aux < 1 or self.s < 1:
            raise ConfigError("d_aux and s must be >= 1")
        if self.effective_patch_qubits < self.d_aux ** 2:
            raise ConfigError("patch_qubits must be >= d_aux^2")

    @property
    def effective_patch_qubits(self) -> int:
        # data + syndrome ancilla
        return self.patch_qubits if self.patch_qubits is not None else 2 * self.d_aux ** 2

    @property
    def tau_tech(self) -> float:
        if self.tech is InjectionTech.LATTICE_SURGERY:
            return self.d_aux * self.s * self.step_scale
        return (self.s + 1) * self.step_scale


def default_aux(factory: FactorySpec,
                tech: InjectionTech = InjectionTech.TRANSVERSAL) -> AuxInjectionModel:
    return AuxInjectionModel(tech=tech, d_aux=_DEFAULT_D_AUX.get(factory.name, 7))


def aux_injection_cost(model: AuxInjectionModel) -> tuple[float, float]:
    """(steps, error) per auxiliary-code injection."""
    return model.tau_tech, model.eps_tech


@dataclass(frozen=True)
class LayoutConfig:
    module_capacity: int = 12
    module_qubits: int = 288
    adapter_qubits: int = 100
    lpu_qubits: int = 100
    num_modules: int | None = None  # fixed module count, else derived

    def __post_init__(self):
        if min(self.module_capacity, self.module_qubits,
               self.adapter_qubits, self.lpu_qubits) <= 0:
            raise ConfigError("layout qubit constants must be > 0")

    def modules_for(self, num_logical: int) -> int:
        derived = max(1, math.ceil(num_logical / self.module_capacity))
        if self.num_modules is not None:
            if num_logical > self.num_modules * self.module_capacity:
                from .errors import CapacityError
                raise CapacityError(
                    f"{num_logical} logical qubits exceed "
                    f"{self.num_modules} modules x {self.module_capacity}")
            return self.num_modules
        return derived


class Policy(Enum):
    TDG = "tdg"
    INJEQT = "injeqt"


def physical_qubits(layout: LayoutConfig, factory: FactorySpec,
                    aux: AuxInjectionModel, r: int, policy: Policy,
                    num_logical: int) -> int:
    """Total device qubits: modules + adapters + LPUs + factories (+ patches).

    Each 2-level pipeline owns one base factory; direct-Rz factories need no
    auxiliary patch.
    """
    if policy is Policy.INJEQT and r < 1:
        raise ConfigError("R must be >= 1 for the prefetched policy")
    m = layout.modules_for(num_logical)
    total = m * layout.module_qubits + layout.adapter_qubits + layout.lpu_qubits
    if policy is Policy.TDG:
        return total + factory.qubits
    total += factory.qubits * r
    if factory.output_kind is OutputKind.T_STATE:
        total += r * aux.effective_patch_qubits
    return total


@dataclass(frozen=True)
class ArchBundle:
    """Immutable bundle of every cost model a simulation needs."""

    isa: dict[ISAKind, InstructionSpec] = field(default_factory=default_isa)
    factory: FactorySpec = field(
        default_factory=lambda: default_factories()["distillation"])
    aux: AuxInjectionModel = None  # type: ignore[assignment]
    layout: LayoutConfig = field(default_factory=LayoutConfig)
    synthesis: SynthesisModel = field(default_factory=SynthesisModel)

    def __post_init__(self):
        if self.aux is None:
            object.__setattr__(self, "aux", default_aux(self.factory))

    @property
    def tau_b(self) -> float:
        return self.isa[ISAKind.IN_MODULE].steps

    @property
    def tau_c(self) -> float:
        return self.isa[ISAKind.INTER_MODULE].steps

    @property
    def eps_b(self) -> float:
        return self.isa[ISAKind.IN_MODULE].error

    @property
    def eps_c(self) -> float:
        return self.isa[ISAKind.INTER_MODULE].error

    def with_factory(self, name: str,
                     tech: InjectionTech | None = None) -> "ArchBundle":
        factory = default_factories()[name]
        aux = default_aux(factory, tech if tech is not None else self.aux.tech)
        return replace(self, factory=factory, aux=aux)


# ---------------------------------------------------------------------------
# JSON config
# ---------------------------------------------------------------------------

_ISA_KEYS = {"idle": ISAKind.IDLE, "automorphism": ISAKind.AUTOMORPHISM,
             "in_module": ISAKind.IN_MODULE, "inter_module": ISAKind.INTER_MODULE}


def load_config(source: str | dict | None = None) -> ArchBundle:
    """Build an ArchBundle from a JSON file path or dict; missing keys
    take the documented defaults."""
    if source is None:
        return ArchBundle()
    if isinstance(source, str):
        with open(source, encoding="utf-8") as fh:
            data = json.load(fh)
    else:
        data = source
    if not isinstance(data, dict):
        raise ConfigError("config root must be a JSON object")

    isa = default_isa()
    for key, kind in _ISA_KEYS.items():
        entry = data.get("isa", {}).get(key)
        if entry:
            base = isa[kind]
            isa[kind] = InstructionSpec(kind,
                                        entry.get("steps", base.steps),
                                        entry.get("error", base.error))

    fdata = data.get("factory", {})
    fname = fdata.get("name", "distillation")
    factories = default_factories()
    if fname not in factories:
        raise ConfigError(f"unknown factory {fname!r}")
    base = factories[fname]
    factory = FactorySpec(
        fname,
        base.output_kind,
        fdata.get("error", base.error),
        fdata.get("expected_steps", base.expected_steps),
        fdata.get("qubits", base.qubits),
        fdata.get("discard_prob", base.discard_prob),
    )

    adata = data.get("aux", {})
    tech_name = adata.get("tech", "transversal")
    try:
        tech = InjectionTech(tech_name)
    except ValueError:
        raise ConfigError(f"unknown injection tech {tech_name!r}") from None
    aux = AuxInjectionModel(
        tech=tech,
        d_aux=adata.get("d_aux", _DEFAULT_D_AUX.get(fname, 7)),
        s=adata.get("s", 6),
        eps_tech=adata.get("eps_tech", 1e-10),
        patch_qubits=adata.get("patch_qubits"),
        step_scale=adata.get("step_scale", 1.0),
    )

    ldata = data.get("layout", {})
    layout = LayoutConfig(
        module_capacity=ldata.get("module_capacity", 12),
        module_qubits=ldata.get("module_qubits", 288),
        adapter_qubits=ldata.get("adapter_qubits", 100),
        lpu_qubits=ldata.get("lpu_qubits", 100),
        num_modules=ldata.get("num_modules"),
    )

    sdata = data.get("synthesis", {})
    synthesis = SynthesisModel(eps_synth=sdata.get("eps_synth", 1e-10),
                               c_override=sdata.get("c"))
    return ArchBundle(isa=isa, factory=factory, aux=aux,
                      layout=layout, synthesis=synthesis)
