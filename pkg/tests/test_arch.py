import json

import pytest

from qinject.arch import (ArchBundle, AuxInjectionModel, FactorySpec,
                          InjectionTech, InstructionSpec, ISAKind,
                          LayoutConfig, OutputKind, Policy, SynthesisModel,
                          aux_injection_cost, default_aux, default_factories,
                          default_isa, load_config, physical_qubits, tcount)
from qinject.errors import CapacityError, ConfigError, DomainError


class TestDefaults:
    def test_isa_table(self):
        isa = default_isa()
        assert isa[ISAKind.IDLE].steps == 8
        assert isa[ISAKind.AUTOMORPHISM].steps == 14
        assert isa[ISAKind.IN_MODULE].steps == 120
        assert isa[ISAKind.INTER_MODULE].steps == 120
        assert isa[ISAKind.IDLE].error == 10 ** -14.8
        assert isa[ISAKind.AUTOMORPHISM].error == 10 ** -12.2
        assert isa[ISAKind.IN_MODULE].error == 10 ** -9.0
        assert isa[ISAKind.INTER_MODULE].error == 10 ** -7.4

    def test_factory_table(self):
        f = default_factories()
        assert (f["distillation"].error, f["distillation"].expected_steps,
                f["distillation"].qubits) == (4.4e-8, 108.6, 810)
        assert (f["cultivation"].error, f["cultivation"].expected_steps,
                f["cultivation"].qubits) == (6e-15, 152.22, 241)
        assert (f["star"].error, f["star"].expected_steps,
                f["star"].qubits) == (3.2e-8, 16.45, 194)
        assert f["distillation"].output_kind is OutputKind.T_STATE
        assert f["star"].output_kind is OutputKind.RZ_STATE
        assert f["cultivation"].discard_prob == 0.25

    def test_attempt_steps(self):
        f = default_factories()["cultivation"]
        assert f.attempt_steps == pytest.approx(152.22 * 0.75)
        assert default_factories()["distillation"].attempt_steps == 108.6


class TestTcount:
    def test_values(self):
        assert tcount(1e-10) == 100
        assert tcount(1e-8) == 80
        assert tcount(0.9) == 1  # floor at one T gate

    def test_domain(self):
        for bad in (0.0, 1.0, -1e-3, 2.0):
            with pytest.raises(DomainError):
                tcount(bad)

    def test_synthesis_model(self):
        assert SynthesisModel().c == 100
        assert SynthesisModel(eps_synth=1e-8).c == 80
        assert SynthesisModel(c_override=42).c == 42
        with pytest.raises(ConfigError):
            _ = SynthesisModel(c_override=0).c


class TestAuxInjection:
    def test_tau_tech(self):
        surgery = AuxInjectionModel(InjectionTech.LATTICE_SURGERY, d_aux=7)
        transversal = AuxInjectionModel(InjectionTech.TRANSVERSAL, d_aux=7)
        assert surgery.tau_tech == 42
        assert transversal.tau_tech == 7

    def test_patch_qubits_default(self):
        aux = AuxInjectionModel(InjectionTech.TRANSVERSAL, d_aux=11)
        assert aux.effective_patch_qubits == 2 * 11 ** 2

    def test_patch_qubits_floor(self):
        with pytest.raises(ConfigError):
            AuxInjectionModel(InjectionTech.TRANSVERSAL, d_aux=7, patch_qubits=10)

    def test_default_aux_distance(self):
        f = default_factories()
        assert default_aux(f["distillation"]).d_aux == 7
        assert default_aux(f["cultivation"]).d_aux == 11
        assert default_aux(f["star"]).d_aux == 7

    def test_cost_tuple(self):
        aux = AuxInjectionModel(InjectionTech.TRANSVERSAL, d_aux=7)
        assert aux_injection_cost(aux) == (7, 1e-10)


class TestLayout:
    def test_modules_for(self):
        layout = LayoutConfig()
        assert layout.modules_for(1) == 1
        assert layout.modules_for(12) == 1
        assert layout.modules_for(13) == 2
        assert layout.modules_for(25) == 3

    def test_fixed_modules(self):
        layout = LayoutConfig(num_modules=2)
        assert layout.modules_for(3) == 2
        with pytest.raises(CapacityError):
            layout.modules_for(25)

    def test_validation(self):
        with pytest.raises(ConfigError):
            LayoutConfig(module_capacity=0)


class TestPhysicalQubits:
    def test_tdg(self):
        arch = ArchBundle()
        n = physical_qubits(arch.layout, arch.factory, arch.aux, 1,
                            Policy.TDG, 5)
        assert n == 288 + 100 + 100 + 810

    def test_injeqt_scales_with_r(self):
        arch = ArchBundle()
        n = physical_qubits(arch.layout, arch.factory, arch.aux, 3,
                            Policy.INJEQT, 5)
        assert n == 288 + 100 + 100 + 3 * (810 + 2 * 49)

    def test_rz_factory_needs_no_patch(self):
        arch = ArchBundle().with_factory("star")
        n = physical_qubits(arch.layout, arch.factory, arch.aux, 2,
                            Policy.INJEQT, 5)
        assert n == 288 + 100 + 100 + 2 * 194

    def test_rejects_bad_r(self):
        arch = ArchBundle()
        with pytest.raises(ConfigError):
            physical_qubits(arch.layout, arch.factory, arch.aux, 0,
                            Policy.INJEQT, 5)


class TestArchBundle:
    def test_properties(self):
        arch = ArchBundle()
        assert arch.tau_b == 120
        assert arch.tau_c == 120
        assert arch.eps_b == 10 ** -9.0
        assert arch.eps_c == 10 ** -7.4

    def test_default_factory_is_distillation(self):
        assert ArchBundle().factory.name == "distillation"

    def test_with_factory(self):
        arch = ArchBundle().with_factory("cultivation",
                                         InjectionTech.LATTICE_SURGERY)
        assert arch.factory.name == "cultivation"
        assert arch.aux.d_aux == 11
        assert arch.aux.tech is InjectionTech.LATTICE_SURGERY


class TestLoadConfig:
    def test_none_gives_defaults(self):
        arch = load_config(None)
        assert arch.factory.name == "distillation"
        assert arch.synthesis.c == 100

    def test_dict_overrides(self):
        arch = load_config({
            "isa": {"inter_module": {"steps": 150}},
            "factory": {"name": "star", "expected_steps": 20.0},
            "aux": {"tech": "surgery", "d_aux": 9, "eps_tech": 1e-9},
            "layout": {"module_capacity": 10, "num_modules": 4},
            "synthesis": {"eps_synth": 1e-8},
        })
        assert arch.tau_c == 150
        assert arch.eps_c == 10 ** -7.4  # untouched field keeps its default
        assert arch.factory.name == "star"
        assert arch.factory.expected_steps == 20.0
        assert arch.factory.error == 3.2e-8
        assert arch.aux.tech is InjectionTech.LATTICE_SURGERY
        assert arch.aux.d_aux == 9
        assert arch.aux.eps_tech == 1e-9
        assert arch.layout.num_modules == 4
        assert arch.synthesis.c == 80

    def test_file_source(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"factory": {"name": "cultivation"}}))
        assert load_config(str(path)).factory.name == "cultivation"

    def test_bad_factory_name(self):
        with pytest.raises(ConfigError):
            load_config({"factory": {"name": "teleport"}})

    def test_bad_tech(self):
        with pytest.raises(ConfigError):
            load_config({"aux": {"tech": "psychic"}})

    def test_non_object_root(self):
        with pytest.raises(ConfigError):
            load_config([1, 2])  # type: ignore[arg-type]


class TestValidation:
    def test_instruction_spec(self):
        with pytest.raises(ConfigError):
            InstructionSpec(ISAKind.IDLE, 0, 1e-9)
        with pytest.raises(ConfigError):
            InstructionSpec(ISAKind.IDLE, 8, 1.5)

    def test_factory_spec(self):
        with pytest.raises(ConfigError):
            FactorySpec("f", OutputKind.T_STATE, 1e-9, 10, 10, 1.0)
        with pytest.raises(ConfigError):
            FactorySpec("f", OutputKind.T_STATE, 1e-9, 0, 10, 0.0)
