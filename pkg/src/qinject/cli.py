"""Command-line entry point: analyze / run / sweep / compare."""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

from . import arch as arch_mod
from .analytics import analytic
from .arch import ArchBundle, InjectionTech, Policy, default_aux, default_factories, load_config
from .engine import PrefetchConfig, lower, simulate_injeqt, simulate_tdg
from .errors import QinjectError
from .frontend import parse_qasm_file
from .harness import (compare, run_trials, sweep_r, write_results_csv,
                      write_summary_json)
from .pbc import compile_to_pbc

_TECHS = {"surgery": InjectionTech.LATTICE_SURGERY,
          "transversal": InjectionTech.TRANSVERSAL}


def _parse_r_range(text: str) -> range:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return range(int(lo), int(hi) + 1)
    r = int(text)
    return range(r, r + 1)


def _build_arch(args) -> ArchBundle:
    bundle = load_config(args.config) if getattr(args, "config", None) else ArchBundle()
    factory = getattr(args, "factory", None)
    if factory:
        bundle = bundle.with_factory(factory)
    tech = getattr(args, "tech", None)
    if tech:
        bundle = replace(bundle, aux=default_aux(bundle.factory, _TECHS[tech]))
    eps_synth = getattr(args, "eps_synth", None)
    if eps_synth is not None:
        bundle = replace(bundle,
                         synthesis=arch_mod.SynthesisModel(eps_synth=eps_synth))
    c = getattr(args, "c", None)
    if c is not None:
        bundle = replace(bundle, synthesis=arch_mod.SynthesisModel(
            eps_synth=bundle.synthesis.eps_synth, c_override=c))
    return bundle


def _add_common(p, circuit=True):
    if circuit:
        p.add_argument("--circuit", required=True, help="input .qasm file")
    p.add_argument("--config", help="architecture config JSON")
    p.add_argument("--factory", choices=sorted(default_factories()),
                   help="factory protocol (default distillation)")
    p.add_argument("--tech", choices=sorted(_TECHS),
                   help="auxiliary injection technology (default transversal)")
    p.add_argument("--eps-synth", type=float, dest="eps_synth",
                   help="rotation synthesis precision (default 1e-10)")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--no-overlap", action="store_true",
                   help="disable prefetching during the setup phase")
    p.add_argument("--merge", action="store_true",
                   help="merge adjacent same-string rotations")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qinject",
        description="Magic-state injection policy compiler and cost simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="print closed-form per-rotation costs")
    p.add_argument("--config", help="architecture config JSON")
    p.add_argument("--factory", choices=sorted(default_factories()))
    p.add_argument("--tech", choices=sorted(_TECHS))
    p.add_argument("--eps-synth", type=float, dest="eps_synth")
    p.add_argument("--c", type=int, help="override the synthesis T-count")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("run", help="simulate one policy on one circuit")
    _add_common(p)
    p.add_argument("--policy", choices=["tdg", "injeqt"], default="injeqt")
    p.add_argument("--r", type=int, default=1, help="number of pipelines")
    p.add_argument("--timeline-dump", dest="timeline_dump",
                   help="write a per-event timeline CSV to this path")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("sweep", help="sweep the pipeline count for both policies")
    _add_common(p)
    p.add_argument("--r", default="1..20", help="range a..b (default 1..20)")

    p = sub.add_parser("compare", help="baseline vs prefetched improvement table")
    _add_common(p)
    p.add_argument("--injeqt-factory", dest="injeqt_factory",
                   choices=sorted(default_factories()),
                   help="factory for the prefetched side (overrides --factory)")
    p.add_argument("--r", default="1..20", help="range a..b (default 1..20)")
    p.add_argument("--json", action="store_true")
    return parser


def _cmd_analyze(args) -> int:
    bundle = _build_arch(args)
    report = analytic(bundle)
    if args.json:
        print(json.dumps(report.as_dict(), indent=2, sort_keys=True))
        return 0
    print(f"factory: {bundle.factory.name}   tech: {bundle.aux.tech.value}   "
          f"c: {report.c}")
    for name in ("eps_t", "eps_rz", "eps_injeqt", "tau_tdg", "tau_prep",
                 "tau_injeqt", "tau_injeqt_inf", "tau_injeqt_opt", "alpha",
                 "alpha_large_c", "f_injeqt", "f_injeqt_large_c",
                 "r_nostall"):
        print(f"{name:>22}: {getattr(report, name):.6g}")
    return 0


def _cmd_run(args) -> int:
    bundle = _build_arch(args)
    circuit = parse_qasm_file(args.circuit)
    policy = Policy(args.policy)
    rows = run_trials(circuit, bundle, policy, args.trials, args.seed,
                      r=args.r, overlap_setup=not args.no_overlap,
                      merge=args.merge)
    os.makedirs(args.out, exist_ok=True)
    write_results_csv(rows, os.path.join(args.out, "results.csv"))
    if args.timeline_dump:
        from .harness import _trial_rngs
        plan = lower(compile_to_pbc(circuit, merge=args.merge), bundle.layout)
        chain_rng, attempt_rng, _ = _trial_rngs(args.seed, 0)
        chains = chain_rng.geometric(0.5, size=plan.num_rotations).astype(int)
        if policy is Policy.TDG:
            tl = simulate_tdg(plan, bundle, attempt_rng=attempt_rng,
                              record_events=True)
        else:
            tl = simulate_injeqt(plan, bundle,
                                 PrefetchConfig(args.r, not args.no_overlap),
                                 chains=chains, attempt_rng=attempt_rng,
                                 record_events=True)
        tl.dump_csv(args.timeline_dump)
    if args.json:
        means = {k: sum(getattr(m, k) for m in rows) / len(rows)
                 for k in ("total_error", "wall_clock", "spacetime")}
        means["phys_qubits"] = rows[0].phys_qubits
        print(json.dumps(means, indent=2, sort_keys=True))
    return 0


def _cmd_sweep(args) -> int:
    bundle = _build_arch(args)
    circuit = parse_qasm_file(args.circuit)
    r_range = _parse_r_range(args.r)
    from .arch import OutputKind
    include_tdg = bundle.factory.output_kind is OutputKind.T_STATE
    sweep = sweep_r(circuit, bundle, r_range, args.trials, args.seed,
                    overlap_setup=not args.no_overlap, merge=args.merge,
                    include_tdg=include_tdg)
    os.makedirs(args.out, exist_ok=True)
    write_results_csv(sweep.rows, os.path.join(args.out, "results.csv"))
    write_summary_json(sweep, os.path.join(args.out, "summary.json"))
    return 0


def _cmd_compare(args) -> int:
    if args.injeqt_factory:
        args.factory = args.injeqt_factory
    bundle = _build_arch(args)
    circuit = parse_qasm_file(args.circuit)
    result = compare(circuit, bundle, _parse_r_range(args.r), args.trials,
                     args.seed, overlap_setup=not args.no_overlap,
                     merge=args.merge)
    if args.json:
        print(json.dumps({
            "improvement": result.improvements,
            "raw_ratio": result.raw_ratios,
            "baseline_factory": result.baseline_factory,
            "r_star": result.r_star,
        }, indent=2, sort_keys=True))
        return 0
    print(f"{'metric':>12} {'baseline':>14} {'prefetched*':>14} "
          f"{'x improvement':>14} {'R*':>4} {'baseline factory':>18}")
    for metric in ("total_error", "wall_clock", "phys_qubits", "spacetime"):
        print(f"{metric:>12} {result.baseline_means[metric]:>14.6g} "
              f"{result.injeqt_means[metric]:>14.6g} "
              f"{result.improvements[metric]:>14.4g} "
              f"{result.r_star[metric]:>4} "
              f"{result.baseline_factory[metric]:>18}")
    print("ratio direction: >1 means the prefetched policy is better")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"analyze": _cmd_analyze, "run": _cmd_run,
                "sweep": _cmd_sweep, "compare": _cmd_compare}
    try:
        return handlers[args.command](args)
    except (QinjectError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
