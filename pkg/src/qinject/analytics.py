"""Closed-form expected errors, spans and ratios for both injection policies.

These serve as oracles for the discrete-event simulator and back the
`analyze` CLI subcommand. The time-ratio is reported in two variants: the
exact one using the (c-1)-hidden first preparation, and the approximate
large-c form.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .arch import ArchBundle, OutputKind


@dataclass(frozen=True)
class AnalyticReport:
    c: int
    eps_t: float            # per-rotation error, sequential T injection
    eps_rz: float           # per-rotation error, ideal direct Rz injection
    eps_injeqt: float       # per-rotation error, 2-level prefetched injection
    tau_tdg: float          # per-rotation span, sequential T injection
    tau_prep: float         # 2-level state preparation time
    tau_injeqt: float       # naive (single-pipeline) per-rotation span
    tau_injeqt_inf: float   # stall-free prefetched span
    tau_injeqt_opt: float   # setup-hidden optimum: two inter-module steps
    alpha: float            # exact variable part of the time ratio
    alpha_large_c: float
    f_injeqt: float         # = 2 * alpha
    f_injeqt_large_c: float
    r_nostall: int          # minimal pipeline count avoiding stalls

    def as_dict(self) -> dict:
        return asdict(self)


def analytic(arch: ArchBundle, c: int | None = None) -> AnalyticReport:
    """Evaluate every closed form for the bundle's factory at T-count c."""
    if c is None:
        c = arch.synthesis.c
    if c < 1:
        raise ValueError("c must be >= 1")
    tau_f = arch.factory.expected_steps
    eps_f = arch.factory.error
    tau_c = arch.tau_c
    eps_c = arch.eps_c
    tau_tech, eps_tech = arch.aux.tau_tech, arch.aux.eps_tech

    eps_t = c * (eps_f + eps_c)
    eps_rz = 2 * (eps_f + eps_c)
    if arch.factory.output_kind is OutputKind.RZ_STATE:
        # direct Rz factory: no second level, prep is a single factory shot
        tau_prep = tau_f
        eps_injeqt = 2 * (eps_f + eps_c)
    else:
        tau_prep = c * (tau_f + tau_tech)
        eps_injeqt = 2 * (c * (eps_f + eps_tech) + eps_c)

    tau_tdg = (c - 1) * tau_f + c * tau_c
    tau_injeqt = 2 * (tau_prep + tau_c)
    tau_injeqt_inf = tau_prep + 2 * tau_c
    tau_injeqt_opt = 2 * tau_c

    alpha = tau_injeqt / (2 * tau_tdg)
    alpha_lc = (tau_f + tau_tech + tau_c / c) / (tau_f + tau_c)
    return AnalyticReport(
        c=c,
        eps_t=eps_t,
        eps_rz=eps_rz,
        eps_injeqt=eps_injeqt,
        tau_tdg=tau_tdg,
        tau_prep=tau_prep,
        tau_injeqt=tau_injeqt,
        tau_injeqt_inf=tau_injeqt_inf,
        tau_injeqt_opt=tau_injeqt_opt,
        alpha=alpha,
        alpha_large_c=alpha_lc,
        f_injeqt=2 * alpha,
        f_injeqt_large_c=2 * alpha_lc,
        r_nostall=math.ceil(1 + tau_prep / tau_c),
    )


@dataclass(frozen=True)
class ViabilityResult:
    holds: bool            # 2(eps_frz + eps_c) < c(eps_ft + eps_c)
    sufficient_form: bool  # eps_frz < c * max(eps_ft, eps_c)

    def __bool__(self) -> bool:
        return self.holds


def rz_viability(eps_frz: float, eps_ft: float, eps_c: float,
                 c: int) -> ViabilityResult:
    """Does a direct Rz factory beat c sequential T injections on error?"""
    for name, v in (("eps_frz", eps_frz), ("eps_ft", eps_ft), ("eps_c", eps_c)):
        if not 0 < v < 1:
            raise ValueError(f"{name} must be in (0,1), got {v}")
    return ViabilityResult(
        holds=2 * (eps_frz + eps_c) < c * (eps_ft + eps_c),
        sufficient_form=eps_frz < c * max(eps_ft, eps_c),
    )
