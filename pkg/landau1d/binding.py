#!/usr/bin/env python3
"""
Copyright Reply.com or its affiliates. All Rights Reserved.
SPDX-License-Identifier: Apache-2.0
Permission is hereby granted, free of charge, to any person obtaining a copy of this
software and associated documentation files (the "Software"), to deal in the Software
without restriction, including without limitation the rights to use, copy, modify,
merge, publish, distribute, sublicense, and/or sell copies of the Software, and to
permit persons to whom the Software is furnished to do so.
THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR IMPLIED,
INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY, FITNESS FOR A
PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE AUTHORS OR COPYRIGHT
HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER LIABILITY, WHETHER IN AN ACTION
OF CONTRACT, TORT OR OTHERWISE, ARISING FROM, OUT OF OR IN CONNECTION WITH THE
SOFTWARE OR THE USE OR OTHER DEALINGS IN THE SOFTWARE.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum, unique
import logging
import math
from typing import NamedTuple

import numpy as np

from .configuration import Configuration
from .eigensolve import ConvergenceEstimate, GridPolicy, converge
from .errors import BracketNotFound, DomainError
from .model import ModelParams

SCAN_RANGE = (0.3, 1.5)  # covers the four regimes of the two-electron surface


@unique
class Verdict(Enum):
    BOUND = 'Bound'
    UNBOUND = 'Unbound'
    INCONCLUSIVE = 'Inconclusive'


@dataclass(frozen=True)
class BindingReport:
    params: ModelParams
    e_n: ConvergenceEstimate
    e_n_minus_1: ConvergenceEstimate
    margin: float
    bound_state: Verdict

    @property
    def error_bar(self):
        return self.e_n.error_bar + self.e_n_minus_1.error_bar

    @staticmethod
    def classify(margin, error_bar):
        if margin > error_bar:
            return Verdict.BOUND
        if margin < -error_bar:
            return Verdict.UNBOUND
        return Verdict.INCONCLUSIVE

    def to_dict(self):
        return dict(params=self.params.to_dict(),
                    e_n=self.e_n.to_dict(),
                    e_n_minus_1=self.e_n_minus_1.to_dict(),
                    margin=self.margin,
                    error_bar=self.error_bar,
                    bound_state=self.bound_state.value)


@dataclass(frozen=True)
class MarginSample:
    Z: float
    margin: float
    error_bar: float
    verdict: Verdict

    def to_dict(self):
        return dict(Z=self.Z, margin=self.margin, error_bar=self.error_bar, verdict=self.verdict.value)


@dataclass(frozen=True)
class CriticalChargeResult:
    B: float
    z_lo: float
    z_hi: float
    tolerance: float
    trace: tuple  # of MarginSample, sorted by charge
    resolved: bool = True  # False when bisection stopped on an inconclusive margin

    @property
    def z_c(self):
        return 0.5 * (self.z_lo + self.z_hi)

    def to_dict(self):
        return dict(B=self.B, z_lo=self.z_lo, z_hi=self.z_hi, z_c=self.z_c,
                    tolerance=self.tolerance, resolved=self.resolved,
                    trace=[sample.to_dict() for sample in self.trace])


class AsymptoticEnergy(NamedTuple):
    energy: float
    in_regime: bool


class TrialBound(NamedTuple):
    a_min: float
    energy_bound: float


def continuum_threshold(params, policy=None, tol=1e-10):
    ''' bottom of the continuum, that is the ground energy with one electron less '''
    if params.n_electrons == 1:
        return ConvergenceEstimate(extrapolated_energy=0.0, error_bar=0.0, ladder=())
    policy = policy or GridPolicy.default_for(params)
    return converge(params.with_electrons(1), policy=policy, tol=tol)


def ahs_energy(Z, B):
    ''' large-field asymptotic ground energy of one electron, -(Z^2/sqrt B) log(Z^2/sqrt B)^2 '''
    if not (Z > 0 and B > 0):
        raise DomainError("Charge and field should be positive")
    strength = Z * Z / math.sqrt(B)
    return AsymptoticEnergy(energy=-strength * math.log(strength) ** 2, in_regime=strength < 1.0)


def separated_trial_energy(Z, B, a):
    ''' energy estimate of two electrons held at distance a on both sides of the nucleus '''
    if not a > 0:
        raise DomainError(f"Distance should be positive, not {a}")
    return 2.0 * math.sqrt(B) / a ** 2 - 2.0 * Z / a + 1.0 / (2.0 * a)


def separated_trial_bound(Z, B):
    ''' minimum of the separated trial estimate over the distance '''
    if not Z > 0.25:
        raise DomainError(f"Classical charges escape for Z <= 1/4, here Z={Z}")
    excess = Z - 0.25
    return TrialBound(a_min=2.0 * math.sqrt(B) / excess,
                      energy_bound=-excess ** 2 / (2.0 * math.sqrt(B)))


def trial_binding_predicate(Z, B):
    ''' binding by the separated trial state would require this to hold '''
    return (Z - 0.25) ** 2 > 2.0 * Z ** 2 * math.log(Z / math.sqrt(B)) ** 2


def classical_line_force(Z, a):
    ''' outward force on each outer charge of the line -1, +Z, -1 at distance a '''
    if not a > 0:
        raise DomainError(f"Distance should be positive, not {a}")
    return (0.25 - Z) / a ** 2


def binding_report(params, grid_policy=None, tol=1e-10):
    ''' compare the two-electron ground energy with the continuum threshold '''
    if params.n_electrons != 2:
        raise DomainError("Binding is decided for two electrons")
    policy = grid_policy or GridPolicy.default_for(params)
    logging.info(f"Deciding binding for Z={params.Z} B={params.B}")
    e_n = converge(params, policy=policy, tol=tol)
    e_n_minus_1 = continuum_threshold(params, policy=policy, tol=tol)
    margin = e_n_minus_1.extrapolated_energy - e_n.extrapolated_energy
    verdict = BindingReport.classify(margin, e_n.error_bar + e_n_minus_1.error_bar)
    logging.info(f"- margin {margin:.6g} +/- {e_n.error_bar + e_n_minus_1.error_bar:.2e}: {verdict.value}")
    return BindingReport(params=params, e_n=e_n, e_n_minus_1=e_n_minus_1, margin=margin, bound_state=verdict)


def margin_sampler(B, policy_for=None, tol=1e-10):
    ''' function of the charge that returns the binding margin as a MarginSample '''

    def sample(Z):
        params = ModelParams(n_electrons=2, Z=float(Z), B=B)
        policy = policy_for(params) if policy_for else None
        report = binding_report(params, grid_policy=policy, tol=tol)
        return MarginSample(Z=float(Z), margin=report.margin, error_bar=report.error_bar, verdict=report.bound_state)

    return sample


def margin_ladder(B, charges, policy_for=None, threads=None, sampler=None):
    ''' binding margins over a list of charges, computed in parallel '''
    sampler = sampler or margin_sampler(B, policy_for=policy_for)
    threads = threads or Configuration.get_threads()
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(sampler, charges))


def monotone_violations(trace):
    ''' consecutive samples where the margin drops by more than their error bars '''
    ordered = sorted(trace, key=lambda sample: sample.Z)
    return [(left, right) for left, right in zip(ordered, ordered[1:])
            if right.margin < left.margin - (left.error_bar + right.error_bar)]


def critical_charge(B, tol=1e-2, policy_for=None, sampler=None, steps=None, threads=None):
    ''' bracket of the charge where the binding margin changes sign '''
    if not tol >= 1e-3:
        raise DomainError(f"Tolerance on the critical charge should be at least 1e-3, not {tol}")
    sampler = sampler or margin_sampler(B, policy_for=policy_for)
    steps = steps or Configuration.get_toggles().scan_steps

    logging.info(f"Scanning charges in {SCAN_RANGE} for B={B}")
    charges = np.linspace(SCAN_RANGE[0], SCAN_RANGE[1], steps)
    trace = margin_ladder(B, charges, threads=threads, sampler=sampler)

    bracket = None
    for lo, hi in zip(trace, trace[1:]):
        if lo.margin < 0 < hi.margin:
            bracket = (lo, hi)
            break
    if not bracket:
        raise BracketNotFound(f"Binding margin does not change sign on {SCAN_RANGE} for B={B}")

    lo, hi = bracket
    resolved = True
    while hi.Z - lo.Z > tol:
        middle = sampler(0.5 * (lo.Z + hi.Z))
        trace.append(middle)
        logging.debug(f"- Z={middle.Z:.6f} margin {middle.margin:.3e} ({middle.verdict.value})")
        if middle.verdict == Verdict.INCONCLUSIVE:
            logging.warning(f"Margin at Z={middle.Z:.6f} is within its error bar, "
                            f"bisection stops at [{lo.Z:.6f}, {hi.Z:.6f}]")
            resolved = False
            break
        if middle.verdict == Verdict.BOUND:
            hi = middle
        else:
            lo = middle

    for sample in (lo, hi):
        if sample.verdict == Verdict.INCONCLUSIVE:
            logging.warning(f"Bracket end Z={sample.Z:.6f} rests on an inconclusive margin")
    logging.info(f"Critical charge in [{lo.Z:.6f}, {hi.Z:.6f}] for B={B}")
    return CriticalChargeResult(B=B, z_lo=lo.Z, z_hi=hi.Z, tolerance=tol,
                                trace=tuple(sorted(trace, key=lambda sample: sample.Z)),
                                resolved=resolved)
