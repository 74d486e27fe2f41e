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
import logging
import math

import numpy as np
from scipy.stats import qmc

from .binding import Verdict, binding_report
from .configuration import Configuration
from .errors import DomainError, UnsupportedKind
from .model import ModelParams
from .specfun import PotentialKind, Variant, nu, omega, potential

CONSISTENCY_CHARGES = (0.1, 0.2, 0.3)
CONSISTENCY_FIELDS = (0.01, 0.04)


@dataclass(frozen=True)
class BoundReport:
    ''' no N-electron bound state exists when N >= n_threshold '''

    Z: float
    B: float
    omega_used: float
    n_threshold: float
    n_max_bound: int
    potential: PotentialKind

    def to_dict(self):
        return dict(Z=self.Z, B=self.B, omega_used=self.omega_used, n_threshold=self.n_threshold,
                    n_max_bound=self.n_max_bound, potential=self.potential.to_dict())


@dataclass(frozen=True)
class PairInequalitySample:
    x: float
    y: float
    lhs: float
    passed: bool

    def to_dict(self):
        return {'x': self.x, 'y': self.y, 'lhs': self.lhs, 'pass': self.passed}


@dataclass(frozen=True)
class ConsistencySample:
    Z: float
    B: float
    n_threshold: float
    verdict: Verdict
    consistent: bool

    def to_dict(self):
        return dict(Z=self.Z, B=self.B, n_threshold=self.n_threshold,
                    verdict=self.verdict.value if self.verdict else None,
                    consistent=self.consistent)


def check_admissible(kind):
    if kind.variant == Variant.CUTOFF:
        return
    if kind.variant == Variant.REGULARIZED and kind.m == 0:
        return
    raise UnsupportedKind(f"Pair inequality is established for V_0 and the cut-off potential, not {kind.label}")


def quasi_random_pairs(n_samples, extent, seed=None):
    ''' scrambled Halton points in the square [-extent, extent]^2 '''
    if not n_samples > 0:
        raise DomainError(f"Number of samples should be positive, not {n_samples}")
    if not (math.isfinite(extent) and extent > 0):
        raise DomainError(f"Sampling range should be positive, not {extent}")
    seed = Configuration.get_toggles().scan_seed if seed is None else seed
    sampler = qmc.Halton(d=2, scramble=True, seed=seed)
    points = extent * (2.0 * sampler.random(n_samples) - 1.0)
    return points[:, 0], points[:, 1]


def pair_lhs(kind, x, y):
    ''' 2^-1/2 V(|x - y| / sqrt 2) (1/V(x) + 1/V(y)) '''
    distance = np.abs(np.asarray(x) - np.asarray(y)) / math.sqrt(2.0)
    return (2.0 ** -0.5 * np.asarray(potential(kind, distance))
            * (1.0 / np.asarray(potential(kind, x)) + 1.0 / np.asarray(potential(kind, y))))


def pair_inequality_scan(kind, n_samples=None, extent=None, seed=None):
    ''' evaluate the pair inequality on quasi-random points, failures listed first '''
    check_admissible(kind)
    toggles = Configuration.get_toggles()
    n_samples = n_samples or toggles.scan_samples
    extent = extent or toggles.scan_range
    x, y = quasi_random_pairs(n_samples, extent, seed)
    lhs = pair_lhs(kind, x, y)
    samples = [PairInequalitySample(x=float(a), y=float(b), lhs=float(c), passed=bool(c > 1.0))
               for a, b, c in zip(x, y, lhs)]
    failures = [sample for sample in samples if not sample.passed]
    logging.info(f"Pair inequality for {kind.label}: {len(failures)} failures out of {len(samples)} samples")
    return failures + [sample for sample in samples if sample.passed]


def midpoint_convexity_chain(x, w):
    ''' nu(w) + nu(x) >= 2 nu(|w - x| / 2) >= sqrt 2 nu(|w - x| / sqrt 2) '''
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(w))):
        raise DomainError("Convexity chain is evaluated at finite points")
    gap = np.abs(w - x)
    lhs = np.asarray(nu(w)) + np.asarray(nu(x))
    mid = 2.0 * np.asarray(nu(gap / 2.0))
    rhs = math.sqrt(2.0) * np.asarray(nu(gap / math.sqrt(2.0)))
    if lhs.ndim == 0:
        return float(lhs), float(mid), float(rhs)
    return lhs, mid, rhs


def convexity_chain_scan(n_samples=None, extent=None, seed=None, slack=1e-12):
    ''' evaluate the convexity chain on quasi-random points, broken links listed first '''
    toggles = Configuration.get_toggles()
    n_samples = n_samples or toggles.scan_samples
    extent = extent or toggles.scan_range
    x, w = quasi_random_pairs(n_samples, extent, seed)
    lhs, mid, rhs = midpoint_convexity_chain(x, w)
    scale = slack * np.maximum(1.0, lhs)
    holds = (lhs >= mid - scale) & (mid >= rhs - scale)
    rows = [dict(x=float(a), w=float(b), lhs=float(c), mid=float(d), rhs=float(e), holds=bool(f))
            for a, b, c, d, e, f in zip(x, w, lhs, mid, rhs, holds)]
    logging.info(f"Convexity chain: {int(np.sum(~holds))} failures out of {len(rows)} samples")
    return [row for row in rows if not row['holds']] + [row for row in rows if row['holds']]


def ionization_bound(Z, B, kind=None):
    ''' threshold 2Z + 1 + 2 omega sqrt B above which no bound state exists '''
    kind = kind or PotentialKind.regularized()
    if not Z > 0:
        raise DomainError(f"Nuclear charge should be positive, not {Z}")
    if not (math.isfinite(B) and B > 0):
        raise DomainError(f"Field strength should be positive, not {B}")
    omega_used = omega(kind)
    threshold = 2.0 * Z + 1.0 + 2.0 * omega_used * math.sqrt(B)
    return BoundReport(Z=Z, B=B, omega_used=omega_used, n_threshold=threshold,
                       n_max_bound=math.ceil(threshold) - 1, potential=kind)


def lieb_balance(N, Z, B, kind=None):
    ''' coefficient whose positivity rules out binding of N electrons '''
    kind = kind or PotentialKind.regularized()
    if not N >= 1:
        raise DomainError(f"Number of electrons should be at least 1, not {N}")
    return -N * Z + N * (N - 1) / 2.0 - N * omega(kind) * math.sqrt(B)


def consistency_sample(Z, B, grid_policy=None, tol=1e-10):
    bound = ionization_bound(Z, B)
    if bound.n_threshold > 2:
        logging.debug(f"No constraint on two electrons for Z={Z} B={B}")
        return ConsistencySample(Z=Z, B=B, n_threshold=bound.n_threshold, verdict=None, consistent=True)

    report = binding_report(ModelParams(n_electrons=2, Z=Z, B=B), grid_policy=grid_policy, tol=tol)
    if report.bound_state == Verdict.BOUND:
        logging.error(f"Two electrons are bound at Z={Z} B={B} below the threshold {bound.n_threshold:.6f}")
    elif report.bound_state == Verdict.INCONCLUSIVE:
        logging.warning(f"Binding is inconclusive at Z={Z} B={B}")
    return ConsistencySample(Z=Z, B=B, n_threshold=bound.n_threshold, verdict=report.bound_state,
                             consistent=report.bound_state != Verdict.BOUND)


def consistency_check(Z, B, grid_policy=None, tol=1e-10):
    ''' False only when two electrons are numerically bound although the threshold forbids it '''
    return consistency_sample(Z, B, grid_policy=grid_policy, tol=tol).consistent


def consistency_lattice(charges=CONSISTENCY_CHARGES, fields=CONSISTENCY_FIELDS, policy_for=None, threads=None):
    ''' consistency samples over a lattice of charges and fields, computed in parallel '''

    def sample(point):
        Z, B = point
        policy = policy_for(ModelParams(n_electrons=2, Z=Z, B=B)) if policy_for else None
        return consistency_sample(Z, B, grid_policy=policy)

    points = [(Z, B) for Z in charges for B in fields]
    threads = threads or Configuration.get_threads()
    with ThreadPoolExecutor(max_workers=threads) as executor:
        samples = list(executor.map(sample, points))
    logging.info(f"Consistency on {len(samples)} points: {all(item.consistent for item in samples)}")
    return samples
