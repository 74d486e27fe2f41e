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

from dataclasses import dataclass
from enum import Enum, unique
import functools
import logging
import math
import warnings

import numpy as np
from scipy.integrate import IntegrationWarning, quad
from scipy.special import erfcx, gammaln, roots_genlaguerre

from .configuration import Configuration
from .errors import DomainError, QuadratureNotConverged, UnsupportedKind

SQRT_PI = math.sqrt(math.pi)

OMEGA_REGULARIZED = math.pi ** -1.5  # localization error of 1/V_0 at the origin
OMEGA_CUTOFF = 0.25

GUARD_BAND = 1e-12  # comparisons against 1/|x| exclude |x| below this
LAGUERRE_LEVELS = 150  # Gauss-Laguerre weights overflow at higher levels


@unique
class Variant(Enum):
    REGULARIZED = 'regularized'
    CUTOFF = 'cutoff'
    COULOMB = 'coulomb'
    LOWER_BOUND_G = 'lower_bound_g'
    UPPER_BOUND_G = 'upper_bound_g'


@dataclass(frozen=True)
class PotentialKind:
    ''' one family of one-dimensional potentials

    Regularized potentials carry a Landau level `m` and a field `B`,
    envelope functions carry their parameter `k`.
    '''

    variant: Variant
    m: int = 0
    B: float = 1.0
    k: float = 0.0

    def __post_init__(self):
        if self.variant == Variant.REGULARIZED:
            check_level(self.m, self.B)
        elif self.variant in (Variant.LOWER_BOUND_G, Variant.UPPER_BOUND_G):
            if not self.k > 2:
                raise DomainError(f"Envelope parameter k should be above 2, not {self.k}")

    @classmethod
    def regularized(cls, m=0, B=1.0):
        return cls(Variant.REGULARIZED, m=m, B=float(B))

    @classmethod
    def cutoff(cls):
        return cls(Variant.CUTOFF)

    @classmethod
    def coulomb(cls):
        return cls(Variant.COULOMB)

    @classmethod
    def lower_bound_g(cls, k=3.0):
        return cls(Variant.LOWER_BOUND_G, k=float(k))

    @classmethod
    def upper_bound_g(cls, k=4.0):
        return cls(Variant.UPPER_BOUND_G, k=float(k))

    @classmethod
    def parse(cls, label, m=0, B=1.0):
        ''' build a kind from a short label, as used on the command line

        Only 'vm' takes a level and a field, other labels refuse them.
        '''
        builders = dict(v0=lambda: cls.regularized(0, 1.0),
                        vm=lambda: cls.regularized(m, B),
                        cutoff=cls.cutoff,
                        coulomb=cls.coulomb,
                        g3=lambda: cls.lower_bound_g(3.0),
                        gpi=lambda: cls.lower_bound_g(math.pi),
                        g4=lambda: cls.upper_bound_g(4.0))
        if label not in builders:
            raise UnsupportedKind(f"Unknown potential '{label}'")
        if label != 'vm' and (m != 0 or B != 1.0):
            raise DomainError(f"Potential '{label}' takes no level nor field, use 'vm' instead")
        return builders[label]()


    @property
    def label(self):
        if self.variant == Variant.REGULARIZED:
            return f"regularized(m={self.m}, B={self.B:g})"
        if self.variant in (Variant.LOWER_BOUND_G, Variant.UPPER_BOUND_G):
            return f"g(k={self.k:g})"
        return self.variant.value

    def to_dict(self):
        return dict(variant=self.variant.value, m=self.m, B=self.B, k=self.k)


@dataclass(frozen=True)
class AccuracyBudget:
    rel_tol: float = 1e-12
    abs_tol: float = 1e-300
    max_quadrature_nodes: int = 512

    def __post_init__(self):
        if not self.rel_tol >= 8 * np.finfo(float).eps:
            raise DomainError(f"Relative tolerance {self.rel_tol} is below 8 machine epsilons")
        if not self.abs_tol > 0:
            raise DomainError("Absolute tolerance should be positive")
        if self.max_quadrature_nodes < 32:
            raise DomainError("Quadrature budget should allow at least 32 nodes")

    @classmethod
    def from_settings(cls, toggles):
        return cls(rel_tol=toggles.accuracy_rel_tol,
                   abs_tol=toggles.accuracy_abs_tol,
                   max_quadrature_nodes=toggles.accuracy_max_quadrature_nodes)


def default_budget():
    return AccuracyBudget.from_settings(Configuration.get_toggles())


def check_level(m, B):
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or m < 0:
        raise DomainError(f"Landau level should be a nonnegative integer, not {m!r}")
    if not (math.isfinite(B) and B > 0):
        raise DomainError(f"Field strength should be positive, not {B}")


def shaped(value, like):
    ''' plain float for scalar input, array otherwise '''
    return float(value) if np.ndim(like) == 0 else np.asarray(value)


def finite(x):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("Positions should be finite")
    return x


def v0(x):
    ''' V_0(x) = sqrt(pi) exp(x^2) erfc(|x|), evaluated without overflow '''
    x = finite(x)
    return shaped(SQRT_PI * erfcx(np.abs(x)), x)


def v0_prime(x):
    ''' derivative of V_0, from V_0' = 2(|x| V_0 - 1) sign(x), zero at the cusp '''
    x = finite(x)
    value = 2.0 * (np.abs(x) * SQRT_PI * erfcx(np.abs(x)) - 1.0) * np.sign(x)
    return shaped(value, x)


@functools.lru_cache(maxsize=64)
def laguerre_rule(nodes, m):
    u, w = roots_genlaguerre(nodes, m)
    u.setflags(write=False)
    w.setflags(write=False)
    return u, w


def laguerre_average(m, y, exponent, budget):
    ''' [m!]^-1 int u^m e^-u (y^2 + u)^-exponent du, by Gauss-Laguerre with node doubling '''
    nodes = 32
    previous = None
    while nodes <= budget.max_quadrature_nodes:
        u, w = laguerre_rule(nodes, m)
        value = float(np.dot(w, (y * y + u) ** -exponent)) * math.exp(-gammaln(m + 1))
        if previous is not None and abs(value - previous) <= budget.rel_tol * abs(value) + budget.abs_tol:
            logging.debug(f"Gauss-Laguerre converged with {nodes} nodes for m={m}, y={y}")
            return value
        previous = value
        nodes *= 2
    raise QuadratureNotConverged(f"Gauss-Laguerre rule exhausted {budget.max_quadrature_nodes} nodes for m={m}, y={y}")


def adaptive_average(m, y, exponent, budget):
    ''' same average as laguerre_average, with u = t^2 and adaptive subdivision '''
    upper = math.sqrt(m) + 12.0  # t^(2m+1) e^(-t^2) is negligible beyond
    normalization = gammaln(m + 1)

    def integrand(t):
        if t <= 0.0:
            return 0.0
        return math.exp((2 * m + 1) * math.log(t) - t * t - exponent * math.log(y * y + t * t) - normalization)

    points = sorted({item for item in (y, math.sqrt(m)) if 0 < item < upper}) or None
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always', IntegrationWarning)
        value, error = quad(integrand, 0.0, upper,
                            points=points,
                            epsabs=budget.abs_tol,
                            epsrel=max(budget.rel_tol, 50 * np.finfo(float).eps),
                            limit=200)
    if caught and error > max(10 * budget.rel_tol * abs(value), budget.abs_tol):
        raise QuadratureNotConverged(f"Adaptive quadrature failed for m={m}, y={y}: {caught[0].message}")
    return 2.0 * value


def level_average(m, y, exponent, budget):
    if y >= 1.0 and m <= LAGUERRE_LEVELS:
        try:
            return laguerre_average(m, y, exponent, budget)
        except QuadratureNotConverged as error:
            logging.debug(f"{error}, switching to adaptive quadrature")
    return adaptive_average(m, y, exponent, budget)


def vm(m, B, x, budget=None):
    ''' regularized potential of Landau level m at field B '''
    check_level(m, B)
    budget = budget or default_budget()
    x = finite(x)
    root = math.sqrt(B)
    if m == 0:
        return shaped(root * SQRT_PI * erfcx(root * np.abs(x)), x)
    values = [level_average(m, root * abs(item), 0.5, budget) for item in x.ravel()]
    return shaped(root * np.reshape(values, x.shape), x)


def vm_prime(m, B, x, budget=None):
    ''' derivative of the regularized potential in x '''
    check_level(m, B)
    budget = budget or default_budget()
    x = finite(x)
    root = math.sqrt(B)
    if m == 0:
        return shaped(B * np.asarray(v0_prime(root * x)), x)
    values = [-root * item * level_average(m, root * abs(item), 1.5, budget) for item in x.ravel()]
    return shaped(B * np.reshape(values, x.shape), x)


def vm_alternative(m, B, x):
    ''' (2 B^(m+1) / m!) e^(B x^2) int_|x|^inf (t^2 - x^2)^m e^(-B t^2) dt, with t = |x| + s '''
    check_level(m, B)
    a = abs(float(x))
    normalization = gammaln(m + 1)

    def integrand(s):
        stretch = B * s * (2.0 * a + s)
        if stretch <= 0.0:
            return 1.0 if m == 0 else 0.0
        return math.exp(m * math.log(stretch) - stretch - normalization)

    def offset(stretch):  # s where B s (2a + s) reaches the given value
        return math.sqrt(a * a + stretch / B) - a

    upper = offset((math.sqrt(m) + 12.0) ** 2)  # e^-stretch is negligible beyond
    peak = offset(m)
    value, _ = quad(integrand, 0.0, upper, points=[peak] if 0 < peak < upper else None,
                    epsabs=0.0, epsrel=1e-13, limit=200)
    return 2.0 * B * value


def ahs_bracket(m, B, x):
    ''' lower, middle and upper bounds around V_m^B(x) '''
    check_level(m, B)
    a = abs(float(x))
    spread = (m + 1) / B  # mean of u/B under the weight u^m e^-u / m!
    upper = 1.0 / a if a > GUARD_BAND else math.inf
    return 1.0 / (math.sqrt(spread) + a), 1.0 / math.sqrt(spread + a * a), upper


def dilation_ratio(m, y, budget=None):
    ''' V_m(y / sqrt 2) / (sqrt 2 V_m(y)), at most 1 for every level '''
    return vm(m, 1.0, y / math.sqrt(2.0), budget) / (math.sqrt(2.0) * vm(m, 1.0, y, budget))


def w_pair(B, s):
    ''' pair interaction of two electrons of the lowest level, at distance s '''
    if not B > 0:
        raise DomainError(f"Field strength should be positive, not {B}")
    s = finite(s)
    return shaped(2.0 ** -0.5 * np.asarray(vm(0, B, np.abs(s) / math.sqrt(2.0))), s)


def v_cut(x):
    x = finite(x)
    return shaped(1.0 / (np.abs(x) + 1.0), x)


def nu(x):
    return shaped(1.0 / np.asarray(v0(x)), x)


def nu_prime(x):
    ''' nu' = 2 nu (nu - x) for x >= 0, extended as an odd function '''
    x = finite(x)
    a = np.abs(x)
    n = 1.0 / (SQRT_PI * erfcx(a))
    return shaped(np.where(x < 0, -1.0, 1.0) * 2.0 * n * (n - a), x)


def nu_second(x):
    x = finite(x)
    a = np.abs(x)
    n = 1.0 / (SQRT_PI * erfcx(a))
    return shaped(8.0 * n * ((n - 0.75 * a) ** 2 - (a * a + 4.0) / 16.0), x)


def g_bound(k, x):
    ''' envelope k / ((k-1) x + sqrt(x^2 + k)), below V_0 for k=3 and above for k=4 '''
    if not k > 2:
        raise DomainError(f"Envelope parameter k should be above 2, not {k}")
    x = finite(x)
    if np.any(x < 0):
        raise DomainError("Envelope functions are defined for x >= 0")
    return shaped(k / ((k - 1.0) * x + np.sqrt(x * x + k)), x)


def g_bound_prime(k, x):
    x = finite(x)
    g = np.asarray(g_bound(k, x))
    root = np.sqrt(x * x + k)
    return shaped(-g * g * ((k - 1.0) * root + x) / (k * root), x)


def g_ode_defect(k, x):
    ''' g_k' - 2 (x g_k - 1), positive for k=3 and negative for k=4 when x > 0 '''
    x = finite(x)
    return shaped(np.asarray(g_bound_prime(k, x)) - 2.0 * (x * np.asarray(g_bound(k, x)) - 1.0), x)


def g_ode_discriminant(k, x):
    ''' the defect is negative exactly when this quantity is positive '''
    x = finite(x)
    return shaped(x * x * (k - 2.0) * (k - 4.0) + k * (k - 3.0) ** 2, x)


def localization_error(x):
    ''' nu (nu - |x|)^2, which is also |nu'|^2 / 4 nu '''
    x = finite(x)
    a = np.abs(x)
    n = 1.0 / (SQRT_PI * erfcx(a))
    return shaped(n * (n - a) ** 2, x)


def localization_error_prime(x):
    ''' 6 nu (nu - x) [(nu - 2x/3)^2 - (x^2 + 3)/9] for x >= 0, odd extension '''
    x = finite(x)
    a = np.abs(x)
    n = 1.0 / (SQRT_PI * erfcx(a))
    value = 6.0 * n * (n - a) * ((n - 2.0 * a / 3.0) ** 2 - (a * a + 3.0) / 9.0)
    return shaped(np.where(x < 0, -1.0, 1.0) * value, x)


def omega(kind):
    ''' supremum of the localization error of 1/V '''
    if kind.variant == Variant.CUTOFF:
        return OMEGA_CUTOFF
    if kind.variant == Variant.REGULARIZED and kind.m == 0 and kind.B == 1.0:
        return OMEGA_REGULARIZED
    raise UnsupportedKind(f"No localization bound is available for {kind.label}")


def potential(kind, x, budget=None):
    x = finite(x)
    if kind.variant == Variant.REGULARIZED:
        return vm(kind.m, kind.B, x, budget)
    if kind.variant == Variant.CUTOFF:
        return v_cut(x)
    if kind.variant == Variant.COULOMB:
        if np.any(np.abs(x) < GUARD_BAND):
            raise DomainError("Coulomb potential is evaluated only away from the origin")
        return shaped(1.0 / np.abs(x), x)
    return g_bound(kind.k, np.abs(x))


def potential_prime(kind, x, budget=None):
    ''' derivative in x, zero at the origin for potentials with a cusp there '''
    x = finite(x)
    if kind.variant == Variant.REGULARIZED:
        return vm_prime(kind.m, kind.B, x, budget)
    if kind.variant == Variant.CUTOFF:
        return shaped(-np.sign(x) / (np.abs(x) + 1.0) ** 2, x)
    if kind.variant == Variant.COULOMB:
        if np.any(np.abs(x) < GUARD_BAND):
            raise DomainError("Coulomb potential is evaluated only away from the origin")
        return shaped(-np.sign(x) / (x * x), x)
    return shaped(np.sign(x) * np.asarray(g_bound_prime(kind.k, np.abs(x))), x)


def slope_at_origin(kind):
    ''' right-hand derivative V'(0+) '''
    if kind.variant == Variant.REGULARIZED:
        return -2.0 * kind.B if kind.m == 0 else 0.0
    if kind.variant == Variant.CUTOFF:
        return -1.0
    if kind.variant == Variant.COULOMB:
        raise UnsupportedKind("Coulomb potential is singular at the origin")
    return -(kind.k - 1.0)
