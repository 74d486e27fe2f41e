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

from dataclasses import dataclass, replace
from enum import Enum, unique
import logging
import math

import numpy as np
from scipy.optimize import brentq

from .errors import DegenerateAtBoundary, DomainError
from .model import ModelParams, w_gradient, w_surface
from .specfun import potential, slope_at_origin

PROFILE_CHARGES = (0.25, 0.3, 0.35, 0.4, 0.5, 0.6, 0.7, 0.8)
DEFAULT_REGION = (-10.0, 10.0, -10.0, 10.0)

GRADIENT_TOLERANCE = 1e-10
CURVATURE_TOLERANCE = 1e-8
SLOPE_TOLERANCE = 1e-12
DEDUPLICATION_RADIUS = 1e-6
BOUNDARY_GAP = 1e-9
V0_SLOPE_AT_ORIGIN = -2.0


@unique
class PointKind(Enum):
    MINIMUM = 'Minimum'
    SADDLE = 'Saddle'
    MAXIMUM = 'Maximum'
    DEGENERATE = 'Degenerate'


@unique
class Regime(Enum):
    I = 'I'          # noqa: E741 - repulsive origin, saddles on y=-x
    II = 'II'        # attractive origin that is not a minimum
    III = 'III'      # minimum at the origin, above the one-electron limit
    IV = 'IV'        # minimum at the origin, below the one-electron limit


@dataclass(frozen=True)
class CriticalPoint:
    ''' stationary point of W

    At the origin W has a cusp; such points carry `cusp=True` and their
    `hessian_eigenvalues` hold the extreme one-sided directional slopes.
    '''

    x: float
    y: float
    gradient_norm: float
    hessian_eigenvalues: tuple
    kind: PointKind
    value: float
    cusp: bool = False

    @property
    def location(self):
        return (self.x, self.y)

    def to_dict(self):
        return dict(x=self.x, y=self.y, gradient_norm=self.gradient_norm,
                    eigenvalue_1=self.hessian_eigenvalues[0], eigenvalue_2=self.hessian_eigenvalues[1],
                    kind=self.kind.value, value=self.value, cusp=self.cusp)


@dataclass(frozen=True)
class RegimeReport:
    Z: float
    B: float
    origin_value: float
    origin_attractive: bool
    origin_vs_infinity: int
    origin_hessian_kind: PointKind
    off_axis_points: tuple
    regime: Regime
    boundaries: dict

    def to_dict(self):
        return dict(Z=self.Z, B=self.B,
                    origin_value=self.origin_value,
                    origin_attractive=self.origin_attractive,
                    origin_vs_infinity=self.origin_vs_infinity,
                    origin_hessian_kind=self.origin_hessian_kind.value,
                    off_axis_points=[point.to_dict() for point in self.off_axis_points],
                    regime=self.regime.value if self.regime else None,
                    boundaries=dict(self.boundaries))


def surface_params(Z, B=1.0):
    return ModelParams(n_electrons=2, Z=Z, B=B)


def origin_slopes(params, directions=720):
    ''' one-sided slopes (W(r e) - W(0)) / r as r -> 0, for unit vectors e around the circle '''
    angles = 2.0 * math.pi * np.arange(directions) / directions
    c, s = np.cos(angles), np.sin(angles)
    attraction = -params.Z * slope_at_origin(params.attraction) * (np.abs(c) + np.abs(s))
    interaction = params.alpha * 0.5 * V0_SLOPE_AT_ORIGIN * np.abs(c - s)
    return angles, attraction + interaction


def classify_origin(params, directions=720):
    _, slopes = origin_slopes(params, directions)
    low, high = float(np.min(slopes)), float(np.max(slopes))
    if low > SLOPE_TOLERANCE:
        kind = PointKind.MINIMUM
    elif high < -SLOPE_TOLERANCE:
        kind = PointKind.MAXIMUM
    elif low < -SLOPE_TOLERANCE and high > SLOPE_TOLERANCE:
        kind = PointKind.SADDLE
    else:
        kind = PointKind.DEGENERATE
    return kind, (low, high)


def limit_at_infinity(params):
    ''' W(0, y) as y goes to infinity: only the attraction of the first electron remains '''
    return -params.Z * float(potential(params.attraction, 0.0))


def boundary_charges(params, lo=0.201, hi=1.999):
    ''' charges where the origin changes sign, meets the limit at infinity, and becomes a minimum '''

    def at(Z):
        return params.with_charge(Z)

    def origin(Z):
        return w_surface(at(Z), 0.0, 0.0)

    def versus_infinity(Z):
        return w_surface(at(Z), 0.0, 0.0) - limit_at_infinity(at(Z))

    def lowest_slope(Z):
        return float(np.min(origin_slopes(at(Z))[1]))

    return dict(sign=brentq(origin, lo, hi, xtol=1e-14),
                infinity=brentq(versus_infinity, lo, hi, xtol=1e-14),
                coalescence=brentq(lowest_slope, lo, hi, xtol=1e-14))


def hessian(params, x, y, step=1e-5):
    columns = [(w_gradient(params, x + step, y) - w_gradient(params, x - step, y)) / (2.0 * step),
               (w_gradient(params, x, y + step) - w_gradient(params, x, y - step)) / (2.0 * step)]
    matrix = np.column_stack(columns)
    return 0.5 * (matrix + matrix.T)


def side_pattern(point):
    x, y = point
    return (np.sign(x), np.sign(y), np.sign(x - y))


def newton(params, start, region, step=1e-5, iterations=50):
    ''' Newton iterations on the gradient, with Armijo backtracking on its squared norm '''
    point = np.asarray(start, dtype=float)
    pattern = side_pattern(point)
    gradient = w_gradient(params, *point)
    for _ in range(iterations):
        norm = float(np.dot(gradient, gradient))
        if norm <= (1e-3 * GRADIENT_TOLERANCE) ** 2:
            break
        try:
            direction = -np.linalg.solve(hessian(params, *point, step=step), gradient)
        except np.linalg.LinAlgError:
            return None
        length = 1.0
        while True:
            candidate = point + length * direction
            trial = w_gradient(params, *candidate)
            if float(np.dot(trial, trial)) <= (1.0 - 2e-4 * length) * norm or length < 1e-10:
                break
            length /= 2.0
        point, gradient = candidate, trial
        if side_pattern(point) != pattern:  # crossed a line where W has a kink
            return None

    xmin, xmax, ymin, ymax = region
    if not (xmin < point[0] < xmax and ymin < point[1] < ymax):
        return None
    if np.linalg.norm(gradient) > GRADIENT_TOLERANCE:
        return None
    return point


def classify_curvature(eigenvalues):
    low, high = eigenvalues
    if min(abs(low), abs(high)) <= CURVATURE_TOLERANCE:
        return PointKind.DEGENERATE
    if low > 0:
        return PointKind.MINIMUM
    if high < 0:
        return PointKind.MAXIMUM
    return PointKind.SADDLE


def candidate_cells(params, region, scan_points):
    ''' centers of scan cells where both gradient components change sign, away from kinks '''
    xmin, xmax, ymin, ymax = region
    xs = np.linspace(xmin, xmax, scan_points)
    ys = np.linspace(ymin, ymax, scan_points)
    x, y = np.meshgrid(xs, ys, indexing='ij')
    gx, gy = w_gradient(params, x, y)

    def corners(field):
        return np.stack([field[:-1, :-1], field[1:, :-1], field[:-1, 1:], field[1:, 1:]])

    def straddles(field):
        values = corners(field)
        return (values.min(axis=0) <= 0) & (values.max(axis=0) >= 0)

    selected = straddles(gx) & straddles(gy)
    selected &= ~straddles(x) & ~straddles(y) & ~straddles(x - y)
    centers_x = 0.5 * (x[:-1, :-1] + x[1:, 1:])
    centers_y = 0.5 * (y[:-1, :-1] + y[1:, 1:])
    return list(zip(centers_x[selected], centers_y[selected]))


def find_critical_points(Z, B=1.0, region=DEFAULT_REGION, scan_points=61, step=1e-5, iterations=50, params=None):
    ''' stationary points of W in a rectangle, by scan and Newton refinement

    The origin, where W has a cusp, is classified from directional slopes
    and reported when it lies strictly inside the region.
    '''
    params = params or surface_params(Z, B)
    xmin, xmax, ymin, ymax = region
    if not (xmin < xmax and ymin < ymax and all(math.isfinite(item) for item in region)):
        raise DomainError(f"Invalid region {region}")

    points = []
    if xmin < 0 < xmax and ymin < 0 < ymax:
        kind, slopes = classify_origin(params)
        points.append(CriticalPoint(x=0.0, y=0.0, gradient_norm=0.0, hessian_eigenvalues=slopes,
                                    kind=kind, value=w_surface(params, 0.0, 0.0), cusp=True))

    starts = candidate_cells(params, region, scan_points)
    logging.debug(f"{len(starts)} candidate cells for Z={params.Z}")
    for start in starts:
        point = newton(params, start, region, step=step, iterations=iterations)
        if point is None:
            continue
        if any(math.hypot(point[0] - known.x, point[1] - known.y) <= DEDUPLICATION_RADIUS for known in points):
            continue
        eigenvalues = tuple(float(value) for value in np.linalg.eigvalsh(hessian(params, *point, step=step)))
        points.append(CriticalPoint(x=float(point[0]), y=float(point[1]),
                                    gradient_norm=float(np.linalg.norm(w_gradient(params, *point))),
                                    hessian_eigenvalues=eigenvalues,
                                    kind=classify_curvature(eigenvalues),
                                    value=w_surface(params, *point)))
    return points


def classify_regime(Z, B=1.0, region=DEFAULT_REGION, scan_points=61, step=1e-5, iterations=50):
    ''' place the two-electron surface at charge Z in one of four regimes '''
    if not 0.2 < Z < 2.0:
        raise DomainError(f"Regimes are classified for 0.2 < Z < 2, not {Z}")
    if not B > 0:
        raise DomainError(f"Field strength should be positive, not {B}")

    params = surface_params(Z, B)
    boundaries = boundary_charges(params)
    origin_value = w_surface(params, 0.0, 0.0)
    infinity = limit_at_infinity(params)
    kind, _ = classify_origin(params)
    off_axis = tuple(point for point in find_critical_points(Z, B, region=region, scan_points=scan_points,
                                                             step=step, iterations=iterations, params=params)
                     if not point.cusp)

    if origin_value > 0:
        regime = Regime.I
        if not any(point.kind == PointKind.SADDLE and abs(point.x + point.y) <= DEDUPLICATION_RADIUS for point in off_axis):
            logging.warning(f"No saddle found on y=-x for Z={Z}")
    elif kind != PointKind.MINIMUM:
        regime = Regime.II
    elif origin_value > infinity:
        regime = Regime.III
    else:
        regime = Regime.IV

    report = RegimeReport(Z=Z, B=B,
                          origin_value=origin_value,
                          origin_attractive=origin_value < 0,
                          origin_vs_infinity=int(np.sign(origin_value - infinity)),
                          origin_hessian_kind=kind,
                          off_axis_points=off_axis,
                          regime=regime,
                          boundaries=boundaries)

    for name, charge in boundaries.items():
        if abs(Z - charge) < BOUNDARY_GAP:
            raise DegenerateAtBoundary(f"Charge {Z} is on the '{name}' boundary {charge:.12f}",
                                       boundary=charge,
                                       report=replace(report, regime=None))

    logging.info(f"Regime {regime.value} for Z={Z}")
    return report


def section_profiles(charges=PROFILE_CHARGES, B=1.0, xs=None):
    ''' W along the antidiagonal y=-x and along the axis y=0, for several charges '''
    xs = np.linspace(-6.0, 6.0, 241) if xs is None else np.asarray(xs, dtype=float)
    if not np.all(np.isfinite(xs)):
        raise DomainError("Profile positions should be finite")
    rows = []
    for Z in charges:
        params = surface_params(Z, B)
        antidiagonal = w_surface(params, xs, -xs)
        axis = w_surface(params, xs, np.zeros_like(xs))
        for x, w_antidiagonal, w_axis in zip(xs, np.atleast_1d(antidiagonal), np.atleast_1d(axis)):
            rows.append(dict(Z=float(Z), x=float(x), w_antidiagonal=float(w_antidiagonal), w_axis=float(w_axis)))
    return rows


def surface_table(Z, B=1.0, xs=None, ys=None):
    ''' W on a rectangular grid of positions '''
    params = surface_params(Z, B)
    xs = np.linspace(-6.0, 6.0, 121) if xs is None else np.asarray(xs, dtype=float)
    ys = xs if ys is None else np.asarray(ys, dtype=float)
    x, y = np.meshgrid(xs, ys, indexing='ij')
    values = w_surface(params, x, y)
    return [dict(x=float(a), y=float(b), w=float(c)) for a, b, c in zip(x.ravel(), y.ravel(), np.ravel(values))]
