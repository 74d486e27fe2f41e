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
import logging
import math

import numpy as np
from scipy import sparse
from scipy.linalg import eigh
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh, splu

from .configuration import Configuration
from .errors import DomainError, LadderInsufficient, NoConvergence
from .model import GridSpec, assemble

SHIFT_INVERT_LIMIT = 250000  # above this, sparse factorization costs too much memory
REFINEMENT_STEPS = 100
STARTING_SEED = 1234567


@dataclass(frozen=True, eq=False)
class SpectrumResult:
    energies: tuple
    residual_norms: tuple
    grid: GridSpec
    vectors: np.ndarray = None

    def to_dict(self):
        return dict(energies=list(self.energies),
                    residual_norms=list(self.residual_norms),
                    grid=self.grid.to_dict())


@dataclass(frozen=True)
class ConvergenceEstimate:
    extrapolated_energy: float
    error_bar: float
    ladder: tuple  # (h, L, energy) entries

    def to_dict(self):
        return dict(extrapolated_energy=self.extrapolated_energy,
                    error_bar=self.error_bar,
                    ladder=[dict(h=h, L=L, energy=energy) for h, L, energy in self.ladder])


def gershgorin_bounds(matrix):
    diagonal = matrix.diagonal()
    radius = np.asarray(abs(matrix).sum(axis=1)).ravel() - np.abs(diagonal)
    return float(np.min(diagonal - radius)), float(np.max(diagonal + radius))


def starting_vector(operator, seed=STARTING_SEED):
    ''' normalized Gaussian at the origin, plus a small fixed-seed perturbation '''
    nodes = operator.grid.nodes
    width = operator.grid.half_width / 4.0
    profile = np.exp(-(nodes / width) ** 2)
    if operator.dimension != operator.grid.points:
        profile = np.outer(profile, profile).ravel()
    perturbation = np.random.default_rng(seed).standard_normal(operator.dimension)
    vector = profile / np.linalg.norm(profile) + 1e-3 * perturbation / math.sqrt(operator.dimension)
    return vector / np.linalg.norm(vector)


def residual_norms(matrix, values, vectors):
    return np.linalg.norm(matrix @ vectors - vectors * values, axis=0)


def residual_floor(matrix):
    ''' residual that rounding alone leaves on an exact eigenvector '''
    lower, upper = gershgorin_bounds(matrix)
    return 64 * np.finfo(float).eps * max(abs(lower), abs(upper))


def residuals_met(matrix, values, vectors, tol):
    bounds = np.maximum(tol * (1.0 + np.abs(values)), residual_floor(matrix))
    return bool(np.all(residual_norms(matrix, values, vectors) <= bounds))


def rayleigh_ritz(matrix, vectors):
    basis, _ = np.linalg.qr(vectors)
    values, rotation = eigh(basis.T @ (matrix @ basis))
    return values, basis @ rotation


def refine(matrix, factor, values, vectors, tol):
    ''' block inverse iteration at the shift, until residuals meet the tolerance '''
    for step in range(REFINEMENT_STEPS + 1):
        values, vectors = rayleigh_ritz(matrix, vectors)
        if residuals_met(matrix, values, vectors, tol):
            if step:
                logging.debug(f"Residuals met after {step} refinement steps")
            return values, vectors
        if step < REFINEMENT_STEPS:
            vectors = factor.solve(vectors)
    raise NoConvergence(REFINEMENT_STEPS, float(np.min(residual_norms(matrix, values, vectors))))


def factorize(matrix, sigma):
    shifted = (matrix - sigma * sparse.identity(matrix.shape[0], format='csr')).tocsc()
    return splu(shifted, permc_spec='MMD_AT_PLUS_A')


def best_residual(matrix, error):
    if error.eigenvalues is None or len(error.eigenvalues) == 0:
        return math.inf
    return float(np.min(residual_norms(matrix, error.eigenvalues, error.eigenvectors)))


def ground_state(operator, k=1, tol=1e-10, with_vectors=True):
    ''' lowest k eigenpairs, by shift-invert Lanczos below the spectrum '''
    if not 1 <= k <= 8:
        raise DomainError(f"Between 1 and 8 states can be computed, not {k}")
    if not tol > 0:
        raise DomainError("Solver tolerance should be positive")

    matrix = operator.matrix
    dimension = operator.dimension
    maxiter = int(10 * math.sqrt(dimension))
    ncv = min(dimension, max(2 * k + 1, 20))
    lower, upper = gershgorin_bounds(matrix)
    start = starting_vector(operator)

    if dimension <= SHIFT_INVERT_LIMIT:
        sigma = lower - 1e-3 * (1.0 + abs(lower))
        factor = factorize(matrix, sigma)
        inverse = LinearOperator(matrix.shape, matvec=factor.solve, dtype=float)
        # residual of the inverse problem is amplified by the spectral span
        arpack_tol = max(tol * (1.0 + abs(lower)) / (upper - sigma), 4 * np.finfo(float).eps)
        try:
            values, vectors = eigsh(matrix, k=k, sigma=sigma, which='LM', OPinv=inverse,
                                    v0=start, ncv=ncv, maxiter=maxiter, tol=arpack_tol)
        except ArpackNoConvergence as error:
            raise NoConvergence(maxiter, best_residual(matrix, error))
        values, vectors = rayleigh_ritz(matrix, vectors)
        if not residuals_met(matrix, values, vectors, tol):
            # a shift just below the lowest Ritz value makes inverse iteration contract fast
            factor = factorize(matrix, values[0] - 1e-3 * (1.0 + abs(values[0])))
        values, vectors = refine(matrix, factor, values, vectors, tol)
    else:
        logging.debug(f"Dimension {dimension} is beyond shift-invert, using plain Lanczos")
        try:
            values, vectors = eigsh(matrix, k=k, which='SA', v0=start, ncv=max(ncv, 40),
                                    maxiter=maxiter, tol=0.1 * tol)
        except ArpackNoConvergence as error:
            raise NoConvergence(maxiter, best_residual(matrix, error))
        values, vectors = rayleigh_ritz(matrix, vectors)

    residuals = residual_norms(matrix, values, vectors)
    if not residuals_met(matrix, values, vectors, tol):
        raise NoConvergence(maxiter, float(np.min(residuals)))

    logging.debug(f"Ground state {values[0]:.15g} on dimension {dimension}")
    return SpectrumResult(energies=tuple(float(value) for value in values),
                          residual_norms=tuple(float(value) for value in residuals),
                          grid=operator.grid,
                          vectors=vectors if with_vectors else None)


def snap(half_width, spacing):
    ''' smallest half width above the request that the spacing divides evenly '''
    return math.ceil(2.0 * half_width / spacing - 1e-9) * spacing / 2.0


def default_half_width(params):
    ''' about 25 decay lengths of the one-electron ground state '''
    root = math.sqrt(params.B)
    strength = params.Z ** 2 / root
    if strength < 0.5:
        energy = strength * math.log(strength) ** 2  # large-field asymptotic
    else:
        energy = params.Z * math.sqrt(math.pi) / 2.0
    return max(10.0, 25.0 * math.sqrt(root / energy))


@dataclass(frozen=True)
class GridPolicy:
    ''' the grids on which a ground energy is computed before extrapolation

    The primary half width carries the full ladder of halving spacings,
    the other half widths are solved on the coarsest spacings only and
    measure sensitivity to the walls.
    '''

    half_widths: tuple
    spacings: tuple
    stencil_order: int = 2
    secondary_levels: int = 1
    max_spacing: float = 0.5
    stretch: float = None
    max_unknowns: int = None

    def __post_init__(self):
        if not self.spacings or not self.half_widths:
            raise DomainError("Grid policy needs spacings and half widths")
        for coarse, fine in zip(self.spacings, self.spacings[1:]):
            if abs(coarse / fine - 2.0) > 1e-9:
                raise DomainError("Spacings of a grid policy should halve at each level")

    @classmethod
    def create(cls, half_width, spacings, width_ratio=1.2, stencil_order=2, secondary_levels=1, max_spacing=0.5,
               stretch=None, max_unknowns=None):
        spacings = tuple(float(spacing) for spacing in spacings)

        def snapped(width):  # walls fall on the coarsest grid
            return GridSpec.width_of(snap(GridSpec.extent_of(width, stretch), spacings[0]), stretch)

        half_widths = (snapped(half_width), snapped(half_width * width_ratio))
        return cls(half_widths=half_widths, spacings=spacings, stencil_order=stencil_order,
                   secondary_levels=secondary_levels, max_spacing=max_spacing,
                   stretch=stretch, max_unknowns=max_unknowns)

    @classmethod
    def default_for(cls, params, toggles=None, half_width=None, spacing=None, levels=None, stencil_order=None):
        ''' policy from settings, with sinh-stretched nodes when uniform tensor grids get too large '''
        toggles = Configuration.get_toggles(toggles)
        spacing = spacing or toggles.grid_spacing
        levels = levels or toggles.grid_levels
        half_width = half_width or toggles.grid_half_width or default_half_width(params)
        settings = dict(half_width=half_width,
                        spacings=[spacing / 2 ** level for level in range(levels)],
                        width_ratio=toggles.grid_width_ratio,
                        stencil_order=stencil_order or toggles.grid_stencil_order,
                        max_spacing=toggles.grid_max_spacing,
                        max_unknowns=toggles.grid_max_unknowns)
        policy = cls.create(**settings)
        if (toggles.grid_stretch and policy.stencil_order == 2
                and policy.largest_dimension(params.n_electrons) > SHIFT_INVERT_LIMIT):
            policy = cls.create(stretch=toggles.grid_stretch, **settings)
            logging.info(f"Stretching grids beyond {toggles.grid_stretch:g} for Z={params.Z} B={params.B}, "
                         f"largest dimension is now {policy.largest_dimension(params.n_electrons)}")
        return policy

    def grids(self):
        primary, *others = self.half_widths
        for spacing in self.spacings:
            yield GridSpec.from_spacing(primary, spacing, self.stencil_order, self.stretch)
        for half_width in others:
            for spacing in self.spacings[:self.secondary_levels]:
                yield GridSpec.from_spacing(half_width, spacing, self.stencil_order, self.stretch)

    def largest_dimension(self, n_electrons):
        return max(grid.points for grid in self.grids()) ** n_electrons

    def check_size(self, n_electrons):
        ''' refuse the policy before anything is assembled '''
        cap = self.max_unknowns or Configuration.get_toggles().grid_max_unknowns
        largest = self.largest_dimension(n_electrons)
        if largest > cap:
            raise DomainError(f"Grid policy needs {largest} unknowns for {n_electrons} electrons, above the cap of {cap}")

    def to_dict(self):
        return dict(half_widths=list(self.half_widths), spacings=list(self.spacings),
                    stencil_order=self.stencil_order, secondary_levels=self.secondary_levels,
                    max_spacing=self.max_spacing, stretch=self.stretch, max_unknowns=self.max_unknowns)


def extrapolate(ladder):
    ''' Richardson extrapolation at the stencil order, with an error bar

    The ladder is a list of (GridSpec, energy). The half width with most
    entries must carry at least three halving spacings; entries at other
    half widths are compared with primary entries of the same spacing.
    '''
    by_width = {}
    for grid, energy in ladder:
        by_width.setdefault(round(grid.half_width, 9), []).append((grid, float(energy)))
    if len(by_width) < 2:
        raise LadderInsufficient("Extrapolation needs at least two half widths")

    primary_width = max(by_width, key=lambda width: (len(by_width[width]), -width))
    primary = sorted(by_width[primary_width], key=lambda entry: -entry[0].spacing)
    if len(primary) < 3:
        raise LadderInsufficient("Extrapolation needs at least three spacings at fixed half width")
    for (coarse, _), (fine, _) in zip(primary, primary[1:]):
        if abs(coarse.spacing / fine.spacing - 2.0) > 1e-6:
            raise LadderInsufficient("Spacings should halve along the ladder")

    factor = 2.0 ** primary[0][0].stencil_order - 1.0
    energies = [energy for _, energy in primary]
    extrapolants = [fine + (fine - coarse) / factor for coarse, fine in zip(energies, energies[1:])]
    estimate = extrapolants[-1]
    richardson = abs(extrapolants[-1] - extrapolants[-2])

    spread = 0.0
    matched = 0
    for width, entries in by_width.items():
        if width == primary_width:
            continue
        for grid, energy in entries:
            for reference, value in primary:
                if abs(reference.spacing - grid.spacing) <= 1e-9 * reference.spacing:
                    spread = max(spread, abs(energy - value))
                    matched += 1
    if not matched:
        raise LadderInsufficient("No spacing is shared across half widths")

    error_bar = max(richardson + spread, abs(estimate - energies[-1]))
    logging.debug(f"Extrapolated {estimate:.12g} +/- {error_bar:.3e} (richardson {richardson:.3e}, walls {spread:.3e})")
    return ConvergenceEstimate(extrapolated_energy=estimate,
                               error_bar=error_bar,
                               ladder=tuple((grid.spacing, grid.half_width, energy) for grid, energy in ladder))


def converge(params, policy=None, tol=1e-10):
    ''' extrapolated ground energy of a model, over the grids of a policy '''
    policy = policy or GridPolicy.default_for(params)
    policy.check_size(params.n_electrons)
    ladder = []
    for grid in policy.grids():
        operator = assemble(params, grid, max_spacing=policy.max_spacing, max_unknowns=policy.max_unknowns)
        result = ground_state(operator, k=1, tol=tol, with_vectors=False)
        logging.debug(f"N={params.n_electrons} Z={params.Z} L={grid.half_width} h={grid.spacing:.4g}: {result.energies[0]:.12g}")
        ladder.append((grid, result.energies[0]))
    return extrapolate(ladder)
