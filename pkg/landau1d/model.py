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

from dataclasses import dataclass, field
import logging
import math

import numpy as np
from scipy import sparse

from .configuration import Configuration
from .errors import DomainError, GridTooCoarse, UnsupportedKind
from .specfun import PotentialKind, Variant, potential, potential_prime, v0_prime, w_pair

INTERACTION_SCALE = (2.0 ** -0.5, 2.0 ** -0.5)  # prefactor and distance dilation of the pair interaction

STENCILS = {  # coefficients of -d2/dx2, from the center outwards
    2: (2.0, -1.0),
    4: (5.0 / 2.0, -4.0 / 3.0, 1.0 / 12.0),
}


@dataclass(frozen=True)
class ModelParams:
    ''' one instance of the model Hamiltonian h(N, Z, M), with M = B^-1/2 '''

    n_electrons: int
    Z: float
    B: float
    alpha: float = 1.0
    attraction: PotentialKind = field(default_factory=PotentialKind.regularized)

    def __post_init__(self):
        if self.n_electrons not in (1, 2):
            raise DomainError(f"Only one or two electrons are modelled, not {self.n_electrons}")
        if not self.Z > 0:
            raise DomainError(f"Nuclear charge should be positive, not {self.Z}")
        if not (math.isfinite(self.B) and self.B > 0):
            raise DomainError(f"Field strength should be positive, not {self.B}")
        if not self.alpha >= 0:
            raise DomainError(f"Interaction coupling should be nonnegative, not {self.alpha}")
        if self.attraction.variant == Variant.COULOMB:
            raise UnsupportedKind("Bare Coulomb attraction is singular on the grid")

    @property
    def mass(self):
        return 1.0 / math.sqrt(self.B)

    @property
    def kinetic_prefactor(self):
        return math.sqrt(self.B)  # 1/M

    @property
    def interaction_scale(self):
        return INTERACTION_SCALE

    def with_electrons(self, n_electrons):
        return ModelParams(n_electrons=n_electrons, Z=self.Z, B=self.B, alpha=self.alpha, attraction=self.attraction)

    def with_charge(self, Z):
        return ModelParams(n_electrons=self.n_electrons, Z=Z, B=self.B, alpha=self.alpha, attraction=self.attraction)

    def to_dict(self):
        return dict(n_electrons=self.n_electrons, Z=self.Z, B=self.B, alpha=self.alpha,
                    mass=self.mass, attraction=self.attraction.to_dict())


@dataclass(frozen=True)
class GridSpec:
    ''' grid on (-L, L) with Dirichlet walls at +-L

    Nodes are uniform by default. With a stretch length `a`, nodes are
    a sinh(xi / a) for uniform xi, so that the spacing grows linearly
    beyond `a` and the node count grows like log L. The spacing of a
    stretched grid is the spacing of xi, which is the spacing at the origin.
    '''

    half_width: float
    points: int
    stencil_order: int = 2
    stretch: float = None

    def __post_init__(self):
        if not self.half_width > 0:
            raise DomainError(f"Half width should be positive, not {self.half_width}")
        if self.points < 16:
            raise DomainError(f"Grid needs at least 16 points per axis, not {self.points}")
        if self.stencil_order not in STENCILS:
            raise DomainError(f"Stencil order should be 2 or 4, not {self.stencil_order}")
        if self.stretch is not None:
            if not self.stretch >= 1.0:
                raise DomainError(f"Stretch length should be at least 1, not {self.stretch}")
            if self.stencil_order != 2:
                raise DomainError("Stretched grids use the second-order stencil")

    @staticmethod
    def extent_of(half_width, stretch=None):
        ''' half width in the uniform coordinate xi '''
        if stretch is None:
            return half_width
        return stretch * math.asinh(half_width / stretch)

    @staticmethod
    def width_of(extent, stretch=None):
        if stretch is None:
            return extent
        return stretch * math.sinh(extent / stretch)

    @classmethod
    def from_spacing(cls, half_width, spacing, stencil_order=2, stretch=None):
        points = int(round(2.0 * cls.extent_of(half_width, stretch) / spacing)) - 1
        return cls(half_width=half_width, points=points, stencil_order=stencil_order, stretch=stretch)

    @property
    def extent(self):
        return self.extent_of(self.half_width, self.stretch)

    @property
    def spacing(self):
        return 2.0 * self.extent / (self.points + 1)

    def mapped(self, uniform):
        if self.stretch is None:
            return uniform
        return self.stretch * np.sinh(uniform / self.stretch)

    @property
    def nodes(self):
        # symmetric by construction, so that reflection maps nodes exactly
        return self.mapped(self.spacing * (np.arange(self.points) - (self.points - 1) / 2.0))

    @property
    def edges(self):
        ''' nodes with the two walls '''
        return self.mapped(self.spacing * (np.arange(self.points + 2) - (self.points + 1) / 2.0))

    def to_dict(self):
        return dict(half_width=self.half_width, points=self.points,
                    spacing=self.spacing, stencil_order=self.stencil_order, stretch=self.stretch)


@dataclass(frozen=True, eq=False)
class DiscreteOperator:
    ''' sparse symmetric matrix of a model Hamiltonian on a grid '''

    matrix: sparse.csr_matrix
    grid: GridSpec
    params: ModelParams = None

    @property
    def dimension(self):
        return self.matrix.shape[0]

    @property
    def diagonal(self):
        return self.matrix.diagonal()

    def matvec(self, vector):
        return self.matrix @ vector


def kinetic_block(grid, B):
    ''' sqrt(B) times the stencil of -d2/dx2, zero beyond the walls '''
    if grid.stretch is not None:
        return stretched_block(grid, B)
    coefficients = STENCILS[grid.stencil_order]
    offsets = []
    bands = []
    for distance, coefficient in enumerate(coefficients):
        for offset in sorted({distance, -distance}):
            offsets.append(offset)
            bands.append(np.full(grid.points - distance, coefficient))
    stencil = sparse.diags(bands, offsets, shape=(grid.points, grid.points), format='csr')
    return (math.sqrt(B) / grid.spacing ** 2) * stencil


def stretched_block(grid, B):
    ''' three-point stencil on uneven nodes, symmetrized by the square roots of node volumes '''
    gaps = np.diff(grid.edges)
    scale = 1.0 / np.sqrt(0.5 * (gaps[:-1] + gaps[1:]))
    diagonal = (1.0 / gaps[:-1] + 1.0 / gaps[1:]) * scale ** 2
    neighbours = -scale[:-1] * scale[1:] / gaps[1:-1]
    stencil = sparse.diags([neighbours, diagonal, neighbours], [-1, 0, 1], format='csr')
    return math.sqrt(B) * stencil


def w_surface(params, x, y):
    ''' W(x, y) = -Z V(x) - Z V(y) + alpha 2^-1/2 V_0(|x - y| / sqrt 2) '''
    if params.n_electrons != 2:
        raise DomainError("The two-electron surface needs a two-electron model")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    value = (-params.Z * np.asarray(potential(params.attraction, x))
             - params.Z * np.asarray(potential(params.attraction, y))
             + params.alpha * np.asarray(w_pair(1.0, x - y)))
    return float(value) if value.ndim == 0 else value


def w_gradient(params, x, y):
    ''' analytic gradient of W, valid away from the lines x=0, y=0 and x=y '''
    if params.n_electrons != 2:
        raise DomainError("The two-electron surface needs a two-electron model")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    pair = 0.5 * params.alpha * np.asarray(v0_prime((x - y) / math.sqrt(2.0)))
    dx = -params.Z * np.asarray(potential_prime(params.attraction, x)) + pair
    dy = -params.Z * np.asarray(potential_prime(params.attraction, y)) - pair
    if dx.ndim == 0:
        return np.array([float(dx), float(dy)])
    return np.stack([dx, dy])


def assemble(params, grid, max_spacing=0.5, max_unknowns=None):
    ''' discretize h(N, Z, M) on the grid, or on its tensor square for two electrons '''
    if grid.spacing > max_spacing * (1.0 + 1e-12):
        raise GridTooCoarse(f"Grid spacing {grid.spacing:.4g} exceeds {max_spacing:.4g}")
    max_unknowns = max_unknowns or Configuration.get_toggles().grid_max_unknowns
    dimension = grid.points ** params.n_electrons
    if dimension > max_unknowns:
        raise DomainError(f"Grid of {dimension} unknowns exceeds the cap of {max_unknowns}")

    kinetic = kinetic_block(grid, params.B)
    nodes = grid.nodes
    if params.n_electrons == 1:
        diagonal = -params.Z * np.asarray(potential(params.attraction, nodes))
        matrix = kinetic + sparse.diags(diagonal, format='csr')
    else:
        identity = sparse.identity(grid.points, format='csr')
        x, y = np.meshgrid(nodes, nodes, indexing='ij')
        diagonal = np.asarray(w_surface(params, x, y)).ravel()
        matrix = sparse.kron(kinetic, identity, format='csr') + sparse.kron(identity, kinetic, format='csr')
        matrix = matrix + sparse.diags(diagonal, format='csr')

    logging.debug(f"Assembled N={params.n_electrons} Z={params.Z} B={params.B} "
                  f"on {grid.points} points per axis, spacing {grid.spacing:.4g}")
    return DiscreteOperator(matrix=matrix.tocsr(), grid=grid, params=params)
