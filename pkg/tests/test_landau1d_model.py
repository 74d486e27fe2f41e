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

import logging
logging.getLogger('matplotlib').setLevel(logging.CRITICAL)

import math
from unittest.mock import patch
import numpy as np
import pytest

from landau1d import (DomainError, GridSpec, GridTooCoarse, ModelParams, PotentialKind, UnsupportedKind, assemble,
                      ground_state)
from landau1d.model import DiscreteOperator, kinetic_block, w_gradient, w_surface
from landau1d.specfun import SQRT_PI, potential, v0, w_pair

# pytestmark = pytest.mark.wip


@pytest.mark.unit_tests
def test_model_params():
    params = ModelParams(n_electrons=2, Z=1.0, B=4.0)
    assert params.mass == 0.5
    assert params.kinetic_prefactor == 2.0
    assert params.alpha == 1.0
    assert params.attraction == PotentialKind.regularized()
    assert params.with_electrons(1).n_electrons == 1
    assert params.with_charge(0.5).Z == 0.5
    assert params.with_charge(0.5).B == 4.0
    assert params.to_dict()['mass'] == 0.5


@pytest.mark.unit_tests
@pytest.mark.parametrize('arguments', [
    dict(n_electrons=3, Z=1.0, B=1.0),
    dict(n_electrons=2, Z=0.0, B=1.0),
    dict(n_electrons=2, Z=1.0, B=-1.0),
    dict(n_electrons=2, Z=1.0, B=math.inf),
    dict(n_electrons=2, Z=1.0, B=1.0, alpha=-0.5),
])
def test_model_params_on_invalid_input(arguments):
    with pytest.raises(DomainError):
        ModelParams(**arguments)


@pytest.mark.unit_tests
def test_model_params_refuses_coulomb_attraction():
    with pytest.raises(UnsupportedKind):
        ModelParams(n_electrons=1, Z=1.0, B=1.0, attraction=PotentialKind.coulomb())


@pytest.mark.unit_tests
def test_grid_spec():
    grid = GridSpec.from_spacing(half_width=10.0, spacing=0.5)
    assert grid.points == 39
    assert grid.spacing == 0.5
    nodes = grid.nodes
    assert len(nodes) == 39
    assert nodes[19] == 0.0
    assert np.array_equal(nodes, -nodes[::-1])
    assert nodes[0] == pytest.approx(-9.5)

    assert GridSpec(half_width=10.0, points=40).spacing == pytest.approx(20.0 / 41.0)
    assert np.array_equal(GridSpec(half_width=10.0, points=40).nodes, -GridSpec(half_width=10.0, points=40).nodes[::-1])


@pytest.mark.unit_tests
@pytest.mark.parametrize('arguments', [
    dict(half_width=0.0, points=40),
    dict(half_width=10.0, points=15),
    dict(half_width=10.0, points=40, stencil_order=3),
])
def test_grid_spec_on_invalid_input(arguments):
    with pytest.raises(DomainError):
        GridSpec(**arguments)


@pytest.mark.unit_tests
def test_kinetic_block():
    grid = GridSpec(half_width=5.0, points=19)
    block = kinetic_block(grid, 1.0).toarray()
    h = grid.spacing
    assert np.allclose(block, block.T)
    assert block[3, 3] == pytest.approx(2.0 / h ** 2)
    assert block[3, 4] == pytest.approx(-1.0 / h ** 2)
    assert block[3, 5] == 0.0

    fourth = kinetic_block(GridSpec(half_width=5.0, points=19, stencil_order=4), 1.0).toarray()
    assert fourth[3, 3] == pytest.approx(2.5 / h ** 2)
    assert fourth[3, 4] == pytest.approx(-4.0 / 3.0 / h ** 2)
    assert fourth[3, 5] == pytest.approx(1.0 / 12.0 / h ** 2)
    assert fourth[3, 6] == 0.0
    assert np.allclose(fourth, fourth.T)


@pytest.mark.unit_tests
def test_kinetic_block_scales_with_square_root_of_field():
    grid = GridSpec(half_width=5.0, points=19)
    assert np.allclose(kinetic_block(grid, 4.0).toarray(), 2.0 * kinetic_block(grid, 1.0).toarray(), rtol=1e-15, atol=0.0)


@pytest.mark.unit_tests
def test_assemble_one_electron():
    params = ModelParams(n_electrons=1, Z=0.8, B=1.0)
    grid = GridSpec(half_width=8.0, points=31)
    operator = assemble(params, grid)
    assert operator.dimension == 31
    expected = 2.0 / grid.spacing ** 2 - 0.8 * v0(grid.nodes)
    assert np.allclose(operator.diagonal, expected, rtol=1e-14)
    assert abs(operator.matrix - operator.matrix.T).max() == 0.0


@pytest.mark.unit_tests
def test_assemble_two_electrons():
    params = ModelParams(n_electrons=2, Z=0.8, B=1.0)
    grid = GridSpec(half_width=8.0, points=31)
    operator = assemble(params, grid)
    assert operator.dimension == 31 * 31
    nodes = grid.nodes
    i, j = 4, 27
    expected = 2.0 * 2.0 / grid.spacing ** 2 + w_surface(params, nodes[i], nodes[j])
    assert operator.diagonal[i * 31 + j] == pytest.approx(expected, rel=1e-13)
    assert abs(operator.matrix - operator.matrix.T).max() == 0.0

    vector = np.random.default_rng(5).standard_normal(operator.dimension)
    assert np.allclose(operator.matvec(vector), operator.matrix @ vector)


@pytest.mark.unit_tests
def test_assemble_refuses_coarse_grids():
    params = ModelParams(n_electrons=1, Z=1.0, B=1.0)
    with pytest.raises(GridTooCoarse):
        assemble(params, GridSpec(half_width=20.0, points=16))
    assemble(params, GridSpec(half_width=20.0, points=16), max_spacing=3.0)


@pytest.mark.unit_tests
def test_stretched_grid():
    grid = GridSpec(half_width=100.0, points=63, stretch=5.0)
    assert grid.extent == pytest.approx(5.0 * math.asinh(20.0), rel=1e-15)
    assert grid.spacing == pytest.approx(2.0 * grid.extent / 64.0, rel=1e-15)
    assert grid.edges[0] == pytest.approx(-100.0, rel=1e-12)
    assert grid.edges[-1] == pytest.approx(100.0, rel=1e-12)
    assert np.allclose(grid.nodes, -grid.nodes[::-1], rtol=0.0, atol=1e-12)
    assert grid.nodes[31] == 0.0

    gaps = np.diff(grid.edges)
    assert gaps[32] == pytest.approx(grid.spacing, rel=1e-2)
    assert np.all(np.diff(gaps[32:]) > 0)
    assert gaps[-1] > 10 * grid.spacing

    same = GridSpec.from_spacing(half_width=100.0, spacing=grid.spacing, stretch=5.0)
    assert same.points == 63
    assert grid.to_dict()['stretch'] == 5.0


@pytest.mark.unit_tests
@pytest.mark.parametrize('arguments', [
    dict(half_width=10.0, points=40, stretch=0.5),
    dict(half_width=10.0, points=40, stretch=5.0, stencil_order=4),
])
def test_stretched_grid_on_invalid_input(arguments):
    with pytest.raises(DomainError):
        GridSpec(**arguments)


@pytest.mark.unit_tests
def test_stretched_block():
    stretched = kinetic_block(GridSpec(half_width=10.0, points=39, stretch=5.0), 4.0)
    assert abs(stretched - stretched.T).max() == 0.0
    assert np.all(np.linalg.eigvalsh(stretched.toarray()) > 0)

    nearly_uniform = kinetic_block(GridSpec(half_width=10.0, points=39, stretch=1e6), 4.0).toarray()
    uniform = kinetic_block(GridSpec(half_width=10.0, points=39), 4.0).toarray()
    assert np.allclose(nearly_uniform, uniform, rtol=1e-6, atol=1e-9)


@pytest.mark.unit_tests
def test_assemble_refuses_oversize_grids(default_toggles):
    params = ModelParams(n_electrons=2, Z=1.0, B=1.0)
    with patch('landau1d.model.kinetic_block') as mocked:
        with pytest.raises(DomainError):
            assemble(params, GridSpec(half_width=200.0, points=1999), max_unknowns=1000000)
        default_toggles.grid_max_unknowns = 1000
        with pytest.raises(DomainError):
            assemble(params.with_electrons(1), GridSpec(half_width=200.0, points=1999))
    mocked.assert_not_called()


@pytest.mark.unit_tests
@pytest.mark.parametrize('grid', [
    GridSpec(half_width=8.0, points=31),
    GridSpec(half_width=30.0, points=41, stretch=3.0),
])
def test_assemble_commutes_with_exchange_and_reflection(grid):
    operator = assemble(ModelParams(n_electrons=2, Z=0.7, B=2.0), grid)
    n = grid.points

    def exchange(vector):
        return vector.reshape(n, n).T.ravel()

    def reflection(vector):
        return vector.reshape(n, n)[::-1, ::-1].ravel()

    rng = np.random.default_rng(7)
    for _ in range(5):
        vector = rng.standard_normal(n * n)
        image = operator.matvec(vector)
        for symmetry in (exchange, reflection):
            commutator = operator.matvec(symmetry(vector)) - symmetry(image)
            assert np.linalg.norm(commutator) <= 1e-12 * np.linalg.norm(image)


@pytest.mark.unit_tests
@pytest.mark.parametrize('n_electrons,grid', [
    (1, GridSpec(half_width=30.0, points=61, stretch=5.0)),
    (2, GridSpec(half_width=8.0, points=31)),
])
def test_ground_energy_does_not_increase_with_charge(n_electrons, grid):
    energies = [ground_state(assemble(ModelParams(n_electrons=n_electrons, Z=Z, B=1.0), grid),
                             with_vectors=False).energies[0]
                for Z in (0.3, 0.5, 0.7, 1.0, 1.3)]
    assert all(later <= earlier for earlier, later in zip(energies, energies[1:]))


@pytest.mark.unit_tests
def test_discrete_operator_from_any_matrix():
    grid = GridSpec(half_width=4.0, points=20)
    operator = DiscreteOperator(matrix=kinetic_block(grid, 1.0), grid=grid)
    assert operator.params is None
    assert operator.dimension == 20


@pytest.mark.unit_tests
def test_w_surface_at_origin():
    params = ModelParams(n_electrons=2, Z=0.5, B=1.0)
    assert w_surface(params, 0.0, 0.0) == pytest.approx((2.0 ** -0.5 - 1.0) * SQRT_PI, abs=1e-14)
    assert w_surface(params, 0.0, 0.0) == pytest.approx(-0.51915, abs=1e-4)

    params = ModelParams(n_electrons=2, Z=1.0 / (2.0 * math.sqrt(2.0)), B=1.0)
    assert w_surface(params, 0.0, 0.0) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.unit_tests
def test_w_surface_composition_and_symmetry():
    params = ModelParams(n_electrons=2, Z=0.7, B=1.0)
    x, y = np.meshgrid(np.linspace(-4.0, 4.0, 17), np.linspace(-3.0, 5.0, 17), indexing='ij')
    values = w_surface(params, x, y)
    expected = -0.7 * v0(x) - 0.7 * v0(y) + w_pair(1.0, x - y)
    assert np.allclose(values, expected, rtol=1e-14)
    assert np.allclose(w_surface(params, y, x), values, rtol=1e-14)
    assert np.allclose(w_surface(params, -x, -y), values, rtol=1e-14)


@pytest.mark.unit_tests
def test_w_surface_does_not_depend_on_field():
    weak = ModelParams(n_electrons=2, Z=0.7, B=0.01)
    strong = ModelParams(n_electrons=2, Z=0.7, B=1e4)
    assert w_surface(weak, 1.3, -0.2) == w_surface(strong, 1.3, -0.2)


@pytest.mark.unit_tests
def test_w_surface_with_cutoff_attraction():
    params = ModelParams(n_electrons=2, Z=1.0, B=1.0, attraction=PotentialKind.cutoff())
    expected = -potential(PotentialKind.cutoff(), 1.0) - potential(PotentialKind.cutoff(), -2.0) + w_pair(1.0, 3.0)
    assert w_surface(params, 1.0, -2.0) == pytest.approx(expected)


@pytest.mark.unit_tests
def test_w_gradient():
    params = ModelParams(n_electrons=2, Z=0.4, B=1.0)
    step = 1e-5
    for x, y in [(0.7, -1.3), (-2.0, 0.5), (3.1, 1.2)]:
        gradient = w_gradient(params, x, y)
        dx = (w_surface(params, x + step, y) - w_surface(params, x - step, y)) / (2 * step)
        dy = (w_surface(params, x, y + step) - w_surface(params, x, y - step)) / (2 * step)
        assert gradient.shape == (2,)
        assert gradient[0] == pytest.approx(dx, abs=1e-8)
        assert gradient[1] == pytest.approx(dy, abs=1e-8)

    grid = w_gradient(params, np.ones((3, 4)), -np.ones((3, 4)))
    assert grid.shape == (2, 3, 4)


@pytest.mark.unit_tests
def test_w_surface_needs_two_electrons():
    params = ModelParams(n_electrons=1, Z=0.4, B=1.0)
    with pytest.raises(DomainError):
        w_surface(params, 0.0, 0.0)
    with pytest.raises(DomainError):
        w_gradient(params, 1.0, 0.0)
