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

import pytest

from landau1d import GridPolicy, GridSpec


@pytest.fixture
def given_a_small_policy():
    return _given_a_small_policy


def _given_a_small_policy(half_width=16.0, spacings=(0.5, 0.25, 0.125), stencil_order=2):
    ''' cheap ladder for two-electron solves at unit field '''
    return GridPolicy.create(half_width=half_width, spacings=spacings, stencil_order=stencil_order)


@pytest.fixture
def given_a_synthetic_ladder():
    return _given_a_synthetic_ladder


def _given_a_synthetic_ladder(energy=-1.0, slope=0.3, walls=0.0, stencil_order=2):
    ''' energies e + c h^p on three halving grids at L=10, plus one grid at L=12 '''
    primary = [GridSpec(half_width=10.0, points=points, stencil_order=stencil_order) for points in (19, 39, 79)]
    ladder = [(grid, energy + slope * grid.spacing ** stencil_order) for grid in primary]
    secondary = GridSpec(half_width=12.0, points=23, stencil_order=stencil_order)
    ladder.append((secondary, energy + slope * secondary.spacing ** stencil_order + walls))
    return ladder
