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
import math
import os
import sys

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402

from landau1d.records import read_csv  # noqa: E402

FIGURES = dict(potentials='potential-all.csv',
               envelope='envelope.csv',
               profiles='profiles.csv')


def finite_or_nan(text):
    value = float(text)
    return value if math.isfinite(value) else math.nan


def columns_of(rows, *names):
    return [[finite_or_nan(row[name]) for row in rows] for name in names]


def plot_potentials(source, target):
    ''' cut-off, regularized and Coulomb potentials on one chart '''
    rows = read_csv(source)
    x, cutoff, v0, coulomb = columns_of(rows, 'x', 'cutoff', 'v0', 'coulomb')
    plt.figure()
    plt.plot(x, cutoff, label='1/(|x|+1)')
    plt.plot(x, v0, label='V0')
    plt.plot(x, coulomb, label='1/|x|', linestyle='dotted')
    plt.ylim(0.0, 2.0)
    plt.xlabel('x')
    plt.legend(frameon=False)
    plt.tight_layout()
    plt.savefig(target, dpi=150)
    plt.close()


def plot_envelope(source, target):
    ''' V0 between the envelope functions g3 and g4 '''
    rows = read_csv(source)
    x, g3, v0, g4, g_pi = columns_of(rows, 'x', 'g3', 'v0', 'g4', 'g_pi')
    plt.figure()
    for values, label in ((g3, 'g3'), (v0, 'V0'), (g4, 'g4'), (g_pi, 'g_pi')):
        plt.plot(x, values, label=label)
    plt.xlabel('x')
    plt.legend(frameon=False)
    plt.tight_layout()
    plt.savefig(target, dpi=150)
    plt.close()


def plot_profiles(source, target):
    ''' W along y=-x and along y=0, one curve per charge '''
    rows = read_csv(source)
    figure, (left, right) = plt.subplots(1, 2, figsize=(10, 4), sharey=True)
    for charge in sorted({row['Z'] for row in rows}, key=float):
        selected = [row for row in rows if row['Z'] == charge]
        x, antidiagonal, axis = columns_of(selected, 'x', 'w_antidiagonal', 'w_axis')
        left.plot(x, antidiagonal, label=f"Z={float(charge):g}")
        right.plot(x, axis, label=f"Z={float(charge):g}")
    left.set_title('y = -x')
    right.set_title('y = 0')
    left.set_xlabel('x')
    right.set_xlabel('x')
    left.legend(frameon=False, fontsize=8)
    figure.tight_layout()
    figure.savefig(target, dpi=150)
    plt.close(figure)


def plot_figures(directory='.'):
    ''' turn the tables found in a directory into PNG charts '''
    plotters = dict(potentials=plot_potentials, envelope=plot_envelope, profiles=plot_profiles)
    written = []
    for name, table in FIGURES.items():
        source = os.path.join(directory, table)
        if not os.path.exists(source):
            logging.debug(f"No table '{source}', skipping {name}")
            continue
        target = os.path.join(directory, f"{name}.png")
        logging.info(f"Plotting '{source}' to '{target}'")
        plotters[name](source, target)
        written.append(target)
    return written


if __name__ == '__main__':
    verbosity = logging.__dict__.get(os.environ.get('VERBOSITY'), 'INFO')
    logging.basicConfig(format='%(message)s', level=verbosity)
    logging.getLogger('matplotlib').setLevel(logging.CRITICAL)
    plot_figures(sys.argv[1] if len(sys.argv) > 1 else '.')
