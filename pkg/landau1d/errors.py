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

# precondition failures derive from ValueError, computational failures from RuntimeError


class Landau1dError(Exception):
    ''' base class of every error raised by this package '''


class DomainError(Landau1dError, ValueError):
    ''' parameters are outside the domain where a formula applies '''


class UnsupportedKind(Landau1dError, ValueError):
    ''' this potential kind is not handled by the requested operation '''


class GridTooCoarse(Landau1dError, ValueError):
    ''' grid spacing does not resolve the potential scale '''


class LadderInsufficient(Landau1dError, ValueError):
    ''' not enough grid levels or half widths to extrapolate '''


class DegenerateAtBoundary(Landau1dError, ValueError):
    ''' nuclear charge sits on a boundary between two regimes '''

    def __init__(self, message, boundary=None, report=None):
        super().__init__(message)
        self.boundary = boundary
        self.report = report


class QuadratureNotConverged(Landau1dError, RuntimeError):
    ''' quadrature did not meet the tolerance within the node budget '''


class NoConvergence(Landau1dError, RuntimeError):
    ''' eigensolver stopped before meeting the residual tolerance '''

    def __init__(self, iterations, best_residual):
        super().__init__(f"No convergence after {iterations} iterations, best residual {best_residual:.3e}")
        self.iterations = iterations
        self.best_residual = best_residual


class BracketNotFound(Landau1dError, RuntimeError):
    ''' binding margin does not change sign on the scan range '''
