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

__version__ = "26.10.19"

from .binding import Verdict, binding_report, critical_charge  # noqa: E402
from .configuration import Configuration  # noqa: E402
from .eigensolve import GridPolicy, converge, ground_state  # noqa: E402
from .errors import (BracketNotFound, DegenerateAtBoundary, DomainError, GridTooCoarse,  # noqa: E402
                     LadderInsufficient, Landau1dError, NoConvergence, QuadratureNotConverged, UnsupportedKind)
from .landscape import classify_regime, find_critical_points, section_profiles  # noqa: E402
from .liebbound import consistency_check, ionization_bound, pair_inequality_scan  # noqa: E402
from .logger import setup_logging, trap_exception, LOGGING_FORMAT  # noqa: E402
from .model import GridSpec, ModelParams, assemble  # noqa: E402
from .specfun import PotentialKind, v0, vm  # noqa: E402

__all__ = ['BracketNotFound',
           'Configuration',
           'DegenerateAtBoundary',
           'DomainError',
           'GridPolicy',
           'GridSpec',
           'GridTooCoarse',
           'LOGGING_FORMAT',
           'LadderInsufficient',
           'Landau1dError',
           'ModelParams',
           'NoConvergence',
           'PotentialKind',
           'QuadratureNotConverged',
           'UnsupportedKind',
           'Verdict',
           'assemble',
           'binding_report',
           'classify_regime',
           'consistency_check',
           'converge',
           'critical_charge',
           'find_critical_points',
           'ground_state',
           'ionization_bound',
           'pair_inequality_scan',
           'section_profiles',
           'setup_logging',
           'trap_exception',
           'v0',
           'vm']
