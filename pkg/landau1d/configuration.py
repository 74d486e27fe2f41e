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

import builtins
import logging
import os
from types import SimpleNamespace
import yaml


class Configuration:
    ''' toggles are accessible from every python modules '''

    ALLOWED_ATTRIBUTES = dict(
        accuracy_abs_tol='float',
        accuracy_max_quadrature_nodes='int',
        accuracy_rel_tol='float',
        automation_threads='int',
        automation_verbosity='str',
        grid_half_width='float',
        grid_levels='int',
        grid_max_spacing='float',
        grid_max_unknowns='int',
        grid_spacing='float',
        grid_stencil_order='int',
        grid_stretch='float',
        grid_width_ratio='float',
        landscape_newton_iterations='int',
        landscape_scan_points='int',
        landscape_step='float',
        scan_range='float',
        scan_samples='int',
        scan_seed='int',
        scan_steps='int',
        solver_states='int',
        solver_tolerance='float',
    )

    @classmethod
    def initialize(cls, stream=None, toggles=None):
        if toggles is None:
            builtins.toggles = SimpleNamespace()
            toggles = builtins.toggles
        cls.set_default_values(toggles=toggles)
        if stream:
            cls.set_from_yaml(stream=stream, toggles=toggles)
        elif toggles.settings_file:
            cls.set_from_yaml(stream=toggles.settings_file, toggles=toggles)
        cls.set_from_environment(toggles=toggles)
        return toggles

    @classmethod
    def get_toggles(cls, toggles=None):
        ''' use explicit toggles, else global ones, else plain default values '''
        if toggles:
            return toggles
        if hasattr(builtins, 'toggles'):
            return builtins.toggles
        toggles = SimpleNamespace()
        cls.set_default_values(toggles=toggles)
        cls.set_from_environment(toggles=toggles)
        return toggles

    @staticmethod
    def set_default_values(toggles=None):
        toggles = toggles or builtins.toggles

        # use environment to locate settings file, if any
        toggles.settings_file = os.environ.get('SETTINGS')

        toggles.accuracy_abs_tol = 1e-300
        toggles.accuracy_max_quadrature_nodes = 512
        toggles.accuracy_rel_tol = 1e-12
        toggles.automation_threads = 1
        toggles.automation_verbosity = 'INFO'
        toggles.grid_half_width = None      # derived from the expected decay length
        toggles.grid_levels = 3             # halvings of the coarsest spacing
        toggles.grid_max_spacing = 0.5      # beyond this the potential cusp is not resolved
        toggles.grid_max_unknowns = 2000000  # tensor grids beyond this do not fit in memory
        toggles.grid_spacing = 0.5          # coarsest spacing of the ladder
        toggles.grid_stencil_order = 2
        toggles.grid_stretch = 5.0          # sinh stretch length when uniform grids get too large
        toggles.grid_width_ratio = 1.2      # secondary half width, for boundary sensitivity
        toggles.landscape_newton_iterations = 50
        toggles.landscape_scan_points = 61
        toggles.landscape_step = 1e-5
        toggles.scan_range = 50.0
        toggles.scan_samples = 100000
        toggles.scan_seed = 20240601
        toggles.scan_steps = 5              # charges sampled on the initial bracket scan
        toggles.solver_states = 1
        toggles.solver_tolerance = 1e-10

        for key in sorted(toggles.__dict__.keys()):
            value = toggles.__dict__.get(key)
            logging.debug("{0} = {1}".format(key, value))

    @classmethod
    def set_from_yaml(cls, stream, toggles=None):
        if isinstance(stream, str):
            with open(stream) as handle:
                logging.info(f"Loading configuration from '{stream}'")
                settings = yaml.safe_load(handle)
                cls.set_from_settings(settings=settings or {}, toggles=toggles)
        else:
            settings = yaml.safe_load(stream)
            cls.set_from_settings(settings=settings or {}, toggles=toggles)

    @classmethod
    def set_from_settings(cls, settings={}, toggles=None):
        if not isinstance(settings, dict):
            raise AttributeError("Settings should be a mapping of sections")
        for key in settings.keys():
            if isinstance(settings[key], dict):
                for subkey in settings[key].keys():
                    flatten = "{0}_{1}".format(key, subkey)
                    value = settings[key].get(subkey)
                    cls.set_attribute(flatten, value, toggles=toggles)
            else:
                cls.set_attribute(key, settings[key], toggles=toggles)

    @staticmethod
    def set_from_environment(toggles=None):
        toggles = toggles or builtins.toggles
        threads = os.environ.get('LANDAU1D_THREADS')
        if threads:
            if not threads.isdigit() or int(threads) < 1:
                raise AttributeError(f"Invalid value '{threads}' for LANDAU1D_THREADS")
            logging.debug(f"using LANDAU1D_THREADS = {threads}")
            toggles.automation_threads = int(threads)
        verbosity = os.environ.get('VERBOSITY')
        if verbosity:
            toggles.automation_verbosity = verbosity

    @classmethod
    def set_attribute(cls, key, value, toggles=None):
        toggles = toggles or builtins.toggles
        if cls.ALLOWED_ATTRIBUTES.get(key) == 'float' and isinstance(value, str):  # YAML reads 1e-9 as text
            try:
                value = float(value)
            except ValueError:
                raise AttributeError(f"Invalid value '{value}' for configuration attribute '{key}'")
        cls.validate_attribute(key, value, context=cls.ALLOWED_ATTRIBUTES)
        if cls.ALLOWED_ATTRIBUTES[key] == 'float' and value is not None:
            value = float(value)
        logging.debug("{0} = {1}".format(key, value))
        setattr(toggles, key, value)

    @classmethod
    def validate_attribute(cls, key, value, context):
        kind = context.get(key)
        if not kind:
            raise AttributeError(f"Unknown configuration attribute '{key}'")
        if value is None:
            return
        if isinstance(value, bool) and kind != 'bool':
            raise AttributeError(f"Invalid type '{type(value).__name__}' for configuration attribute '{key}'")
        if (kind == 'float') and not isinstance(value, (int, float)):
            raise AttributeError(f"Invalid type '{type(value).__name__}' for configuration attribute '{key}'")
        elif (kind == 'int') and not isinstance(value, int):
            raise AttributeError(f"Invalid type '{type(value).__name__}' for configuration attribute '{key}'")
        elif (kind == 'str') and not isinstance(value, str):
            raise AttributeError(f"Invalid type '{type(value).__name__}' for configuration attribute '{key}'")

    @classmethod
    def get_threads(cls, toggles=None):
        ''' cap on parallel batch jobs '''
        toggles = cls.get_toggles(toggles)
        return max(1, int(toggles.automation_threads))

    @classmethod
    def as_dict(cls, toggles=None):
        ''' resolved settings, for run records '''
        toggles = cls.get_toggles(toggles)
        return {key: getattr(toggles, key) for key in sorted(cls.ALLOWED_ATTRIBUTES.keys()) if hasattr(toggles, key)}
