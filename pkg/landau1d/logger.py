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

import functools
import os
import sys
from types import SimpleNamespace

LOGGING_FORMAT = "[%(levelname)s] %(message)s"

VERBOSITY_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


def setup_logging(environ=None,
                  format=LOGGING_FORMAT,
                  name=None,
                  stream=sys.stdout,
                  verbosity=None):
    ''' route messages to a stream, at the level set by VERBOSITY '''
    logger = logging.getLogger(name)
    environ = environ or os.environ
    verbosity = verbosity or environ.get('VERBOSITY', 'INFO')
    if verbosity not in VERBOSITY_LEVELS:
        raise ValueError(f"Invalid verbosity '{verbosity}'")
    logger.setLevel(logging.__dict__[verbosity])
    handler = logging.StreamHandler(stream)
    handler.setFormatter(logging.Formatter(format))
    logger.handlers.clear()
    logger.addHandler(handler)
    return logger


def trap_exception(function):
    ''' turn exceptions of a command into a failure record

    The decorated function returns either its own result, or a SimpleNamespace
    with attributes `status`, `error` and `message` that the caller serializes.
    '''

    @functools.wraps(function)
    def safe_function(*args, **kwargs):
        try:
            return function(*args, **kwargs)

        except ValueError as error:  # invalid parameters, or unmet precondition
            if os.environ.get('VERBOSITY', 'INFO') != 'DEBUG':
                logging.error(error)
            else:
                logging.exception(error)
            return SimpleNamespace(status='DEBUG', error=type(error).__name__, message=str(error))

        except Exception as error:  # solver breakdown, or internal error
            logging.exception(error)
            return SimpleNamespace(status='ERROR', error=type(error).__name__, message=str(error))

    return safe_function
