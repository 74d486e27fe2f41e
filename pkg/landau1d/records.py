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

import csv
from dataclasses import dataclass, field
from enum import Enum
import json
import logging
import os
import tempfile

import numpy as np

from . import __version__


@dataclass(frozen=True)
class RunConfig:
    ''' everything needed to replay one command '''

    command: str
    parameters: dict = field(default_factory=dict)
    seed: int = None
    version_stamp: str = __version__
    settings: dict = field(default_factory=dict)

    def to_dict(self):
        return dict(command=self.command,
                    parameters=to_jsonable(self.parameters),
                    seed=self.seed,
                    version_stamp=self.version_stamp,
                    settings=to_jsonable(self.settings))

    @classmethod
    def from_dict(cls, record):
        return cls(command=record['command'],
                   parameters=dict(record.get('parameters') or {}),
                   seed=record.get('seed'),
                   version_stamp=record.get('version_stamp', __version__),
                   settings=dict(record.get('settings') or {}))


def to_jsonable(item):
    ''' turn results into plain structures that json can serialize '''
    if hasattr(item, 'to_dict'):
        return to_jsonable(item.to_dict())
    if isinstance(item, Enum):
        return item.value
    if isinstance(item, dict):
        return {str(key): to_jsonable(value) for key, value in item.items()}
    if isinstance(item, (list, tuple)):
        return [to_jsonable(value) for value in item]
    if isinstance(item, np.ndarray):
        return to_jsonable(item.tolist())
    if isinstance(item, np.bool_):
        return bool(item)
    if isinstance(item, np.integer):
        return int(item)
    if isinstance(item, np.floating):
        return float(item)
    return item


def format_cell(value):
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return value


def atomic_write(path, write):
    ''' write to a temporary file in the target directory, then rename it '''
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    handle, temporary = tempfile.mkstemp(dir=directory, prefix='.landau1d-', suffix='.tmp')
    try:
        with os.fdopen(handle, 'w', newline='', encoding='utf-8') as stream:
            write(stream)
        os.replace(temporary, path)
    except BaseException:
        os.unlink(temporary)
        raise


def write_csv(path, rows, columns=None):
    ''' rows of dictionaries, header first, floats with 17 significant digits '''
    rows = [to_jsonable(row) for row in rows]
    columns = columns or (list(rows[0].keys()) if rows else [])
    if not columns:
        raise ValueError(f"No columns to write in '{path}'")

    def write(stream):
        writer = csv.DictWriter(stream, fieldnames=columns, extrasaction='ignore')
        writer.writeheader()
        for row in rows:
            writer.writerow({key: format_cell(row.get(key)) for key in columns})

    atomic_write(path, write)
    logging.info(f"Writing {len(rows)} rows to '{path}'")


def read_csv(path):
    with open(path, newline='', encoding='utf-8') as stream:
        return list(csv.DictReader(stream))


def build_record(config, result=None, error=None):
    record = dict(config=config.to_dict(), result=to_jsonable(result))
    if error is not None:
        record['error'] = to_jsonable(error)
    return record


def write_json(path, record):
    def write(stream):
        json.dump(to_jsonable(record), stream, indent=2, sort_keys=True)
        stream.write('\n')

    atomic_write(path, write)
    logging.info(f"Writing record to '{path}'")


def read_record(path):
    ''' parse a JSON record back into its RunConfig and result '''
    with open(path, encoding='utf-8') as stream:
        record = json.load(stream)
    return RunConfig.from_dict(record['config']), record.get('result'), record.get('error')
