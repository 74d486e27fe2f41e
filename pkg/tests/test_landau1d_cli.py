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
import pytest

from landau1d.binding import CriticalChargeResult
from landau1d.cli import build_parser, main, run
from landau1d.records import read_csv, read_record

# pytestmark = pytest.mark.wip


@pytest.mark.unit_tests
def test_potential(tmp_path):
    path = str(tmp_path / 'v0.csv')
    assert run(['potential', '--kind', 'v0', '--xmin', '0', '--xmax', '6', '--steps', '600', '--out', path]) == 0
    rows = read_csv(path)
    assert len(rows) == 601
    assert list(rows[0].keys()) == ['x', 'value']
    assert float(rows[0]['value']) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert float(rows[-1]['x']) == 6.0


@pytest.mark.unit_tests
def test_potential_for_all_kinds(tmp_path):
    path = str(tmp_path / 'all.csv')
    assert run(['potential', '--kind', 'all', '--xmin', '-1', '--xmax', '1', '--steps', '2', '--out', path]) == 0
    rows = read_csv(path)
    assert list(rows[0].keys()) == ['x', 'cutoff', 'v0', 'coulomb']
    assert rows[1]['coulomb'] == 'inf'
    assert float(rows[2]['coulomb']) == 1.0
    assert float(rows[2]['cutoff']) == 0.5


@pytest.mark.unit_tests
def test_potential_on_coulomb_origin(tmp_path):
    path = str(tmp_path / 'coulomb.csv')
    record = str(tmp_path / 'coulomb.json')
    assert run(['--record', record, 'potential', '--kind', 'coulomb', '--xmin', '0', '--out', path]) == 1
    assert not (tmp_path / 'coulomb.csv').exists()
    config, result, error = read_record(record)
    assert config.command == 'potential'
    assert result is None
    assert error['error'] == 'DomainError'


@pytest.mark.unit_tests
@pytest.mark.parametrize('argv', [
    ['potential', '--kind', 'v0', '--B', '4'],
    ['potential', '--kind', 'cutoff', '--m', '1'],
    ['potential', '--kind', 'all', '--B', '4'],
])
def test_potential_refuses_unused_level_or_field(tmp_path, argv):
    path = str(tmp_path / 'v.csv')
    record = str(tmp_path / 'v.json')
    assert run(['--record', record] + argv + ['--out', path]) == 1
    assert not (tmp_path / 'v.csv').exists()
    _, _, error = read_record(record)
    assert error['error'] == 'DomainError'


@pytest.mark.unit_tests
def test_potential_at_other_field(tmp_path):
    path = str(tmp_path / 'v.csv')
    assert run(['potential', '--kind', 'vm', '--m', '0', '--B', '4', '--steps', '6', '--out', path]) == 0
    rows = read_csv(path)
    assert float(rows[0]['value']) == pytest.approx(2.0 * math.sqrt(math.pi), rel=1e-15)


@pytest.mark.unit_tests
@pytest.mark.parametrize('argv', [
    [],
    ['bogus'],
    ['potential'],
    ['potential', '--kind', 'g5', '--out', 'x.csv'],
    ['bound', '--Z', '-1', '--out', 'x.json'],
    ['--threads', '0', 'bound', '--Z', '1', '--out', 'x.json'],
    ['landscape', 'critical-points', '--Z', '0.4', '--region', '1,2,3', '--out', 'x.csv'],
])
def test_usage_errors(argv):
    assert run(argv) == 2


@pytest.mark.unit_tests
def test_malformed_settings(tmp_path, capsys):
    path = str(tmp_path / 'bound.json')
    argv = ['--settings', 'fixtures/settings/malformed-settings.yaml', 'bound', '--Z', '1', '--out', path]
    assert run(argv) == 2
    assert 'usage' in capsys.readouterr().err
    assert not (tmp_path / 'bound.json').exists()


@pytest.mark.unit_tests
def test_missing_settings(tmp_path):
    path = str(tmp_path / 'bound.json')
    assert run(['--settings', str(tmp_path / 'missing.yaml'), 'bound', '--Z', '1', '--out', path]) == 2


@pytest.mark.unit_tests
def test_version(capsys):
    assert run(['--version']) == 0
    assert 'landau1d' in capsys.readouterr().out


@pytest.mark.unit_tests
def test_main(tmp_path):
    path = str(tmp_path / 'bound.json')
    with patch('sys.argv', ['landau1d', 'bound', '--Z', '1', '--out', path]):
        assert main() == 0


@pytest.mark.unit_tests
def test_bound(tmp_path):
    path = str(tmp_path / 'bound.json')
    assert run(['--settings', 'fixtures/settings/settings.yaml', 'bound', '--Z', '1', '--B', '1',
                '--kind', 'cutoff', '--out', path]) == 0
    config, result, error = read_record(path)
    assert config.command == 'bound'
    assert config.parameters['Z'] == 1.0
    assert config.settings['automation_threads'] == 2
    assert result['n_threshold'] == 3.5
    assert result['n_max_bound'] == 3
    assert error is None


@pytest.mark.unit_tests
def test_profiles(tmp_path):
    path = str(tmp_path / 'profiles.csv')
    assert run(['landscape', 'profiles', '--Z', '0.5,0.6', '--steps', '10', '--out', path]) == 0
    rows = read_csv(path)
    assert len(rows) == 22
    assert list(rows[0].keys()) == ['Z', 'x', 'w_antidiagonal', 'w_axis']
    assert {row['Z'] for row in rows} == {'0.5', '0.59999999999999998'}


@pytest.mark.unit_tests
def test_envelope(tmp_path):
    path = str(tmp_path / 'envelope.csv')
    assert run(['verify', 'envelope', '--steps', '100', '--out', path]) == 0
    rows = read_csv(path)
    assert len(rows) == 101
    assert list(rows[0].keys()) == ['x', 'g3', 'v0', 'g4', 'g_pi']
    for row in rows[1:]:
        assert float(row['g3']) < float(row['v0']) < float(row['g4'])


@pytest.mark.unit_tests
def test_envelope_on_negative_positions(tmp_path):
    assert run(['verify', 'envelope', '--xmin', '-1', '--out', str(tmp_path / 'envelope.csv')]) == 1


@pytest.mark.unit_tests
def test_odes(tmp_path):
    path = str(tmp_path / 'odes.csv')
    assert run(['verify', 'odes', '--steps', '10', '--out', path]) == 0
    rows = read_csv(path)
    assert len(rows) == 11
    assert 'localization_error_prime' in rows[0]


@pytest.mark.unit_tests
def test_pair_inequality(tmp_path):
    path = str(tmp_path / 'failures.csv')
    record = str(tmp_path / 'pair.json')
    assert run(['--record', record, 'verify', 'pair-inequality', '--kind', 'v0', '--samples', '2000', '--seed', '3',
                '--out', path]) == 0
    assert (tmp_path / 'failures.csv').read_text().splitlines() == ['x,y,lhs,pass']
    config, result, _ = read_record(record)
    assert config.seed == 3
    assert result['failures'] == 0
    assert result['samples'] == 2000


@pytest.mark.unit_tests
def test_pair_inequality_with_all_samples(tmp_path):
    path = str(tmp_path / 'samples.csv')
    assert run(['verify', 'pair-inequality', '--kind', 'cutoff', '--samples', '500', '--all', '--out', path]) == 0
    rows = read_csv(path)
    assert len(rows) == 500
    assert {row['pass'] for row in rows} == {'true'}


@pytest.mark.unit_tests
def test_convexity_chain(tmp_path):
    path = str(tmp_path / 'chain.csv')
    assert run(['verify', 'convexity-chain', '--samples', '500', '--out', path]) == 0
    assert (tmp_path / 'chain.csv').read_text().splitlines() == ['x,w,lhs,mid,rhs,holds']


@pytest.mark.unit_tests
def test_zc(tmp_path):
    path = str(tmp_path / 'zc.json')
    result = CriticalChargeResult(B=1.0, z_lo=0.6, z_hi=0.61, tolerance=0.01, trace=())
    with patch('landau1d.cli.critical_charge', return_value=result) as mocked:
        assert run(['zc', '--B', '1', '--tol', '0.01', '--out', path]) == 0
    mocked.assert_called_once_with(1.0, tol=0.01, steps=None)
    _, record, _ = read_record(path)
    assert record['z_c'] == pytest.approx(0.605)
    assert record['trace'] == []


@pytest.mark.integration_tests
def test_regime(tmp_path):
    path = str(tmp_path / 'regime.json')
    assert run(['landscape', 'regime', '--Z', '0.6', '--out', path]) == 0
    _, result, _ = read_record(path)
    assert result['regime'] == 'III'


@pytest.mark.unit_tests
def test_regime_uses_landscape_settings(tmp_path):
    settings = tmp_path / 'settings.yaml'
    settings.write_text("landscape:\n  scan_points: 31\n  step: 1.0e-4\n  newton_iterations: 20\n")
    path = str(tmp_path / 'regime.json')
    with patch('landau1d.cli.classify_regime', return_value=dict(regime='III')) as mocked:
        assert run(['--settings', str(settings), 'landscape', 'regime', '--Z', '0.6', '--out', path]) == 0
    mocked.assert_called_once_with(0.6, 1.0, scan_points=31, step=1e-4, iterations=20)
    _, result, _ = read_record(path)
    assert result['regime'] == 'III'
    assert result['origin_hessian_kind'] == 'Minimum'


@pytest.mark.integration_tests
def test_critical_points(tmp_path):
    path = str(tmp_path / 'points.csv')
    assert run(['landscape', 'critical-points', '--Z', '0.4', '--region', '-10,0,0,10', '--out', path]) == 0
    rows = read_csv(path)
    assert any(row['kind'] == 'Saddle' for row in rows)


@pytest.mark.integration_tests
def test_spectrum_on_single_grid(tmp_path):
    path = str(tmp_path / 'spectrum.json')
    assert run(['spectrum', '--N', '1', '--Z', '1', '--single-grid', '--half-width', '10', '--spacing', '0.25',
                '--states', '2', '--out', path]) == 0
    _, result, _ = read_record(path)
    energies = result['spectrum']['energies']
    assert len(energies) == 2
    assert energies[0] < energies[1]
    assert energies[0] < 0
    assert result['params']['n_electrons'] == 1


@pytest.mark.unit_tests
def test_build_parser():
    arguments = build_parser().parse_args(['potential', '--out', 'v0.csv'])
    assert arguments.kind == 'v0'
    assert arguments.steps == 600
    assert arguments.emits == 'csv'
