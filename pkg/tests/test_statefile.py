"""Tests for concurrence_bounds.statefile module."""
import json
from pathlib import Path

import numpy as np
import pytest

from concurrence_bounds.config import Tolerances
from concurrence_bounds.errors import StateFileError
from concurrence_bounds.qstate import ghz, random_density, white_noise_mix
from concurrence_bounds.statefile import load_state, save_state, state_document


def _pairs(m):
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m, dtype=complex)]


def _write(tmp_path, doc, name='state.json'):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding='utf-8')
    return path


# =============================================================================
# Loading
# =============================================================================

def test_load_maximally_mixed(tmp_path):
    path = _write(tmp_path, {'dims': [2, 2], 'matrix': _pairs(np.eye(4) / 4)})
    s = load_state(path)
    assert s.dims == (2, 2)
    assert np.allclose(s.rho, np.eye(4) / 4)


def test_load_complex_entries(tmp_path):
    rng = np.random.default_rng(31)
    rho = random_density([2, 3], rng).rho
    s = load_state(_write(tmp_path, {'dims': [2, 3], 'matrix': _pairs(rho)}))
    assert np.allclose(s.rho, rho)


def test_load_yaml_layout(tmp_path):
    path = tmp_path / 'state.yaml'
    path.write_text(
        'dims: [2]\n'
        'matrix:\n'
        '  - [[0.5, 0], [0, 0]]\n'
        '  - [[0, 0], [0.5, 0]]\n',
        encoding='utf-8')
    assert np.allclose(load_state(path).rho, np.eye(2) / 2)


def test_trace_error_reports_matrix_line(tmp_path):
    path = tmp_path / 'bad.json'
    path.write_text(
        '{\n'
        '  "dims": [2, 2],\n'
        '  "matrix": ' + json.dumps(_pairs(0.9 * np.eye(4) / 4)) + '\n'
        '}\n',
        encoding='utf-8')
    with pytest.raises(StateFileError) as exc:
        load_state(path)
    assert exc.value.line == 3
    assert 'trace' in str(exc.value)
    assert str(exc.value).startswith(f'{path}:3:')


def test_row_length_error_reports_row_line(tmp_path):
    path = tmp_path / 'short.json'
    path.write_text(
        '{"dims": [2],\n'
        ' "matrix": [\n'
        '   [[0.5, 0], [0, 0]],\n'
        '   [[0.5, 0]]\n'
        ' ]}\n',
        encoding='utf-8')
    with pytest.raises(StateFileError) as exc:
        load_state(path)
    assert exc.value.line == 4
    assert 'row 1' in exc.value.message


def test_syntax_error_has_line(tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{"dims": [2],\n "matrix": [[[1, 0]\n', encoding='utf-8')
    with pytest.raises(StateFileError) as exc:
        load_state(path)
    assert exc.value.line is not None
    assert 'syntax error' in exc.value.message


@pytest.mark.parametrize('doc,fragment', [
    ({'matrix': []}, 'missing field "dims"'),
    ({'dims': [2]}, 'missing field "matrix"'),
    ({'dims': [1], 'matrix': []}, 'integers >= 2'),
    ({'dims': [], 'matrix': []}, 'must not be empty'),
    ({'dims': [2], 'matrix': [[[1, 0], [0, 0]]]}, 'rows'),
    ({'dims': [2], 'matrix': [[[1, 0], [0]], [[0, 0], [0, 0]]]}, '[re, im]'),
    ({'dims': [2], 'matrix': [[[1, 0], ['a', 0]], [[0, 0], [0, 0]]]}, 'must be a number'),
    ({'dims': 2, 'matrix': []}, 'must be an array'),
])
def test_malformed_documents(tmp_path, doc, fragment):
    with pytest.raises(StateFileError) as exc:
        load_state(_write(tmp_path, doc))
    assert fragment in exc.value.message


def test_not_an_object(tmp_path):
    with pytest.raises(StateFileError):
        load_state(_write(tmp_path, [1, 2, 3]))


def test_empty_file(tmp_path):
    path = tmp_path / 'empty.json'
    path.write_text('', encoding='utf-8')
    with pytest.raises(StateFileError):
        load_state(path)


def test_missing_file(tmp_path):
    with pytest.raises(StateFileError) as exc:
        load_state(tmp_path / 'absent.json')
    assert exc.value.line is None


def test_positivity_error(tmp_path):
    doc = {'dims': [2], 'matrix': _pairs(np.diag([1.1, -0.1]))}
    with pytest.raises(StateFileError) as exc:
        load_state(_write(tmp_path, doc))
    assert 'eigenvalue' in exc.value.message


def test_loose_tolerance_accepts_tomography_noise(tmp_path):
    doc = {'dims': [2], 'matrix': _pairs(np.diag([1.0 + 1e-6, -1e-6]))}
    path = _write(tmp_path, doc)
    with pytest.raises(StateFileError):
        load_state(path)
    assert load_state(path, Tolerances().with_validation(1e-5)).dims == (2,)


# =============================================================================
# Saving
# =============================================================================

def test_save_then_load(tmp_path):
    s = white_noise_mix(ghz(3), 0.4)
    path = tmp_path / 'ghz.json'
    save_state(path, s)
    loaded = load_state(path)
    assert loaded.dims == s.dims
    assert np.allclose(loaded.rho, s.rho, atol=1e-15)


def test_saved_file_is_json(tmp_path):
    path = tmp_path / 'bell.json'
    save_state(path, ghz(2))
    doc = json.loads(path.read_text(encoding='utf-8'))
    assert doc['dims'] == [2, 2]
    assert doc['matrix'][0][3] == pytest.approx([0.5, 0.0])


def test_state_document_accepts_pure_state():
    doc = state_document(ghz(2))
    assert len(doc['matrix']) == 4
    assert all(len(row) == 4 for row in doc['matrix'])


def test_shipped_bell_example():
    path = Path(__file__).resolve().parent.parent / 'jobs' / 'bell.json'
    s = load_state(path)
    assert s.dims == (2, 2)
    assert s.rho[0, 3] == 0.5
