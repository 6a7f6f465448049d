"""State file reader and writer.

A state file is a JSON document::

    {"dims": [2, 2], "matrix": [[[0.5, 0.0], [0.0, 0.0], ...], ...]}

``matrix`` holds D rows of D ``[re, im]`` pairs. The reader goes through
PyYAML's node composer (JSON is accepted as YAML flow syntax) so every
error can point at the line of the offending node.
"""
from math import isfinite, prod
from pathlib import Path
from typing import Dict, List, Tuple

import orjson
import yaml

from concurrence_bounds.config import DEFAULT_TOLERANCES, Tolerances
from concurrence_bounds.errors import ConcurrenceError, StateFileError
from concurrence_bounds.log import logger
from concurrence_bounds.qstate import AnyState, MultipartiteState, as_density, validate


def _line(node) -> int:
    return node.start_mark.line + 1


def _number(node, path, what: str) -> float:
    if not isinstance(node, yaml.ScalarNode) or node.style in ('"', "'"):
        raise StateFileError(path, f'{what} must be a number', _line(node))
    try:
        value = float(node.value)
    except ValueError:
        raise StateFileError(path, f'{what} must be a number, got {node.value!r}',
                             _line(node)) from None
    if not isfinite(value):
        raise StateFileError(path, f'{what} is not finite', _line(node))
    return value


def _sequence(node, path, what: str) -> list:
    if not isinstance(node, yaml.SequenceNode):
        raise StateFileError(path, f'{what} must be an array', _line(node))
    return node.value


def _fields(root, path) -> Dict[str, Tuple[yaml.Node, yaml.Node]]:
    if not isinstance(root, yaml.MappingNode):
        line = _line(root) if root is not None else None
        raise StateFileError(path, 'expected an object with "dims" and "matrix"', line)
    found = {key.value: (key, value) for key, value in root.value
             if isinstance(key, yaml.ScalarNode)}
    for name in ('dims', 'matrix'):
        if name not in found:
            raise StateFileError(path, f'missing field "{name}"', _line(root))
    return found


def _parse_dims(node, path) -> List[int]:
    dims = []
    for item in _sequence(node, path, 'dims'):
        value = _number(item, path, 'dims entry')
        if value != int(value) or value < 2:
            raise StateFileError(path, f'dims entries must be integers >= 2, got {item.value}',
                                 _line(item))
        dims.append(int(value))
    if not dims:
        raise StateFileError(path, 'dims must not be empty', _line(node))
    return dims


def _parse_matrix(node, path, size: int) -> List[List[complex]]:
    rows = _sequence(node, path, 'matrix')
    if len(rows) != size:
        raise StateFileError(path, f'matrix has {len(rows)} rows, dims need {size}', _line(node))
    matrix = []
    for r, row_node in enumerate(rows):
        entries = _sequence(row_node, path, f'matrix row {r}')
        if len(entries) != size:
            raise StateFileError(path, f'matrix row {r} has {len(entries)} entries, expected {size}',
                                 _line(row_node))
        row = []
        for c, entry in enumerate(entries):
            pair = _sequence(entry, path, f'entry ({r}, {c})')
            if len(pair) != 2:
                raise StateFileError(path, f'entry ({r}, {c}) must be a [re, im] pair',
                                     _line(entry))
            re = _number(pair[0], path, f'entry ({r}, {c}) real part')
            im = _number(pair[1], path, f'entry ({r}, {c}) imaginary part')
            row.append(complex(re, im))
        matrix.append(row)
    return matrix


def load_state(path, tol: Tolerances = DEFAULT_TOLERANCES) -> MultipartiteState:
    """Read and validate a state file.

    Raises StateFileError for unreadable files, syntax errors, malformed
    structure and any density-matrix invariant violation.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as exc:
        raise StateFileError(path, f'cannot read file: {exc.strerror or exc}') from exc

    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.MarkedYAMLError as exc:
        line = exc.problem_mark.line + 1 if exc.problem_mark else None
        raise StateFileError(path, f'syntax error: {exc.problem}', line) from exc
    except yaml.YAMLError as exc:
        raise StateFileError(path, f'syntax error: {exc}') from exc

    found = _fields(root, path)
    dims_key, dims_node = found['dims']
    matrix_key, matrix_node = found['matrix']
    dims = _parse_dims(dims_node, path)
    matrix = _parse_matrix(matrix_node, path, prod(dims))

    try:
        state = validate(dims, matrix, tol)
    except ConcurrenceError as exc:
        raise StateFileError(path, str(exc), _line(matrix_key)) from exc
    logger.debug('loaded {} state from {} (dims key at line {})',
                 'x'.join(map(str, dims)), path, _line(dims_key))
    return state


def state_document(s: AnyState) -> dict:
    """The state as the plain dict written to state files."""
    s = as_density(s)
    return {
        'dims': list(s.dims),
        'matrix': [[[float(z.real), float(z.imag)] for z in row] for row in s.rho],
    }


def save_state(path, s: AnyState) -> None:
    """Write ``s`` as a state file readable by load_state."""
    path = Path(path)
    path.write_bytes(orjson.dumps(state_document(s), option=orjson.OPT_INDENT_2))
    logger.debug('wrote state to {}', path)
