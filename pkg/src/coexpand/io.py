"""File formats: matrices, complexes, voltage assignments, bounds, problems.

Exact rationals are written as "p/q" strings (integers as "p").
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path

from .complexes import SimplicialComplex, build_complex
from .covers import VoltageAssignment
from .errors import FormatError
from .linalg_exact import Matrix
from .tu import BoundsBox


def parse_rational(x):
    if isinstance(x, bool):
        raise FormatError("boolean where a number was expected")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            f = Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"not an exact rational: {x!r}") from exc
        return f.numerator if f.denominator == 1 else f
    if isinstance(x, float) and x.is_integer():
        return int(x)
    raise FormatError(f"not an exact rational: {x!r}")


def parse_int(x):
    v = parse_rational(x)
    if not isinstance(v, int):
        raise FormatError(f"expected an integer, got {x!r}")
    return v


def parse_vector(obj) -> tuple:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise FormatError(f"vector is not JSON: {obj!r}") from exc
    if not isinstance(obj, list):
        raise FormatError("vector must be a JSON list")
    return tuple(parse_rational(x) for x in obj)


def matrix_from_obj(obj) -> Matrix:
    """JSON {"rows", "cols", "data"} (flat row-major or nested), or a list of rows."""
    if isinstance(obj, list):
        return Matrix.from_rows([[parse_int(x) for x in r] for r in obj])
    if not isinstance(obj, dict) or not {"rows", "cols", "data"} <= obj.keys():
        raise FormatError('matrix JSON needs "rows", "cols" and "data"')
    r, c, data = parse_int(obj["rows"]), parse_int(obj["cols"]), obj["data"]
    if data and isinstance(data[0], list):
        data = [x for row in data for x in row]
    if len(data) != r * c:
        raise FormatError(f"{len(data)} entries for a {r}x{c} matrix")
    flat = [parse_int(x) for x in data]
    return Matrix.from_rows([flat[i * c:(i + 1) * c] for i in range(r)], cols=c)


def parse_matrix_text(text: str) -> Matrix:
    """First line "rows cols", then row-major integers separated by whitespace."""
    stripped = text.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        try:
            return matrix_from_obj(json.loads(stripped))
        except json.JSONDecodeError as exc:
            raise FormatError(f"bad matrix JSON: {exc}") from exc
    tokens = stripped.split()
    if len(tokens) < 2:
        raise FormatError("matrix text needs a 'rows cols' header")
    try:
        nums = [int(t) for t in tokens]
    except ValueError as exc:
        raise FormatError(f"non-integer token in matrix text: {exc}") from exc
    r, c, flat = nums[0], nums[1], nums[2:]
    if r < 0 or c < 0 or len(flat) != r * c:
        raise FormatError(f"{len(flat)} entries for a {r}x{c} matrix")
    return Matrix.from_rows([flat[i * c:(i + 1) * c] for i in range(r)], cols=c)


def matrix_to_obj(M: Matrix) -> dict:
    return {"rows": M.rows, "cols": M.cols, "data": [x for r in M.data for x in r]}


def matrix_to_text(M: Matrix) -> str:
    lines = [f"{M.rows} {M.cols}"] + [" ".join(str(x) for x in r) for r in M.data]
    return "\n".join(lines) + "\n"


def _label(x):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise FormatError(f"vertex labels must be integers or strings, got {x!r}")
    return x


def complex_from_obj(obj) -> SimplicialComplex:
    if not isinstance(obj, dict) or not isinstance(obj.get("facets"), list):
        raise FormatError('complex JSON needs a "facets" list')
    facets = []
    for f in obj["facets"]:
        if not isinstance(f, list) or not f:
            raise FormatError("every facet must be a nonempty list of vertex labels")
        facets.append(tuple(_label(v) for v in f))
    return build_complex(facets)


def complex_to_obj(X: SimplicialComplex) -> dict:
    """Facets with string/int labels; tuple labels (covers) become "base.sheet" strings."""
    def enc(v):
        if isinstance(v, tuple):
            return ".".join(str(enc(x)) for x in v)
        return v
    return {"facets": [[enc(v) for v in X.labeled(f)] for f in X.facets]}


def _match_label(token: str, labels_by_str: dict):
    if token not in labels_by_str:
        raise FormatError(f"unknown vertex {token!r} in voltage file")
    return labels_by_str[token]


def voltage_from_obj(obj, X: SimplicialComplex | None = None) -> VoltageAssignment:
    """{"degree": d, "tree": [[u, v], ...], "voltages": {"u-v": [images], ...}}."""
    if not isinstance(obj, dict) or "degree" not in obj:
        raise FormatError('voltage JSON needs "degree"')
    by_str = {str(v): v for v in X.vertices} if X is not None else None

    def lab(x):
        if by_str is None:
            return _label(x)
        return _match_label(str(x), by_str)

    tree = [tuple(lab(x) for x in e) for e in obj.get("tree", [])]
    if any(len(e) != 2 for e in tree):
        raise FormatError("tree edges are vertex pairs")
    volt = {}
    for key, perm in obj.get("voltages", {}).items():
        u, sep, v = key.partition("-")
        if not sep:
            raise FormatError(f"voltage key {key!r} is not of the form 'u-v'")
        if not isinstance(perm, list):
            raise FormatError("a voltage is a list of images")
        volt[(lab(u), lab(v))] = tuple(parse_int(x) for x in perm)
    return VoltageAssignment(parse_int(obj["degree"]), tuple(tree), volt)


def voltage_to_obj(va: VoltageAssignment) -> dict:
    return {"degree": va.degree, "tree": [list(e) for e in va.spanning_tree],
            "voltages": {f"{u}-{v}": list(p) for (u, v), p in va.voltages.items()}}


def _bound_value(x):
    if x in ("inf", "+inf"):
        return math.inf
    if x == "-inf":
        return -math.inf
    return parse_int(x)


def bounds_from_obj(obj) -> BoundsBox:
    """Keys lower/upper/row_lower/row_upper; "inf" and "-inf" strings for infinities."""
    try:
        return BoundsBox(*(tuple(_bound_value(x) for x in obj[k])
                           for k in ("lower", "upper", "row_lower", "row_upper")))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bounds JSON needs lower/upper/row_lower/row_upper lists ({exc})") from exc


def load_json(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from exc


def load_matrix(path) -> Matrix:
    try:
        return parse_matrix_text(Path(path).read_text())
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from exc


def load_complex(source: str) -> SimplicialComplex:
    """A complex file, or ``builtin:NAME`` for a bundled complex."""
    from .library import NAMED

    if source.startswith("builtin:"):
        name = source.split(":", 1)[1]
        if name not in NAMED:
            raise FormatError(f"unknown builtin complex {name!r}; choose from {sorted(NAMED)}")
        return NAMED[name]()
    return complex_from_obj(load_json(source))


def _encode(x):
    if isinstance(x, dict):
        return {str(k): _encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_encode(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def dumps(obj, pretty: bool = False) -> str:
    """Deterministic JSON; exact rationals and infinities become strings."""
    return json.dumps(_encode(obj), sort_keys=True, indent=2 if pretty else None,
                      allow_nan=False)


def problem_from_obj(obj) -> tuple[Matrix, tuple | None]:
    """{"A": matrix, "v": [ints]}; ``v`` may be omitted."""
    if not isinstance(obj, dict) or "A" not in obj:
        raise FormatError('problem JSON needs "A"')
    A = matrix_from_obj(obj["A"])
    v = parse_vector(obj["v"]) if "v" in obj else None
    if v is not None and len(v) != A.rows:
        raise FormatError(f"v has {len(v)} entries, A has {A.rows} rows")
    return A, v


def load_input(path: str):
    """Sniff a file: ("complex", X), ("problem", (A, v)) or ("matrix", A)."""
    if path.startswith("builtin:"):
        return "complex", load_complex(path)
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from exc
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON ({exc})") from exc
        if isinstance(obj, dict) and "facets" in obj:
            return "complex", complex_from_obj(obj)
        if isinstance(obj, dict) and "A" in obj:
            return "problem", problem_from_obj(obj)
        return "matrix", matrix_from_obj(obj)
    return "matrix", parse_matrix_text(text)
