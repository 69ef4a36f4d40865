"""
JSON Input Formats

Loaders for quivers, invariant specs, cohomology models, dg categories and
dg functors. Every loader raises InputValidationError for malformed data; the
domain constructors then raise their own errors for inconsistent data.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from .abgroup import FgAbGroup
from .dgcore import (
    DgEndofunctor,
    FiniteDgCategory,
    FiniteDgCategoryBuilder,
    validate_functor,
)
from .errors import InputValidationError
from .exactla import IntMatrix
from .fields import FieldMatrix, field_from_name
from .mukai import CohomologyModel, build_model
from .orbit_triangle import (
    DegreeData,
    FieldDegree,
    GroupDegree,
    InvariantKind,
    InvariantSpec,
)
from .quiver import Quiver

PathLike = Union[str, Path]


def read_json(path: PathLike) -> Any:
    """
    Read and parse a JSON file.

    Raises:
        InputValidationError: If the file is missing or not valid JSON
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputValidationError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputValidationError(f"{path} is not valid JSON: {exc}") from None


def _require(data: Any, key: str, kind: Any, context: str) -> Any:
    if not isinstance(data, Mapping) or key not in data:
        raise InputValidationError(f"{context}: missing key {key!r}")
    value = data[key]
    if not isinstance(value, kind):
        raise InputValidationError(
            f"{context}: {key!r} has unexpected type {type(value).__name__}"
        )
    return value


def _int(value: Any, context: str) -> int:
    if isinstance(value, bool):
        raise InputValidationError(f"{context}: {value!r} is not an integer")
    try:
        return int(value)
    except (TypeError, ValueError):
        raise InputValidationError(f"{context}: {value!r} is not an integer") from None


def _int_rows(rows: Any, context: str) -> List[List[int]]:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputValidationError(f"{context}: expected a list of rows")
    return [[_int(v, context) for v in row] for row in rows]


def load_quiver(path: PathLike) -> Quiver:
    """Load {"vertices": [...], "arrows": [[s, t], ...]}."""
    return Quiver.from_json(read_json(path), name=Path(path).stem)


def _group(value: Any, context: str) -> FgAbGroup:
    if isinstance(value, str):
        return FgAbGroup.parse(value)
    rank = _int(_require(value, "rank", (int, str), context), context)
    torsion = [_int(t, context) for t in value.get("torsion", [])]
    return FgAbGroup.from_invariants(rank, torsion)


def _degree_data(
    entry: Any, field_coefficients: bool, field_name: Any, context: str
) -> DegreeData:
    if not isinstance(entry, Mapping):
        raise InputValidationError(f"{context}: degree entry must be an object")
    auto = entry.get("auto")
    if field_coefficients:
        dimension = _int(_require(entry, "dimension", (int, str), context), context)
        return FieldDegree.of(dimension, auto, field_from_name(field_name))
    group = _group(_require(entry, "group", (Mapping, str), context), context)
    matrix = None
    if auto is not None:
        rows = _int_rows(auto, context)
        matrix = IntMatrix.from_rows(rows, cols=len(rows))
    return GroupDegree.of(group, matrix)


def spec_from_json(data: Any) -> InvariantSpec:
    """
    Build an InvariantSpec from
    {"flags": {...}, "field": "Q", "degrees": {"0": {"group": ..., "auto": ...}}}.

    Field-coefficient degrees give "dimension" instead of "group".
    """
    if not isinstance(data, Mapping):
        raise InputValidationError("spec JSON must be an object")
    flags = data.get("flags", {})
    if not isinstance(flags, Mapping):
        raise InputValidationError("spec: 'flags' must be an object")
    degrees_json = _require(data, "degrees", Mapping, "spec")
    field_coefficients = bool(flags.get("field_coefficients", False))
    degrees: Dict[int, DegreeData] = {}
    for key, entry in degrees_json.items():
        n = _int(key, "spec degree")
        degrees[n] = _degree_data(
            entry, field_coefficients, data.get("field"), f"spec degree {n}"
        )
    invariant = str(flags.get("invariant", InvariantKind.KH.value))
    try:
        kind = InvariantKind(invariant)
    except ValueError:
        supported = ", ".join(k.value for k in InvariantKind)
        raise InputValidationError(
            f"Unsupported invariant: {invariant}. Supported invariants are: "
            f"{supported}"
        ) from None
    modulus = flags.get("modulus")
    return InvariantSpec(
        degrees,
        connective=bool(flags.get("connective", False)),
        two_periodic=bool(flags.get("two_periodic", False)),
        field_coefficients=field_coefficients,
        identity_action=bool(flags.get("identity_action", False)),
        invariant=kind,
        modulus=None if modulus is None else _int(modulus, "spec modulus"),
    )


def load_spec(path: PathLike) -> InvariantSpec:
    return spec_from_json(read_json(path))


def model_from_json(data: Any) -> CohomologyModel:
    """
    Build a model from
    {"name", "basis", "degrees", "mult": [{"left", "right", "result"}],
    "pairing", "classes"}.
    """
    basis = _require(data, "basis", list, "model")
    raw_degrees = _require(data, "degrees", list, "model")
    degrees = [_int(d, "model degrees") for d in raw_degrees]
    products: Dict[Tuple[str, str], Mapping[str, Any]] = {}
    for entry in data.get("mult", []):
        left = str(_require(entry, "left", str, "model mult"))
        right = str(_require(entry, "right", str, "model mult"))
        products[(left, right)] = _require(entry, "result", Mapping, "model mult")
    pairing = _require(data, "pairing", list, "model")
    classes = _require(data, "classes", Mapping, "model")
    return build_model(
        str(data.get("name", "model")), basis, degrees, products, pairing, classes
    )


def load_model(path: PathLike) -> CohomologyModel:
    return model_from_json(read_json(path))


def category_from_json(data: Any) -> FiniteDgCategory:
    """
    Build a validated dg category from
    {"name", "field", "objects", "homs": [...], "composition": [...]}.

    Each hom gives "source", "target", "degrees" and optionally "labels",
    "differential" (columns are images) and "unit" (basis index). Each
    composition entry gives "objects": [x, y, z], "g", "f" and "result".
    """
    if not isinstance(data, Mapping):
        raise InputValidationError("category JSON must be an object")
    builder = FiniteDgCategoryBuilder(field_from_name(data.get("field")))
    builder.with_name(str(data.get("name", "A")))
    for label in _require(data, "objects", list, "category"):
        builder.with_object(str(label))
    for entry in data.get("homs", []):
        source = str(_require(entry, "source", str, "category hom"))
        target = str(_require(entry, "target", str, "category hom"))
        context = f"hom({source}, {target})"
        degrees = [_int(d, context) for d in _require(entry, "degrees", list, context)]
        builder.with_hom(source, target, degrees, entry.get("labels"))
        if "differential" in entry:
            builder.with_differential(
                source, target, _require(entry, "differential", list, context)
            )
        if source == target and "unit" in entry:
            builder.with_unit(source, _int(entry["unit"], context))
    for entry in data.get("composition", []):
        objects = _require(entry, "objects", list, "composition")
        if len(objects) != 3:
            raise InputValidationError("composition: 'objects' must list x, y, z")
        result = entry.get("result")
        if isinstance(result, Mapping):
            result = {_int(k, "composition"): v for k, v in result.items()}
        elif not isinstance(result, list):
            raise InputValidationError("composition: 'result' must be a list or object")
        builder.with_composition(
            (str(objects[0]), str(objects[1]), str(objects[2])),
            _int(entry.get("g"), "composition g"),
            _int(entry.get("f"), "composition f"),
            result,
        )
    return builder.build()


def load_category(path: PathLike) -> FiniteDgCategory:
    return category_from_json(read_json(path))


def functor_from_json(a: FiniteDgCategory, data: Any) -> DgEndofunctor:
    """
    Build a validated endofunctor of a from
    {"name", "objects": {x: Fx}, "homs": [{"source", "target", "matrix"}]}
    or {"identity": true}.

    Homs left out must have a zero-dimensional source or target.
    """
    if not isinstance(data, Mapping):
        raise InputValidationError("functor JSON must be an object")
    if data.get("identity"):
        return DgEndofunctor.identity(a)
    object_map = {
        str(k): str(v) for k, v in _require(data, "objects", Mapping, "functor").items()
    }
    matrices: Dict[Tuple[str, str], FieldMatrix] = {}
    for entry in data.get("homs", []):
        source = str(_require(entry, "source", str, "functor hom"))
        target = str(_require(entry, "target", str, "functor hom"))
        rows = _require(entry, "matrix", list, f"functor hom({source}, {target})")
        matrices[(source, target)] = FieldMatrix.from_values(
            a.field, rows, a.dimension(source, target)
        )
    for x, y in a.pairs():
        if (x, y) in matrices:
            continue
        if x not in object_map or y not in object_map:
            continue
        rows_, cols = a.dimension(object_map[x], object_map[y]), a.dimension(x, y)
        if rows_ and cols:
            raise InputValidationError(f"functor: no matrix for hom({x}, {y})")
        matrices[(x, y)] = FieldMatrix.zeros(a.field, rows_, cols)
    name: Optional[str] = data.get("name")
    return validate_functor(DgEndofunctor(a, object_map, matrices, name=name or "F"))


def load_functor(a: FiniteDgCategory, path: PathLike) -> DgEndofunctor:
    return functor_from_json(a, read_json(path))
