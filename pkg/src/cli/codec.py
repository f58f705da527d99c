"""
JSON 文件格式

MapFile:       {m, n, r, s, field, images}，images 为 m·n 个 r×s 矩阵，(i, j) 行优先
CanonicalFile: {m, n, r, s, field, U, V, Q1, Q2}
矩阵是行的数组；实数元素写成数字，复数元素写成 [re, im]。
浮点数用 Python 的最短往返表示，write∘read 逐字节稳定。
"""
import json
import math
import sys
from numbers import Real
from typing import Any, List, Optional, Sequence

import numpy as np

from src.canonical import CanonicalForm, DecomposeFailure, make_form
from src.classify import ClassifierVerdict
from src.linmap import LinMap, from_images
from src.matcore import DEFAULT_TOLERANCES, Field, Mat, PreserverError, Tolerances
from src.utils import is_valid_dimension, make_excerpt


class CodecError(PreserverError):
    """输入文件无法解析为合法对象。"""


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, Real):
        raise CodecError(f"{where}: expected a number, got {make_excerpt(json.dumps(value))}")
    value = float(value)
    if not math.isfinite(value):
        raise CodecError(f"{where}: non-finite number")
    return value


def encode_matrix(A: Mat, field: Field) -> List[list]:
    if field is Field.COMPLEX:
        return [[[float(x.real), float(x.imag)] for x in row] for row in np.asarray(A, dtype=np.complex128)]
    return [[float(x) for x in row] for row in np.asarray(A, dtype=np.float64)]


def decode_matrix(rows, field: Field, shape: Optional[Sequence[int]] = None, where: str = "matrix") -> Mat:
    """
    解析一个矩阵

    Raises:
        CodecError: 不是矩形的行数组、元素编码与数域不符或形状不符
    """
    if not isinstance(rows, list) or not rows or not all(isinstance(row, list) for row in rows):
        raise CodecError(f"{where}: expected a non-empty array of rows")
    width = len(rows[0])
    if width == 0 or any(len(row) != width for row in rows):
        raise CodecError(f"{where}: rows must be non-empty and of equal length")
    if shape is not None and (len(rows), width) != tuple(shape):
        raise CodecError(f"{where}: shape {(len(rows), width)} does not match {tuple(shape)}")
    out = np.zeros((len(rows), width), dtype=field.dtype)
    for i, row in enumerate(rows):
        for j, entry in enumerate(row):
            cell = f"{where}[{i}][{j}]"
            if field is Field.COMPLEX:
                if not isinstance(entry, list) or len(entry) != 2:
                    raise CodecError(f"{cell}: complex entries must be [re, im] pairs")
                out[i, j] = complex(_number(entry[0], cell), _number(entry[1], cell))
            else:
                out[i, j] = _number(entry, cell)
    return out


def _require(data, key: str, where: str):
    if not isinstance(data, dict):
        raise CodecError(f"{where}: expected a JSON object")
    if key not in data:
        raise CodecError(f"{where}: missing key '{key}'")
    return data[key]


def _dimensions(data, where: str):
    dims = []
    for key in ("m", "n", "r", "s"):
        value = _require(data, key, where)
        if not is_valid_dimension(value):
            raise CodecError(f"{where}: '{key}' must be a positive integer")
        dims.append(value)
    return dims


def _field(data, where: str) -> Field:
    try:
        return Field.parse(_require(data, "field", where))
    except PreserverError as exc:
        raise CodecError(f"{where}: {exc}")


def map_to_dict(phi: LinMap) -> dict:
    return {
        "m": phi.m,
        "n": phi.n,
        "r": phi.r,
        "s": phi.s,
        "field": phi.field.value,
        "images": [encode_matrix(image, phi.field) for image in phi.images],
    }


def map_from_dict(data: Any) -> LinMap:
    m, n, r, s = _dimensions(data, "MapFile")
    field = _field(data, "MapFile")
    images = _require(data, "images", "MapFile")
    if not isinstance(images, list) or len(images) != m * n:
        raise CodecError(f"MapFile: 'images' must hold {m * n} matrices")
    decoded = [
        decode_matrix(image, field, (r, s), f"images[{index}]") for index, image in enumerate(images)
    ]
    return from_images(m, n, r, s, field, decoded)


def form_to_dict(form: CanonicalForm) -> dict:
    return {
        "m": form.m,
        "n": form.n,
        "r": form.r,
        "s": form.s,
        "field": form.field.value,
        "U": encode_matrix(form.U, form.field),
        "V": encode_matrix(form.V, form.field),
        "Q1": [float(q) for q in form.Q1],
        "Q2": [float(q) for q in form.Q2],
    }


def form_from_dict(data: Any, tol: Tolerances = DEFAULT_TOLERANCES) -> CanonicalForm:
    m, n, r, s = _dimensions(data, "CanonicalFile")
    field = _field(data, "CanonicalFile")
    U = decode_matrix(_require(data, "U", "CanonicalFile"), field, (r, r), "U")
    V = decode_matrix(_require(data, "V", "CanonicalFile"), field, (s, s), "V")
    Q = []
    for key in ("Q1", "Q2"):
        values = _require(data, key, "CanonicalFile")
        if not isinstance(values, list):
            raise CodecError(f"CanonicalFile: '{key}' must be an array")
        Q.append([_number(value, key) for value in values])
    try:
        return make_form(U, V, Q[0], Q[1], m, n, field, tol)
    except PreserverError as exc:
        raise CodecError(f"CanonicalFile: {exc}")


def failure_to_dict(failure: DecomposeFailure, field: Field) -> dict:
    witness = None
    if failure.witness is not None:
        witness = [encode_matrix(A, field) for A in failure.witness]
    return {
        "kind": failure.kind.value,
        "witness": witness,
        "residual": float(failure.residual),
        "stage": failure.stage,
        "detail": failure.detail,
    }


def verdict_to_dict(verdict: ClassifierVerdict, field: Field) -> dict:
    out = {"verdict": verdict.verdict.value, "detail": verdict.detail}
    if verdict.certificate is not None:
        out["certificate"] = form_to_dict(verdict.certificate)
    if verdict.witness is not None:
        out["witness"] = [encode_matrix(A, field) for A in verdict.witness]
    return out


def matrices_to_dict(matrices: Sequence[Mat], field: Field) -> dict:
    return {"field": field.value, "matrices": [encode_matrix(A, field) for A in matrices]}


def matrices_from_dict(data: Any) -> List[Mat]:
    field = _field(data, "MatrixFile")
    matrices = _require(data, "matrices", "MatrixFile")
    if not isinstance(matrices, list):
        raise CodecError("MatrixFile: 'matrices' must be an array")
    return [decode_matrix(A, field, where=f"matrices[{index}]") for index, A in enumerate(matrices)]


def dumps(payload: dict) -> str:
    # 键顺序即构造顺序；NaN/Inf 不是合法 JSON
    return json.dumps(payload, allow_nan=False)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodecError(f"Invalid JSON: {exc}")


def read_text(path: str) -> str:
    """读取文件；'-' 表示标准输入。OSError 原样抛出。"""
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def read_map(path: str) -> LinMap:
    try:
        return map_from_dict(loads(read_text(path)))
    except CodecError:
        raise
    except PreserverError as exc:
        raise CodecError(f"MapFile: {exc}")


def read_form(path: str, tol: Tolerances = DEFAULT_TOLERANCES) -> CanonicalForm:
    return form_from_dict(loads(read_text(path)), tol)
