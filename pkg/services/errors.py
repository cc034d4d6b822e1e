from typing import Any, Dict, Optional


class QuasitileError(Exception):
    """
    Lỗi gốc của toàn bộ toolkit.
    - `exit_code` đóng vai trò như status code, `detail` là thông điệp cho người dùng.
    - `context` chứa dữ liệu máy đọc được (được ghi ra stderr dưới dạng JSON).
    """
    exit_code = 1

    def __init__(self, detail: str, **context: Any):
        super().__init__(detail)
        self.detail = detail
        self.context: Dict[str, Any] = context

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"error": type(self).__name__, "detail": self.detail}
        payload.update({k: _jsonable(v) for k, v in self.context.items()})
        return payload


def _jsonable(value: Any) -> Any:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return str(value)


# --- exactnum ---
class MixedDiscriminantError(QuasitileError):
    exit_code = 3


class DegeneratePolygonError(QuasitileError):
    exit_code = 3


# --- lattice ---
class DimensionMismatchError(QuasitileError):
    exit_code = 3


class DependentSpanError(QuasitileError):
    exit_code = 3


class InvalidOrderError(QuasitileError):
    exit_code = 3


class NonReciprocalVectorError(QuasitileError):
    exit_code = 3


# --- dualcell ---
class UnsupportedDimensionError(QuasitileError):
    exit_code = 4


class DegenerateProjectionError(QuasitileError):
    exit_code = 4


class SingularOffsetError(QuasitileError):
    exit_code = 4

    def __init__(self, detail: str, suggested_offset: Optional[Any] = None, **context: Any):
        super().__init__(detail, suggested_offset=suggested_offset, **context)
        self.suggested_offset = suggested_offset


class OutsideRegionError(QuasitileError):
    exit_code = 4


# --- cutproject ---
class MissingWindowError(QuasitileError):
    exit_code = 5


class FaceAssemblyError(QuasitileError):
    exit_code = 5


# --- inflation ---
class UnknownTileTypeError(QuasitileError):
    exit_code = 6


class NonPrimitiveMatrixError(QuasitileError):
    exit_code = 6


class PatchTooSmallError(QuasitileError):
    exit_code = 6


# --- matching ---
class UndecoratedTileError(QuasitileError):
    exit_code = 7


class DecorationInconsistencyError(QuasitileError):
    exit_code = 7


# --- diffraction ---
class EmptyPatchError(QuasitileError):
    exit_code = 8


# --- cli ---
class InvalidJobConfigError(QuasitileError):
    exit_code = 2
