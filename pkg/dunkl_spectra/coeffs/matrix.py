import json
from dataclasses import asdict, dataclass
from enum import Enum
from pathlib import Path
from typing import Union

import numpy as np

from .params import MixedParams, TParams

SCHEMA_VERSION = 1


class CoeffFamily(Enum):
    """Coefficient family stored in a CoeffMatrix"""
    D = "d"
    C = "c"
    CHAT = "chat"
    CPRIME = "cprime"


class Method(Enum):
    """Route a table was computed by"""
    RECURSION = "recursion"
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"
    EXPANSION = "expansion"


@dataclass(frozen=True)
class CoeffMatrix:
    """Dense N x N table of form coefficients with its provenance."""
    family: CoeffFamily
    params: Union[TParams, MixedParams]
    order: int
    entries: np.ndarray
    method: Method

    def __post_init__(self):
        self.entries.setflags(write=False)

    def is_symmetric(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.entries - self.entries.T) <= tol))

    def describe(self) -> dict:
        return {
            "family": self.family.value,
            "method": self.method.value,
            "order": self.order,
            "params_type": type(self.params).__name__,
            "params": asdict(self.params),
        }

    def to_json(self) -> dict:
        """JSON-ready dict (parameters, entries, method)."""
        data = {"schema": SCHEMA_VERSION}
        data.update(self.describe())
        data["entries"] = self.entries.tolist()
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def to_csv(self, path: Union[str, Path]) -> Path:
        """Row-major CSV with a commented parameter header."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        header_lines = [f"{key}: {value}" for key, value in self.describe().items()]
        header_lines.insert(0, f"schema: {SCHEMA_VERSION}")
        np.savetxt(path, self.entries, delimiter=",", fmt="%.17g", header="\n".join(header_lines))
        return path
