"""
Latent parameters Θ = (u, v, w, η) and their JSON document.
"""

from pathlib import Path
from typing import List, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic import ValidationError as PydanticValidationError

from jointdyad.utils.exceptions import ValidationError
from jointdyad.utils.validation import ensure_nonnegative_matrix


class ModelParamsDocument(BaseModel):
    """On-disk layout of ModelParams"""
    N: int = Field(ge=1)
    K: int = Field(ge=1)
    eta: float = Field(gt=0)
    u: List[List[float]]
    v: List[List[float]]
    w: List[List[float]]
    node_labels: Optional[List[str]] = None


class ModelParams(BaseModel):
    """
    Membership matrices u (out-going) and v (in-coming), affinity w and
    pair-interaction η.

    Validation rejects negative or non-finite entries, η <= 0 and
    inconsistent shapes. Arrays are stored read-only.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    u: np.ndarray
    v: np.ndarray
    w: np.ndarray
    eta: float
    node_labels: Optional[List[str]] = None

    @model_validator(mode="before")
    @classmethod
    def _coerce_blocks(cls, data):
        if not isinstance(data, dict):
            return data
        data = dict(data)
        u = np.asarray(data.get("u"), dtype=float)
        if u.ndim != 2:
            raise ValidationError(f"u must be an N x K matrix, got shape {u.shape}")
        n, k = u.shape
        data["u"] = ensure_nonnegative_matrix("u", u, (n, k))
        data["v"] = ensure_nonnegative_matrix("v", data.get("v"), (n, k))
        data["w"] = ensure_nonnegative_matrix("w", data.get("w"), (k, k))
        try:
            eta = float(data.get("eta"))
        except (TypeError, ValueError) as e:
            raise ValidationError(f"eta must be a real number: {e}") from e
        if not np.isfinite(eta) or eta <= 0:
            raise ValidationError(f"eta must be a positive finite real, got {eta}")
        data["eta"] = eta
        labels = data.get("node_labels")
        if labels is not None:
            if len(labels) != n:
                raise ValidationError(f"expected {n} node labels, got {len(labels)}")
            data["node_labels"] = [str(label) for label in labels]
        for name in ("u", "v", "w"):
            data[name] = data[name].copy()
            data[name].flags.writeable = False
        return data

    @classmethod
    def create(cls, **kwargs) -> "ModelParams":
        """Construct, converting validation failures to the package error."""
        try:
            return cls(**kwargs)
        except PydanticValidationError as e:
            raise ValidationError(str(e)) from e

    @property
    def n_nodes(self) -> int:
        return int(self.u.shape[0])

    @property
    def n_communities(self) -> int:
        return int(self.u.shape[1])

    def replace(self, **changes) -> "ModelParams":
        """Copy with some blocks swapped, re-validated."""
        fields = {
            "u": self.u,
            "v": self.v,
            "w": self.w,
            "eta": self.eta,
            "node_labels": self.node_labels,
        }
        fields.update(changes)
        return ModelParams.create(**fields)

    def permute_communities(self, permutation) -> "ModelParams":
        """Relabel communities: column c of the result is column ``permutation[c]``."""
        perm = np.asarray(permutation, dtype=np.int64)
        return self.replace(
            u=self.u[:, perm],
            v=self.v[:, perm],
            w=self.w[np.ix_(perm, perm)],
        )

    def to_document(self) -> ModelParamsDocument:
        return ModelParamsDocument(
            N=self.n_nodes,
            K=self.n_communities,
            eta=self.eta,
            u=self.u.tolist(),
            v=self.v.tolist(),
            w=self.w.tolist(),
            node_labels=self.node_labels,
        )

    @classmethod
    def from_document(cls, document: ModelParamsDocument) -> "ModelParams":
        u = np.asarray(document.u, dtype=float)
        expected = (document.N, document.K)
        if u.shape != expected:
            raise ValidationError(f"u must have shape {expected}, got {u.shape}")
        return cls.create(
            u=u,
            v=document.v,
            w=document.w,
            eta=document.eta,
            node_labels=document.node_labels,
        )

    def to_json(self) -> str:
        return self.to_document().model_dump_json(indent=2)

    @classmethod
    def from_json(cls, text: Union[str, bytes]) -> "ModelParams":
        try:
            document = ModelParamsDocument.model_validate_json(text)
        except PydanticValidationError as e:
            raise ValidationError(f"invalid parameter document: {e}") from e
        return cls.from_document(document)


def save_params(params: ModelParams, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(params.to_json(), encoding="utf-8")
    return path


def load_params(path: Union[str, Path]) -> ModelParams:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ValidationError(f"cannot read parameters from {path}: {e}") from e
    return ModelParams.from_json(text)
