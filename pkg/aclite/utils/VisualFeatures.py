from typing import Optional, Tuple

from .AcLiteException import DimensionError
from .Tensor import Tensor


class VisualFeatures():
    """Flattened region features A = [a_1 .. a_n_a] and their column mean."""

    def __init__(self, A: Tensor, mean_pooled: Optional[Tensor] = None, grid: Optional[Tuple[int, int]] = None) -> None:

        if A.data.ndim != 2:
            raise DimensionError(message=f"visual features must be a d_a x n_a matrix, got shape {A.shape}")
        self.A = A
        self.meanPooled: Tensor = mean_pooled if mean_pooled is not None else A.meanOverColumns()
        if self.meanPooled.shape != (A.shape[0],):
            raise DimensionError.mismatch("mean pooled features", self.meanPooled.shape, (A.shape[0],))
        self.grid = grid if grid is not None else (1, A.shape[1])

    @property
    def d_a(self) -> int:

        return self.A.shape[0]

    @property
    def n_a(self) -> int:

        return self.A.shape[1]

    def to_dict(self) -> dict:

        return {"d_a": self.d_a, "n_a": self.n_a, "grid": list(self.grid)}

    def __str__(self) -> str:

        return f"VisualFeatures(d_a={self.d_a}, n_a={self.n_a})"
