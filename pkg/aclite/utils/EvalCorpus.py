from typing import Hashable, List, Sequence

from .AcLiteException import MetricError


class EvalCorpus():
    """Per image: one hypothesis and at least one reference, all as token sequences."""

    def __init__(self) -> None:

        self.imageIds: List[str] = list()
        self.hypotheses: List[List[Hashable]] = list()
        self.references: List[List[List[Hashable]]] = list()

    def append(self, image_id: str, hypothesis: Sequence[Hashable], references: Sequence[Sequence[Hashable]]) -> None:

        if not references:
            raise MetricError(message=f"image {image_id} has no references")
        self.imageIds.append(image_id)
        self.hypotheses.append(list(hypothesis))
        self.references.append([list(r) for r in references])

    def validate(self) -> 'EvalCorpus':

        if not self.hypotheses:
            raise MetricError(message="empty hypothesis corpus")
        return self

    def __len__(self) -> int:

        return len(self.hypotheses)

    def to_dict(self) -> dict:

        return {"n_images": len(self), "n_references": sum(len(r) for r in self.references)}

    def __str__(self) -> str:

        return f"EvalCorpus(images={len(self)})"
