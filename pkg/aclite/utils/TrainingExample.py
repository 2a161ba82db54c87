from typing import Any, List, Sequence


class TrainingExample():
    """One caption of one image: encoder input, gold ids and the image's references."""

    def __init__(self, image_id: str, source: Any, tokens: Sequence[int], references: Sequence[Sequence[int]]) -> None:

        self.imageId = image_id
        self.source = source
        self.tokens: List[int] = list(tokens)
        self.references: List[List[int]] = [list(r) for r in references]

    def __str__(self) -> str:

        return f"TrainingExample({self.imageId}, {len(self.tokens)} ids, {len(self.references)} refs)"
