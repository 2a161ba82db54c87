from typing import List, Optional

from .DecoderState import DecoderState


class BeamHypothesis():

    def __init__(self, tokens: List[int], log_prob: float, state: Optional[DecoderState], finished: bool) -> None:

        self.tokens = tokens
        self.logProb = log_prob
        self.state = state
        self.finished = finished

    def rankKey(self) -> tuple:
        """Higher score first, then the lexicographically smaller sequence."""

        return (-self.logProb, self.tokens)

    def to_dict(self) -> dict:

        return {"tokens": list(self.tokens), "log_prob": self.logProb, "finished": self.finished}

    def __str__(self) -> str:

        return f"BeamHypothesis(tokens={self.tokens}, log_prob={self.logProb:.6f}, finished={self.finished})"
