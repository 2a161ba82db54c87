from .ModelParams import ModelParams
from .Tensor import Tensor


class Embedding():

    def __init__(self, params: ModelParams, name: str, vocab_size: int, dim: int) -> None:

        self.name = name
        self.vocabSize = vocab_size
        self.dim = dim
        self.table: Tensor = params.glorot(f"{name}.table", (vocab_size, dim), fan_in=vocab_size, fan_out=dim)

    @staticmethod
    def countParams(vocab_size: int, dim: int) -> int:

        return vocab_size * dim

    def embed(self, token_id: int) -> Tensor:

        return self.table.gatherRow(int(token_id))

    def __str__(self) -> str:

        return f"Embedding(name={self.name}, vocab={self.vocabSize}, dim={self.dim})"
