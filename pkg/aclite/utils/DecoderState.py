from .Tensor import Tensor


class DecoderState():

    def __init__(self, h_A: Tensor, h_G: Tensor, prev_token: int) -> None:

        self.h_A = h_A
        self.h_G = h_G
        self.prevToken = prev_token

    @staticmethod
    def initial(hidden_size: int, bos: int) -> 'DecoderState':

        return DecoderState(h_A=Tensor.zeros(hidden_size), h_G=Tensor.zeros(hidden_size), prev_token=bos)

    def withToken(self, token: int) -> 'DecoderState':

        return DecoderState(h_A=self.h_A, h_G=self.h_G, prev_token=token)

    def to_dict(self) -> dict:

        return {"h_A": self.h_A.data.tolist(), "h_G": self.h_G.data.tolist(), "prev_token": self.prevToken}

    def __str__(self) -> str:

        return f"DecoderState(d_h={self.h_A.shape[0]}, prev_token={self.prevToken})"
