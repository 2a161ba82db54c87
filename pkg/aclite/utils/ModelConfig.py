from typing import List, Optional

from .AcLiteException import ConfigurationError


class ModelConfig():

    WIRING_BUTD = "butd-style"
    WIRING_LITERAL = "literal"
    WIRINGS = [WIRING_BUTD, WIRING_LITERAL]

    ENCODER_FILE = "file"
    ENCODER_TINY_CNN = "tiny-cnn"
    ENCODERS = [ENCODER_FILE, ENCODER_TINY_CNN]

    # vocabulary size of the COCO-AC word list
    FULL_VOCAB_SIZE = 12912

    KEYS = ["d_a", "n_h", "n_w", "d_h", "d_e", "d_w", "vocab_size", "wiring", "bias_gru", "bias_output",
            "bias_attention", "encoder", "cnn_channels", "image_size"]

    def __init__(self, d_a: int = 1024, n_h: int = 14, n_w: int = 14, d_h: int = 512, d_e: int = 512,
                 d_w: int = 512, vocab_size: Optional[int] = FULL_VOCAB_SIZE, wiring: str = WIRING_BUTD,
                 bias_gru: bool = True, bias_output: bool = True, bias_attention: bool = False,
                 encoder: str = ENCODER_FILE, cnn_channels: Optional[List[int]] = None,
                 image_size: int = 32) -> None:

        self.d_a = d_a
        self.n_h = n_h
        self.n_w = n_w
        self.d_h = d_h
        self.d_e = d_e
        self.d_w = d_w
        self.vocab_size = vocab_size
        self.wiring = wiring
        self.bias_gru = bias_gru
        self.bias_output = bias_output
        self.bias_attention = bias_attention
        self.encoder = encoder
        self.cnn_channels: List[int] = list(cnn_channels) if cnn_channels else [8, 16]
        self.image_size = image_size

    @staticmethod
    def full() -> 'ModelConfig':

        return ModelConfig()

    @staticmethod
    def desk(vocab_size: Optional[int] = None) -> 'ModelConfig':

        return ModelConfig(d_a=64, n_h=4, n_w=4, d_h=32, d_e=32, d_w=32, vocab_size=vocab_size)

    @staticmethod
    def tiny(vocab_size: int = 11) -> 'ModelConfig':

        return ModelConfig(d_a=8, n_h=2, n_w=2, d_h=6, d_e=6, d_w=6, vocab_size=vocab_size)

    @property
    def n_a(self) -> int:

        return self.n_h * self.n_w

    @property
    def butdStyle(self) -> bool:

        return self.wiring == ModelConfig.WIRING_BUTD

    @property
    def attentionInputSize(self) -> int:

        return self.d_h + self.d_a + (self.d_w if self.butdStyle else 0)

    def validate(self) -> 'ModelConfig':

        extents = {"d_a": self.d_a, "n_h": self.n_h, "n_w": self.n_w, "d_h": self.d_h,
                   "d_e": self.d_e, "d_w": self.d_w, "vocab_size": self.vocab_size}
        missing = [k for k, v in extents.items() if v is None]
        if missing:
            raise ConfigurationError(message="incomplete model config, missing %s" % ", ".join(missing))
        bad = [k for k, v in extents.items() if not isinstance(v, int) or isinstance(v, bool) or v < 1]
        if bad:
            raise ConfigurationError(message="model extents must be positive integers: %s" % ", ".join(bad))
        if self.wiring not in ModelConfig.WIRINGS:
            raise ConfigurationError(
                message=f"wiring must be one of {', '.join(ModelConfig.WIRINGS)}, got '{self.wiring}'")
        if self.encoder not in ModelConfig.ENCODERS:
            raise ConfigurationError(
                message=f"encoder must be one of {', '.join(ModelConfig.ENCODERS)}, got '{self.encoder}'")
        if self.encoder == ModelConfig.ENCODER_TINY_CNN:
            stride = 2 ** (len(self.cnn_channels) + 1)
            if self.image_size % stride != 0 or self.image_size // stride < max(self.n_h, self.n_w):
                raise ConfigurationError(
                    message=f"image_size {self.image_size} incompatible with {len(self.cnn_channels) + 1} stride-2 layers "
                            f"and a {self.n_h}x{self.n_w} feature grid")
        return self

    @staticmethod
    def from_dict(values: dict) -> 'ModelConfig':

        unknown = [k for k in values if k not in ModelConfig.KEYS]
        if unknown:
            raise ConfigurationError(message="unknown model config keys: %s" % ", ".join(unknown))
        return ModelConfig(**values)

    def to_dict(self) -> dict:

        return {k: getattr(self, k) for k in ModelConfig.KEYS}

    def __str__(self) -> str:

        return (f"ModelConfig(d_a={self.d_a}, n_a={self.n_h}x{self.n_w}, d_h={self.d_h}, d_e={self.d_e}, "
                f"d_w={self.d_w}, |V|={self.vocab_size}, wiring={self.wiring}, encoder={self.encoder})")
