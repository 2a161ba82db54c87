from typing import Dict, List, Optional

from .LayerCost import LayerCost


class ComplexityReport():

    MAC = "mac"
    TWO_MAC = "2mac"
    CONVENTIONS = [MAC, TWO_MAC]

    def __init__(self, convention: str, seq_len: int, layers: List[LayerCost], encoder: str,
                 encoder_mflops: float = 0.0, encoder_params_m: float = 0.0,
                 reported_mflops: Optional[float] = None, reported_params_m: Optional[float] = None) -> None:

        self.convention = convention
        self.seqLen = seq_len
        self.layers = layers
        self.encoder = encoder
        self.encoderMflops = encoder_mflops
        self.encoderParamsM = encoder_params_m
        self.reportedMflops = reported_mflops
        self.reportedParamsM = reported_params_m

    @property
    def factor(self) -> int:

        return 2 if self.convention == ComplexityReport.TWO_MAC else 1

    def macs(self, component: str) -> int:

        return sum(layer.totalMacs for layer in self.layers if layer.component == component)

    def params(self, component: str) -> int:

        return sum(layer.params for layer in self.layers if layer.component == component)

    def components(self) -> Dict[str, Dict[str, float]]:
        """MFLOPs under the report's convention and parameters in millions."""

        result = dict()
        for component in LayerCost.COMPONENTS:
            mflops = self.factor * self.macs(component) / 1e6
            params = self.params(component) / 1e6
            if component == LayerCost.ENCODER:
                mflops += self.encoderMflops
                params += self.encoderParamsM
            result[component] = {"mflops": mflops, "params_m": params}
        return result

    @property
    def nonEncoderMacs(self) -> int:

        return self.macs(LayerCost.ATTENTION) + self.macs(LayerCost.DECODER)

    @property
    def nonEncoderMflops(self) -> float:

        return self.factor * self.nonEncoderMacs / 1e6

    @property
    def nonEncoderParams(self) -> int:

        return self.params(LayerCost.ATTENTION) + self.params(LayerCost.DECODER)

    @property
    def totalMflops(self) -> float:

        return sum(c["mflops"] for c in self.components().values())

    @property
    def totalParamsM(self) -> float:

        return sum(c["params_m"] for c in self.components().values())

    def to_dict(self) -> dict:

        result = {
            "convention": self.convention,
            "seq_len": self.seqLen,
            "encoder": self.encoder,
            "components": self.components(),
            "non_encoder_mflops": self.nonEncoderMflops,
            "non_encoder_params": self.nonEncoderParams,
            "total_mflops": self.totalMflops,
            "total_params_m": self.totalParamsM,
            "layers": [layer.to_dict() for layer in self.layers]
        }
        if self.reportedMflops is not None:
            result["reported_total_mflops"] = self.reportedMflops
            result["reported_total_params_m"] = self.reportedParamsM
            result["gap_mflops"] = self.reportedMflops - self.totalMflops
            result["gap_params_m"] = self.reportedParamsM - self.totalParamsM
        return result

    def __str__(self) -> str:

        return (f"ComplexityReport({self.encoder}, {self.convention}, T={self.seqLen}, "
                f"{self.totalMflops:.3f} MFLOPs, {self.totalParamsM:.3f}M params)")
