from typing import Dict, List, Optional

from .AcLiteException import BackboneLookupError


class EncoderCost():

    def __init__(self, name: str, mflops: float, params_m: float, source: str,
                 reported_mflops: Optional[float] = None, reported_params_m: Optional[float] = None) -> None:

        self.name = name
        self.mflops = mflops
        self.paramsM = params_m
        self.source = source
        self.reportedMflops = reported_mflops
        self.reportedParamsM = reported_params_m

    def to_dict(self) -> dict:

        return {
            "name": self.name,
            "mflops": self.mflops,
            "params_m": self.paramsM,
            "source": self.source,
            "reported_total_mflops": self.reportedMflops,
            "reported_total_params_m": self.reportedParamsM
        }

    def __str__(self) -> str:

        return f"{self.name}: {self.mflops} MFLOPs, {self.paramsM}M params ({self.source})"


class BaselineCost():
    """Published component totals of an earlier captioning model."""

    def __init__(self, name: str, encoder: str, encoder_mflops: float, encoder_params_m: float,
                 refiner_mflops: float, refiner_params_m: float, decoder: str, decoder_mflops: float,
                 decoder_params_m: float, total_mflops: float, total_params_m: float) -> None:

        self.name = name
        self.encoder = encoder
        self.encoderMflops = encoder_mflops
        self.encoderParamsM = encoder_params_m
        self.refinerMflops = refiner_mflops
        self.refinerParamsM = refiner_params_m
        self.decoder = decoder
        self.decoderMflops = decoder_mflops
        self.decoderParamsM = decoder_params_m
        self.totalMflops = total_mflops
        self.totalParamsM = total_params_m

    def to_dict(self) -> dict:

        return {
            "name": self.name,
            "encoder": self.encoder,
            "encoder_mflops": self.encoderMflops,
            "encoder_params_m": self.encoderParamsM,
            "refiner_mflops": self.refinerMflops,
            "refiner_params_m": self.refinerParamsM,
            "decoder": self.decoder,
            "decoder_mflops": self.decoderMflops,
            "decoder_params_m": self.decoderParamsM,
            "total_mflops": self.totalMflops,
            "total_params_m": self.totalParamsM
        }


class EncoderCostTable():
    """Backbone costs at 224x224 as published with each network, in the
    multiply-add counts those publications call FLOPs. Reported totals are
    the published captioner totals with that backbone as encoder.
    """

    DEFAULT = "ShuffleNetV2x1.5"

    _SHUFFLENET = "ShuffleNet V2 publication, ImageNet 224x224 complexity table"
    _MOBILENET_V1 = "MobileNet V1 publication, width multiplier 0.25 at 224x224"
    _MOBILENET_V3 = "MobileNet V3 publication, ImageNet 224x224 results"
    _EFFICIENTNET = "EfficientNet publication, ImageNet results table"
    _RESNET = "ResNet publication, 101-layer FLOPs at 224x224; torchvision parameter count"

    ENCODERS: Dict[str, EncoderCost] = {e.name: e for e in [
        EncoderCost("ShuffleNetV2x0.5", 41, 1.4, _SHUFFLENET, 837.575, 23.55),
        EncoderCost("MobileNetV3_Small", 56, 2.5, _MOBILENET_V3, 857.575, 24.65),
        EncoderCost("MobileNetV1X0.25", 41, 0.47, _MOBILENET_V1, 886.715, 22.62),
        EncoderCost("ShuffleNetV2x1.0", 146, 2.3, _SHUFFLENET, 937.575, 24.45),
        EncoderCost("MobileNetV3_Large", 219, 5.4, _MOBILENET_V3, 1017.575, 27.65),
        EncoderCost("ShuffleNetV2x1.5", 299, 3.5, _SHUFFLENET, 1097.575, 25.65),
        EncoderCost("EfficientNetB0", 390, 5.3, _EFFICIENTNET, 1187.575, 27.45),
        EncoderCost("ShuffleNetV2x2.0", 591, 7.4, _SHUFFLENET, 1377.575, 29.55),
        EncoderCost("EfficientNetB1", 700, 7.8, _EFFICIENTNET, 1487.575, 29.95),
        EncoderCost("ResNet101", 7600, 44.5, _RESNET, 8597.575, 66.65),
    ]}

    BASELINES: List[BaselineCost] = [
        BaselineCost("Show and Tell", "GoogleNet", 1500, 6.6, 0, 0, "LSTM", 702.207, 19.506, 2202.207, 26.106),
        BaselineCost("Show Attend and Tell", "Vgg16", 15470, 138.4, 0, 0, "LSTM", 722.004, 20.056, 16192.004, 158.456),
        BaselineCost("BUTD", "FasterRCNN", 117330, 63.63, 0, 0, "bottom-up attention + LSTM", 2122.919, 58.97,
                     119452.919, 122.6),
        BaselineCost("AoANet", "FasterRCNN", 117330, 63.63, 285.554, 37.79, "AoA + LSTM", 1614.685, 17.832,
                     119230.239, 119.252),
        BaselineCost("ORT", "FasterRCNN", 117330, 63.63, 955.404, 19.923, "Transformer Decoder", 17511.8, 35.794,
                     135797.204, 119.347),
    ]

    @staticmethod
    def names() -> List[str]:

        return list(EncoderCostTable.ENCODERS.keys())

    @staticmethod
    def lookup(name: str) -> EncoderCost:

        for key, cost in EncoderCostTable.ENCODERS.items():
            if key.lower() == name.lower():
                return cost
        raise BackboneLookupError(
            message=f"unknown encoder backbone '{name}', expected one of {', '.join(EncoderCostTable.names())}")
