import json
from collections import OrderedDict
from typing import Dict, List, Optional

from .AcLiteException import ConfigurationError
from .ComplexityReport import ComplexityReport
from .EncoderCostTable import EncoderCostTable
from .LayerCost import LayerCost
from .ModelConfig import ModelConfig
from .Tensor import SOFTMAX_OPS
from .TinyCnnProvider import TinyCnnProvider

import logManager

LOGGER = logManager.logger.get_logger(__name__)


class ComplexityAnalyzer():
    """Exact parameter and multiply-accumulate accounting of the captioner.

    Counting rules are those of the tensor kernel: an (m x k)(k x n) product
    costs m*k*n, elementwise operations cost one per output entry, softmax
    costs SOFTMAX_OPS per entry, structural operations are free. A caption
    of seq_len steps pays the per-image terms (feature mean, W_ea A) once and
    the per-step terms seq_len times.
    """

    def __init__(self, config: ModelConfig) -> None:

        self.config = config

    def _validate(self) -> ModelConfig:

        try:
            return self.config.validate()
        except ConfigurationError as e:
            raise ConfigurationError(message=f"cannot analyze model: {e.message}")

    @staticmethod
    def gruTensors(name: str, input_size: int, hidden: int, bias: bool) -> Dict[str, int]:

        tensors = OrderedDict((f"{name}.W_{g}", hidden * (input_size + hidden)) for g in ("z", "r", "h"))
        if bias:
            tensors.update((f"{name}.b_{g}", hidden) for g in ("z", "r", "h"))
        return tensors

    @staticmethod
    def linearTensors(name: str, out_features: int, in_features: int, bias: bool) -> Dict[str, int]:

        tensors = OrderedDict([(f"{name}.weight", out_features * in_features)])
        if bias:
            tensors[f"{name}.bias"] = out_features
        return tensors

    @staticmethod
    def gruMacs(input_size: int, hidden: int, bias: bool) -> int:

        # three gate products, two sigmoids, r*h, tanh, 1-z, two products, sum
        return 3 * hidden * (input_size + hidden) + 8 * hidden + (3 * hidden if bias else 0)

    @staticmethod
    def componentOf(tensor_name: str) -> str:

        if tensor_name.startswith("cnn."):
            return LayerCost.ENCODER
        if tensor_name.startswith("gru_a.") or tensor_name.startswith("att."):
            return LayerCost.ATTENTION
        return LayerCost.DECODER

    def countParams(self) -> dict:
        """Per-tensor counts in parameter-store registration order, plus totals by component."""

        c = self._validate()
        tensors: Dict[str, int] = OrderedDict()
        tensors.update(ComplexityAnalyzer.gruTensors("gru_a", c.attentionInputSize, c.d_h, c.bias_gru))
        tensors.update(ComplexityAnalyzer.linearTensors("att.W_eh", c.d_e, c.d_h, c.bias_attention))
        tensors.update(ComplexityAnalyzer.linearTensors("att.W_ea", c.d_e, c.d_a, c.bias_attention))
        tensors.update(ComplexityAnalyzer.linearTensors("att.w_A", 1, c.d_e, c.bias_attention))
        tensors.update(ComplexityAnalyzer.gruTensors("gru_g", c.d_a, c.d_h, c.bias_gru))
        tensors.update(ComplexityAnalyzer.linearTensors("out.W_o", c.vocab_size, c.d_h, c.bias_output))
        if c.butdStyle:
            tensors["embed.table"] = c.vocab_size * c.d_w
        if c.encoder == ModelConfig.ENCODER_TINY_CNN:
            k = TinyCnnProvider.KERNEL
            for i, (c_in, c_out, _, _) in enumerate(TinyCnnProvider.layerShapes(c)):
                tensors[f"cnn.conv{i}.weight"] = c_out * c_in * k * k
                tensors[f"cnn.conv{i}.bias"] = c_out

        components = OrderedDict((name, 0) for name in LayerCost.COMPONENTS)
        for name, count in tensors.items():
            components[ComplexityAnalyzer.componentOf(name)] += count
        return {"tensors": tensors, "components": components, "total": sum(tensors.values())}

    def layers(self, seq_len: int = 16) -> List[LayerCost]:

        c = self._validate()
        if seq_len < 1:
            raise ConfigurationError(message=f"seq_len must be at least 1, got {seq_len}")
        params = self.countParams()["tensors"]

        def owned(prefix: str) -> int:
            return sum(n for name, n in params.items() if name.startswith(prefix))

        att, dec = LayerCost.ATTENTION, LayerCost.DECODER
        n_a, bias_att = c.n_a, c.bias_attention
        layers = list()

        if c.encoder == ModelConfig.ENCODER_TINY_CNN:
            k = TinyCnnProvider.KERNEL
            shapes = TinyCnnProvider.layerShapes(c)
            for i, (c_in, c_out, h, w) in enumerate(shapes):
                # convolution with bias, then tanh
                macs = c_out * c_in * k * k * h * w + 2 * c_out * h * w
                layers.append(LayerCost(f"cnn.conv{i}", LayerCost.ENCODER, owned(f"cnn.conv{i}."), macs))
            _, channels, h, w = shapes[-1]
            if (h, w) != (c.n_h, c.n_w):
                layers.append(LayerCost("adaptive_pool", LayerCost.ENCODER, 0, channels * h * w * n_a))

        layers.extend([
            LayerCost("mean_pool", att, 0, c.d_a * n_a),
            LayerCost("att.W_ea", att, owned("att.W_ea."), c.d_e * c.d_a * n_a + (c.d_e * n_a if bias_att else 0)),
            LayerCost("gru_a", att, owned("gru_a."), ComplexityAnalyzer.gruMacs(c.attentionInputSize, c.d_h, c.bias_gru),
                      seq_len),
            LayerCost("att.W_eh", att, owned("att.W_eh."), c.d_e * c.d_h + (c.d_e if bias_att else 0), seq_len),
            LayerCost("att.bilinear", att, 0, c.d_e * n_a, seq_len),
            LayerCost("att.w_A", att, owned("att.w_A."), c.d_e * n_a + (n_a if bias_att else 0), seq_len),
            LayerCost("att.softmax", att, 0, SOFTMAX_OPS * n_a, seq_len),
            LayerCost("att.weighted_sum", att, 0, c.d_a * n_a, seq_len),
        ])
        if c.butdStyle:
            layers.append(LayerCost("embed", dec, owned("embed."), 0, seq_len))
        layers.extend([
            LayerCost("gru_g", dec, owned("gru_g."), ComplexityAnalyzer.gruMacs(c.d_a, c.d_h, c.bias_gru), seq_len),
            LayerCost("out.W_o", dec, owned("out.W_o."), c.vocab_size * c.d_h + (c.vocab_size if c.bias_output else 0),
                      seq_len),
            LayerCost("out.softmax", dec, 0, SOFTMAX_OPS * c.vocab_size, seq_len),
        ])
        return layers

    def countFlops(self, seq_len: int = 16, convention: str = ComplexityReport.MAC,
                   backbone: Optional[str] = None) -> ComplexityReport:

        if convention not in ComplexityReport.CONVENTIONS:
            raise ConfigurationError(
                message=f"convention must be one of {', '.join(ComplexityReport.CONVENTIONS)}, got '{convention}'")

        layers = self.layers(seq_len)
        if backbone is not None:
            cost = EncoderCostTable.lookup(backbone)
            report = ComplexityReport(convention, seq_len, layers, encoder=cost.name, encoder_mflops=cost.mflops,
                                      encoder_params_m=cost.paramsM, reported_mflops=cost.reportedMflops,
                                      reported_params_m=cost.reportedParamsM)
        else:
            report = ComplexityReport(convention, seq_len, layers, encoder=self.config.encoder)
        LOGGER.debug(str(report))
        return report

    def ablation(self, seq_len: int = 16, convention: str = ComplexityReport.MAC) -> List[ComplexityReport]:
        """One report per backbone of the encoder cost table."""

        return [self.countFlops(seq_len, convention, backbone=name) for name in EncoderCostTable.names()]

    @staticmethod
    def renderTable(reports: List[ComplexityReport], fmt: str = "markdown", baselines: bool = False) -> str:

        if not reports:
            raise ConfigurationError(message="renderTable needs at least one report")

        if fmt == "json":
            document = {"reports": [r.to_dict() for r in reports]}
            if baselines:
                document["baselines"] = [b.to_dict() for b in EncoderCostTable.BASELINES]
            return json.dumps(document, indent=2, ensure_ascii=False)

        if fmt != "markdown":
            raise ConfigurationError(message=f"format must be markdown or json, got '{fmt}'")

        unit = "MFLOPs (%s, T=%i)" % (reports[0].convention, reports[0].seqLen)
        lines = [
            f"| Encoder | Encoder {unit} | Encoder Param (M) | Non-encoder {unit} | Non-encoder Param (M) "
            f"| Total MFLOPs | Total Param (M) | Reported MFLOPs | Reported Param (M) |",
            "|---|---:|---:|---:|---:|---:|---:|---:|---:|"
        ]
        for r in reports:
            enc = r.components()[LayerCost.ENCODER]
            reported = ("%.3f" % r.reportedMflops, "%.2f" % r.reportedParamsM) \
                if r.reportedMflops is not None else ("-", "-")
            lines.append("| %s | %.3f | %.3f | %.3f | %.3f | %.3f | %.3f | %s | %s |" % (
                r.encoder, enc["mflops"], enc["params_m"], r.nonEncoderMflops, r.nonEncoderParams / 1e6,
                r.totalMflops, r.totalParamsM, reported[0], reported[1]))

        if any(r.reportedMflops is not None for r in reports):
            lines.append("")
            lines.append("Reported totals are published figures whose FLOPs convention and decoder components "
                         "are not stated; the gap to the derived totals is shown, not forced to zero.")

        if baselines:
            lines.append("")
            lines.append("| Model | Encoder | Encoder MFLOPs | Refiner MFLOPs | Decoder | Decoder MFLOPs "
                         "| Total MFLOPs | Total Param (M) |")
            lines.append("|---|---|---:|---:|---|---:|---:|---:|")
            for b in EncoderCostTable.BASELINES:
                lines.append("| %s | %s | %.3f | %.3f | %s | %.3f | %.3f | %.3f |" % (
                    b.name, b.encoder, b.encoderMflops, b.refinerMflops, b.decoder, b.decoderMflops,
                    b.totalMflops, b.totalParamsM))
        return "\n".join(lines) + "\n"

    @staticmethod
    def renderParams(counts: dict, reported_params_m: Optional[float] = None) -> str:
        """Markdown listing of countParams() output, with the gap to a published total."""

        lines = ["| Tensor | Component | Params |", "|---|---|---:|"]
        for name, count in counts["tensors"].items():
            lines.append(f"| {name} | {ComplexityAnalyzer.componentOf(name)} | {count:,} |")
        lines.append("")
        lines.append("| Component | Params |")
        lines.append("|---|---:|")
        for component, count in counts["components"].items():
            lines.append(f"| {component} | {count:,} |")
        lines.append(f"| total | {counts['total']:,} |")
        if reported_params_m is not None:
            lines.append("")
            lines.append(f"Published total {reported_params_m:.2f}M includes the encoder backbone; the derived "
                         f"captioner has {counts['total'] / 1e6:.3f}M parameters without it. The published figure "
                         f"does not break down its decoder, so the gap is reported rather than reconciled.")
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:

        return f"ComplexityAnalyzer({self.config})"
