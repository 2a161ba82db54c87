class LayerCost():
    """Exact cost of one layer: parameters and multiply-accumulates per invocation."""

    ENCODER = "encoder"
    ATTENTION = "attention"
    DECODER = "decoder"
    COMPONENTS = [ENCODER, ATTENTION, DECODER]

    def __init__(self, name: str, component: str, params: int, flops_per_invocation: int, invocations: int = 1) -> None:

        self.name = name
        self.component = component
        self.params = params
        self.flopsPerInvocation = flops_per_invocation
        self.invocations = invocations

    @property
    def totalMacs(self) -> int:

        return self.flopsPerInvocation * self.invocations

    def to_dict(self) -> dict:

        return {
            "name": self.name,
            "component": self.component,
            "params": self.params,
            "macs_per_invocation": self.flopsPerInvocation,
            "invocations": self.invocations
        }

    def __str__(self) -> str:

        return f"LayerCost({self.name}, {self.component}, params={self.params}, macs={self.flopsPerInvocation}x{self.invocations})"
