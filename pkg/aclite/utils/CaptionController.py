import asyncio
from collections import OrderedDict
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .AcLiteException import ConfigurationError
from .AttentionDecoder import AttentionDecoder
from .CaptionDecoder import CaptionDecoder
from .FeatureProvider import FeatureProvider
from .Vocabulary import Vocabulary

import logManager

LOGGER = logManager.logger.get_logger(__name__)


class CaptionController():
    """Captions many images with one read-only decoder.

    Work is spread over up to `workers` threads; results always come back
    in input order, so output files do not depend on the worker count.
    """

    def __init__(self, decoder: AttentionDecoder, provider: Optional[FeatureProvider] = None, beam_size: int = 6,
                 max_len: int = 16, workers: int = 1) -> None:

        if beam_size < 1:
            raise ConfigurationError(message=f"beam size must be at least 1, got {beam_size}")
        if workers < 1:
            raise ConfigurationError(message=f"workers must be at least 1, got {workers}")
        self.decoder = decoder
        self.provider = provider if provider is not None else decoder.provider()
        self.captioner = CaptionDecoder(decoder, max_len=max_len)
        self.beamSize = beam_size
        self.workers = workers
        self.captions: Dict[str, List[int]] = OrderedDict()

    def captionOne(self, source: Any) -> List[int]:

        return self.captioner.decode(self.provider.encode(source), beam_size=self.beamSize)

    async def _captionAsync(self, items: Sequence[Tuple[str, Any]]) -> List[List[int]]:

        semaphore = asyncio.Semaphore(self.workers)

        async def guarded(image_id: str, source: Any) -> List[int]:
            async with semaphore:
                tokens = await asyncio.to_thread(self.captionOne, source)
                LOGGER.debug(f"{image_id}: {tokens}")
                return tokens

        coros = [guarded(image_id, source) for image_id, source in items]
        return await asyncio.gather(*coros)

    def caption(self, items: Sequence[Tuple[str, Any]]) -> Dict[str, List[int]]:
        """Token ids per image id, in the order of items."""

        if self.workers == 1:
            results = [self.captionOne(source) for _, source in items]
        else:
            results = asyncio.run(self._captionAsync(items))
        self.captions = OrderedDict((image_id, tokens) for (image_id, _), tokens in zip(items, results))
        LOGGER.info(f"captioned {len(self.captions)} images with beam {self.beamSize}")
        return self.captions

    def texts(self, vocab: Vocabulary) -> Dict[str, str]:

        return OrderedDict((image_id, vocab.decode(tokens)) for image_id, tokens in self.captions.items())

    def to_dict(self, vocab: Optional[Vocabulary] = None) -> dict:

        if vocab is not None:
            return dict(self.texts(vocab))
        return {image_id: list(tokens) for image_id, tokens in self.captions.items()}

    def __str__(self) -> str:

        return f"CaptionController(beam={self.beamSize}, workers={self.workers}, images={len(self.captions)})"
