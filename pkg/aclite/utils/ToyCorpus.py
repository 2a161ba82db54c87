import itertools
import os
import string
from typing import Dict, List, Optional

import numpy as np

from .AcLiteException import ConfigurationError
from .DatasetManifest import DatasetManifest
from .FeatureMap import FeatureMap

import logManager

LOGGER = logManager.logger.get_logger(__name__)


class ToyCorpus():
    """Seeded synthetic captioning corpus.

    Captions come from a template such as "{color} {shape} on {background}".
    Every slot value owns a random code vector and a random spatial mask; an
    image's feature map is the sum of code x mask over its slot values plus
    small noise, so the caption is recoverable from the features. Rendered
    images paint the first slot's color into the second slot's mask over a
    background level set by the remaining slots.
    """

    DEFAULT_GRAMMAR = {
        "template": "{color} {shape} on {background}",
        "color": ["red", "green", "blue"],
        "shape": ["circle", "square", "triangle"],
        "background": ["grass", "sand"]
    }

    def __init__(self, seed: int = 0, n_images: int = 90, grammar: Optional[Dict] = None, d_a: int = 64,
                 n_h: int = 4, n_w: int = 4, noise: float = 0.05, image_size: int = 32) -> None:

        self.grammar = dict(grammar or ToyCorpus.DEFAULT_GRAMMAR)
        self.template: str = self.grammar.get("template", "")
        self.slots: List[str] = [f for _, f, _, _ in string.Formatter().parse(self.template) if f]
        missing = [s for s in self.slots if not self.grammar.get(s)]
        if not self.slots or missing:
            raise ConfigurationError(message="grammar template needs value lists for its slots: %s" % ", ".join(
                missing or ["<none>"]))
        if n_images < 1:
            raise ConfigurationError(message=f"n_images must be positive, got {n_images}")
        if image_size % n_h or image_size % n_w:
            raise ConfigurationError(message=f"image_size {image_size} must be a multiple of the {n_h}x{n_w} grid")

        self.seed = seed
        self.nImages = n_images
        self.shape = (d_a, n_h, n_w)
        self.noise = noise
        self.imageSize = image_size

        rng = np.random.default_rng(seed)
        self.codes: Dict[str, Dict[str, np.ndarray]] = dict()
        self.masks: Dict[str, Dict[str, np.ndarray]] = dict()
        self.colors: Dict[str, Dict[str, np.ndarray]] = dict()
        for slot in self.slots:
            self.codes[slot] = dict()
            self.masks[slot] = dict()
            self.colors[slot] = dict()
            for value in self.grammar[slot]:
                self.codes[slot][value] = rng.normal(0.0, 1.0, size=d_a)
                mask = (rng.random((n_h, n_w)) < 0.5).astype(np.float64)
                mask[rng.integers(n_h), rng.integers(n_w)] = 1.0
                self.masks[slot][value] = mask
                self.colors[slot][value] = rng.random(3)

    def combinations(self) -> List[Dict[str, str]]:

        return [dict(zip(self.slots, values)) for values in itertools.product(*(self.grammar[s] for s in self.slots))]

    def caption(self, choice: Dict[str, str]) -> str:

        return self.template.format(**choice)

    def featureMap(self, choice: Dict[str, str], rng: np.random.Generator) -> FeatureMap:

        d_a, n_h, n_w = self.shape
        values = np.zeros(self.shape, dtype=np.float64)
        for slot in self.slots:
            values += np.einsum("c,hw->chw", self.codes[slot][choice[slot]], self.masks[slot][choice[slot]])
        values += rng.normal(0.0, self.noise, size=self.shape)
        return FeatureMap(values)

    def image(self, choice: Dict[str, str]) -> np.ndarray:
        """H x W x 3 image in [0, 1]."""

        _, n_h, n_w = self.shape
        block = np.ones((self.imageSize // n_h, self.imageSize // n_w))
        rest = [self.colors[s][choice[s]] for s in self.slots[2:]]
        background = np.mean(rest, axis=0) if rest else np.full(3, 0.5)
        pixels = np.broadcast_to(background, (self.imageSize, self.imageSize, 3)).copy()
        if len(self.slots) >= 2:
            mask = np.kron(self.masks[self.slots[1]][choice[self.slots[1]]], block) > 0
            pixels[mask] = self.colors[self.slots[0]][choice[self.slots[0]]]
        else:
            mask = np.kron(self.masks[self.slots[0]][choice[self.slots[0]]], block) > 0
            pixels[mask] = self.colors[self.slots[0]][choice[self.slots[0]]]
        return np.clip(pixels, 0.0, 1.0)

    @staticmethod
    def splitOf(index: int) -> str:

        return {8: "val", 9: "test"}.get(index % 10, "train")

    def generate(self, out_dir: str, images: bool = False) -> DatasetManifest:

        rng = np.random.default_rng(self.seed + 1)
        combos = self.combinations()
        os.makedirs(os.path.join(out_dir, "features"), exist_ok=True)
        if images:
            os.makedirs(os.path.join(out_dir, "images"), exist_ok=True)

        entries = list()
        order: List[int] = list()
        for i in range(self.nImages):
            if not order:
                order = [int(k) for k in rng.permutation(len(combos))]
            choice = combos[order.pop(0)]
            image_id = "toy-%04i" % i
            features = "features/%s.aclf" % image_id
            self.featureMap(choice, rng).save(os.path.join(out_dir, features))
            entry = {"id": image_id, "split": ToyCorpus.splitOf(i), "features": features, "image": None,
                     "captions": [self.caption(choice)]}
            if images:
                entry["image"] = "images/%s.npy" % image_id
                np.save(os.path.join(out_dir, entry["image"]), self.image(choice))
            entries.append(entry)

        manifest = DatasetManifest(entries, root=out_dir)
        manifest.save(os.path.join(out_dir, "manifest.json"))
        LOGGER.info(f"generated {self.nImages} toy images over {len(combos)} caption classes in {out_dir}")
        return manifest

    def to_dict(self) -> dict:

        return {"seed": self.seed, "n_images": self.nImages, "grammar": self.grammar, "shape": list(self.shape)}

    def __str__(self) -> str:

        return f"ToyCorpus(seed={self.seed}, images={self.nImages}, classes={len(self.combinations())})"
