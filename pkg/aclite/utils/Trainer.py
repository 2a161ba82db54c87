from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from .AcLiteException import DataError, RewardError
from .AdamState import AdamState
from .AttentionDecoder import AttentionDecoder
from .CaptionDecoder import CaptionDecoder
from .Checkpoint import Checkpoint
from .CiderScorer import CiderScorer
from .ComputationTape import ComputationTape
from .FeatureProvider import FeatureProvider
from .Tensor import Tensor
from .TrainConfig import TrainConfig
from .TrainingExample import TrainingExample
from .TrainingListener import TrainingListener

import logManager

LOGGER = logManager.logger.get_logger(__name__)

RewardFunction = Callable[[Sequence[int], Sequence[Sequence[int]]], float]


class Trainer():
    """Cross-entropy and self-critical training of an AttentionDecoder.

    A batch is one tape: per-example losses are reduced in example order,
    so runs with the same seed, config and data are bit-identical.
    """

    MODE_XE = "xe"
    MODE_SCST = "scst"

    def __init__(self, decoder: AttentionDecoder, config: TrainConfig, listener: Optional[TrainingListener] = None,
                 provider: Optional[FeatureProvider] = None) -> None:

        self.decoder = decoder
        self.config = config.validate()
        self.provider = provider if provider is not None else decoder.provider()
        self.listener = listener if listener is not None else TrainingListener()
        self.adam = AdamState(learning_rate=config.learning_rate, beta1=config.beta1, beta2=config.beta2,
                              eps=config.eps, grad_clip=config.grad_clip)
        self.rng = np.random.default_rng(config.seed)
        self.captioner = CaptionDecoder(decoder, max_len=config.max_len)
        self.epoch = 0
        self.scstSteps = 0
        self.mode = Trainer.MODE_XE
        self.reward: Optional[RewardFunction] = None

    @property
    def params(self):

        return self.decoder.params

    def batches(self, count: int) -> List[List[int]]:
        """Seeded shuffle of range(count) cut into batches; the last one may be short."""

        order = [int(i) for i in self.rng.permutation(count)]
        size = self.config.batch_size
        return [order[i:i + size] for i in range(0, count, size)]

    def xeBatch(self, batch: Sequence[TrainingExample]) -> Dict[str, float]:

        with ComputationTape() as tape:
            outputs = [self.decoder.forwardTeacherForced(self.provider.encode(ex.source), ex.tokens) for ex in batch]
            loss = Tensor.stack([o.loss for o in outputs]).sum() * (1.0 / len(outputs))
        tape.backward(loss)
        self.adam.adamStep(self.params)
        return {
            "loss": loss.item(),
            "correct": sum(o.correctTokens() for o in outputs),
            "tokens": sum(len(o.targets) for o in outputs)
        }

    def trainXe(self, examples: Sequence[TrainingExample], epochs: Optional[int] = None) -> List[dict]:
        """Runs XE epochs and returns one {epoch, loss, accuracy} entry per epoch."""

        if not examples:
            raise DataError(message="cannot train on an empty dataset")
        self.mode = Trainer.MODE_XE
        history = list()
        for _ in range(self.config.epochs if epochs is None else epochs):
            self.adam.learningRate = self.config.learningRateAt(self.epoch)
            lossSum, correct, tokens = 0.0, 0, 0
            for b, batch in enumerate(self.batches(len(examples))):
                stats = self.xeBatch([examples[i] for i in batch])
                lossSum += stats["loss"] * len(batch)
                correct += stats["correct"]
                tokens += stats["tokens"]
                LOGGER.debug(f"epoch {self.epoch} batch {b}: loss {stats['loss']:.6f}")
                self.listener.onBatchEnd(self.epoch, b, stats["loss"])

            entry = {"epoch": self.epoch, "loss": lossSum / len(examples), "accuracy": correct / tokens}
            history.append(entry)
            LOGGER.info(f"epoch {self.epoch}: mean loss {entry['loss']:.4f}, token accuracy {entry['accuracy']:.4f}")
            self.listener.onEpochEnd(self.epoch, entry["loss"], entry["accuracy"])
            self.epoch += 1
        return history

    def useReferenceCorpus(self, examples: Sequence[TrainingExample]) -> RewardFunction:
        """CIDEr-D reward with document frequencies frozen from the examples' references."""

        corpus = dict()
        for ex in examples:
            if not ex.references:
                raise RewardError(message=f"image {ex.imageId} has no references")
            corpus.setdefault(ex.imageId, ex.references)
        scorer = CiderScorer.frozen(list(corpus.values()))
        self.reward = scorer.scoreSingle
        return self.reward

    @staticmethod
    def _strip(tokens: Sequence[int]) -> List[int]:

        return list(tokens[:-1]) if tokens and tokens[-1] == AttentionDecoder.EOS else list(tokens)

    def scstGradients(self, batch: Sequence[TrainingExample], reward: Optional[RewardFunction] = None) -> List[dict]:
        """Populates gradients of mean_i -(r(sample_i) - r(greedy_i)) * ln p(sample_i)."""

        reward = reward if reward is not None else self.reward
        if reward is None:
            reward = self.useReferenceCorpus(batch)

        rollouts = list()
        for ex in batch:
            if not ex.references:
                raise RewardError(message=f"image {ex.imageId} has no references")
            features = self.provider.encode(ex.source)
            sampled, _ = self.captioner.sampleDecode(features, self.rng)
            greedy = self.captioner.greedyDecode(features)
            sampleReward = float(reward(Trainer._strip(sampled), ex.references))
            greedyReward = float(reward(Trainer._strip(greedy), ex.references))
            rollouts.append({"image_id": ex.imageId, "sampled": sampled, "greedy": greedy,
                             "sample_reward": sampleReward, "greedy_reward": greedyReward})

        with ComputationTape() as tape:
            terms = list()
            for ex, rollout in zip(batch, rollouts):
                logProb = self.decoder.sequenceLogProb(self.provider.encode(ex.source),
                                                       [AttentionDecoder.BOS] + rollout["sampled"])
                advantage = rollout["sample_reward"] - rollout["greedy_reward"]
                terms.append(logProb * (-advantage))
            loss = Tensor.stack(terms).sum() * (1.0 / len(terms))
        tape.backward(loss)
        return rollouts

    def scstStep(self, batch: Sequence[TrainingExample], reward: Optional[RewardFunction] = None) -> List[dict]:

        rollouts = self.scstGradients(batch, reward)
        self.adam.adamStep(self.params)
        sampleMean = float(np.mean([r["sample_reward"] for r in rollouts]))
        greedyMean = float(np.mean([r["greedy_reward"] for r in rollouts]))
        LOGGER.debug(f"scst step {self.scstSteps}: sample reward {sampleMean:.4f}, greedy reward {greedyMean:.4f}")
        self.listener.onScstStep(self.scstSteps, sampleMean, greedyMean)
        self.scstSteps += 1
        return rollouts

    def trainScst(self, images: Sequence[TrainingExample], epochs: Optional[int] = None) -> List[dict]:
        """SCST epochs over one example per image; returns mean rewards per epoch."""

        if not images:
            raise DataError(message="cannot train on an empty dataset")
        self.mode = Trainer.MODE_SCST
        if self.reward is None:
            self.useReferenceCorpus(images)
        history = list()
        for _ in range(self.config.epochs if epochs is None else epochs):
            self.adam.learningRate = self.config.learningRateAt(self.epoch)
            rollouts = list()
            for batch in self.batches(len(images)):
                rollouts.extend(self.scstStep([images[i] for i in batch]))
            entry = {
                "epoch": self.epoch,
                "sample_reward": float(np.mean([r["sample_reward"] for r in rollouts])),
                "greedy_reward": float(np.mean([r["greedy_reward"] for r in rollouts]))
            }
            history.append(entry)
            LOGGER.info(f"scst epoch {self.epoch}: sample reward {entry['sample_reward']:.4f}, "
                        f"greedy reward {entry['greedy_reward']:.4f}")
            self.listener.onEpochEnd(self.epoch, -entry["greedy_reward"], 0.0)
            self.epoch += 1
        return history

    def checkpoint(self) -> Checkpoint:

        meta = {
            "model": self.decoder.config.to_dict(),
            "train": self.config.to_dict(),
            "epoch": self.epoch,
            "seed": self.config.seed,
            "mode": self.mode,
            "scst_steps": self.scstSteps,
            "rng_state": self.rng.bit_generator.state
        }
        return Checkpoint.fromParams(self.params, adam=self.adam, meta=meta)

    def saveCheckpoint(self, path: str) -> Checkpoint:

        checkpoint = self.checkpoint()
        checkpoint.save(path)
        self.listener.onCheckpoint(path, self.epoch)
        return checkpoint

    def resume(self, checkpoint: Checkpoint, with_optimizer: bool = True) -> None:
        """Loads parameters, and optionally optimizer moments, counters and the shuffle/sampling generator."""

        checkpoint.restore(self.params, self.adam if with_optimizer else None)
        if with_optimizer:
            self.epoch = int(checkpoint.meta.get("epoch", 0))
            self.scstSteps = int(checkpoint.meta.get("scst_steps", 0))
            if "rng_state" in checkpoint.meta:
                self.rng.bit_generator.state = checkpoint.meta["rng_state"]

    def __str__(self) -> str:

        return f"Trainer({self.config}, epoch={self.epoch}, mode={self.mode})"
