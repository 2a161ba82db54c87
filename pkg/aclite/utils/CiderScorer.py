import math
from collections import Counter, defaultdict
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from .AcLiteException import MetricError
from .EvalCorpus import EvalCorpus
from .NGramStats import NGramStats


class CiderScorer():
    """CIDEr-D, reported on the x10 scale.

    Document frequency counts the images whose references contain an n-gram.
    By default it is taken from the references appended to this scorer; a
    scorer built with frozen() keeps the document frequencies of a fixed
    reference corpus instead (the SCST reward setting).
    """

    def __init__(self, n_max: int = 4, sigma: float = 6.0) -> None:

        self.nMax = n_max
        self.sigma = sigma
        self.frozenFrequency: Optional[Counter] = None
        self.frozenImages = 0
        self.clear()

    def clear(self) -> None:

        self.ctest: List[NGramStats] = list()
        self.crefs: List[List[NGramStats]] = list()

    @staticmethod
    def documentFrequency(references: Sequence[Sequence[NGramStats]]) -> Counter:

        df: Counter = Counter()
        for refs in references:
            for gram in set(g for ref in refs for g in ref.counts):
                df[gram] += 1
        return df

    @staticmethod
    def frozen(reference_corpus: Sequence[Sequence[Sequence[Hashable]]], n_max: int = 4,
               sigma: float = 6.0) -> 'CiderScorer':

        if not reference_corpus:
            raise MetricError(message="frozen CIDEr-D needs a nonempty reference corpus")
        scorer = CiderScorer(n_max=n_max, sigma=sigma)
        cooked = [[NGramStats(r, n_max) for r in refs] for refs in reference_corpus]
        scorer.frozenFrequency = CiderScorer.documentFrequency(cooked)
        scorer.frozenImages = len(cooked)
        return scorer

    def cookAppend(self, hypothesis: Sequence[Hashable], references: Sequence[Sequence[Hashable]]) -> None:

        if not references:
            raise MetricError(message="CIDEr-D needs at least one reference per hypothesis")
        self.ctest.append(NGramStats(hypothesis, self.nMax))
        self.crefs.append([NGramStats(r, self.nMax) for r in references])

    def _vector(self, stats: NGramStats, df: Counter, log_images: float) -> Tuple[List[Dict], List[float]]:

        vec: List[Dict] = [defaultdict(float) for _ in range(self.nMax)]
        norm = [0.0] * self.nMax
        for gram, tf in stats.counts.items():
            n = len(gram) - 1
            value = float(tf) * (log_images - math.log(max(1.0, df.get(gram, 0.0))))
            vec[n][gram] = value
            norm[n] += value * value
        return vec, [math.sqrt(x) for x in norm]

    def _similarity(self, hyp: Tuple[List[Dict], List[float]], ref: Tuple[List[Dict], List[float]],
                    delta: float) -> np.ndarray:

        (vecHyp, normHyp), (vecRef, normRef) = hyp, ref
        val = np.zeros(self.nMax)
        for n in range(self.nMax):
            for gram, value in vecHyp[n].items():
                # clipped numerator: min(hyp, ref) * ref
                val[n] += min(value, vecRef[n].get(gram, 0.0)) * vecRef[n].get(gram, 0.0)
            if normHyp[n] != 0 and normRef[n] != 0:
                val[n] /= normHyp[n] * normRef[n]
            else:
                val[n] = 0.0
            val[n] *= math.exp(-(delta ** 2) / (2 * self.sigma ** 2))
        return val

    def _score(self, hyp: NGramStats, refs: List[NGramStats], df: Counter, log_images: float) -> float:

        vecHyp = self._vector(hyp, df, log_images)
        total = np.zeros(self.nMax)
        for ref in refs:
            total += self._similarity(vecHyp, self._vector(ref, df, log_images), float(len(hyp) - len(ref)))
        return float(np.mean(total) / len(refs) * 10.0)

    def computeScore(self) -> Tuple[float, np.ndarray]:

        if not self.ctest:
            raise MetricError(message="empty hypothesis corpus")
        if self.frozenFrequency is not None:
            df, images = self.frozenFrequency, self.frozenImages
        else:
            df, images = CiderScorer.documentFrequency(self.crefs), len(self.crefs)
        logImages = math.log(float(images))
        scores = np.array([self._score(h, r, df, logImages) for h, r in zip(self.ctest, self.crefs)])
        return float(np.mean(scores)), scores

    def scoreSingle(self, hypothesis: Sequence[Hashable], references: Sequence[Sequence[Hashable]]) -> float:
        """Score one hypothesis against frozen document frequencies."""

        if self.frozenFrequency is None:
            raise MetricError(message="scoreSingle needs a frozen reference corpus")
        if not references:
            raise MetricError(message="CIDEr-D needs at least one reference per hypothesis")
        return self._score(NGramStats(hypothesis, self.nMax), [NGramStats(r, self.nMax) for r in references],
                           self.frozenFrequency, math.log(float(self.frozenImages)))

    @staticmethod
    def cider(corpus: EvalCorpus, n_max: int = 4, sigma: float = 6.0) -> float:

        scorer = CiderScorer(n_max=n_max, sigma=sigma)
        for hyp, refs in zip(corpus.validate().hypotheses, corpus.references):
            scorer.cookAppend(hyp, refs)
        return scorer.computeScore()[0]

    def __str__(self) -> str:

        mode = "frozen(%i images)" % self.frozenImages if self.frozenFrequency is not None else "corpus"
        return f"CiderScorer(n={self.nMax}, sigma={self.sigma}, df={mode}, hypotheses={len(self.ctest)})"
