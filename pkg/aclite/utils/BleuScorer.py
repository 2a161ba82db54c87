import math
from typing import Hashable, List, Sequence

from .AcLiteException import MetricError
from .EvalCorpus import EvalCorpus
from .NGramStats import NGramStats


class BleuScorer():
    """Corpus-level BLEU-1..n on a 0-100 scale.

    Hypothesis n-gram counts are clipped by their maximum count in any one
    reference. The brevity penalty uses, per segment, the reference length
    closest to the hypothesis length (the shorter one on ties). With
    smoothing on, orders n >= 2 use (matches + 1) / (total + 1).
    """

    def __init__(self, n_max: int = 4, smoothing: bool = False) -> None:

        self.nMax = n_max
        self.smoothing = smoothing
        self.clear()

    def clear(self) -> None:

        self.matches = [0] * self.nMax
        self.totals = [0] * self.nMax
        self.hypLength = 0
        self.refLength = 0
        self.segments = 0

    def cookAppend(self, hypothesis: Sequence[Hashable], references: Sequence[Sequence[Hashable]]) -> None:

        if not references:
            raise MetricError(message="BLEU needs at least one reference per hypothesis")

        hyp = NGramStats(hypothesis, self.nMax)
        caps: dict = dict()
        for ref in references:
            for gram, count in NGramStats(ref, self.nMax).counts.items():
                caps[gram] = max(caps.get(gram, 0), count)

        for gram, count in hyp.counts.items():
            self.matches[len(gram) - 1] += min(count, caps.get(gram, 0))
        for n in range(1, self.nMax + 1):
            self.totals[n - 1] += hyp.total(n)

        length = len(hypothesis)
        self.hypLength += length
        self.refLength += min((abs(len(r) - length), len(r)) for r in references)[1]
        self.segments += 1

    def precision(self, n: int) -> float:

        matches, total = self.matches[n - 1], self.totals[n - 1]
        if self.smoothing and n >= 2:
            return (matches + 1.0) / (total + 1.0)
        return matches / total if total > 0 else 0.0

    def brevityPenalty(self) -> float:

        if self.hypLength == 0:
            return 0.0
        if self.hypLength >= self.refLength:
            return 1.0
        return math.exp(1.0 - self.refLength / self.hypLength)

    def computeScore(self) -> List[float]:

        if self.segments == 0:
            raise MetricError(message="empty hypothesis corpus")

        penalty = self.brevityPenalty()
        scores = list()
        logSum = 0.0
        zero = False
        for n in range(1, self.nMax + 1):
            p = self.precision(n)
            if p <= 0.0:
                zero = True
            else:
                logSum += math.log(p)
            scores.append(0.0 if zero else 100.0 * penalty * math.exp(logSum / n))
        return scores

    @staticmethod
    def bleu(corpus: EvalCorpus, n_max: int = 4, smoothing: bool = False) -> List[float]:

        scorer = BleuScorer(n_max=n_max, smoothing=smoothing)
        for hyp, refs in zip(corpus.validate().hypotheses, corpus.references):
            scorer.cookAppend(hyp, refs)
        return scorer.computeScore()

    def __str__(self) -> str:

        return f"BleuScorer(n={self.nMax}, segments={self.segments}, smoothing={self.smoothing})"
