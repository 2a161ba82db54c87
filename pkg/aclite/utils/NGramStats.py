from collections import Counter
from typing import Hashable, Sequence, Tuple


class NGramStats():
    """Counts of all n-grams, 1 <= n <= n_max, of one token sequence."""

    def __init__(self, tokens: Sequence[Hashable], n_max: int = 4) -> None:

        self.tokens = tuple(tokens)
        self.nMax = n_max
        self.counts: Counter = Counter()
        for n in range(1, n_max + 1):
            for i in range(len(self.tokens) - n + 1):
                self.counts[self.tokens[i:i + n]] += 1

    def __len__(self) -> int:

        return len(self.tokens)

    def order(self, n: int) -> Counter:

        return Counter({g: c for g, c in self.counts.items() if len(g) == n})

    def total(self, n: int) -> int:

        return max(0, len(self.tokens) - n + 1)

    def count(self, gram: Tuple[Hashable, ...]) -> int:

        return self.counts.get(tuple(gram), 0)

    def __str__(self) -> str:

        return f"NGramStats(len={len(self.tokens)}, distinct={len(self.counts)})"
