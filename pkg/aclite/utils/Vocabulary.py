from collections import Counter
from typing import Dict, Iterable, List, Sequence

from .AcLiteException import DataError, VocabularyError

import logManager

LOGGER = logManager.logger.get_logger(__name__)


class Vocabulary():

    PAD = "<pad>"
    BOS = "<bos>"
    EOS = "<eos>"
    UNK = "<unk>"
    RESERVED = [PAD, BOS, EOS, UNK]

    PAD_ID = 0
    BOS_ID = 1
    EOS_ID = 2
    UNK_ID = 3
    CONTROL_IDS = {PAD_ID, BOS_ID, EOS_ID}

    def __init__(self, tokens: Sequence[str], frequencies: Dict[str, int] = None) -> None:

        tokens = list(tokens)
        if tokens[:len(Vocabulary.RESERVED)] != Vocabulary.RESERVED:
            raise DataError(message="vocabulary must start with %s" % ", ".join(Vocabulary.RESERVED))
        if len(set(tokens)) != len(tokens):
            duplicates = sorted(t for t, c in Counter(tokens).items() if c > 1)
            raise DataError(message="duplicate vocabulary tokens: %s" % ", ".join(duplicates))
        self.tokens: List[str] = tokens
        self.ids: Dict[str, int] = {t: i for i, t in enumerate(tokens)}
        self.frequencies: Dict[str, int] = dict(frequencies or {})

    @staticmethod
    def build(corpus: Iterable[Sequence[str]], min_occurrences: int = 5) -> 'Vocabulary':
        """Keeps tokens seen more than min_occurrences times, most frequent first, ties in code-point order."""

        counts: Counter = Counter()
        for tokens in corpus:
            counts.update(t for t in tokens if t not in Vocabulary.RESERVED)
        kept = sorted((t for t, c in counts.items() if c > min_occurrences), key=lambda t: (-counts[t], t))
        LOGGER.debug(f"{len(kept)} of {len(counts)} distinct tokens occur more than {min_occurrences} times")
        return Vocabulary(Vocabulary.RESERVED + kept, frequencies={t: counts[t] for t in kept})

    def __len__(self) -> int:

        return len(self.tokens)

    def __contains__(self, token: str) -> bool:

        return token in self.ids

    def tokenId(self, token: str) -> int:

        return self.ids.get(token, Vocabulary.UNK_ID)

    def token(self, token_id: int) -> str:

        if not 0 <= token_id < len(self.tokens):
            raise VocabularyError(message=f"token id {token_id} outside [0, {len(self.tokens)})")
        return self.tokens[token_id]

    def encode(self, tokens: Sequence[str], max_len: int = 16) -> List[int]:

        return [Vocabulary.BOS_ID] + [self.tokenId(t) for t in tokens[:max_len]] + [Vocabulary.EOS_ID]

    def decodeTokens(self, ids: Sequence[int]) -> List[str]:

        tokens = [self.token(int(i)) for i in ids]
        return [t for t, i in zip(tokens, ids) if int(i) not in Vocabulary.CONTROL_IDS]

    def decode(self, ids: Sequence[int]) -> str:

        return " ".join(self.decodeTokens(ids))

    def save(self, path: str) -> None:

        with open(path, "w", encoding="utf-8", newline="\n") as out:
            out.write("\n".join(self.tokens) + "\n")
        LOGGER.info(f"wrote vocabulary of {len(self)} tokens to {path}")

    @staticmethod
    def load(path: str) -> 'Vocabulary':

        try:
            with open(path, "r", encoding="utf-8") as ins:
                tokens = ins.read().split("\n")
        except FileNotFoundError:
            raise DataError(message=f"vocabulary file {path} does not exist")
        except UnicodeDecodeError as e:
            raise DataError(message=f"vocabulary file {path} is not UTF-8: {e.reason}")
        if tokens and tokens[-1] == "":
            tokens.pop()
        return Vocabulary(tokens)

    def to_dict(self) -> dict:

        return {"size": len(self), "tokens": list(self.tokens)}

    def __str__(self) -> str:

        return f"Vocabulary(size={len(self)})"
