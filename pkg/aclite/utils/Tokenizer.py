import string
import unicodedata
from typing import List, Union

from .AcLiteException import EncodingError


class Tokenizer():
    """NFC-normalizing whitespace tokenizer; punctuation acts as a separator and is dropped.

    No case folding: Assamese script has no case. Reserved vocabulary
    tokens such as "<unk>" pass through unchanged.
    """

    PUNCTUATION = set(".,;:!?\"'()[]{}–—…׀।॥") | set(string.punctuation)

    def __init__(self, reserved: List[str] = None) -> None:

        self.reserved = set(reserved or [])
        self._table = {ord(ch): " " for ch in Tokenizer.PUNCTUATION}

    def normalize(self, text: Union[str, bytes]) -> str:

        if isinstance(text, (bytes, bytearray)):
            try:
                text = bytes(text).decode("utf-8")
            except UnicodeDecodeError as e:
                raise EncodingError(message=f"invalid UTF-8 at byte {e.start}: {e.reason}")
        try:
            text.encode("utf-8")
        except UnicodeEncodeError as e:
            raise EncodingError(message=f"text is not valid Unicode at position {e.start}: {e.reason}")
        return unicodedata.normalize("NFC", text)

    def tokenize(self, text: Union[str, bytes]) -> List[str]:

        tokens = list()
        for piece in self.normalize(text).split():
            if piece in self.reserved:
                tokens.append(piece)
                continue
            # punctuation separates words even without surrounding spaces
            tokens.extend(piece.translate(self._table).split())
        return tokens

    def __str__(self) -> str:

        return f"Tokenizer(punctuation={len(Tokenizer.PUNCTUATION)} chars)"
