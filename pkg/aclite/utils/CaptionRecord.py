from typing import List

from .AcLiteException import VocabularyError
from .Tokenizer import Tokenizer
from .Vocabulary import Vocabulary


class CaptionRecord():

    def __init__(self, image_id: str, split: str, text: str, ids: List[int]) -> None:

        self.imageId = image_id
        self.split = split
        self.text = text
        self.ids = ids

    @staticmethod
    def fromText(image_id: str, split: str, text: str, vocab: Vocabulary, tokenizer: Tokenizer,
                 max_len: int = 16) -> 'CaptionRecord':

        text = tokenizer.normalize(text)
        ids = vocab.encode(tokenizer.tokenize(text), max_len=max_len)
        if any(not 0 <= i < len(vocab) for i in ids):
            raise VocabularyError(message=f"caption of {image_id} encodes outside the vocabulary")
        return CaptionRecord(image_id=image_id, split=split, text=text, ids=ids)

    @property
    def interior(self) -> List[int]:

        return self.ids[1:-1]

    def to_dict(self) -> dict:

        return {"id": self.imageId, "split": self.split, "text": self.text, "ids": list(self.ids)}

    def __str__(self) -> str:

        return f"CaptionRecord({self.imageId}, {self.split}, {len(self.interior)} tokens)"
