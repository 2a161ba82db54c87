import json
import os
from typing import Dict, List, Optional

from .AcLiteException import DataError
from .CaptionRecord import CaptionRecord
from .Tokenizer import Tokenizer
from .TrainingExample import TrainingExample
from .Vocabulary import Vocabulary

import logManager

LOGGER = logManager.logger.get_logger(__name__)


class DatasetManifest():
    """Image list of a captioning corpus.

    JSON layout: {"images": [{"id", "split", "features", "image", "captions"}]};
    relative feature and image paths are resolved against the manifest's
    directory.
    """

    SPLITS = ["train", "val", "test"]
    KEYS = ["id", "split", "features", "image", "captions"]

    def __init__(self, images: List[dict], root: Optional[str] = None) -> None:

        self.images: List[dict] = list()
        self.root = root
        seen = set()
        for entry in images:
            entry = DatasetManifest._checkEntry(entry)
            if entry["id"] in seen:
                raise DataError(message=f"duplicate image id '{entry['id']}' in manifest")
            seen.add(entry["id"])
            self.images.append(entry)

    @staticmethod
    def _checkEntry(entry: dict) -> dict:

        if not isinstance(entry, dict):
            raise DataError(message=f"manifest entries must be objects, got {type(entry).__name__}")
        unknown = [k for k in entry if k not in DatasetManifest.KEYS]
        if unknown:
            raise DataError(message="unknown manifest keys: %s" % ", ".join(unknown))
        if not isinstance(entry.get("id"), str) or not entry["id"]:
            raise DataError(message=f"manifest entry without a string id: {entry}")
        if entry.get("split") not in DatasetManifest.SPLITS:
            raise DataError(message=f"image {entry['id']}: split must be one of {', '.join(DatasetManifest.SPLITS)}")
        captions = entry.get("captions", [])
        if not isinstance(captions, list) or not all(isinstance(c, str) for c in captions):
            raise DataError(message=f"image {entry['id']}: captions must be a list of strings")
        return {
            "id": entry["id"],
            "split": entry["split"],
            "features": entry.get("features"),
            "image": entry.get("image"),
            "captions": list(captions)
        }

    def resolve(self, path: Optional[str]) -> Optional[str]:

        if path is None or self.root is None or os.path.isabs(path):
            return path
        return os.path.join(self.root, path)

    def split(self, name: Optional[str]) -> List[dict]:

        return [e for e in self.images if name is None or e["split"] == name]

    def source(self, entry: dict, encoder_uses_images: bool = False) -> str:
        """Path of the input an encoder consumes for this image."""

        key = "image" if encoder_uses_images else "features"
        if entry.get(key) is None:
            raise DataError(message=f"image {entry['id']} has no {key} path")
        return self.resolve(entry[key])

    def captions(self, split: Optional[str] = None) -> List[str]:

        return [c for e in self.split(split) for c in e["captions"]]

    def records(self, vocab: Vocabulary, tokenizer: Tokenizer, split: Optional[str] = None,
                max_len: int = 16) -> List[CaptionRecord]:

        return [CaptionRecord.fromText(e["id"], e["split"], c, vocab, tokenizer, max_len=max_len)
                for e in self.split(split) for c in e["captions"]]

    def trainingExamples(self, vocab: Vocabulary, tokenizer: Tokenizer, split: Optional[str] = "train",
                         max_len: int = 16, encoder_uses_images: bool = False,
                         per_image: bool = False) -> List[TrainingExample]:
        """One example per caption, or one per image (its first caption) when per_image is set.

        Every example carries the interior ids of all captions of its image as references.
        """

        examples = list()
        for entry in self.split(split):
            records = [CaptionRecord.fromText(entry["id"], entry["split"], c, vocab, tokenizer, max_len=max_len)
                       for c in entry["captions"]]
            if not records:
                continue
            references = [r.interior for r in records]
            source = self.source(entry, encoder_uses_images)
            for record in records[:1] if per_image else records:
                examples.append(TrainingExample(image_id=entry["id"], source=source, tokens=record.ids,
                                                references=references))
        return examples

    def to_dict(self) -> dict:

        return {"images": [dict(e) for e in self.images]}

    def toBytes(self) -> bytes:

        return (json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n").encode("utf-8")

    def save(self, path: str) -> None:

        with open(path, "wb") as out:
            out.write(self.toBytes())
        LOGGER.info(f"wrote manifest with {len(self.images)} images to {path}")

    @staticmethod
    def load(path: str) -> 'DatasetManifest':

        try:
            with open(path, "r", encoding="utf-8") as ins:
                document = json.load(ins)
        except FileNotFoundError:
            raise DataError(message=f"manifest {path} does not exist")
        except (json.JSONDecodeError, UnicodeDecodeError) as e:
            raise DataError(message=f"manifest {path} is not valid UTF-8 JSON: {e}")
        if not isinstance(document, dict) or not isinstance(document.get("images"), list):
            raise DataError(message=f"manifest {path} needs an 'images' list")
        return DatasetManifest(document["images"], root=os.path.dirname(os.path.abspath(path)))

    def __len__(self) -> int:

        return len(self.images)

    def __str__(self) -> str:

        counts: Dict[str, int] = {s: len(self.split(s)) for s in DatasetManifest.SPLITS}
        return "DatasetManifest(%s)" % ", ".join(f"{s}={n}" for s, n in counts.items())
