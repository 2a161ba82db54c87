#!/usr/bin/python3
import tempfile

from aclite import (AcLiteException, AttentionDecoder, BleuScorer, CaptionController, CiderScorer,
                    ComplexityAnalyzer, ModelConfig, Tokenizer, ToyCorpus, TrainConfig, Trainer, Vocabulary)
from aclite.utils import EvalCorpus


def do_stuff(out_dir: str) -> None:

    try:
        # synthetic corpus: 3 colors x 3 shapes x 2 backgrounds
        manifest = ToyCorpus(seed=0, n_images=90).generate(out_dir)
        tokenizer = Tokenizer()
        vocab = Vocabulary.build([tokenizer.tokenize(c) for c in manifest.captions("train")], min_occurrences=5)
        print(str(vocab))

        # desk-sized model
        decoder = AttentionDecoder(ModelConfig.desk(vocab_size=len(vocab)), seed=0)
        trainer = Trainer(decoder, TrainConfig(learning_rate=5e-3, epochs=30, batch_size=10, seed=0))
        history = trainer.trainXe(manifest.trainingExamples(vocab, tokenizer, "train"))
        print(history[-1])

        # caption the test split with beam 3
        controller = CaptionController(decoder, beam_size=3)
        controller.caption([(e["id"], manifest.source(e)) for e in manifest.split("test")])
        captions = controller.texts(vocab)
        for image_id, text in captions.items():
            print(f"{image_id}: {text}")

        # score against the references
        entries = {e["id"]: e for e in manifest.images}
        corpus = EvalCorpus()
        for image_id, text in captions.items():
            corpus.append(image_id, tokenizer.tokenize(text),
                          [tokenizer.tokenize(c) for c in entries[image_id]["captions"]])
        print("BLEU", BleuScorer.bleu(corpus), "CIDEr-D", CiderScorer.cider(corpus))

        # cost of the full-size model
        print(ComplexityAnalyzer.renderTable([ComplexityAnalyzer(ModelConfig.full()).countFlops()]))

    except AcLiteException as ex:
        print(ex.message)


if __name__ == '__main__':
    with tempfile.TemporaryDirectory() as out_dir:
        do_stuff(out_dir)
