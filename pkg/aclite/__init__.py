"""AC-Lite image captioning package.

A lightweight attention-based image captioner with its own tensor kernel,
training loops, caption metrics and complexity analyzer, plus a CLI.
"""

import sys

from .utils import (
    AcLiteCLI,
    AcLiteException,
    AttentionDecoder,
    BleuScorer,
    CaptionController,
    CaptionDecoder,
    Checkpoint,
    CiderScorer,
    ComplexityAnalyzer,
    DatasetManifest,
    FeatureMap,
    ModelConfig,
    RunConfig,
    SelfTest,
    Tensor,
    Tokenizer,
    ToyCorpus,
    TrainConfig,
    Trainer,
    TrainingListener,
    Vocabulary,
)

def main():
    """Main entry point for the aclite CLI."""
    sys.exit(AcLiteCLI().exitCode)

__version__ = "1.0.0"

__all__ = [
    'AcLiteCLI',
    'AcLiteException',
    'AttentionDecoder',
    'BleuScorer',
    'CaptionController',
    'CaptionDecoder',
    'Checkpoint',
    'CiderScorer',
    'ComplexityAnalyzer',
    'DatasetManifest',
    'FeatureMap',
    'main',
    'ModelConfig',
    'RunConfig',
    'SelfTest',
    'Tensor',
    'Tokenizer',
    'ToyCorpus',
    'TrainConfig',
    'Trainer',
    'TrainingListener',
    'Vocabulary'
]
