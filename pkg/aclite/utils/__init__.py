"""AC-Lite captioning utilities package."""

# Import main classes that might be used by other projects
from .AcLiteCLI import AcLiteCLI
from .AcLiteException import (AcLiteException, BackboneLookupError, ConfigurationError, DataError, DimensionError,
                              EncodingError, FormatError, MetricError, NumericDomainError, OptimizerError,
                              RewardError, SelfTestFailure, VocabularyError)
from .AdamState import AdamState
from .AttentionDecoder import AttentionDecoder
from .BeamHypothesis import BeamHypothesis
from .BleuScorer import BleuScorer
from .CaptionController import CaptionController
from .CaptionDecoder import CaptionDecoder
from .Checkpoint import Checkpoint
from .CiderScorer import CiderScorer
from .ComplexityAnalyzer import ComplexityAnalyzer
from .ComplexityReport import ComplexityReport
from .ComputationTape import ComputationTape
from .DatasetManifest import DatasetManifest
from .DecoderState import DecoderState
from .Embedding import Embedding
from .EncoderCostTable import EncoderCostTable
from .EvalCorpus import EvalCorpus
from .FeatureMap import FeatureMap
from .FileFeatureProvider import FileFeatureProvider
from .GradientCheck import GradientCheck
from .GruCell import GruCell
from .Linear import Linear
from .ModelConfig import ModelConfig
from .ModelParams import ModelParams
from .RunConfig import RunConfig
from .SelfTest import SelfTest
from .Tensor import Tensor
from .TinyCnnProvider import TinyCnnProvider
from .Tokenizer import Tokenizer
from .ToyCorpus import ToyCorpus
from .TrainConfig import TrainConfig
from .Trainer import Trainer
from .TrainingExample import TrainingExample
from .TrainingListener import TrainingListener
from .VisualFeatures import VisualFeatures
from .Vocabulary import Vocabulary

__all__ = [
    'AcLiteCLI',
    'AcLiteException',
    'AdamState',
    'AttentionDecoder',
    'BackboneLookupError',
    'BeamHypothesis',
    'BleuScorer',
    'CaptionController',
    'CaptionDecoder',
    'Checkpoint',
    'CiderScorer',
    'ComplexityAnalyzer',
    'ComplexityReport',
    'ComputationTape',
    'ConfigurationError',
    'DataError',
    'DatasetManifest',
    'DecoderState',
    'DimensionError',
    'Embedding',
    'EncoderCostTable',
    'EncodingError',
    'EvalCorpus',
    'FeatureMap',
    'FileFeatureProvider',
    'FormatError',
    'GradientCheck',
    'GruCell',
    'Linear',
    'MetricError',
    'ModelConfig',
    'ModelParams',
    'NumericDomainError',
    'OptimizerError',
    'RewardError',
    'RunConfig',
    'SelfTest',
    'SelfTestFailure',
    'Tensor',
    'TinyCnnProvider',
    'Tokenizer',
    'ToyCorpus',
    'TrainConfig',
    'Trainer',
    'TrainingExample',
    'TrainingListener',
    'VisualFeatures',
    'Vocabulary',
    'VocabularyError'
]
