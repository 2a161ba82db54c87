import json
import re
import sys
from typing import Dict, List, Optional

from .AcLiteException import AcLiteException, ConfigurationError, DataError
from .AttentionDecoder import AttentionDecoder
from .BleuScorer import BleuScorer
from .CaptionController import CaptionController
from .Checkpoint import Checkpoint
from .CiderScorer import CiderScorer
from .ComplexityAnalyzer import ComplexityAnalyzer
from .DatasetManifest import DatasetManifest
from .EncoderCostTable import EncoderCostTable
from .EvalCorpus import EvalCorpus
from .ModelConfig import ModelConfig
from .RunConfig import RunConfig
from .SelfTest import SelfTest
from .Tokenizer import Tokenizer
from .ToyCorpus import ToyCorpus
from .Trainer import Trainer
from .TrainingListener import TrainingListener
from .Vocabulary import Vocabulary

import logManager

LOGGER = logManager.logger.get_logger(__name__)


class AcLiteCLI():

    _USAGE = "usage"
    _DESCR = "descr"
    _REGEX = "regex"
    _TYPES = "types"
    _KEY = "key"
    _VALUE = "value"
    _OPTIONS = "options"
    _HANDLER = "handler"

    _COMMAND = "command"
    _ARGS = "args"
    _PARAMS = "params"

    EXIT_INTERRUPTED = 130

    _PATH = r"^.+$"
    _INT = r"^[0-9]+$"
    _FLOAT = r"^[0-9]*\.?[0-9]+([eE][-+]?[0-9]+)?$"
    _FLAG = r"^$"

    OPTIONS = {
        "manifest": {
            _USAGE: "--manifest <file>",
            _DESCR: "dataset manifest JSON",
            _REGEX: _PATH,
            _TYPES: [str],
            _KEY: "manifest"
        },
        "vocab": {
            _USAGE: "--vocab <file>",
            _DESCR: "vocabulary file, one token per line",
            _REGEX: _PATH,
            _TYPES: [str],
            _KEY: "vocab"
        },
        "checkpoint": {
            _USAGE: "--checkpoint <file>",
            _DESCR: "model checkpoint to write (train) or read (caption, evaluate)",
            _REGEX: _PATH,
            _TYPES: [str],
            _KEY: "checkpoint"
        },
        "init-checkpoint": {
            _USAGE: "--init-checkpoint <file>",
            _DESCR: "XE checkpoint that SCST fine-tuning starts from",
            _REGEX: _PATH,
            _TYPES: [str],
            _KEY: "init_checkpoint"
        },
        "out": {
            _USAGE: "--out <path>",
            _DESCR: "output file or directory, standard output if omitted where possible",
            _REGEX: _PATH,
            _TYPES: [str],
            _KEY: "out"
        },
        "hypotheses": {
            _USAGE: "--hypotheses <file>",
            _DESCR: "JSON object of image id to caption text to be scored",
            _REGEX: _PATH,
            _TYPES: [str],
            _KEY: "hypotheses"
        },
        "min-count": {
            _USAGE: "--min-count <n>",
            _DESCR: "keep tokens occurring more than n times, default 5",
            _REGEX: _INT,
            _TYPES: [int],
            _KEY: "min_count"
        },
        "count": {
            _USAGE: "--count <n>",
            _DESCR: "number of synthetic images, default 90",
            _REGEX: r"^[1-9][0-9]*$",
            _TYPES: [int],
            _KEY: "count"
        },
        "images": {
            _USAGE: "--images",
            _DESCR: "also render raw images for the tiny CNN encoder",
            _REGEX: _FLAG,
            _TYPES: None,
            _KEY: "images",
            _VALUE: True
        },
        "seed": {
            _USAGE: "--seed <n>",
            _DESCR: "random seed for initialization, shuffling, sampling and toy data",
            _REGEX: _INT,
            _TYPES: [int],
            _KEY: "seed"
        },
        "mode": {
            _USAGE: "--mode <xe|scst>",
            _DESCR: "cross-entropy training or self-critical fine-tuning",
            _REGEX: r"^(xe|scst)$",
            _TYPES: [str],
            _KEY: "mode"
        },
        "epochs": {
            _USAGE: "--epochs <n>",
            _DESCR: "number of training epochs",
            _REGEX: r"^[1-9][0-9]*$",
            _TYPES: [int],
            _KEY: "epochs"
        },
        "scst-epochs": {
            _USAGE: "--scst-epochs <n>",
            _DESCR: "SCST epochs appended to an XE run, default 0",
            _REGEX: _INT,
            _TYPES: [int],
            _KEY: "scst_epochs"
        },
        "batch-size": {
            _USAGE: "--batch-size <n>",
            _DESCR: "captions per optimizer step",
            _REGEX: r"^[1-9][0-9]*$",
            _TYPES: [int],
            _KEY: "batch_size"
        },
        "learning-rate": {
            _USAGE: "--learning-rate <lr>",
            _DESCR: "Adam learning rate, default 5e-4",
            _REGEX: _FLOAT,
            _TYPES: [float],
            _KEY: "learning_rate"
        },
        "wiring": {
            _USAGE: "--wiring <butd-style|literal>",
            _DESCR: "attention GRU input: with or without the previous word vector",
            _REGEX: r"^(butd-style|literal)$",
            _TYPES: [str],
            _KEY: "wiring"
        },
        "encoder": {
            _USAGE: "--encoder <file|tiny-cnn>",
            _DESCR: "precomputed feature files or the trainable tiny CNN",
            _REGEX: r"^(file|tiny-cnn)$",
            _TYPES: [str],
            _KEY: "encoder"
        },
        "beam": {
            _USAGE: "--beam <k>",
            _DESCR: "beam size, default 6",
            _REGEX: r"^[1-9][0-9]*$",
            _TYPES: [int],
            _KEY: "beam_size"
        },
        "greedy": {
            _USAGE: "--greedy",
            _DESCR: "greedy decoding, same as --beam 1",
            _REGEX: _FLAG,
            _TYPES: None,
            _KEY: "beam_size",
            _VALUE: 1
        },
        "split": {
            _USAGE: "--split <train|val|test>",
            _DESCR: "manifest split to caption or evaluate, default test",
            _REGEX: r"^(train|val|test)$",
            _TYPES: [str],
            _KEY: "split"
        },
        "workers": {
            _USAGE: "--workers <n>",
            _DESCR: "decoding threads, output order does not depend on it",
            _REGEX: r"^[1-9][0-9]*$",
            _TYPES: [int],
            _KEY: "workers"
        },
        "convention": {
            _USAGE: "--convention <mac|2mac>",
            _DESCR: "report multiply-accumulates or 2 FLOPs per multiply-accumulate",
            _REGEX: r"^(mac|2mac)$",
            _TYPES: [str],
            _KEY: "convention"
        },
        "backbone": {
            _USAGE: "--backbone <name|all>",
            _DESCR: "encoder backbone from the cost table, 'all' for the comparative table\n"
                    "one of %s" % ", ".join(EncoderCostTable.names()),
            _REGEX: r"^[A-Za-z0-9_.]+$",
            _TYPES: [str],
            _KEY: "backbone"
        },
        "seq-len": {
            _USAGE: "--seq-len <n>",
            _DESCR: "caption length for FLOPs, default 16",
            _REGEX: r"^[1-9][0-9]*$",
            _TYPES: [int],
            _KEY: "seq_len"
        },
        "format": {
            _USAGE: "--format <markdown|json>",
            _DESCR: "profile output format",
            _REGEX: r"^(markdown|json)$",
            _TYPES: [str],
            _KEY: "format"
        },
        "suites": {
            _USAGE: "--suites <name> [<name> ...]",
            _DESCR: "self-test suites to run, all by default\none of %s" % ", ".join(SelfTest.SUITES),
            _REGEX: r"^[a-z]+( [a-z]+)*$",
            _TYPES: None
        },
        "config": {
            _USAGE: "--config <file>",
            _DESCR: "JSON settings file, command line options win",
            _REGEX: _PATH,
            _TYPES: [str]
        },
        "desk": {
            _USAGE: "--desk",
            _DESCR: "small defaults for the synthetic corpus instead of the full-size model",
            _REGEX: _FLAG,
            _TYPES: None
        },
        "log": {
            _USAGE: "--log <DEBUG|INFO|WARN|ERROR>",
            _DESCR: "set loglevel",
            _REGEX: r"^(DEBUG|INFO|WARN|ERROR)$",
            _TYPES: [str]
        }
    }

    COMMANDS = {
        "build-vocab": {
            _USAGE: "build-vocab --manifest <file> --out <file>",
            _DESCR: "build the vocabulary from the training captions",
            _OPTIONS: ["manifest", "out", "vocab", "min-count"],
            _HANDLER: "buildVocab"
        },
        "gen-toy": {
            _USAGE: "gen-toy --out <dir>",
            _DESCR: "write the seeded synthetic corpus: manifest, feature files and optionally images",
            _OPTIONS: ["out", "count", "seed", "images"],
            _HANDLER: "genToy"
        },
        "train": {
            _USAGE: "train --mode <xe|scst> --manifest <file> --vocab <file> --checkpoint <file>",
            _DESCR: "train with cross-entropy or fine-tune with self-critical sequence training",
            _OPTIONS: ["mode", "manifest", "vocab", "checkpoint", "init-checkpoint", "epochs", "scst-epochs",
                       "batch-size", "learning-rate", "seed", "wiring", "encoder"],
            _HANDLER: "train"
        },
        "caption": {
            _USAGE: "caption --checkpoint <file> --manifest <file> --vocab <file>",
            _DESCR: "caption one split, prints a JSON object of image id to caption",
            _OPTIONS: ["checkpoint", "manifest", "vocab", "beam", "greedy", "split", "workers", "out"],
            _HANDLER: "caption"
        },
        "evaluate": {
            _USAGE: "evaluate --manifest <file> (--hypotheses <file> | --checkpoint <file> --vocab <file>)",
            _DESCR: "BLEU-1..4 and CIDEr-D of a hypothesis file or of a checkpoint's captions",
            _OPTIONS: ["manifest", "hypotheses", "checkpoint", "vocab", "beam", "greedy", "split", "workers", "out"],
            _HANDLER: "evaluate"
        },
        "profile": {
            _USAGE: "profile [--convention <mac|2mac>] [--backbone <name|all>]",
            _DESCR: "exact parameter counts and FLOPs of the configured model",
            _OPTIONS: ["convention", "backbone", "seq-len", "format", "vocab", "out"],
            _HANDLER: "profile"
        },
        "selftest": {
            _USAGE: "selftest [--suites <name> ...]",
            _DESCR: "finite-difference gradient checks and oracle suites",
            _OPTIONS: ["suites", "seed"],
            _HANDLER: "selftest"
        },
        "help": {
            _USAGE: "help [<command>]",
            _DESCR: "prints help optionally for given command",
            _OPTIONS: [],
            _HANDLER: None
        }
    }

    GLOBAL_OPTIONS = ["config", "desk", "log"]

    def __init__(self, argv: Optional[List[str]] = None) -> None:

        argv = list(sys.argv[1:] if argv is None else argv)
        self.exitCode = 0
        self.tokenizer = Tokenizer()
        try:
            if "--log" in argv and argv.index("--log") + 1 < len(argv):
                logManager.logger.configure_logger(argv[argv.index("--log") + 1])

            if not argv or argv[0] in ("help", "--help", "-h"):
                if len(argv) == 2:
                    print(self._build_help(command=argv[1], header=True), file=sys.stderr, flush=True)
                else:
                    self.print_help()
                return

            command = argv[0]
            if command not in AcLiteCLI.COMMANDS:
                raise ConfigurationError(message=f"unknown command '{command}', use help in order to get help")

            options = self.parse_args(argv[1:])
            self.check_options(command, options)
            config = self.runConfig(options)
            handler = getattr(self, AcLiteCLI.COMMANDS[command][AcLiteCLI._HANDLER])
            handler(config, options)

        except AcLiteException as e:
            LOGGER.error(e.message)
            self.exitCode = e.exitCode

        except KeyboardInterrupt:
            self.exitCode = AcLiteCLI.EXIT_INTERRUPTED

    def _build_help(self, command=None, header=False, msg="") -> str:

        s = ""

        if header:
            s = """AC-Lite image captioning command line interface

USAGE:   aclite.py <command> [--<option_1> <param_1> ... --<option_2> ...]
         <command> : one of %s
         <option>  : options of the command, plus --config, --desk and --log
         """ % ", ".join(AcLiteCLI.COMMANDS)

        if msg != "":
            s += "\n " + msg

        if command is not None and command in AcLiteCLI.COMMANDS:
            s += self._describe(AcLiteCLI.COMMANDS[command])
            for option in AcLiteCLI.COMMANDS[command][AcLiteCLI._OPTIONS]:
                s += "  " + self._describe(AcLiteCLI.OPTIONS[option]).replace("\n ", "\n   ")

        elif command is not None and command in AcLiteCLI.OPTIONS:
            s += self._describe(AcLiteCLI.OPTIONS[command])

        if msg != "":
            s += "\n"

        return s

    @staticmethod
    def _describe(definition: dict) -> str:

        usage = definition[AcLiteCLI._USAGE]
        s = "\n " + usage.ljust(32)
        for i, d in enumerate(definition[AcLiteCLI._DESCR].split("\n")):
            s += ("\n " + (" " * 32) + d if i > 0 or len(usage) >= 32 else d)
        return s

    def print_help(self):

        help = self._build_help(header=True)

        help += "\nCommands:"
        for command in AcLiteCLI.COMMANDS:
            help += self._build_help(command=command)
            help += "\n"

        help += "\nGlobal options:"
        for option in AcLiteCLI.GLOBAL_OPTIONS:
            help += self._build_help(command=option)

        help += "\n"
        print(help, file=sys.stderr, flush=True)

    def transform_commands(self, commands: 'list[dict]') -> 'list[dict]':

        errors: 'list[str]' = list()

        for command in commands:

            cmd = command[AcLiteCLI._COMMAND]
            if cmd not in AcLiteCLI.OPTIONS:
                errors.append("ERROR: Unknown option <%s>" % cmd)
                continue

            cmd_def = AcLiteCLI.OPTIONS[cmd]

            regex: str = cmd_def[AcLiteCLI._REGEX]
            if regex and not re.match(regex, " ".join(command[AcLiteCLI._ARGS])):
                errors.append(
                    self._build_help(cmd, False, "ERROR: Please check parameters of option\n")
                )
                continue

            if cmd_def[AcLiteCLI._TYPES]:
                command[AcLiteCLI._PARAMS] = [cmd_def[AcLiteCLI._TYPES][i](arg)
                                              for i, arg in enumerate(command[AcLiteCLI._ARGS])]
            else:
                command[AcLiteCLI._PARAMS] = list(command[AcLiteCLI._ARGS])

        if len(errors) > 0:
            raise ConfigurationError("\n".join(errors))

        return commands

    def parse_args(self, argv: 'list[str]') -> 'list[dict]':

        commands: 'list[dict]' = list()

        for arg in argv:

            if arg.startswith("--"):
                commands.append({
                    AcLiteCLI._COMMAND: arg[2:],
                    AcLiteCLI._ARGS: list()
                })

            elif not commands:
                raise ConfigurationError(message=f"unexpected argument '{arg}' before the first option")

            else:
                commands[-1][AcLiteCLI._ARGS].append(arg)

        return self.transform_commands(commands)

    def check_options(self, command: str, options: 'list[dict]') -> None:

        allowed = AcLiteCLI.COMMANDS[command][AcLiteCLI._OPTIONS] + AcLiteCLI.GLOBAL_OPTIONS
        rejected = [o[AcLiteCLI._COMMAND] for o in options if o[AcLiteCLI._COMMAND] not in allowed]
        if rejected:
            raise ConfigurationError(message="option(s) %s not valid for command '%s', use help %s" % (
                ", ".join("--" + r for r in rejected), command, command))

    @staticmethod
    def option(options: 'list[dict]', name: str) -> Optional[dict]:

        found = [o for o in options if o[AcLiteCLI._COMMAND] == name]
        return found[-1] if found else None

    def runConfig(self, options: 'list[dict]') -> RunConfig:
        """Defaults, then the --config file, then command line options."""

        desk = AcLiteCLI.option(options, "desk") is not None
        configFile = AcLiteCLI.option(options, "config")
        config = RunConfig.load(configFile[AcLiteCLI._PARAMS][0], desk=desk) if configFile else RunConfig(desk=desk)

        overrides = dict()
        for option in options:
            definition = AcLiteCLI.OPTIONS[option[AcLiteCLI._COMMAND]]
            key = definition.get(AcLiteCLI._KEY)
            if key is None:
                continue
            if AcLiteCLI._VALUE in definition:
                overrides[key] = definition[AcLiteCLI._VALUE]
            else:
                overrides[key] = option[AcLiteCLI._PARAMS][0]
        return config.override(overrides)

    # *** output ***

    @staticmethod
    def write(text: str, path: Optional[str]) -> None:

        if path is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        with open(path, "w", encoding="utf-8", newline="\n") as out:
            out.write(text)
        LOGGER.info(f"wrote {path}")

    @staticmethod
    def toJson(document) -> str:

        return json.dumps(document, indent=2, ensure_ascii=False) + "\n"

    # *** shared loading ***

    def loadCorpus(self, config: RunConfig, vocab: bool = True):

        config.require("manifest", *(["vocab"] if vocab else []))
        manifest = DatasetManifest.load(config["manifest"])
        return manifest, Vocabulary.load(config["vocab"]) if vocab else None

    @staticmethod
    def loadDecoder(path: str, vocab: Optional[Vocabulary] = None) -> AttentionDecoder:

        checkpoint = Checkpoint.load(path)
        if "model" not in checkpoint.meta:
            raise DataError(message=f"checkpoint {path} has no model config in its sidecar")
        model = ModelConfig.from_dict(checkpoint.meta["model"])
        if vocab is not None and model.vocab_size != len(vocab):
            raise ConfigurationError(
                message=f"checkpoint vocabulary size {model.vocab_size} does not match vocabulary of {len(vocab)}")
        decoder = AttentionDecoder(model)
        decoder.provider()
        checkpoint.restore(decoder.params)
        return decoder

    def captionSplit(self, config: RunConfig, manifest: DatasetManifest, vocab: Vocabulary) -> Dict[str, str]:

        config.require("checkpoint")
        decoder = AcLiteCLI.loadDecoder(config["checkpoint"], vocab)
        usesImages = decoder.config.encoder == ModelConfig.ENCODER_TINY_CNN
        items = [(e["id"], manifest.source(e, usesImages)) for e in manifest.split(config["split"])]
        if not items:
            raise DataError(message=f"split '{config['split']}' of the manifest is empty")
        controller = CaptionController(decoder, beam_size=config["beam_size"], max_len=config["max_len"],
                                       workers=config["workers"])
        controller.caption(items)
        return controller.texts(vocab)

    # *** commands ***

    def buildVocab(self, config: RunConfig, options: 'list[dict]') -> None:

        manifest, _ = self.loadCorpus(config, vocab=False)
        target = config["out"] or config["vocab"]
        if target is None:
            raise ConfigurationError(message="build-vocab needs --out or --vocab")
        captions = manifest.captions("train")
        if not captions:
            raise DataError(message="manifest has no training captions")
        vocab = Vocabulary.build((self.tokenizer.tokenize(c) for c in captions), min_occurrences=config["min_count"])
        vocab.save(target)
        LOGGER.info(f"vocabulary of {len(vocab)} tokens from {len(captions)} captions")

    def genToy(self, config: RunConfig, options: 'list[dict]') -> None:

        config.require("out")
        corpus = ToyCorpus(seed=config["seed"], n_images=config["count"], d_a=config["d_a"], n_h=config["n_h"],
                           n_w=config["n_w"], image_size=config["image_size"])
        corpus.generate(config["out"], images=config["images"])

    def train(self, config: RunConfig, options: 'list[dict]') -> None:

        class LoggingListener(TrainingListener):

            def onEpochEnd(self, epoch: int, loss: float, accuracy: float) -> None:
                print(f" epoch {epoch + 1}: loss {loss:.4f}", end="\r", file=sys.stderr, flush=True)

            def onCheckpoint(self, path: str, epoch: int) -> None:
                LOGGER.info(f"checkpoint after epoch {epoch} written to {path}")

        config.require("checkpoint")
        manifest, vocab = self.loadCorpus(config)
        trainConfig = config.trainConfig()
        if config["vocab_size"] is not None and config["vocab_size"] != len(vocab):
            raise ConfigurationError(
                message=f"vocab_size {config['vocab_size']} does not match vocabulary of {len(vocab)}")
        model = config.modelConfig(vocab_size=len(vocab))
        usesImages = model.encoder == ModelConfig.ENCODER_TINY_CNN

        decoder = AttentionDecoder(model, seed=trainConfig.seed)
        trainer = Trainer(decoder, trainConfig, listener=LoggingListener())

        if config["mode"] == Trainer.MODE_XE:
            examples = manifest.trainingExamples(vocab, self.tokenizer, "train", trainConfig.max_len, usesImages)
            trainer.trainXe(examples)
            if trainConfig.scst_epochs > 0:
                images = manifest.trainingExamples(vocab, self.tokenizer, "train", trainConfig.max_len, usesImages,
                                                   per_image=True)
                trainer.trainScst(images, epochs=trainConfig.scst_epochs)
        else:
            config.require("init_checkpoint")
            init = Checkpoint.load(config["init_checkpoint"])
            trainer.resume(init, with_optimizer=False)
            images = manifest.trainingExamples(vocab, self.tokenizer, "train", trainConfig.max_len, usesImages,
                                               per_image=True)
            trainer.trainScst(images, epochs=trainConfig.scst_epochs or trainConfig.epochs)

        print("", file=sys.stderr, flush=True)
        trainer.saveCheckpoint(config["checkpoint"])

    def caption(self, config: RunConfig, options: 'list[dict]') -> None:

        manifest, vocab = self.loadCorpus(config)
        captions = self.captionSplit(config, manifest, vocab)
        AcLiteCLI.write(AcLiteCLI.toJson(captions), config["out"])

    def evaluate(self, config: RunConfig, options: 'list[dict]') -> None:

        if config["hypotheses"] is not None:
            manifest, _ = self.loadCorpus(config, vocab=False)
            hypotheses = AcLiteCLI.loadHypotheses(config["hypotheses"])
            checkpoint, beamSize = None, None
        else:
            manifest, vocab = self.loadCorpus(config)
            hypotheses = self.captionSplit(config, manifest, vocab)
            checkpoint, beamSize = config["checkpoint"], config["beam_size"]

        entries = {e["id"]: e for e in manifest.images}
        corpus = EvalCorpus()
        for image_id, text in hypotheses.items():
            if image_id not in entries:
                raise DataError(message=f"hypothesis for unknown image '{image_id}'")
            references = [self.tokenizer.tokenize(c) for c in entries[image_id]["captions"]]
            corpus.append(image_id, self.tokenizer.tokenize(text), references)

        report = {
            "n_images": len(corpus),
            "bleu": BleuScorer.bleu(corpus),
            "cider": CiderScorer.cider(corpus),
            "beam_size": beamSize,
            "checkpoint": checkpoint
        }
        LOGGER.info("BLEU-1..4 %s, CIDEr-D %.4f" % (", ".join("%.2f" % b for b in report["bleu"]), report["cider"]))
        AcLiteCLI.write(AcLiteCLI.toJson(report), config["out"])

    @staticmethod
    def loadHypotheses(path: str) -> Dict[str, str]:

        try:
            with open(path, "r", encoding="utf-8") as ins:
                document = json.load(ins)
        except FileNotFoundError:
            raise DataError(message=f"hypothesis file {path} does not exist")
        except (json.JSONDecodeError, UnicodeDecodeError) as e:
            raise DataError(message=f"hypothesis file {path} is not valid UTF-8 JSON: {e}")
        if not isinstance(document, dict) or not all(isinstance(v, str) for v in document.values()):
            raise DataError(message=f"hypothesis file {path} must map image ids to caption strings")
        return document

    def profile(self, config: RunConfig, options: 'list[dict]') -> None:

        vocabSize = config["vocab_size"]
        if vocabSize is None and config["vocab"] is not None:
            vocabSize = len(Vocabulary.load(config["vocab"]))
        if vocabSize is None:
            vocabSize = ModelConfig.FULL_VOCAB_SIZE
        analyzer = ComplexityAnalyzer(config.modelConfig(vocab_size=vocabSize))
        counts = analyzer.countParams()

        if config["backbone"].lower() == "all":
            reports = analyzer.ablation(config["seq_len"], config["convention"])
        else:
            reports = [analyzer.countFlops(config["seq_len"], config["convention"], backbone=config["backbone"])]
        baselines = len(reports) > 1

        if config["format"] == "json":
            document = json.loads(ComplexityAnalyzer.renderTable(reports, fmt="json", baselines=baselines))
            document["params"] = counts
            text = AcLiteCLI.toJson(document)
        else:
            text = ComplexityAnalyzer.renderTable(reports, baselines=baselines) + "\n" + \
                ComplexityAnalyzer.renderParams(counts, reported_params_m=reports[0].reportedParamsM)
        AcLiteCLI.write(text, config["out"])

    def selftest(self, config: RunConfig, options: 'list[dict]') -> None:

        suites = AcLiteCLI.option(options, "suites")
        selfTest = SelfTest(seed=config["seed"])
        try:
            selfTest.runOrRaise(suites[AcLiteCLI._PARAMS] if suites else None)
        finally:
            AcLiteCLI.write(AcLiteCLI.toJson(selfTest.to_dict()), None)
