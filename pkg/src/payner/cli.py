"""Command-line recipes: generate, train, tag, eval, crossformat, bench.

Exit status is 0 on success, 1 on usage errors and 2 on data errors
(unreadable or malformed files, empty subsets, training failures).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__

log = logging.getLogger("payner")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


class _JsonFormatter(logging.Formatter):
    def format(self, record):
        return json.dumps(
            {"time": round(record.created, 3), "level": record.levelname, "logger": record.name,
             "message": record.getMessage()},  # fmt: skip
            sort_keys=True,
        )


def _setup_logging(quiet: bool, json_logs: bool) -> None:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(_JsonFormatter() if json_logs else logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root = logging.getLogger("payner")
    root.handlers[:] = [handler]
    root.setLevel(logging.WARNING if quiet else logging.INFO)
    root.propagate = False


def _positive_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def _format_mix(s: str):
    from .schema import MessageFormat

    mix = {}
    try:
        for part in s.split(","):
            name, _, value = part.partition("=")
            mix[MessageFormat(name.strip().upper())] = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected FORMAT=P[,FORMAT=P...], got {s!r}") from None
    return mix


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed (default 0)")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="only warnings and errors")
    common.add_argument("--json-logs", action="store_true", default=argparse.SUPPRESS, help="one JSON object per log line")

    p = _Parser(prog="payner", description="Payment-message entity recognition toolkit.", parents=[common])
    p.add_argument("--version", action="version", version=f"payner {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", parents=[common], help="generate a synthetic annotated corpus")
    g.add_argument("--count", type=_positive_int, required=True)
    g.add_argument("--out", required=True, help="annotation file to write")
    g.add_argument("--format-mix", type=_format_mix, help="e.g. MT103=0.5,SEPA=0.5")
    g.add_argument("--raw-out", help="also write id/format/text JSONL here")
    g.add_argument("--split-dir", help="also write train/dev/test splits (70/15/15, stratified) here")

    t = sub.add_parser("train", parents=[common], help="train a CRF")
    t.add_argument("--train", required=True)
    t.add_argument("--dev", required=True)
    t.add_argument("--model", required=True, help="model file to write")
    t.add_argument("--l2", type=float, default=0.1)
    t.add_argument("--max-iter", type=_positive_int, default=200)
    t.add_argument("--prune", type=float, default=2)

    tg = sub.add_parser("tag", parents=[common], help="tag messages")
    tg.add_argument("--model", help="model file (not needed with --baseline)")
    tg.add_argument("--input", required=True, help="raw JSONL or annotation file")
    tg.add_argument("--out", required=True, help="prediction file (annotation format)")
    tg.add_argument("--baseline", action="store_true", help="use the rule-based tagger")
    tg.add_argument("--rules", help="rule set JSON for --baseline")

    e = sub.add_parser("eval", parents=[common], help="score predictions against gold")
    e.add_argument("--gold", required=True)
    e.add_argument("--pred", required=True)
    e.add_argument("--report", help="write the JSON report here")
    e.add_argument("--bootstrap", metavar="OTHER_PRED", help="paired bootstrap of --pred against this file")
    e.add_argument("--iters", type=_positive_int, default=10_000)

    c = sub.add_parser("crossformat", parents=[common], help="cross-format generalization experiment")
    c.add_argument("--corpus", required=True)
    c.add_argument("--plan", required=True, help='JSON list of {"train": [...], "test": "..."}')
    c.add_argument("--report", required=True)
    c.add_argument("--l2", type=float, default=0.1)
    c.add_argument("--max-iter", type=_positive_int, default=200)
    c.add_argument("--prune", type=float, default=2)

    b = sub.add_parser("bench", parents=[common], help="latency and throughput benchmark")
    b.add_argument("--model", help="model file (not needed with --baseline)")
    b.add_argument("--input", required=True)
    b.add_argument("--batch", type=_positive_int, default=8)
    b.add_argument("--workers", type=_positive_int, default=1)
    b.add_argument("--duration", type=float, default=10.0)
    b.add_argument("--warmup", type=int, default=10)
    b.add_argument("--baseline", action="store_true")
    b.add_argument("--report", help="write both reports as JSON here")
    return p


# ---------------------------------------------------------------- helpers


def _read_corpus(path: str, flag: str):
    from .corpus import read_annotations

    try:
        return read_annotations(path)
    except FileNotFoundError:
        raise DataError(f"{flag} {path}: no such file") from None
    except (ValueError, UnicodeDecodeError) as exc:
        raise DataError(f"{flag} {path}: {exc}") from None


def _read_messages(path: str, flag: str):
    """Raw JSONL or annotation file, detected from the first non-blank line."""
    from .corpus import read_raw

    try:
        with open(path, encoding="utf-8") as fh:
            first = next((ln for ln in fh if ln.strip()), "")
    except FileNotFoundError:
        raise DataError(f"{flag} {path}: no such file") from None
    if first.lstrip().startswith("{"):
        try:
            return read_raw(path)
        except ValueError as exc:
            raise DataError(f"{flag} {path}: {exc}") from None
    return _read_corpus(path, flag)


def _load_model(path: str | None, flag: str = "--model"):
    from .crf import ModelFormatError, load_model

    if not path:
        raise UsageError(f"{flag} is required unless --baseline is given")
    try:
        return load_model(path)
    except FileNotFoundError:
        raise DataError(f"{flag} {path}: no such file") from None
    except ModelFormatError as exc:
        raise DataError(f"{flag} {path}: {exc}") from None


def _tagger(args):
    from .taggers import CrfTagger, RuleTagger

    if args.baseline:
        if getattr(args, "rules", None):
            from .baseline import RuleSet

            try:
                return RuleTagger(RuleSet.load(args.rules))
            except (OSError, ValueError, KeyError) as exc:
                raise DataError(f"--rules {args.rules}: {exc}") from None
        return RuleTagger()
    return CrfTagger(_load_model(args.model))


def _pred_map(corpus) -> dict:
    return {m.id: list(m.gold_spans) for m in corpus}


# ---------------------------------------------------------------- commands


def cmd_generate(args) -> int:
    from .corpus import GeneratorConfig, corpus_stats, generate_corpus, split_corpus, write_annotations, write_raw

    kwargs = {"count": args.count, "seed": args.seed}
    if args.format_mix:
        kwargs["format_mix"] = args.format_mix
    try:
        config = GeneratorConfig(**kwargs)
    except ValueError as exc:
        raise UsageError(f"generate: {exc}") from None
    corpus = generate_corpus(config)
    write_annotations(corpus, args.out)
    if args.raw_out:
        write_raw([m.message for m in corpus], args.raw_out)
    if args.split_dir:
        out = Path(args.split_dir)
        out.mkdir(parents=True, exist_ok=True)
        for name, part in zip(("train", "dev", "test"), split_corpus(corpus, seed=args.seed)):
            write_annotations(part, out / f"{name}.conll")
    stats = corpus_stats(corpus)
    log.info("wrote %d messages to %s; density %.2f", len(corpus), args.out, stats.density_mean)
    print(json.dumps(stats.to_dict(), sort_keys=True))
    return EXIT_OK


def cmd_train(args) -> int:
    from .crf import TrainConfig, TrainingError, save_model, train

    tr = _read_corpus(args.train, "--train")
    dv = _read_corpus(args.dev, "--dev")
    if not tr:
        raise DataError(f"--train {args.train}: no messages")
    try:
        config = TrainConfig(l2_lambda=args.l2, max_iterations=args.max_iter, prune_threshold=args.prune, seed=args.seed)
    except ValueError as exc:
        raise UsageError(f"train: {exc}") from None
    t0 = time.perf_counter()
    try:
        model = train(tr, dv, None, config)
    except TrainingError as exc:
        raise DataError(f"--train {args.train}: {exc}") from None
    save_model(model, args.model)
    log.info("trained in %.1fs; %d features; model written to %s", time.perf_counter() - t0,
             len(model.feature_index), args.model)  # fmt: skip
    return EXIT_OK


def cmd_tag(args) -> int:
    from .corpus import write_annotations
    from .schema import AnnotatedMessage, spans_to_labels
    from .taggers import predict
    from .tokenize import tokenize

    tagger = _tagger(args)
    messages = _read_messages(args.input, "--input")
    pred = predict(tagger, messages)
    out = []
    for m in messages:
        msg, tokens = (m.message, m.tokens) if isinstance(m, AnnotatedMessage) else (m, tokenize(m))
        out.append(AnnotatedMessage.from_labels(msg, tokens, spans_to_labels(pred[m.id], len(tokens))))
    write_annotations(out, args.out)
    log.info("tagged %d messages with %s", len(out), tagger.name)
    return EXIT_OK


def cmd_eval(args) -> int:
    from .evaluation import evaluate, paired_bootstrap

    gold = _read_corpus(args.gold, "--gold")
    pred = _pred_map(_read_corpus(args.pred, "--pred"))
    try:
        report = evaluate(gold, pred)
    except ValueError as exc:
        raise DataError(f"--pred {args.pred}: {exc}") from None
    result = report.to_dict()
    if args.bootstrap:
        other = _pred_map(_read_corpus(args.bootstrap, "--bootstrap"))
        try:
            p = paired_bootstrap(gold, pred, other, args.iters, args.seed)
        except ValueError as exc:
            raise DataError(f"--bootstrap {args.bootstrap}: {exc}") from None
        result["bootstrap"] = {"p_value": p, "iterations": args.iters, "other_f1": evaluate(gold, other).f1}
        print(f"paired bootstrap p={p:.4g} ({args.iters} iterations)")
    if args.report:
        Path(args.report).write_text(json.dumps(result, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"micro-F1 {report.f1:.4f}")
    return EXIT_OK


def cmd_crossformat(args) -> int:
    from .crf import TrainConfig, TrainingError
    from .evaluation import cross_format_eval, load_plan

    corpus = _read_corpus(args.corpus, "--corpus")
    try:
        plan = load_plan(Path(args.plan).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise DataError(f"--plan {args.plan}: no such file") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise DataError(f"--plan {args.plan}: {exc}") from None
    config = TrainConfig(l2_lambda=args.l2, max_iterations=args.max_iter, prune_threshold=args.prune, seed=args.seed)
    try:
        matrix = cross_format_eval(corpus, plan, config, seed=args.seed)
    except (ValueError, TrainingError) as exc:
        raise DataError(f"--corpus {args.corpus}: {exc}") from None
    Path(args.report).write_text(matrix.to_json() + "\n", encoding="utf-8")
    for cell in matrix.cells:
        print(f"{'+'.join(f.value for f in cell.train_formats)} -> {cell.test_format.value}: F1 {cell.f1:.4f}")
    return EXIT_OK


def cmd_bench(args) -> int:
    from .bench import measure_latency, measure_throughput

    tagger = _tagger(args)
    messages = _read_messages(args.input, "--input")
    if not messages:
        raise DataError(f"--input {args.input}: no messages")
    if not args.duration > 0:
        raise UsageError("--duration must be positive")
    lat = measure_latency(tagger, messages, warmup=max(0, args.warmup))
    thr = measure_throughput(tagger, messages, args.batch, args.workers, args.duration)
    print(lat.summary())
    print(thr.summary())
    if args.report:
        Path(args.report).write_text(
            json.dumps({"latency": lat.to_dict(), "throughput": thr.to_dict()}, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "train": cmd_train,
    "tag": cmd_tag,
    "eval": cmd_eval,
    "crossformat": cmd_crossformat,
    "bench": cmd_bench,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    args.seed = getattr(args, "seed", 0)
    _setup_logging(getattr(args, "quiet", False), getattr(args, "json_logs", False))
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"payner {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"payner {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"payner {args.command}: error: {exc.filename or ''}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_DATA


def main() -> None:
    sys.exit(run())
