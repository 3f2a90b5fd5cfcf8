"""Command-line driver wiring the full pipeline.

Subcommands: fetch, score, summarize, split, train, evaluate, crossval,
report. Exit codes: 0 success, 1 domain error (one-line diagnostic on
stderr), 2 usage error. Structured data goes to files only; stdout
carries nothing but human-readable reports (evaluate, crossval,
--dry-run plans).

Option precedence is flags > config file > built-in defaults. A config
file (--config PATH) holds `key=value` lines where keys are the long
flag names with dashes replaced by underscores.
"""
from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Callable, Sequence

from . import evaluation, ingest, scoring
from .classifiers import (
    ModelBundle,
    labeled_set_from_tdm,
    load_model,
    predict_with,
    save_model,
    train_classifier,
)
from .classifiers.features import FeatureVector
from .corpus import (
    Corpus,
    UnscoredCorpusError,
    build_tdm,
    filter_neutral,
    remove_sparse_terms,
    split_train_test,
)
from .errors import DomainError
from .lexicon import load_lexicon, unsorted_entries
from .normalize import NormalizerConfig, load_emoticon_table
from .svg import render_histogram_svg


@dataclass(frozen=True)
class Opt:
    flag: str
    type: Callable[[str], Any] | None = str
    default: Any = None
    required: bool = False
    help: str = ""
    is_flag: bool = False
    choices: tuple[str, ...] | None = None

    @property
    def dest(self) -> str:
        return self.flag.lstrip("-").replace("-", "_")


_COMMON = (Opt("--config", help="key=value config file applied below flags"),)

_HYPER = (
    Opt("--alpha", type=float, default=1.0, help="NB Laplace pseudo-count"),
    Opt("--lambda", type=float, default=1e-3, help="MaxEnt L2 strength"),
    Opt("--tolerance", type=float, default=1e-6, help="MaxEnt gradient stop"),
    Opt("--max-iters", type=int, default=500, help="MaxEnt iteration cap"),
    Opt("--c", type=float, default=1.0, help="SVM regularization trade-off"),
    Opt("--epochs", type=int, default=50, help="SVM subgradient steps"),
    Opt("--depth", type=int, default=20, help="tree depth cap"),
    Opt("--min-split", type=int, default=5, help="tree min samples to split"),
)

_SUBCOMMANDS: dict[str, tuple[Opt, ...]] = {
    "fetch": _COMMON
    + (
        Opt("--manifest", required=True, help="JSON manifest of profiles"),
        Opt("--cache", help="override the manifest cache directory"),
        Opt("--page-size", type=int, default=100, help="texts requested per call"),
        Opt("--budget", type=int, default=180, choices=("15", "30", "180"),
            help="requests allowed per 15-minute window"),
        Opt("--dry-run", is_flag=True, help="print the fetch plan and exit"),
        Opt("--source-dir", help="directory of <profile>.jsonl files to fetch from"),
        Opt("--dedupe", is_flag=True, help="drop exact duplicate texts per profile"),
        Opt("--out", help="corpus output path (.csv or .jsonl)"),
    ),
    "score": _COMMON
    + (
        Opt("--corpus", required=True, help="input corpus (.csv or .jsonl)"),
        Opt("--pos", required=True, help="positive lexicon file"),
        Opt("--neg", required=True, help="negative lexicon file"),
        Opt("--emoticons", help="emoticon table file (default: packaged table)"),
        Opt("--out", required=True, help="scored corpus output path"),
        Opt("--summary-out", help="summary CSV (default: <out>-summary.csv)"),
        Opt("--histogram-out", help="histogram CSV (default: <out>-histogram.csv)"),
        Opt("--svg", help="also render the histogram facets as SVG"),
        Opt("--include-neutral", is_flag=True, help="keep zero scores in the summary"),
        Opt("--check-sorted", is_flag=True, help="warn about unsorted lexicon files"),
    ),
    "summarize": _COMMON
    + (
        Opt("--corpus", required=True, help="scored corpus"),
        Opt("--out", required=True, help="summary CSV output"),
        Opt("--include-neutral", is_flag=True, help="keep zero scores in the summary"),
    ),
    "split": _COMMON
    + (
        Opt("--corpus", required=True),
        Opt("--seed", type=int, default=1234),
        Opt("--train-frac", type=float, default=0.7),
        Opt("--train-out", required=True),
        Opt("--test-out", required=True),
    ),
    "train": _COMMON
    + (
        Opt("--corpus", required=True, help="scored corpus with class labels"),
        Opt("--algo", required=True, choices=("nb", "maxent", "svm", "tree")),
        Opt("--sparse", type=float, help="remove-sparse-terms threshold in (0,1]"),
        Opt("--seed", type=int, default=0),
        Opt("--drop-neutral", is_flag=True, help="train on non-neutral documents only"),
        Opt("--emoticons", help="emoticon table file"),
        Opt("--model-out", required=True),
    )
    + _HYPER,
    "evaluate": _COMMON
    + (
        Opt("--model", required=True, help="model file written by train"),
        Opt("--corpus", required=True, help="labeled corpus to evaluate on"),
        Opt("--emoticons", help="emoticon table file"),
        Opt("--drop-neutral", is_flag=True),
        Opt("--csv", help="write the per-class metrics as CSV"),
        Opt("--json", help="write the full report as JSON"),
    ),
    "crossval": _COMMON
    + (
        Opt("--corpus", required=True, help="scored corpus with class labels"),
        Opt("--algo", required=True, choices=("nb", "maxent", "svm", "tree")),
        Opt("--k", type=int, default=10),
        Opt("--seed", type=int, default=2015),
        Opt("--sparse", type=float),
        Opt("--drop-neutral", is_flag=True),
        Opt("--emoticons", help="emoticon table file"),
        Opt("--out", help="write per-fold accuracies as CSV"),
    )
    + _HYPER,
    "report": _COMMON
    + (
        Opt("--corpus", required=True, help="scored corpus"),
        Opt("--histogram-out", required=True),
        Opt("--summary-out", required=True),
        Opt("--svg", help="also render the histogram facets as SVG"),
        Opt("--include-neutral", is_flag=True),
    ),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polsenti",
        description="Lexicon-based sentiment scoring and classifier benchmarking "
        "for short Polish texts.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, opts in _SUBCOMMANDS.items():
        sub = subparsers.add_parser(name, help=f"{name} stage of the pipeline")
        for opt in opts:
            if opt.is_flag:
                sub.add_argument(opt.flag, dest=opt.dest, action="store_true",
                                 default=None, help=opt.help)
            else:
                kwargs: dict[str, Any] = {"dest": opt.dest, "default": None,
                                          "help": opt.help}
                if opt.choices is not None:
                    kwargs["choices"] = opt.choices
                else:
                    kwargs["type"] = opt.type
                sub.add_argument(opt.flag, **kwargs)
    return parser


def _parse_bool(raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise DomainError(f"config: cannot read {raw!r} as a boolean")


def _load_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        fh = open(path, encoding="utf-8")
    except FileNotFoundError:
        raise FileNotFoundError(f"config file not found: {path}") from None
    with fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key=value")
            key, value = line.split("=", 1)
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _resolve(ns: argparse.Namespace, opts: tuple[Opt, ...],
             parser: argparse.ArgumentParser) -> argparse.Namespace:
    config = _load_config(ns.config) if ns.config else {}
    for opt in opts:
        value = getattr(ns, opt.dest)
        if value is None and opt.dest in config:
            raw = config[opt.dest]
            if opt.is_flag:
                value = _parse_bool(raw)
            elif opt.choices is not None:
                if raw not in opt.choices:
                    raise DomainError(
                        f"config: {opt.dest} must be one of {', '.join(opt.choices)}"
                    )
                value = raw
            else:
                try:
                    value = opt.type(raw) if opt.type else raw
                except ValueError:
                    raise DomainError(
                        f"config: bad value {raw!r} for {opt.dest}"
                    ) from None
        if value is None:
            value = False if opt.is_flag else opt.default
        if value is None and opt.required:
            parser.error(f"missing required option {opt.flag}")
        setattr(ns, opt.dest, value)
    return ns


def _normalizer(ns: argparse.Namespace) -> NormalizerConfig:
    path = getattr(ns, "emoticons", None)
    if path:
        return NormalizerConfig(emoticons=load_emoticon_table(path))
    return NormalizerConfig()


def _require_classes(corpus: Corpus) -> list[str]:
    labels = []
    for i, doc in enumerate(corpus):
        if doc.senti_class is None:
            raise UnscoredCorpusError(f"document {i} has no senti_class label")
        labels.append(doc.senti_class.value)
    return labels


def _format_stat(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_summary_csv(corpus: Corpus, path: str, include_neutral: bool) -> None:
    summaries = scoring.summarize_by_candidate(corpus, exclude_neutral=not include_neutral)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["candidate", "tweets", "median", "mean", "stddev", "min", "max"])
        for s in summaries:
            writer.writerow(
                [s.candidate, s.tweets, _format_stat(s.median), _format_stat(s.mean),
                 _format_stat(s.std_dev), s.min, s.max]
            )


def _write_histogram_csv(hist: scoring.ScoreHistogram, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["candidate", "score", "count"])
        for score in sorted(hist.bins):
            writer.writerow(["ALL", score, hist.bins[score]])
        for candidate in sorted(hist.per_candidate):
            for score in sorted(hist.per_candidate[candidate]):
                writer.writerow([candidate, score, hist.per_candidate[candidate][score]])


def report(
    corpus: Corpus,
    histogram_out: str,
    summary_out: str,
    svg_out: str | None = None,
    include_neutral: bool = False,
) -> None:
    """Write the histogram CSV, summary CSV, and optional SVG facets."""
    hist = scoring.histogram(corpus)
    _write_histogram_csv(hist, histogram_out)
    _write_summary_csv(corpus, summary_out, include_neutral)
    if svg_out:
        Path(svg_out).write_text(render_histogram_svg(hist), encoding="utf-8")


def _labeled_data(ns: argparse.Namespace):
    corpus = ingest.read_corpus(ns.corpus)
    if getattr(ns, "drop_neutral", False):
        corpus = filter_neutral(corpus)
    labels = _require_classes(corpus)
    tdm = build_tdm(corpus, _normalizer(ns))
    if getattr(ns, "sparse", None) is not None:
        tdm = remove_sparse_terms(tdm, ns.sparse)
    return tdm, labeled_set_from_tdm(tdm, labels)


def _hyperparams(ns: argparse.Namespace) -> dict[str, Any]:
    if ns.algo == "nb":
        return {"alpha": ns.alpha}
    if ns.algo == "maxent":
        return {
            "l2_lambda": getattr(ns, "lambda"),
            "tolerance": ns.tolerance,
            "max_iters": ns.max_iters,
        }
    if ns.algo == "svm":
        return {"c_param": ns.c, "epochs": ns.epochs, "seed": ns.seed}
    return {"max_depth": ns.depth, "min_samples_split": ns.min_split}


def _cmd_fetch(ns: argparse.Namespace) -> int:
    manifest = ingest.load_manifest(ns.manifest)
    if ns.cache:
        manifest = replace(manifest, cache_dir=ns.cache)
    policy = ingest.RateLimitPolicy(budget_per_window=int(ns.budget))
    plan = ingest.plan_fetch(manifest, policy, page_size=ns.page_size)
    if ns.dry_run:
        print(ingest.format_plan(plan, policy))
        return 0
    if not ns.source_dir:
        raise DomainError("--source-dir is required unless --dry-run is given")
    if not ns.out:
        raise DomainError("--out is required unless --dry-run is given")
    source = ingest.StaticSource.from_dir(ns.source_dir)
    corpus = ingest.fetch(manifest, source, page_size=ns.page_size, dedupe=ns.dedupe)
    ingest.write_corpus(corpus, ns.out)
    print(f"fetched {len(corpus)} documents -> {ns.out}", file=sys.stderr)
    return 0


def _cmd_score(ns: argparse.Namespace) -> int:
    if ns.check_sorted:
        for path in (ns.pos, ns.neg):
            for lineno, word in unsorted_entries(path):
                print(f"warning: {path}:{lineno}: {word!r} breaks sorted order",
                      file=sys.stderr)
    lex = load_lexicon(ns.pos, ns.neg)
    corpus = ingest.read_corpus(ns.corpus)
    scored = scoring.score_corpus(corpus, lex, _normalizer(ns))
    ingest.write_corpus(scored, ns.out)
    out = Path(ns.out)
    summary_out = ns.summary_out or str(out.with_name(out.stem + "-summary.csv"))
    histogram_out = ns.histogram_out or str(out.with_name(out.stem + "-histogram.csv"))
    report(scored, histogram_out, summary_out, ns.svg, ns.include_neutral)
    return 0


def _cmd_summarize(ns: argparse.Namespace) -> int:
    corpus = ingest.read_corpus(ns.corpus)
    _write_summary_csv(corpus, ns.out, ns.include_neutral)
    return 0


def _cmd_split(ns: argparse.Namespace) -> int:
    corpus = ingest.read_corpus(ns.corpus)
    assignment = split_train_test(corpus, seed=ns.seed, p_train=ns.train_frac)
    train_corpus, test_corpus = assignment.apply(corpus)
    ingest.write_corpus(train_corpus, ns.train_out)
    ingest.write_corpus(test_corpus, ns.test_out)
    print(f"train={len(train_corpus)} test={len(test_corpus)}", file=sys.stderr)
    return 0


def _cmd_train(ns: argparse.Namespace) -> int:
    tdm, data = _labeled_data(ns)
    model = train_classifier(ns.algo, data, **_hyperparams(ns))
    bundle = ModelBundle(
        algo=ns.algo,
        model=model,
        class_names=data.class_names,
        vocab=tdm.vocab.terms,
    )
    save_model(bundle, ns.model_out)
    print(
        f"trained {ns.algo} on {len(data)} docs, {data.n_features} terms "
        f"-> {ns.model_out}",
        file=sys.stderr,
    )
    return 0


def _featurize(text: str, vocab_index: dict[str, int],
               config: NormalizerConfig) -> FeatureVector:
    from .normalize import normalized_tokens

    counts: dict[int, float] = {}
    for token in normalized_tokens(text, config):
        col = vocab_index.get(token)
        if col is not None:
            counts[col] = counts.get(col, 0.0) + 1.0
    return FeatureVector(counts)


def _cmd_evaluate(ns: argparse.Namespace) -> int:
    bundle = load_model(ns.model)
    if bundle.vocab is None:
        raise DomainError("model file carries no vocabulary; cannot featurize text")
    corpus = ingest.read_corpus(ns.corpus)
    if ns.drop_neutral:
        corpus = filter_neutral(corpus)
    actual = _require_classes(corpus)
    config = _normalizer(ns)
    vocab_index = {term: i for i, term in enumerate(bundle.vocab)}
    predicted = [
        bundle.class_names[
            predict_with(bundle.model, _featurize(doc.text, vocab_index, config)).label
        ]
        for doc in corpus
    ]
    cm = evaluation.confusion_matrix(actual, predicted, bundle.class_names)
    rep = evaluation.metrics_report(cm)
    print(evaluation.format_report_text(rep))
    if ns.csv:
        with open(ns.csv, "w", encoding="utf-8", newline="") as fh:
            csv.writer(fh, lineterminator="\n").writerows(evaluation.report_rows(rep))
    if ns.json:
        import json as json_mod

        Path(ns.json).write_text(
            json_mod.dumps(evaluation.report_json(rep), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
    return 0


def _cmd_crossval(ns: argparse.Namespace) -> int:
    _, data = _labeled_data(ns)
    cv = evaluation.cross_validate(data, ns.k, ns.algo, seed=ns.seed, **_hyperparams(ns))
    print(evaluation.format_cv_text(cv))
    if ns.out:
        with open(ns.out, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["fold", "accuracy"])
            for i, acc in enumerate(cv.fold_accuracies, start=1):
                writer.writerow([i, repr(acc)])
            writer.writerow(["mean", repr(cv.mean_accuracy)])
    return 0


def _cmd_report(ns: argparse.Namespace) -> int:
    corpus = ingest.read_corpus(ns.corpus)
    report(corpus, ns.histogram_out, ns.summary_out, ns.svg, ns.include_neutral)
    return 0


_HANDLERS = {
    "fetch": _cmd_fetch,
    "score": _cmd_score,
    "summarize": _cmd_summarize,
    "split": _cmd_split,
    "train": _cmd_train,
    "evaluate": _cmd_evaluate,
    "crossval": _cmd_crossval,
    "report": _cmd_report,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        ns = _resolve(ns, _SUBCOMMANDS[ns.command], parser)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _HANDLERS[ns.command](ns)
    except (DomainError, FileNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
