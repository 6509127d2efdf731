"""Command-line interface.

Every subcommand reads documents through a TSV manifest, validates its
input paths before any scoring, writes results atomically (temp file +
rename), and stamps delimited output with a metadata line carrying the
tool version, the seed, and a hash of the resolved options, so identical
invocations produce identical bytes. Exit codes: 0 success, 2 usage,
3 bad input, 4 degenerate data, 5 internal.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from . import __version__
from .baseline import FeatureSpec, featurize_corpus, train_logreg
from .corpus import (
    LabeledCorpus,
    MANIFEST_HEADER,
    chunk_corpus,
    generate_synthetic,
    load_manifest,
    save_corpus,
    stratified_kfold,
    stratified_split,
)
from .errors import (
    BadRow,
    ConstantSeries,
    EmptyInput,
    InputError,
    ReadlabError,
    UnknownDocId,
    UsageError,
)
from .formulas import MEASURES, FormulaConfig, score_all
from .langmodel import (
    SMOOTHING_METHODS,
    document_perplexity,
    load_model,
    load_precomputed,
    save_model,
    train_ngram,
)
from .metrics import (
    QWK_WEIGHTS,
    ConfusionMatrix,
    classification_metrics,
    confusion,
    pearson,
    qwk,
    rank_measures,
    rank_table,
)
from .rsrs import document_rsrs
from .textseg import SYLLABLE_PROFILES, WordList

FORMATS = ("csv", "json", "table")
MODEL_MEASURES = ("RSRS", "PPL")


# -- small infrastructure -----------------------------------------------------


def _atomic_write(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def _workers() -> int:
    raw = os.environ.get("READLAB_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"READLAB_WORKERS must be an integer, got {raw!r}") from None


def _pmap(fn: Callable, items: Sequence) -> list:
    """Map preserving input order; READLAB_WORKERS caps the thread count."""
    items = list(items)
    n = _workers()
    if n <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _config_hash(args: argparse.Namespace) -> str:
    payload = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    text = json.dumps(payload, sort_keys=True, default=str)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:12]


def _meta(args: argparse.Namespace) -> dict:
    return {
        "tool": "readlab",
        "version": __version__,
        "seed": getattr(args, "seed", 0),
        "config": _config_hash(args),
    }


def _meta_line(args: argparse.Namespace) -> str:
    meta = _meta(args)
    return f"readlab {meta['version']} seed={meta['seed']} config={meta['config']}"


def _fmt_cell(value) -> str:
    if value is None:
        return "NA"
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def _format_table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [
        max(len(headers[i]), *(len(r[i]) for r in rows)) if rows else len(headers[i])
        for i in range(len(headers))
    ]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


def _render(args, headers, rows, payload: dict, fmt: Optional[str] = None) -> str:
    fmt = fmt or args.format
    if fmt == "json":
        return json.dumps({"meta": _meta(args), **payload}, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(headers)
        writer.writerows(rows)
        return f"# {_meta_line(args)}\n" + buffer.getvalue()
    return f"# {_meta_line(args)}\n" + _format_table(headers, rows) + "\n"


def _emit(args, headers, rows, payload: dict) -> None:
    """Render in the requested format and write to --out or stdout."""
    text = _render(args, headers, rows, payload)
    if getattr(args, "out", None):
        _atomic_write(args.out, text)
    else:
        sys.stdout.write(text)


def _formula_config(args, measures: Sequence[str] = MEASURES) -> FormulaConfig:
    wordlist = WordList.load(args.wordlist) if args.wordlist else None
    return FormulaConfig(
        measures=tuple(measures),
        gfi_variant=args.gfi_variant,
        wordlist=wordlist,
        lang_profile=SYLLABLE_PROFILES[args.lang],
    )


def _provider(args):
    if getattr(args, "model", None) and getattr(args, "scores", None):
        raise UsageError("give --model or --scores, not both")
    if getattr(args, "model", None):
        return load_model(args.model)
    if getattr(args, "scores", None):
        return load_precomputed(args.scores)
    return None


# -- simple subcommands ---------------------------------------------------------


def cmd_profile(args) -> None:
    corpus = load_manifest(args.input)
    config = _formula_config(args)
    reports = _pmap(lambda doc: score_all(doc, config), corpus.documents)
    headers = ["doc_id", *MEASURES]
    rows = [
        [r.doc_id] + [_fmt_cell(r.scores.get(m)) for m in MEASURES] for r in reports
    ]
    payload = {"documents": [r.as_dict() for r in reports]}
    _emit(args, headers, rows, payload)


def cmd_score(args) -> None:
    corpus = load_manifest(args.input)
    provider = _provider(args)
    values = _pmap(lambda doc: document_perplexity(provider, doc), corpus.documents)
    headers = ["doc_id", "perplexity"]
    rows = [[doc.id, _fmt_cell(v)] for doc, v in zip(corpus.documents, values)]
    payload = {
        "documents": [
            {"doc_id": doc.id, "perplexity": v}
            for doc, v in zip(corpus.documents, values)
        ]
    }
    _emit(args, headers, rows, payload)


def cmd_train_lm(args) -> None:
    corpus = load_manifest(args.input)
    sentences = [sent for doc in corpus.documents for sent in doc.sentences if sent]
    model = train_ngram(
        sentences,
        order=args.order,
        smoothing=args.smoothing,
        k=args.k,
        min_count=args.min_count,
    )
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    tmp = out.with_name(out.name + ".tmp")
    save_model(model, tmp)
    os.replace(tmp, out)
    summary = [
        ("model", str(out)),
        ("order", str(model.order)),
        ("smoothing", model.smoothing),
        ("k", _fmt_cell(model.k)),
        ("min_count", str(model.min_count)),
        ("vocabulary", str(len(model.vocab))),
        ("sentences", str(len(sentences))),
    ]
    payload = {"model": dict(summary)}
    sys.stdout.write(_render(args, ["key", "value"], [list(kv) for kv in summary], payload))


def cmd_rsrs(args) -> None:
    corpus = load_manifest(args.input)
    provider = _provider(args)

    def both(doc):
        return document_rsrs(provider, doc), document_perplexity(provider, doc)

    values = _pmap(both, corpus.documents)
    headers = ["doc_id", "rsrs", "perplexity"]
    rows = [
        [doc.id, _fmt_cell(r), _fmt_cell(p)]
        for doc, (r, p) in zip(corpus.documents, values)
    ]
    payload = {
        "documents": [
            {"doc_id": doc.id, "rsrs": r, "perplexity": p}
            for doc, (r, p) in zip(corpus.documents, values)
        ]
    }
    _emit(args, headers, rows, payload)


def cmd_chunk(args) -> None:
    corpus = load_manifest(args.input)
    chunked = chunk_corpus(corpus, args.n, args.min_tail)
    manifest = save_corpus(chunked, args.out_dir, meta_line=_meta_line(args))
    summary = [
        ("manifest", str(manifest)),
        ("documents", str(len(corpus))),
        ("chunks", str(len(chunked))),
    ]
    payload = {"chunk": dict(summary)}
    _emit(args, ["key", "value"], [list(kv) for kv in summary], payload)


def _split_class_counts(corpus: LabeledCorpus, indices: Sequence[int]) -> dict[str, int]:
    counts = {name: 0 for name in corpus.class_names}
    for i in indices:
        counts[corpus.class_names[corpus.labels[i]]] += 1
    return counts


def _write_split_manifest(corpus: LabeledCorpus, indices: Sequence[int], path: Path, meta_line: str) -> None:
    rows = [f"# {meta_line}", MANIFEST_HEADER]
    for i in indices:
        doc = corpus.documents[i]
        label = corpus.labels[i]
        if doc.source is None:
            raise InputError(f"document {doc.id!r} has no source path to reference")
        rows.append(
            f"{Path(doc.source).resolve()}\t{corpus.class_names[label]}\t{label}"
        )
    _atomic_write(path, "\n".join(rows) + "\n")


def cmd_split(args) -> None:
    corpus = load_manifest(args.input)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    meta_line = _meta_line(args)
    record: dict = {"meta": _meta(args), "seed": args.seed, "input": str(args.input)}
    if args.kfold:
        splits = stratified_kfold(corpus.labels, args.kfold, seed=args.seed)
        record["mode"] = "kfold"
        record["k"] = args.kfold
        record["folds"] = []
        summary_rows = []
        for i, split in enumerate(splits):
            fold_record = {}
            for part, indices in (("train", split.train), ("val", split.val), ("test", split.test)):
                path = out_dir / f"fold-{i}-{part}.tsv"
                _write_split_manifest(corpus, indices, path, meta_line)
                fold_record[part] = {
                    "manifest": str(path),
                    "count": len(indices),
                    "per_class": _split_class_counts(corpus, indices),
                }
            record["folds"].append(fold_record)
            summary_rows.append(
                [str(i), str(len(split.train)), str(len(split.val)), str(len(split.test))]
            )
        _atomic_write(out_dir / "split-record.json", json.dumps(record, indent=2, sort_keys=True) + "\n")
        _emit(args, ["fold", "train", "val", "test"], summary_rows, {"split": record})
        return
    try:
        ratios = tuple(float(r) for r in args.ratios.split(","))
    except ValueError:
        raise UsageError(f"--ratios must be three comma-separated numbers, got {args.ratios!r}") from None
    if len(ratios) != 3:
        raise UsageError("--ratios must have exactly three parts (train,val,test)")
    split = stratified_split(corpus.labels, ratios, seed=args.seed)
    record["mode"] = "ratios"
    record["ratios"] = list(ratios)
    summary_rows = []
    for part, indices in (("train", split.train), ("val", split.val), ("test", split.test)):
        path = out_dir / f"{part}.tsv"
        _write_split_manifest(corpus, indices, path, meta_line)
        record[part] = {
            "manifest": str(path),
            "count": len(indices),
            "per_class": _split_class_counts(corpus, indices),
        }
        summary_rows.append([part, str(len(indices))])
    _atomic_write(out_dir / "split-record.json", json.dumps(record, indent=2, sort_keys=True) + "\n")
    _emit(args, ["part", "documents"], summary_rows, {"split": record})


def cmd_synth(args) -> None:
    lo_hi = args.sentences.split(",")
    if len(lo_hi) != 2:
        raise UsageError(f"--sentences must be LO,HI, got {args.sentences!r}")
    try:
        sentences = (int(lo_hi[0]), int(lo_hi[1]))
    except ValueError:
        raise UsageError(f"--sentences must be two integers, got {args.sentences!r}") from None
    corpus = generate_synthetic(
        args.classes,
        args.docs_per_class,
        seed=args.seed,
        sentences_per_doc=sentences,
    )
    manifest = save_corpus(corpus, args.out_dir, meta_line=_meta_line(args))
    summary = [
        ("manifest", str(manifest)),
        ("documents", str(len(corpus))),
        ("classes", str(corpus.n_classes)),
    ]
    payload = {"synth": dict(summary)}
    _emit(args, ["key", "value"], [list(kv) for kv in summary], payload)


# -- unsupervised evaluation -----------------------------------------------------


def _dataset_inputs(raw_inputs: Sequence[str]) -> list[tuple[str, Path]]:
    datasets = []
    for raw in raw_inputs:
        if "=" in raw:
            name, _, path_text = raw.partition("=")
        else:
            path_text = raw
            path = Path(raw)
            name = path.parent.name if path.stem == "manifest" and path.parent.name else path.stem
        if not name:
            raise UsageError(f"cannot derive a dataset name from {raw!r}; use NAME=PATH")
        if name in {n for n, _ in datasets}:
            raise UsageError(f"duplicate dataset name {name!r}")
        datasets.append((name, Path(path_text)))
    return datasets


def _safe_pearson(values: Sequence[float], labels: Sequence[int]) -> Optional[float]:
    try:
        return pearson(values, labels)
    except (ConstantSeries, EmptyInput):
        return None


def _parse_measures(args) -> list[str]:
    known = MEASURES + MODEL_MEASURES
    if args.measures:
        requested = [m.strip().upper() for m in args.measures.split(",") if m.strip()]
        unknown = [m for m in requested if m not in known]
        if unknown:
            raise UsageError(
                f"unknown measures: {', '.join(unknown)} (choose from {', '.join(known)})"
            )
        # canonical order regardless of how the user listed them
        selected = [m for m in known if m in requested]
    else:
        selected = list(MEASURES)
        if args.model or args.scores:
            selected += list(MODEL_MEASURES)
    if not selected:
        raise UsageError("no measures selected")
    return selected


def run_unsupervised_eval(args) -> list[Path]:
    """Correlate measures with classes and rank them across datasets.

    Writes per-document scores CSV, correlations JSON, and a ranking table
    into --out-dir; optionally one correlation chart per dataset.
    """
    measures = _parse_measures(args)
    model_measures = [m for m in measures if m in MODEL_MEASURES]
    if model_measures and not (args.model or args.scores):
        raise UsageError(
            f"measures {', '.join(model_measures)} need --model or --scores"
        )
    provider = _provider(args)
    formula_measures = [m for m in measures if m in MEASURES]
    config = _formula_config(args, formula_measures) if formula_measures else None
    datasets = _dataset_inputs(args.input)
    corpora = [(name, load_manifest(path)) for name, path in datasets]
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    score_rows: list[list[str]] = []
    correlations: dict[str, dict[str, Optional[float]]] = {}
    for name, corpus in corpora:
        def score_doc(doc):
            values: dict[str, Optional[float]] = {}
            if config is not None:
                report = score_all(doc, config)
                for m in formula_measures:
                    values[m] = report.scores.get(m)
            if "RSRS" in measures:
                values["RSRS"] = document_rsrs(provider, doc)
            if "PPL" in measures:
                values["PPL"] = document_perplexity(provider, doc)
            return values

        per_doc = _pmap(score_doc, corpus.documents)
        for doc, label, values in zip(corpus.documents, corpus.labels, per_doc):
            score_rows.append(
                [name, doc.id, str(label)] + [_fmt_cell(values[m]) for m in measures]
            )
        correlations[name] = {
            m: _safe_pearson(
                [v[m] for v in per_doc if v[m] is not None],
                [l for v, l in zip(per_doc, corpus.labels) if v[m] is not None],
            )
            for m in measures
        }

    rankings = rank_measures(correlations)
    dataset_names = [name for name, _ in datasets]
    rank_headers, rank_rows = rank_table(rankings, dataset_names)

    written = []
    scores_path = out_dir / "scores.csv"
    _atomic_write(
        scores_path,
        _render(args, ["dataset", "doc_id", "class", *measures], score_rows, {}, fmt="csv"),
    )
    written.append(scores_path)

    corr_payload = {
        "correlations": correlations,
        "ranks": [
            {"measure": r.measure, "ranks": r.ranks, "average": r.average}
            for r in rankings
        ],
    }
    corr_path = out_dir / "correlations.json"
    _atomic_write(corr_path, _render(args, [], [], corr_payload, fmt="json"))
    written.append(corr_path)

    rank_ext = {"csv": "csv", "json": "json", "table": "txt"}[args.format]
    rank_path = out_dir / f"ranking.{rank_ext}"
    _atomic_write(
        rank_path,
        _render(args, rank_headers, rank_rows, {"ranks": corr_payload["ranks"]}),
    )
    written.append(rank_path)

    if args.figures:
        from .report import correlation_figure

        for name in dataset_names:
            present = {m: v for m, v in correlations[name].items() if v is not None}
            if present:
                figure_path = out_dir / f"correlations-{name}.png"
                correlation_figure(present, figure_path)
                written.append(figure_path)
    sys.stdout.write(_render(args, rank_headers, rank_rows, corr_payload))
    return written


# -- supervised evaluation --------------------------------------------------------


def _read_predictions(path) -> dict[str, int]:
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except FileNotFoundError:
        raise InputError(f"prediction file not found: {path}") from None
    predictions: dict[str, int] = {}
    for lineno, line in enumerate(lines, start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise BadRow(lineno, f"expected doc_id<TAB>predicted_class, got {line!r}")
        doc_id, pred_text = fields
        try:
            predicted = int(pred_text)
        except ValueError:
            raise BadRow(lineno, f"predicted_class is not an integer: {pred_text!r}") from None
        if doc_id in predictions:
            raise BadRow(lineno, f"duplicate prediction for document {doc_id!r}")
        predictions[doc_id] = predicted
    return predictions


def _scalar_metrics(cm: ConfusionMatrix, weights: str) -> dict[str, float]:
    report = classification_metrics(cm)
    return {
        "accuracy": report.accuracy,
        "weighted_precision": report.weighted_precision,
        "weighted_recall": report.weighted_recall,
        "weighted_f1": report.weighted_f1,
        "qwk": qwk(cm, weights=weights),
    }


def _confusion_csv(args, cm: ConfusionMatrix, class_names: Sequence[str]) -> str:
    headers = ["class", *class_names]
    rows = [
        [class_names[i], *(str(c) for c in row)] for i, row in enumerate(cm.counts)
    ]
    return _render(args, headers, rows, {}, fmt="csv")


def _evaluate_predictions(corpus: LabeledCorpus, predictions: dict[str, int]):
    known = {doc.id for doc in corpus.documents}
    unknown = sorted(set(predictions) - known)
    if unknown:
        raise UnknownDocId(f"predictions for unknown documents: {', '.join(unknown[:5])}")
    missing = [doc.id for doc in corpus.documents if doc.id not in predictions]
    if missing:
        raise InputError(
            f"{len(missing)} documents have no prediction (first: {missing[0]!r})"
        )
    true = list(corpus.labels)
    pred = [predictions[doc.id] for doc in corpus.documents]
    return true, pred


def run_supervised_eval(args) -> list[Path]:
    """Score predictions (or a trained baseline) against gold classes.

    Writes confusion.csv and metrics.json into --out-dir; CV mode reports
    per-fold and mean metrics. Optionally renders a confusion heatmap.
    """
    if bool(args.pred) == bool(args.train_baseline):
        raise UsageError("give exactly one of --pred or --train-baseline")
    if args.pred and args.kfold:
        raise UsageError("--kfold applies only to --train-baseline mode")
    corpus = load_manifest(args.input)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    payload: dict
    if args.pred:
        true, pred = _evaluate_predictions(corpus, _read_predictions(args.pred))
        cm = confusion(true, pred, n_classes=corpus.n_classes)
        scalars = _scalar_metrics(cm, args.qwk_weights)
        payload = {"mode": "predictions", **scalars}
    else:
        provider = _provider(args)
        spec = FeatureSpec(
            gfi_variant=args.gfi_variant,
            wordlist=WordList.load(args.wordlist) if args.wordlist else None,
            lang_profile=SYLLABLE_PROFILES[args.lang],
            include_rsrs=provider is not None,
            include_perplexity=provider is not None,
        )
        features = featurize_corpus(corpus.documents, spec, provider)
        labels = np.asarray(corpus.labels)
        if args.kfold:
            folds = stratified_kfold(corpus.labels, args.kfold, seed=args.seed)
            fold_reports = []
            pooled_true: list[int] = []
            pooled_pred: list[int] = []
            for i, split in enumerate(folds):
                model = train_logreg(
                    features[list(split.train)],
                    labels[list(split.train)],
                    corpus.class_names,
                    spec.names,
                    lr=args.lr,
                    epochs=args.epochs,
                )
                fold_pred = model.predict(features[list(split.test)])
                fold_true = labels[list(split.test)]
                fold_cm = confusion(
                    fold_true.tolist(), fold_pred.tolist(), n_classes=corpus.n_classes
                )
                fold_reports.append(
                    {"fold": i, **_scalar_metrics(fold_cm, args.qwk_weights)}
                )
                pooled_true.extend(fold_true.tolist())
                pooled_pred.extend(fold_pred.tolist())
            metric_names = ("accuracy", "weighted_precision", "weighted_recall", "weighted_f1", "qwk")
            mean = {
                name: sum(f[name] for f in fold_reports) / len(fold_reports)
                for name in metric_names
            }
            true, pred = pooled_true, pooled_pred
            cm = confusion(true, pred, n_classes=corpus.n_classes)
            scalars = mean
            payload = {"mode": "cv", "k": args.kfold, "folds": fold_reports, "mean": mean}
        else:
            try:
                ratios = tuple(float(r) for r in args.ratios.split(","))
            except ValueError:
                raise UsageError(
                    f"--ratios must be three comma-separated numbers, got {args.ratios!r}"
                ) from None
            split = stratified_split(corpus.labels, ratios, seed=args.seed)
            model = train_logreg(
                features[list(split.train)],
                labels[list(split.train)],
                corpus.class_names,
                spec.names,
                lr=args.lr,
                epochs=args.epochs,
            )
            pred = model.predict(features[list(split.test)]).tolist()
            true = labels[list(split.test)].tolist()
            cm = confusion(true, pred, n_classes=corpus.n_classes)
            scalars = _scalar_metrics(cm, args.qwk_weights)
            payload = {
                "mode": "split",
                "ratios": list(ratios),
                "counts": {
                    "train": len(split.train),
                    "val": len(split.val),
                    "test": len(split.test),
                },
                **scalars,
            }

    payload["qwk_weights"] = args.qwk_weights
    payload["class_names"] = list(corpus.class_names)
    payload["confusion"] = [list(row) for row in cm.counts]

    written = []
    confusion_path = out_dir / "confusion.csv"
    _atomic_write(confusion_path, _confusion_csv(args, cm, corpus.class_names))
    written.append(confusion_path)
    metrics_path = out_dir / "metrics.json"
    _atomic_write(metrics_path, _render(args, [], [], payload, fmt="json"))
    written.append(metrics_path)
    if args.figures:
        from .report import confusion_figure

        figure_path = out_dir / "confusion.png"
        confusion_figure(cm, corpus.class_names, figure_path)
        written.append(figure_path)

    rows = [[name, _fmt_cell(value)] for name, value in scalars.items()]
    sys.stdout.write(_render(args, ["metric", "value"], rows, payload))
    return written


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="readlab",
        description="Readability measures, language-model scores, and evaluation.",
    )
    parser.add_argument("--version", action="version", version=f"readlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    fmt_only = argparse.ArgumentParser(add_help=False)
    fmt_only.add_argument("--format", choices=FORMATS, default="csv", help="output format")

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=FORMATS, default="csv", help="output format")
    fmt.add_argument("--out", help="output file (stdout when omitted)")

    lang = argparse.ArgumentParser(add_help=False)
    lang.add_argument("--lang", choices=sorted(SYLLABLE_PROFILES), default="en")
    lang.add_argument("--wordlist", help="easy-word list file for the difficult-word count")
    lang.add_argument("--gfi-variant", choices=("paper", "standard"), default="paper")

    seed = argparse.ArgumentParser(add_help=False)
    seed.add_argument("--seed", type=int, default=0, help="deterministic seed")

    model = argparse.ArgumentParser(add_help=False)
    group = model.add_mutually_exclusive_group(required=True)
    group.add_argument("--model", help="n-gram model file")
    group.add_argument("--scores", help="precomputed token-score JSONL file")

    p = sub.add_parser("profile", parents=[fmt, lang], help="surface formula scores per document")
    p.add_argument("--input", required=True, help="corpus manifest TSV")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("score", parents=[fmt, model], help="document perplexity")
    p.add_argument("--input", required=True, help="corpus manifest TSV")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("train-lm", parents=[fmt_only], help="train a smoothed n-gram model")
    p.add_argument("--input", required=True, help="corpus manifest TSV")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--smoothing", choices=SMOOTHING_METHODS, default="add-k")
    p.add_argument("--k", type=float, default=1.0, help="add-k pseudo-count")
    p.add_argument("--min-count", type=int, default=1, help="tokens below this become unknown")
    p.add_argument("--out", required=True, help="model file to write")
    p.set_defaults(func=cmd_train_lm)

    p = sub.add_parser("rsrs", parents=[fmt, model], help="ranked sentence readability score")
    p.add_argument("--input", required=True, help="corpus manifest TSV")
    p.set_defaults(func=cmd_rsrs)

    p = sub.add_parser("chunk", parents=[fmt_only], help="split documents into fixed-size sentence chunks")
    p.add_argument("--input", required=True, help="corpus manifest TSV")
    p.add_argument("--n", type=int, default=25, help="sentences per chunk")
    p.add_argument("--min-tail", type=int, default=1, help="smaller final chunks merge backward")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_chunk)

    p = sub.add_parser("split", parents=[fmt_only, seed], help="stratified train/val/test split")
    p.add_argument("--input", required=True, help="corpus manifest TSV")
    p.add_argument("--ratios", default="0.8,0.1,0.1")
    p.add_argument("--kfold", type=int, help="write k rotated folds instead of one split")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("synth", parents=[fmt_only, seed], help="generate a synthetic graded corpus")
    p.add_argument("--classes", type=int, default=3)
    p.add_argument("--docs-per-class", type=int, default=20)
    p.add_argument("--sentences", default="20,40", help="per-document sentence range LO,HI")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser(
        "eval-unsupervised",
        parents=[fmt_only, lang, seed],
        help="correlate measures with classes and rank them",
    )
    p.add_argument(
        "--input",
        action="append",
        required=True,
        metavar="NAME=MANIFEST",
        help="dataset manifest, repeatable",
    )
    p.add_argument("--measures", help="comma-separated subset (default: all applicable)")
    p.add_argument("--model", help="n-gram model file for RSRS and perplexity measures")
    p.add_argument("--scores", help="precomputed token-score JSONL file")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--figures", action="store_true", help="also render correlation charts")
    p.set_defaults(func=run_unsupervised_eval)

    p = sub.add_parser(
        "eval-supervised",
        parents=[fmt_only, lang, seed],
        help="score a prediction file or a trained baseline against gold classes",
    )
    p.add_argument("--input", required=True, help="corpus manifest TSV")
    p.add_argument("--pred", help="TSV of doc_id and predicted class")
    p.add_argument(
        "--train-baseline",
        action="store_true",
        help="train the feature baseline instead of reading predictions",
    )
    p.add_argument("--kfold", type=int, help="stratified cross-validation folds")
    p.add_argument("--ratios", default="0.8,0.1,0.1", help="single-split mode ratios")
    p.add_argument("--model", help="n-gram model file for RSRS/log-perplexity features")
    p.add_argument("--scores", help="precomputed token-score JSONL file")
    p.add_argument("--lr", type=float, default=0.1, help="baseline learning rate")
    p.add_argument("--epochs", type=int, default=1500, help="baseline training epochs")
    p.add_argument("--qwk-weights", choices=QWK_WEIGHTS, default="linear-paper")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--figures", action="store_true", help="also render a confusion heatmap")
    p.set_defaults(func=run_supervised_eval)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return int(err.code or 0)
    try:
        args.func(args)
    except ReadlabError as err:
        print(f"readlab: error: {err}", file=sys.stderr)
        return err.exit_code
    except ValueError as err:
        print(f"readlab: error: {err}", file=sys.stderr)
        return 2
    except Exception as err:  # noqa: BLE001 - map unexpected bugs to exit 5
        print(f"readlab: internal error: {err!r}", file=sys.stderr)
        return 5
    return 0


if __name__ == "__main__":
    sys.exit(main())
