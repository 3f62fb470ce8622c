"""Command-line interface.

Exit codes: 0 success, 2 corpus error, 3 calibration error, 4 model error,
1 anything else.
"""

import argparse
import csv
import io
import json
import logging
import statistics
import sys
import time
from pathlib import Path

from . import __version__
from .compression import CompressorKind
from .corpus import corpus_name, load_corpus, preprocess_problem, split, write_corpus
from .dissimilarity import MeasureKind, measure
from .estimator import CompressionVerifier
from .exceptions import (
    CorpusError,
    EmptyInput,
    EmptyScoreSet,
    LengthMismatch,
    ModelFormatError,
    SingleClass,
    UnlabeledProblem,
)
from .metrics import roc_auc
from .verification import Document, Problem, VerifierModel, decide, evaluate, problem_lengths

logger = logging.getLogger("compav")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CORPUS = 2
EXIT_CALIBRATION = 3
EXIT_MODEL = 4

GRID_MEASURES = (MeasureKind.NCD, MeasureKind.CBC, MeasureKind.CLM)


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _fmt(value, digits=3):
    return "n/a" if value is None else f"{value:.{digits}f}"


def _hms(seconds):
    seconds = int(round(seconds))
    return f"{seconds // 3600:02d}:{seconds % 3600 // 60:02d}:{seconds % 60:02d}"


def _load_model(args):
    try:
        model = VerifierModel.load(args.model)
    except ModelFormatError as exc:
        raise CliError(str(exc), EXIT_MODEL) from exc
    if getattr(args, "threshold", None) is not None:
        model = model.with_theta(args.threshold)
    return model


def _training_auc(scores, labels):
    try:
        return roc_auc([(lab, None, s) for s, lab in zip(scores, labels)])
    except SingleClass:
        return None


def cmd_preprocess(args, out):
    problems = load_corpus(args.corpus)
    cleaned = []
    log_rows = []
    for p in problems:
        q, removed = preprocess_problem(p, args.dedup_threshold)
        cleaned.append(q)
        log_rows.extend((p.id, kept, gone, coef) for kept, gone, coef in removed)
    root = Path(args.output)
    write_corpus(cleaned, root)
    with open(root / "dedup_log.tsv", "w", encoding="utf-8", newline="") as fh:
        fh.write("problem\tkept\tremoved\tcoefficient\n")
        for row in log_rows:
            fh.write("%s\t%s\t%s\t%.6f\n" % row)
    print(f"wrote {len(cleaned)} problems to {root}; removed {len(log_rows)} duplicate documents",
          file=out)
    return EXIT_OK


def cmd_train(args, out):
    problems = load_corpus(args.corpus)
    est = CompressionVerifier(
        compressor=args.compressor,
        measure=args.measure,
        subsample_balance=args.subsample_balance,
        random_state=args.seed,
        n_jobs=args.jobs,
    )
    est.fit(problems)
    model = est.to_model(corpus_id=corpus_name(args.corpus))
    if args.output:
        model.save(args.output)
    scores = est.train_scores_
    labels = list(est.train_labels_)
    print(f"theta: {model.theta:.17g}", file=out)
    for lab in ("Y", "N"):
        group = [s for s, l in zip(scores, labels) if l == lab]
        if group:
            print(f"{lab}: n={len(group)} mean={statistics.fmean(group):.6f} "
                  f"min={min(group):.6f} max={max(group):.6f}", file=out)
    print(f"training AUC: {_fmt(_training_auc(scores, labels))}", file=out)
    return EXIT_OK


def _read_document(path, doc_id):
    try:
        text = Path(path).read_bytes().decode("utf-8", errors="replace")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}", EXIT_CORPUS) from exc
    if not text:
        raise CliError(f"document is empty: {path}", EXIT_CORPUS)
    return Document(doc_id, text)


def cmd_verify(args, out):
    model = _load_model(args)
    if len(args.files) < 2:
        raise CliError("verify needs at least one known file and one unknown file", EXIT_FAILURE)
    *known_paths, unknown_path = args.files
    known = [_read_document(p, f"known{i:03d}") for i, p in enumerate(known_paths, 1)]
    problem = Problem("cli", _read_document(unknown_path, "unknown"), known)
    decision = decide(model, problem)
    result = {
        "score": decision.score.value,
        "theta": model.theta,
        "answer": decision.answer,
        "out_of_range": decision.out_of_range,
    }
    print(json.dumps(result), file=out)
    return EXIT_OK


def _pan_table(report):
    m = report.metrics
    header = f"{'Team':<16} {'FS':>6} {'AUC':>6} {'c@1':>6} {'UP':>4} {'Runtime':>9}"
    row = (f"{'compav':<16} {_fmt(m.final_score):>6} {_fmt(m.auc):>6} {_fmt(m.c_at_1):>6} "
           f"{0:>4} {_hms(report.duration):>9}")
    return f"{header}\n{row}"


def cmd_evaluate(args, out):
    model = _load_model(args)
    problems = load_corpus(args.corpus)
    report = evaluate(model, problems, jobs=args.jobs, corpus_id=corpus_name(args.corpus))
    if report.metrics.auc is None:
        logger.warning("corpus contains a single class; AUC and final score omitted")
    if args.output:
        Path(args.output).write_text(report.to_json(), encoding="utf-8")
    print(_pan_table(report), file=out)
    m = report.metrics
    print(f"F1={_fmt(m.f1)} recall={_fmt(m.recall)} precision={_fmt(m.precision)}", file=out)
    return EXIT_OK


def grid_table(corpora, compressors, measures, jobs=1):
    """Training AUC for every (corpus, compressor, measure) cell, plus averages.

    Returns a list of ``(corpus, compressor, measure, auc)`` rows; the
    trailing rows use the corpus name ``"average"``.
    """
    rows = []
    for name, problems in corpora:
        labels = [p.truth for p in problems]
        if any(lab is None for lab in labels):
            raise UnlabeledProblem(f"corpus {name} has unlabelled problems")
        for comp in compressors:
            lengths = problem_lengths(comp, problems, jobs=jobs)
            for meas in measures:
                auc = _training_auc([measure(meas, *t).value for t in lengths], labels)
                rows.append((name, comp.value, meas.value, auc))
    for comp in compressors:
        for meas in measures:
            cells = [r[3] for r in rows if r[1] == comp.value and r[2] == meas.value]
            valid = [c for c in cells if c is not None]
            avg = sum(valid) / len(valid) if valid and len(valid) == len(cells) else None
            rows.append(("average", comp.value, meas.value, avg))
    return rows


def _grid_text(rows, compressors, measures):
    corpora = list(dict.fromkeys(r[0] for r in rows))
    lookup = {(r[0], r[1], r[2]): r[3] for r in rows}
    width = max(len(c) for c in corpora + ["corpus"])
    head1 = " " * width + " | " + " | ".join(
        f"{c.value:^{6 * len(measures) - 1}}" for c in compressors)
    head2 = f"{'corpus':<{width}} | " + " | ".join(
        " ".join(f"{m.value.upper():>5}" for m in measures) for _ in compressors)
    lines = [head1, head2, "-" * len(head2)]
    for corpus in corpora:
        cells = " | ".join(
            " ".join(f"{_fmt(lookup[(corpus, c.value, m.value)]):>5}" for m in measures)
            for c in compressors)
        lines.append(f"{corpus:<{width}} | {cells}")
    return "\n".join(lines)


def grid_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["corpus", "compressor", "measure", "auc"])
    for name, comp, meas, auc in rows:
        writer.writerow([name, comp, meas, "" if auc is None else f"{auc:.6f}"])
    return buf.getvalue()


def cmd_grid(args, out):
    compressors = [CompressorKind.parse(c) for c in args.compressor] if args.compressor else list(CompressorKind)
    measures = [MeasureKind.parse(m) for m in args.measure] if args.measure else list(GRID_MEASURES)
    corpora = [(corpus_name(root), load_corpus(root)) for root in args.corpora]
    start = time.perf_counter()
    rows = grid_table(corpora, compressors, measures, jobs=args.jobs)
    print(_grid_text(rows, compressors, measures), file=out)
    print(f"{len(corpora) * len(compressors) * len(measures)} runs in "
          f"{time.perf_counter() - start:.1f}s", file=out)
    if args.output:
        Path(args.output).write_text(grid_csv(rows), encoding="utf-8")
    return EXIT_OK


def cmd_split(args, out):
    problems = load_corpus(args.corpus)
    train, held = split(problems, args.train_fraction, args.seed)
    root = Path(args.output)
    write_corpus(train, root / "train")
    write_corpus(held, root / "eval")
    print(f"train: {len(train)} problems, eval: {len(held)} problems", file=out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="compav", description="Authorship verification with compression models.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    def model_opts(p):
        p.add_argument("--compressor", type=str.lower, default="ppm",
                       choices=[k.value for k in CompressorKind])
        p.add_argument("--measure", type=str.lower, default="cbc",
                       choices=[k.value for k in MeasureKind])

    def common(p):
        p.add_argument("--jobs", type=int, default=1, help="worker processes for scoring")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", help="output path")

    p = sub.add_parser("preprocess", help="clean a corpus and drop duplicate known documents")
    p.add_argument("corpus")
    p.add_argument("--dedup-threshold", type=float, default=0.25)
    common(p)
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("train", help="calibrate a threshold on a labelled corpus")
    p.add_argument("corpus")
    model_opts(p)
    p.add_argument("--subsample-balance", action="store_true",
                   help="downsample the larger class before calibration")
    common(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("verify", help="decide a single problem")
    p.add_argument("--model", required=True)
    p.add_argument("--threshold", type=float, help="override the model threshold")
    p.add_argument("files", nargs="+", help="known files followed by the unknown file")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("evaluate", help="evaluate a model on a labelled corpus")
    p.add_argument("corpus")
    p.add_argument("--model", required=True)
    p.add_argument("--threshold", type=float, help="override the model threshold")
    common(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("grid", help="training AUC for every compressor and measure")
    p.add_argument("corpora", nargs="+")
    p.add_argument("--compressor", action="append", type=str.lower,
                   choices=[k.value for k in CompressorKind])
    p.add_argument("--measure", action="append", type=str.lower,
                   choices=[k.value for k in MeasureKind])
    common(p)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("split", help="stratified train/eval split of a corpus")
    p.add_argument("corpus")
    p.add_argument("--train-fraction", type=float, default=0.2)
    common(p)
    p.set_defaults(func=cmd_split)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command in ("preprocess", "split") and not args.output:
        parser.error(f"{args.command} needs --output")
    try:
        return args.func(args, out)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (LengthMismatch, EmptyScoreSet) as exc:
        print(f"calibration error: {exc}", file=sys.stderr)
        return EXIT_CALIBRATION
    except (CorpusError, UnlabeledProblem, EmptyInput) as exc:
        print(f"corpus error: {exc}", file=sys.stderr)
        return EXIT_CORPUS
    except ModelFormatError as exc:
        print(f"model error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except Exception as exc:  # noqa: BLE001
        logger.debug("unexpected failure", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
