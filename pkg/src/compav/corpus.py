"""Corpus loading, cleaning, near-duplicate removal and splitting.

On disk a corpus is a directory with one sub-directory per problem, each
holding ``known*.txt`` files and exactly one ``unknown*.txt``, plus a
top-level ``truth.txt`` with lines ``<problem-id> <Y|N>``.
"""

import logging
import math
import os
import random
import re
import unicodedata
from itertools import combinations
from pathlib import Path

from .exceptions import (
    CorpusError,
    EmptyTokenSet,
    MissingUnknown,
    MultipleUnknowns,
    TooFewProblems,
    TruthReferencesMissingProblem,
    UnreadableFile,
)
from .utils.validation import check_label
from .verification import Document, Problem

logger = logging.getLogger(__name__)

__all__ = [
    "TRUTH_FILE",
    "load_corpus",
    "read_truth",
    "write_corpus",
    "clean_text",
    "tokenize",
    "overlap_coefficient",
    "deduplicate",
    "flagged_pairs",
    "split",
    "clean_problem",
    "preprocess_problem",
]

TRUTH_FILE = "truth.txt"


def _read_text(path):
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise UnreadableFile(f"cannot read file ({exc.strerror or exc})", path) from exc
    try:
        return raw.decode("utf-8-sig")
    except UnicodeDecodeError:
        logger.warning("invalid UTF-8 in %s; replaced undecodable bytes", path)
        return raw.decode("utf-8-sig", errors="replace")


def read_truth(path):
    """Parse a truth file into ``{problem_id: "Y" | "N"}``."""
    truth = {}
    for lineno, line in enumerate(_read_text(path).splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise UnreadableFile(f"malformed truth line {lineno}: {line!r}", path)
        try:
            truth[parts[0]] = check_label(parts[1])
        except ValueError:
            raise UnreadableFile(f"bad label on truth line {lineno}: {line!r}", path) from None
    return truth


def _load_problem(pdir, truth):
    known = []
    unknown = []
    for f in sorted(pdir.iterdir()):
        name = f.name.lower()
        if not name.endswith(".txt"):
            continue
        if name.startswith("unknown"):
            unknown.append(f)
        elif name.startswith("known"):
            known.append(f)
    if not unknown:
        raise MissingUnknown("problem has no unknown document", pdir)
    if len(unknown) > 1:
        raise MultipleUnknowns(f"problem has {len(unknown)} unknown documents", pdir)
    if not known:
        raise CorpusError("problem has no known documents", pdir)
    return Problem(
        id=pdir.name,
        unknown=Document(unknown[0].stem, _read_text(unknown[0])),
        known=tuple(Document(f.stem, _read_text(f)) for f in known),
        truth=truth.get(pdir.name),
    )


def load_corpus(root):
    """Load every problem under ``root``, sorted by problem id."""
    root = Path(root)
    if not root.is_dir():
        raise UnreadableFile("corpus root is not a readable directory", root)
    truth_path = root / TRUTH_FILE
    truth = read_truth(truth_path) if truth_path.exists() else {}
    try:
        dirs = sorted(p for p in root.iterdir() if p.is_dir())
    except OSError as exc:
        raise UnreadableFile(f"cannot list directory ({exc.strerror or exc})", root) from exc
    names = {d.name for d in dirs}
    for pid in truth:
        if pid not in names:
            raise TruthReferencesMissingProblem(f"truth file lists {pid!r}", root / pid)
    return [_load_problem(d, truth) for d in dirs]


def write_corpus(problems, root):
    """Write problems in the on-disk layout, mirroring ``load_corpus``."""
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    for p in problems:
        pdir = root / p.id
        pdir.mkdir(exist_ok=True)
        for doc in (*p.known, p.unknown):
            (pdir / f"{doc.id}.txt").write_bytes(doc.text.encode("utf-8"))
    lines = [f"{p.id} {p.truth}\n" for p in sorted(problems, key=lambda p: p.id) if p.truth]
    if lines:
        (root / TRUTH_FILE).write_bytes("".join(lines).encode("utf-8"))


_URL = re.compile(r"\b[a-zA-Z][a-zA-Z0-9+.\-]*://\S*|\bwww\.\S+", re.IGNORECASE)
_TAG = re.compile(r"<[^<>]*>")
_ENTITY = re.compile(r"&(?:#[0-9]+|#[xX][0-9a-fA-F]+|[A-Za-z][A-Za-z0-9]*);")
_SYMBOL_RUN = re.compile(r"([^\w\s]|_)\1{2,}")
_WS = re.compile(r"\s+")


def _strip_controls(text):
    return "".join(ch for ch in text if ch.isspace() or unicodedata.category(ch) != "Cc")


def _clean_once(text):
    text = _URL.sub("", text)
    text = _TAG.sub("", text)
    text = _ENTITY.sub("", text)
    text = _strip_controls(text)
    text = _SYMBOL_RUN.sub(r"\1", text)
    text = _WS.sub(" ", text)
    return text.strip()


def clean_text(raw):
    """Noise removal producing a single-line string.

    URLs, HTML tags, HTML entities and control characters are removed, runs
    of three or more identical symbols collapse to one and all whitespace
    runs become one space. The steps repeat until nothing changes, which
    makes the function idempotent.
    """
    if isinstance(raw, (bytes, bytearray)):
        text = bytes(raw).decode("utf-8", errors="replace")
    else:
        text = raw
    # Each pass only deletes or substitutes characters, so this terminates.
    while True:
        cleaned = _clean_once(text)
        if cleaned == text:
            return cleaned
        text = cleaned


_TOKEN_SPLIT = re.compile(r"[\W_]+")


def tokenize(text):
    """Lower-cased alphanumeric token set."""
    return {t for t in _TOKEN_SPLIT.split(text.lower()) if t}


def overlap_coefficient(x_tokens, y_tokens):
    x = set(x_tokens)
    y = set(y_tokens)
    if not x or not y:
        raise EmptyTokenSet("overlap coefficient needs two non-empty token sets")
    return len(x & y) / min(len(x), len(y))


def deduplicate(documents, threshold=0.25):
    """Drop exact and near-duplicate documents.

    Documents are visited in id order; one is kept unless it is
    byte-identical to, or has an overlap coefficient above ``threshold``
    with, a document already kept. Coefficients are computed on the
    original texts. Returns ``(kept, removed)`` where each removed entry is
    ``(kept_id, removed_id, coefficient)``.
    """
    if not 0 < threshold <= 1:
        raise ValueError(f"threshold must lie in (0, 1], got {threshold}")
    docs = sorted(documents, key=lambda d: d.id)
    kept = []
    removed = []
    seen = {}
    for d in docs:
        first = seen.get(d.text)
        if first is not None:
            removed.append((first.id, d.id, 1.0))
            continue
        seen[d.text] = d
    survivors = [d for d in docs if seen.get(d.text) is d]
    tokens = {d.id: tokenize(d.text) for d in survivors}
    for d in survivors:
        hit = None
        for k in kept:
            if not tokens[d.id] or not tokens[k.id]:
                continue
            coef = overlap_coefficient(tokens[k.id], tokens[d.id])
            if coef > threshold:
                hit = (k.id, d.id, coef)
                break
        if hit is None:
            kept.append(d)
        else:
            removed.append(hit)
    removed.sort(key=lambda r: r[1])
    return kept, removed


def flagged_pairs(documents, threshold=0.25):
    """All pairs whose overlap coefficient exceeds ``threshold``."""
    docs = sorted(documents, key=lambda d: d.id)
    tokens = {d.id: tokenize(d.text) for d in docs}
    out = []
    for a, b in combinations(docs, 2):
        if tokens[a.id] and tokens[b.id]:
            coef = overlap_coefficient(tokens[a.id], tokens[b.id])
            if coef > threshold:
                out.append((a.id, b.id, coef))
    return out


def _round_half_up(x):
    return math.floor(x + 0.5)


def split(problems, train_fraction=0.2, seed=0):
    """Seeded, label-stratified train/eval partition.

    The train side gets ``round(train_fraction * n)`` problems, allocated to
    each label in proportion to its size (largest remainder), so a balanced
    corpus stays balanced within one problem on both sides. Both returned
    lists are sorted by id.
    """
    if not 0 < train_fraction < 1:
        raise ValueError(f"train_fraction must lie in (0, 1), got {train_fraction}")
    problems = sorted(problems, key=lambda p: p.id)
    n = len(problems)
    n_train = _round_half_up(train_fraction * n)
    if n_train == 0 or n_train == n:
        raise TooFewProblems(f"cannot split {n} problems with train_fraction={train_fraction}")

    groups = {}
    for p in problems:
        groups.setdefault(p.truth or "", []).append(p)
    labels = sorted(groups)
    quota = {lab: math.floor(train_fraction * len(groups[lab])) for lab in labels}
    leftover = n_train - sum(quota.values())
    by_remainder = sorted(labels, key=lambda lab: (-(train_fraction * len(groups[lab]) - quota[lab]), lab))
    for lab in by_remainder[:leftover]:
        quota[lab] += 1

    rng = random.Random(seed)
    train, held = [], []
    for lab in labels:
        members = list(groups[lab])
        rng.shuffle(members)
        train.extend(members[:quota[lab]])
        held.extend(members[quota[lab]:])
    return sorted(train, key=lambda p: p.id), sorted(held, key=lambda p: p.id)


def clean_problem(problem):
    return Problem(
        id=problem.id,
        unknown=Document(problem.unknown.id, clean_text(problem.unknown.text)),
        known=tuple(Document(d.id, clean_text(d.text)) for d in problem.known),
        truth=problem.truth,
    )


def preprocess_problem(problem, dedup_threshold=0.25):
    """Drop duplicate known documents, then clean every document.

    Duplicates are detected on the raw texts. The unknown document is never
    removed; known documents left empty by cleaning are dropped. Returns
    ``(problem, removed)``.
    """
    kept, removed = deduplicate(problem.known, dedup_threshold)
    cleaned = clean_problem(Problem(problem.id, problem.unknown, tuple(kept), problem.truth))
    known = [d for d in cleaned.known if d.text]
    for d in cleaned.known:
        if not d.text:
            logger.warning("problem %s: %s is empty after cleaning and was dropped", problem.id, d.id)
    if not known or not cleaned.unknown.text:
        raise CorpusError("problem has no usable text after cleaning", problem.id)
    return Problem(cleaned.id, cleaned.unknown, tuple(known), cleaned.truth), removed


def corpus_name(root):
    return os.path.basename(os.path.normpath(str(root)))
