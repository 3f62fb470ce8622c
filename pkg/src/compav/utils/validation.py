"""Input validation helpers for the estimator API."""

import numpy as np

from ..exceptions import UnlabeledProblem
from ..verification import Document, Problem

_LABEL_ALIASES = {
    "y": "Y", "yes": "Y", "true": "Y", "1": "Y", "1.0": "Y",
    "n": "N", "no": "N", "false": "N", "0": "N", "0.0": "N",
}


def check_label(value):
    """Map the usual encodings of a binary label onto ``"Y"`` / ``"N"``."""
    if isinstance(value, (bool, np.bool_)):
        return "Y" if value else "N"
    key = str(value).strip().lower()
    try:
        return _LABEL_ALIASES[key]
    except KeyError:
        raise ValueError(f"cannot interpret {value!r} as a Y/N label") from None


def _as_document(obj, default_id):
    if isinstance(obj, Document):
        return obj
    if isinstance(obj, bytes):
        return Document(default_id, obj.decode("utf-8", errors="replace"))
    if isinstance(obj, str):
        return Document(default_id, obj)
    raise TypeError(f"expected a Document, str or bytes, got {type(obj).__name__}")


def check_problems(X):
    """Coerce ``X`` into a list of :class:`Problem`.

    Each element is a ``Problem`` or a ``(known, unknown)`` pair where
    ``known`` is a document or a sequence of documents.
    """
    if isinstance(X, Problem):
        raise TypeError("expected a sequence of problems, got a single Problem")
    problems = []
    for idx, item in enumerate(X):
        if isinstance(item, Problem):
            problems.append(item)
            continue
        try:
            known, unknown = item
        except (TypeError, ValueError):
            raise TypeError(f"element {idx} is neither a Problem nor a (known, unknown) pair") from None
        pid = f"{idx:06d}"
        if isinstance(known, (str, bytes, Document)):
            known = [known]
        known_docs = tuple(_as_document(k, f"known{j:03d}") for j, k in enumerate(known))
        problems.append(Problem(pid, _as_document(unknown, "unknown"), known_docs))
    if not problems:
        raise ValueError("need at least one problem")
    return problems


def check_labels(problems, y=None):
    """Labels for ``problems``: from ``y`` when given, else from ``Problem.truth``."""
    if y is None:
        labels = []
        for p in problems:
            if p.truth is None:
                raise UnlabeledProblem(f"problem {p.id!r} has no truth label")
            labels.append(p.truth)
        return labels
    labels = [check_label(v) for v in np.asarray(y, dtype=object).ravel()]
    if len(labels) != len(problems):
        raise ValueError(f"got {len(labels)} labels for {len(problems)} problems")
    return labels
