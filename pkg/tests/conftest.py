from pathlib import Path

import pytest

from compav.corpus import write_corpus
from compav.verification import Document, Problem

DATA = Path(__file__).parent / "data"
PROSE_DIR = DATA / "prose"


def identity_length(data):
    """Stand-in compressor with C(s) = |s|."""
    return len(data)


@pytest.fixture(scope="session")
def prose():
    """100 fixed 4096-byte English prose samples, keyed by file stem."""
    return {p.stem: p.read_text(encoding="ascii") for p in sorted(PROSE_DIR.glob("*.txt"))}


@pytest.fixture(scope="session")
def prose_list(prose):
    return list(prose.values())


def synthetic_problems(prose_list, n_pairs=3, size=1500):
    """Y problems pair a text with itself, N problems pair unrelated texts."""
    problems = []
    for i in range(n_pairs):
        text = prose_list[i][:size]
        other = prose_list[-1 - i][:size]
        problems.append(Problem(f"Y{i:02d}", Document("unknown", text), [Document("known01", text)], "Y"))
        problems.append(Problem(f"N{i:02d}", Document("unknown", other), [Document("known01", text)], "N"))
    return problems


@pytest.fixture
def synthetic(prose_list):
    return synthetic_problems(prose_list)


@pytest.fixture
def synthetic_corpus(tmp_path, synthetic):
    root = tmp_path / "corpus"
    write_corpus(synthetic, root)
    return root


_FUZZ_PIECES = [
    "word", "Text", " ", "  ", "\n", "\t", "\r\n", "!!!", "??", "...", "---", "___",
    "<b>", "</b>", "<a href='x'>", "<", ">", "&amp;", "&#39;", "&#x27;", "&nbsp;", "&", ";",
    "http://example.org/a?b=c", "https://x.y/z", "www.example.com", "://", "www.",
    "\x00", "\x07", "\x1b", "\x7f", "\u0085", "é", "中", "\U0001f600", "1234", "a_b",
]


def fuzz_documents(n=500, seed=0):
    """Seeded noisy strings mixing markup, URLs, entities, symbols and control characters."""
    import random

    rng = random.Random(seed)
    docs = []
    for _ in range(n):
        parts = [rng.choice(_FUZZ_PIECES) for _ in range(rng.randint(0, 60))]
        parts += [chr(rng.randrange(0x20, 0x3000)) for _ in range(rng.randint(0, 10))]
        rng.shuffle(parts)
        docs.append("".join(parts))
    return docs


# Filled by test_acceptance.py and printed once at the end of the session.
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(line[1])
