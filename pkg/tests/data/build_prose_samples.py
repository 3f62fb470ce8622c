"""Regenerate ``prose/`` from text shipped with CPython and Debian.

Sources: the Python reference topics bundled in ``pydoc_data`` (PSF
licence) and the licence texts under ``/usr/share/common-licenses``.
Each sample is a 4096-byte window of ASCII-normalised text.
"""

import sys
from pathlib import Path

SIZE = 4096
HERE = Path(__file__).parent / "prose"
LICENSES = ["GPL-3", "Apache-2.0", "MPL-2.0", "GFDL-1.3", "LGPL-2.1", "Artistic", "MPL-1.1", "GPL-2"]


def windows(text, count):
    text = text.encode("ascii", "ignore").decode("ascii")
    step = (len(text) - SIZE) // max(count - 1, 1)
    return [text[i * step:i * step + SIZE] for i in range(count)]


def main():
    from pydoc_data.topics import topics

    HERE.mkdir(exist_ok=True)
    pydoc = "\n".join(topics[k] for k in sorted(topics))
    samples = [("pydoc", w) for w in windows(pydoc, 60)]
    for name in LICENSES:
        text = Path("/usr/share/common-licenses", name).read_text(encoding="utf-8", errors="ignore")
        n = 5
        samples += [(name.lower(), w) for w in windows(text, n)]
    for i, (src, body) in enumerate(samples):
        (HERE / f"{i:03d}_{src}.txt").write_text(body, encoding="ascii")
    print(f"wrote {len(samples)} samples", file=sys.stderr)


if __name__ == "__main__":
    main()
