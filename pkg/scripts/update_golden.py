"""Regenerate tests/golden from the current CLI output (review the diff before committing)."""

import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from cli_cases import GOLDEN  # noqa: E402
from locsys.cli import run  # noqa: E402
from locsys.fixtures import write_corpus  # noqa: E402


def main():
    out = ROOT / "tests" / "golden"
    out.mkdir(exist_ok=True)
    with tempfile.TemporaryDirectory() as d:
        write_corpus(d)
        for name, argv, _ in GOLDEN:
            args = [a if not a.endswith((".alg", ".twr")) else str(Path(d) / a) for a in argv]
            for fmt in ("text", "structured"):
                code, text, err = run(args + ["--format", fmt])
                (out / f"{name}.{fmt}").write_text(text, encoding="utf-8")
                print(f"{name}.{fmt}: exit {code}")


if __name__ == "__main__":
    main()
