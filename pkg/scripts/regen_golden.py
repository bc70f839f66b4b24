"""Regenerate the golden CLI outputs under tests/golden/."""

import contextlib
import io
from pathlib import Path

from bundlechar.cli import main

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"

CASES = {
    "tracefield_7.json": ["tracefield", "-n", "7"],
    "tracefield_-6.json": ["tracefield", "-n", "-6"],
    "family_7.json": ["poly", "family", "-n", "7"],
    "fib_-4.json": ["poly", "fib", "-n", "-4"],
    "dilatation_3_12.json": ["dilatation", "--range", "3..12"],
    "fillings_3.json": ["fillings", "-n", "3"],
}


def render(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


if __name__ == "__main__":
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, argv in CASES.items():
        code, out = render(argv)
        assert code == 0, (name, code)
        (GOLDEN / name).write_text(out)
        print(f"wrote {name}")
