"""CLI invocations whose outputs are frozen under tests/golden/.

Regenerate with ``python tests/golden_cases.py`` after an intended change.
"""
import contextlib
import io
from pathlib import Path

GOLDEN_DIR = Path(__file__).parent / "golden"

CASES = {
    "fig01_curve.csv": ["curve", "--y-min", "0.05", "--y-max", "10", "--samples", "256"],
    "fig01_curve.svg": ["curve", "--format", "svg"],
    "fig10_cobweb.csv": ["cobweb", "--x", "1.3", "--steps", "25"],
    "fig10_cobweb.svg": ["cobweb", "--x", "1.3", "--steps", "25", "--format", "svg"],
    "fig13_tower.csv": ["bifurcation", "--x-min", "0.01", "--x-max", "1.444667861009766", "--samples", "200"],
    "fig13_tower.svg": ["bifurcation", "--format", "svg"],
    "fig14_tower200.csv": ["towers", "--samples", "200", "--heights", "200"],
    "fig15_tower200_201.csv": ["towers", "--samples", "200", "--heights", "200", "201"],
    "fig15_tower200_201.svg": ["towers", "--format", "svg", "--heights", "200", "201"],
    "fig16_region.csv": ["region", "--nx", "40", "--ny", "40"],
    "fig16_region.svg": ["region", "--format", "svg"],
}


def run_cli(argv):
    from powertower.cli import main

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


if __name__ == "__main__":
    GOLDEN_DIR.mkdir(exist_ok=True)
    for name, argv in CASES.items():
        code, text = run_cli(argv)
        assert code == 0, (name, code)
        (GOLDEN_DIR / name).write_text(text, encoding="utf-8")
        print(f"wrote {name} ({len(text)} bytes)")
