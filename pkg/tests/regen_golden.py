"""Regenerate tests/golden/*.json after a deliberate catalog change."""

from pathlib import Path

from a2m import catalog

GOLDEN = Path(__file__).parent / "golden"
CASES = [("L1", 1), ("L1", 2), ("L1", 3), ("L2", 2), ("L3", 1), ("L3", 2), ("L3", 3),
         ("L12", 1), ("L12", 2), ("L12", 3), ("I", 2), ("L13", 2), ("L4", 2),
         ("I-amended", 2), ("L13-amended", 2), ("L4-amended", 2)]


def path_for(name, m):
    return GOLDEN / f"{name}_m{m}.json"


if __name__ == "__main__":
    GOLDEN.mkdir(exist_ok=True)
    for name, m in CASES:
        path_for(name, m).write_text(catalog.build(name, m).dumps() + "\n", encoding="utf-8")
