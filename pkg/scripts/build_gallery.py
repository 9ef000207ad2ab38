"""Regenerate the packaged model files from ``orbindex.index.gallery``."""
import json
import sys
from pathlib import Path

from orbindex.index import gallery

OUT = Path(__file__).resolve().parent.parent / "src" / "orbindex" / "models"


def main() -> int:
    OUT.mkdir(exist_ok=True)
    for name, data in gallery().items():
        (OUT / f"{name}.model").write_text(json.dumps(data, indent=2) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
