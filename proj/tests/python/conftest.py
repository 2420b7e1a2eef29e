import sys
from pathlib import Path

# prefer an installed wheel; otherwise import straight from the build tree
try:
    import _satham  # noqa: F401
except ImportError:
    root = Path(__file__).resolve().parents[2]
    for candidate in (root / "build", root / "build-py"):
        if candidate.is_dir():
            sys.path.insert(0, str(candidate))
