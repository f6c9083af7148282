import pathlib
import sys

try:
    import semiflow  # noqa: F401
except ImportError:
    sys.path.insert(0, str(pathlib.Path(__file__).parent / "src"))
