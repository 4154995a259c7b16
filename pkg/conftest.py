import pathlib
import sys

# Allow running pytest from a bare checkout; harmless when the package is
# installed (the compiled kernel is then picked up if built in place).
src = str(pathlib.Path(__file__).parent / "src")
if src not in sys.path:
    sys.path.insert(0, src)
