import sys
from pathlib import Path

# make the _graphs / _oracles test helpers importable regardless of how
# pytest was invoked
sys.path.insert(0, str(Path(__file__).parent))
