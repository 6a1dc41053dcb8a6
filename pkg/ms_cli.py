"""Command-line launcher."""

import sys
from pathlib import Path

# Add repository root to path
root_dir = Path(__file__).parent
sys.path.insert(0, str(root_dir))

from msnumber.cli.main import run
from msnumber.config.settings import configure_logging

if __name__ == "__main__":
    configure_logging(stream=sys.stderr)
    sys.exit(run(sys.argv[1:]))
