"""Main application entry point."""

import logging
import sys

from msnumber.cli.main import run
from msnumber.config.settings import configure_logging

# Log to standard error so standard output stays byte-exact
configure_logging(stream=sys.stderr)

logger = logging.getLogger(__name__)

if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
