"""Entry point for ``python -m concurrence_bounds``."""

import sys

from concurrence_bounds.cli import main

if __name__ == '__main__':
    sys.exit(main())
