"""Entrypoint for the quiver cells toolkit.

Runs the ``tqc`` command line interface.
"""
import sys

from quiver_cells.cli import main

if __name__ == "__main__":
    sys.exit(main())
