"""Main entry point - ``python -m cv_storage`` runs the command-line front end."""

import sys

from cv_storage.cli import main

if __name__ == "__main__":
    sys.exit(main())
