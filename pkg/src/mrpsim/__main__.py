"""
Main entry point for the mrpsim CLI.
"""

import sys

from mrpsim.commands import main

if __name__ == "__main__":
    sys.exit(main())
