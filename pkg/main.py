#!/usr/bin/env python3
"""Entry point for the zzbound command line."""

import sys

from zzbound.cli import main

if __name__ == "__main__":
    sys.exit(main())
