#!/usr/bin/env python3
"""
Fast SYRK - Main Entry Point

Command-line access to the fast symmetric product, its verification
batteries, operation counts and benchmarks.
"""

import sys

from src.cli.app import main


if __name__ == "__main__":
    sys.exit(main())
