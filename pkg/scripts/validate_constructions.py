#!/usr/bin/env python3
"""Re-run every structural validation; forwards to `planarcert oracle-check`.

Examples:
    python3 scripts/validate_constructions.py
    python3 scripts/validate_constructions.py --scope lowerbound --cap 80
"""

import sys

from planarcert.cli import main

if __name__ == "__main__":
    sys.exit(main(["oracle-check", *sys.argv[1:]]))
