#!/usr/bin/env python3
"""Certificate-size growth measurement; forwards to `planarcert sweep`.

Examples:
    python3 scripts/size_sweep.py
    python3 scripts/size_sweep.py --kind random_maximal_planar --sizes 16,256,4096
"""

import sys

from planarcert.cli import main

if __name__ == "__main__":
    sys.exit(main(["sweep", *sys.argv[1:]]))
