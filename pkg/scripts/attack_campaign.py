#!/usr/bin/env python3
"""Forged-certificate campaigns against the classic non-planar targets.

Runs every adversary strategy against K5, K6, K3,3, and the Petersen graph
and prints one report per target.  Any accepting run is a soundness bug.

Usage:
    python3 scripts/attack_campaign.py [trials] [seed]
"""

import sys

from planarcert.graphs import generate
from planarcert.sim import attack, attack_report


def run(trials: int, seed: int) -> int:
    targets = [
        ("K5", generate("complete", k=5)),
        ("K6", generate("complete", k=6)),
        ("K3,3", generate("complete_bipartite", p=3, q=3)),
        ("Petersen", generate("petersen")),
    ]
    total = 0
    for name, g in targets:
        summary = attack(g, trials=trials, seed=seed)
        total += summary.total_accepts
        print(f"--- {name} ---")
        print(attack_report(summary))
    print(f"total accepting runs: {total}")
    return 0 if total == 0 else 1


if __name__ == "__main__":
    trials = int(sys.argv[1]) if len(sys.argv) > 1 else 1000
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0
    sys.exit(run(trials, seed))
