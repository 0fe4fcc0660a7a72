#!/usr/bin/env python3
"""Run every property sweep at acceptance scale and print the reports.

Usage: python scripts/run_property_sweeps.py [seed]
Exit status is nonzero if any sweep found a counterexample.
"""
import sys
import time

from mfbridge.properties import (GenConfig, check_axioms, check_delta_functional,
                                 check_freevar_contracts, check_oneside,
                                 check_substitution)


def main() -> int:
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 20240801
    runs = [
        ("oneside", lambda: check_oneside(GenConfig(seed=seed, sample_count=500),
                                          term_count=200)),
        ("deltafun", lambda: check_delta_functional(GenConfig(seed=seed, sample_count=300))),
        ("subst", lambda: check_substitution(GenConfig(seed=seed, sample_count=300))),
        ("freevars", lambda: check_freevar_contracts(GenConfig(seed=seed, sample_count=1000))),
        ("axioms", lambda: check_axioms(GenConfig(seed=seed))),
    ]
    failed = False
    for name, run in runs:
        t0 = time.monotonic()
        report = run()
        dt = time.monotonic() - t0
        print(report.render())
        print(f"  [{name} took {dt:.2f}s]")
        failed = failed or not report.ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
