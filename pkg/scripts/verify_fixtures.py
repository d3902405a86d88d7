"""Run every verification suite on each bundled ring that has an exact zero-divisor."""

import argparse
import sys
import time

from ezdiv.formats import load_fixture
from ezdiv.homology import PairSetting
from ezdiv.report import emit_report, overall
from ezdiv.scenarios import SuiteConfig, run_suite

PAIRS = [("cube", "x^2"), ("cube", "x"), ("xquartic", "x^2"), ("fatpoint", "x"), ("noembdim", "V")]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--random", type=int, default=20)
    ap.add_argument("--format", choices=("text", "csv"), default="text")
    ap.add_argument("--summary", action="store_true", help="one line per ring instead of full reports")
    args = ap.parse_args()

    ok = True
    for ring, x in PAIRS:
        t0 = time.perf_counter()
        setting = PairSetting.build(load_fixture(ring), x)
        reports = run_suite(setting, "all", SuiteConfig(seed=args.seed, random=args.random))
        ok &= overall(reports)
        if args.summary:
            status = "pass" if overall(reports) else "fail"
            print(f"{ring:<10} {setting.label():<12} {len(reports):>3} reports  {status}  {time.perf_counter() - t0:.1f}s")
        else:
            sys.stdout.write(emit_report(reports, args.format))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
