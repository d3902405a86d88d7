"""Random search on the complexity question for R = S/(x).

For random R-modules M, compare the growth of the Betti numbers of M over R
with those of M viewed over S.  Growth classes come from a finite table, so
this only looks for candidate examples; it asserts nothing.

    python scripts/cx_experiment.py --ring fatpoint --x x --count 10 -n 8
"""

import argparse
import random

from ezdiv.formats import load_fixture
from ezdiv.homology import PairSetting
from ezdiv.modules import random_presentation, realize
from ezdiv.resolve import complexity_estimate, minimal_resolution


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ring", default="fatpoint")
    ap.add_argument("--x", default="x")
    ap.add_argument("--count", type=int, default=10)
    ap.add_argument("-n", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    setting = PairSetting.build(load_fixture(args.ring), args.x)
    rng = random.Random(f"{args.seed}:cx")
    print(f"ring {args.ring}, pair {setting.label()}, horizon {args.n}")
    print(f"{'module':>8}  {'dim':>3}  {'growth over R':<20}  {'growth over S':<20}  flag")
    for j in range(args.count):
        m = realize(random_presentation(setting.R, rng))
        if m.dim == 0:
            continue
        br = minimal_resolution(m, args.n).ranks
        bs = minimal_resolution(setting.over_s(m), args.n).ranks
        gr, gs = complexity_estimate(br), complexity_estimate(bs)
        # a candidate counterexample would grow faster over R than over S
        flag = "candidate" if gr.complexity > gs.complexity else ""
        cols = [f"{g.kind} cx~{g.complexity}" for g in (gr, gs)]
        print(f"{'rand' + str(j):>8}  {m.dim:>3}  {cols[0]:<20}  {cols[1]:<20}  {flag}")
        print(f"{'':>8}  R: {br}")
        print(f"{'':>8}  S: {bs}")


if __name__ == "__main__":
    main()
