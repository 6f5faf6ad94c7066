"""How long do graded inverses have to be?

For random homogeneous x, record the smallest length bound in the search
schedule at which a graded inverse appears, against m = the longest path
length in x, and the size of the candidate space at that bound.
"""

import argparse
import random
from collections import Counter

from brandtlpa.algebra import Context
from brandtlpa.coeff import RingSpec
from brandtlpa.graph import line_graph, random_acyclic, rose
from brandtlpa.regularity import SamplerConfig, find_graded_inverse, random_homogeneous


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--samples", type=int, default=300)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ring", default="Q")
    p.add_argument("--max-len", type=int, default=3)
    a = p.parse_args()
    ring = RingSpec.parse(a.ring)
    rng = random.Random(a.seed)
    cfg = SamplerConfig(max_len=a.max_len)
    for g in [line_graph(4), rose(1), rose(2), random_acyclic(6, 1)]:
        ctx = Context(g, ring)
        excess, cands = Counter(), []
        for _ in range(a.samples):
            x = random_homogeneous(ctx, rng, cfg)
            res = find_graded_inverse(x)
            excess[res.bound - x.max_length() if res.found else "none"] += 1
            cands.append(res.candidates)
        mean = sum(cands) / len(cands)
        print(f"{g.name:>6}: bound - m -> {dict(sorted(excess.items(), key=str))}, "
              f"mean candidates {mean:.1f}, max {max(cands)}")


if __name__ == "__main__":
    main()
