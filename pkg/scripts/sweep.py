"""Run the main checkers over the standard graph family and tabulate timings.

    python3 scripts/sweep.py --samples 200 --out sweep.json
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from brandtlpa.algebra import Context
from brandtlpa.coeff import RingSpec
from brandtlpa.graph import line_graph, random_acyclic, rose
from brandtlpa.regularity import (SamplerConfig, check_graded_regular, check_nearly_eps_strong,
                                  check_pseudo_unitary, semisimplicity_certificate)
from brandtlpa.weight import coarsest_weight_map, finest_weight_map


@dataclass
class SweepConfig:
    samples: int = 200
    seed: int = 0
    rings: list = field(default_factory=lambda: ["Q", "Fp:2", "Fp:5"])
    dag_seeds: list = field(default_factory=lambda: [1, 2, 3])
    max_terms: int = 4
    max_len: int = 3


def graphs(cfg: SweepConfig):
    return ([line_graph(n) for n in (2, 3, 4, 5)] + [rose(1), rose(2)]
            + [random_acyclic(6, s) for s in cfg.dag_seeds])


def run(cfg: SweepConfig) -> list:
    sampler = SamplerConfig(cfg.max_terms, cfg.max_len)
    rows = []
    for g in graphs(cfg):
        for spec in cfg.rings:
            ring = RingSpec.parse(spec)
            for label, w in (("finest", finest_weight_map(g)), ("coarsest", coarsest_weight_map(g))):
                ctx = Context(g, ring, weights=w)
                row = {"graph": g.name, "ring": spec, "assignment": label}
                for name, fn in (
                        ("graded-regular",
                         lambda: check_graded_regular(ctx, cfg.samples, cfg.seed, sampler)),
                        ("nearly-eps-strong",
                         lambda: check_nearly_eps_strong(ctx, cfg.samples, cfg.seed, sampler)),
                        ("pseudo-unitary", lambda: check_pseudo_unitary(ctx)),
                        ("semisimple-cert",
                         lambda: semisimplicity_certificate(ctx, cfg.samples, cfg.seed, sampler))):
                    t0 = time.perf_counter()
                    rep = fn()
                    row[name] = {"verdict": rep.verdict,
                                 "ms": round(1000 * (time.perf_counter() - t0), 1)}
                rows.append(row)
                print(f"{g.name:>6} {spec:>5} {label:>8}  "
                      + "  ".join(f"{k}={'ok' if v['verdict'] else 'FAIL'}/{v['ms']:.0f}ms"
                                  for k, v in row.items() if isinstance(v, dict)))
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    a = p.parse_args()
    cfg = SweepConfig(samples=a.samples, seed=a.seed)
    t0 = time.perf_counter()
    rows = run(cfg)
    total = time.perf_counter() - t0
    failed = [r for r in rows if not all(v["verdict"] for v in r.values() if isinstance(v, dict))]
    print(f"{len(rows)} contexts, {len(failed)} with failures, {total:.1f}s")
    if a.out:
        with open(a.out, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": rows, "total_s": round(total, 2)}, fh,
                      indent=2)
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
