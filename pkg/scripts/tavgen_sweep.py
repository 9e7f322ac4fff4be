#!/usr/bin/env python3
"""Random-word sweep of the rank reduction: round trips, shapes and timing per ring.

    python3 scripts/tavgen_sweep.py --rings "gf(4)" "zi(5)" --words 200 --seed 1
"""
import argparse
import json
import random
import time
from collections import Counter
from dataclasses import asdict, dataclass, field

from twistfact import twisted
from twistfact.rings import ring_parse


@dataclass
class Config:
    rings: list[str] = field(default_factory=lambda: ["gf(4)", "gf(9)", "zi(5)"])
    ns: list[int] = field(default_factory=lambda: [4, 5])
    modes: list[str] = field(default_factory=lambda: ["unitri", "tri"])
    words: int = 200
    max_length: int = 20
    seed: int = 0


@dataclass
class Result:
    spec: str
    n: int
    mode: str
    words: int
    failures: int
    shapes: dict[str, int]
    seconds: float


def run(cfg: Config) -> list[Result]:
    out = []
    for spec in cfg.rings:
        R = ring_parse(spec)
        for n in cfg.ns:
            for mode in cfg.modes:
                rng = random.Random(cfg.seed)
                shapes, failures = Counter(), 0
                t0 = time.perf_counter()
                for _ in range(cfg.words):
                    w = twisted.random_word(R, n, rng.randint(0, cfg.max_length), rng)
                    form = twisted.tavgen_factor(w, mode)
                    ok = form.product == twisted.word_eval(w) and twisted.shape_ok(form, n, mode)
                    failures += not ok
                    shapes[form.shape or "(empty)"] += 1
                out.append(Result(spec, n, mode, cfg.words, failures, dict(sorted(shapes.items())),
                                  round(time.perf_counter() - t0, 2)))
    return out


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--rings", nargs="+", default=Config().rings)
    p.add_argument("--words", type=int, default=Config.words)
    p.add_argument("--seed", type=int, default=Config.seed)
    a = p.parse_args()
    for r in run(Config(rings=a.rings, words=a.words, seed=a.seed)):
        print(json.dumps(asdict(r)))


if __name__ == "__main__":
    main()
