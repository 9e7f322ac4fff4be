#!/usr/bin/env python3
"""Shortest alternating word covering SU(3, R), next to the lengths the constructive
factorization actually produces.

    python3 scripts/unitri_coverage.py --rings "gf(4)" "gf(9)"
"""
import argparse
import json
from collections import Counter
from dataclasses import asdict, dataclass, field

from twistfact import conditions, su3
from twistfact.rings import ring_parse


@dataclass
class Config:
    rings: list[str] = field(default_factory=lambda: ["gf(4)", "gf(9)"])
    max_length: int = 7


@dataclass
class Row:
    spec: str
    order: int
    k: int
    bound: int
    shortest_cover: dict[str, int | None]
    constructive_lengths: dict[str, dict[int, int]]


def shortest_cover(R, group, lead: str, max_length: int) -> int | None:
    other = "-" if lead == "+" else "+"
    for length in range(1, max_length + 1):
        word = ((lead + other) * max_length)[:length]
        if su3.coverage_search(R, word, group)[0]:
            return length
    return None


def run(cfg: Config) -> list[Row]:
    rows = []
    for spec in cfg.rings:
        R = ring_parse(spec)
        group = su3.su3_enumerate(R)
        cert = conditions.c_length(R)
        wf = conditions.witnesses_for(R, cert)
        lengths = {}
        for lead in "+-":
            hist = Counter(su3.unitri_decompose(A, wf, lead).length for A in group)
            lengths[lead] = dict(sorted(hist.items()))
        rows.append(Row(
            spec, len(group), cert.k, su3.unitri_length_bound(cert.k),
            {lead: shortest_cover(R, group, lead, cfg.max_length) for lead in "+-"},
            lengths,
        ))
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--rings", nargs="+", default=Config().rings)
    p.add_argument("--max-length", type=int, default=Config.max_length)
    a = p.parse_args()
    for row in run(Config(a.rings, a.max_length)):
        print(json.dumps(asdict(row)))


if __name__ == "__main__":
    main()
