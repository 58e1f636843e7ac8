"""Classify every binary pattern on a window {-r..r} and tally the deciding criterion."""
import argparse
import time
from collections import Counter
from dataclasses import dataclass

from idemca.group import interval
from idemca.idempotency import classify
from idemca.pattern import enumerate_patterns
from idemca.rule import PatternCA


@dataclass
class Config:
    radius: int = 3


def run(cfg: Config) -> Counter:
    start = time.perf_counter()
    tally = Counter()
    for p in enumerate_patterns(interval(-cfg.radius, cfg.radius)):
        v = classify(PatternCA.flip(p))
        tally[(v.reason.value, v.idempotent)] += 1
    idem = sum(n for (_, ok), n in tally.items() if ok)
    print(f"window -{cfg.radius}..{cfg.radius}: {idem} idempotent, {sum(tally.values()) - idem} not "
          f"({time.perf_counter() - start:.2f} s)")
    for (reason, ok), n in sorted(tally.items()):
        print(f"  {reason:24s} {'idempotent' if ok else 'non-idempotent':15s} {n}")
    return tally


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--radius", type=int, default=Config.radius)
    run(Config(**vars(ap.parse_args())))
