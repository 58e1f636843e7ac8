"""Word counts and entropy of the subshift forbidding a pattern (default: 11)."""
import argparse
from dataclasses import dataclass

from idemca.group import Z, parse_subset
from idemca.pattern import Pattern
from idemca.shiftspace import count_words, entropy


@dataclass
class Config:
    pattern: str = "11"
    domain: str = "0,1"
    max_n: int = 20


def run(cfg: Config) -> None:
    p = Pattern.from_string(cfg.pattern, parse_subset(Z, cfg.domain))
    print("n\twords")
    for n in range(1, cfg.max_n + 1):
        print(f"{n}\t{count_words(p, n)}")
    h = entropy(p)
    print(f"entropy: {h.bits:.12f} bits, {h.nats:.12f} nats ({h.iterations} iterations)")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pattern", default=Config.pattern)
    ap.add_argument("--domain", default=Config.domain)
    ap.add_argument("--max-n", type=int, default=Config.max_n)
    run(Config(**vars(ap.parse_args())))
