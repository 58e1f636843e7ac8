"""Sample random patterns over larger windows and alphabets; check that all deciders agree."""
import argparse
import random
from dataclasses import dataclass

from idemca.group import GroupSubset, Z
from idemca.idempotency import classify, is_idempotent_by_composition, witness_search
from idemca.pattern import Pattern
from idemca.rule import PatternCA


@dataclass
class Config:
    samples: int = 200
    radius: int = 3
    max_size: int = 5
    alphabet: int = 3
    seed: int = 0


def sample(rng: random.Random, cfg: Config) -> PatternCA:
    others = [x for x in range(-cfg.radius, cfg.radius + 1) if x != 0]
    extra = rng.sample(others, rng.randint(1, cfg.max_size - 1))
    domain = GroupSubset.canonical(Z, (0, *extra))
    values = tuple(rng.randrange(cfg.alphabet) for _ in domain)
    p = Pattern(domain, values, cfg.alphabet)
    write = rng.choice([a for a in range(cfg.alphabet) if a != p.at_identity])
    return PatternCA(p, write)


def run(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    idem = 0
    for _ in range(cfg.samples):
        t = sample(rng, cfg)
        a = is_idempotent_by_composition(t.rule)
        w = witness_search(t)
        v = classify(t)
        if not a == (w is None) == v.idempotent:
            raise SystemExit(f"disagreement on {t}")
        if w is not None and not (w.satisfies_equation(t) and w.satisfies_consequences(t)):
            raise SystemExit(f"invalid witness for {t}")
        idem += a
    print(f"seed {cfg.seed}: {cfg.samples} samples, {idem} idempotent, all deciders agree")
    return idem


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    run(Config(**vars(ap.parse_args())))
