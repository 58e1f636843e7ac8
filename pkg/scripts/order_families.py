"""Build the chain and antichain families and print their Hasse diagrams as DOT."""
import argparse
from dataclasses import dataclass

from idemca.order import antichain_family, chain_family, hasse


@dataclass
class Config:
    n: int = 5


def run(cfg: Config) -> None:
    chain = chain_family(1, cfg.n)
    anti = antichain_family(list(range(1, cfg.n + 1)))
    for name, family in (("chain", chain), ("antichain", anti)):
        poset = hasse(family)
        print(f"// {name}: {len(family)} idempotents, {len(poset.edges)} covering pairs")
        print(poset.to_dot(name), end="")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=Config.n)
    run(Config(**vars(ap.parse_args())))
