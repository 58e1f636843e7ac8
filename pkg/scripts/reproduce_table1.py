"""Write the six reference table rows as TSV files and report the counts."""
import argparse
from dataclasses import dataclass
from pathlib import Path

from idemca.cli import table_tsv
from idemca.group import GroupSubset, Z

DOMAINS = {
    "m1_1": (-1, 0, 1),
    "0_2": (0, 1, 2),
    "m1_2": (-1, 0, 1, 2),
    "0_3": (0, 1, 2, 3),
    "m2_2": (-2, -1, 0, 1, 2),
    "m1_3": (-1, 0, 1, 2, 3),
}


@dataclass
class Config:
    out: Path = Path("table1_out")
    threads: int = 1


def run(cfg: Config) -> None:
    cfg.out.mkdir(parents=True, exist_ok=True)
    for name, domain in DOMAINS.items():
        tsv = table_tsv(GroupSubset(Z, domain), threads=cfg.threads)
        (cfg.out / f"{name}.tsv").write_text(tsv)
        print(f"{name:5s} {tsv.splitlines()[-1]}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Config.out)
    ap.add_argument("--threads", type=int, default=Config.threads)
    run(Config(**vars(ap.parse_args())))
