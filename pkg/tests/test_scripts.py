import importlib.util
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parents[1] / "scripts"


def load(name):
    spec = importlib.util.spec_from_file_location(name, SCRIPTS / f"{name}.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def test_reproduce_table1(tmp_path, capsys):
    mod = load("reproduce_table1")
    mod.run(mod.Config(out=tmp_path))
    fixtures = Path(__file__).parent / "fixtures" / "table1"
    for f in fixtures.iterdir():
        assert (tmp_path / f.name).read_text() == f.read_text()


def test_census(capsys):
    mod = load("seven_cell_census")
    tally = mod.run(mod.Config(radius=1))
    assert sum(n for (_, ok), n in tally.items() if ok) == 4


def test_random_agreement_is_seeded(capsys):
    mod = load("random_agreement")
    cfg = mod.Config(samples=20, radius=2, max_size=4, seed=7)
    assert mod.run(cfg) == mod.run(cfg)


def test_order_and_golden_mean(capsys):
    load("order_families").run(load("order_families").Config(n=3))
    load("golden_mean").run(load("golden_mean").Config(max_n=5))
    out = capsys.readouterr().out
    assert "n1 -> n2" in out and "5\t13" in out
