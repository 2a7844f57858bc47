import numpy as np
import pytest

from algebra.errors import ConfigError, ParseError
from utils.config import FIXTURES_DIR, RunConfig, load_config
from utils.fixtures import find_fixture, kind_of, load_algebra, load_module, parse_complex, parse_module

ENV = ("WORKBENCH_FIELD", "WORKBENCH_BOUND", "WORKBENCH_CATALOG_BOUND", "WORKBENCH_MAX_CANDIDATES",
       "WORKBENCH_SEED", "WORKBENCH_FORMAT", "WORKBENCH_FIXTURES_DIR", "WORKBENCH_LOG_LEVEL")


@pytest.fixture
def clean_env(monkeypatch):
    for name in ENV:
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


def test_config_defaults(clean_env):
    config = load_config()
    assert config == RunConfig()
    assert config.field is None
    assert config.fixtures_dir == FIXTURES_DIR


def test_config_env_and_overrides(clean_env):
    clean_env.setenv("WORKBENCH_BOUND", "5")
    clean_env.setenv("WORKBENCH_FORMAT", "json")
    config = load_config(bound=None, seed=7, field=3)
    assert config.bound == 5
    assert config.format == "json"
    assert config.seed == 7
    assert config.field == 3


def test_config_rejects_bad_values(clean_env):
    with pytest.raises(ConfigError):
        load_config(field=4)
    with pytest.raises(ConfigError):
        load_config(format="xml")
    with pytest.raises(ConfigError):
        load_config(bound=0)
    clean_env.setenv("WORKBENCH_SEED", "many")
    with pytest.raises(ConfigError):
        load_config()


def test_find_fixture():
    assert find_fixture("ALG-A3").endswith("ALG-A3.alg")
    assert kind_of("ALG-A3") == "algebra"
    assert kind_of("T-41") == "module"
    assert kind_of("P-43") == "complex"
    with pytest.raises(ConfigError):
        find_fixture("NO-SUCH-FILE")


def test_algebra_loaded_once_per_field():
    assert load_algebra("ALG-A3") is load_algebra("ALG-A3")
    assert load_algebra("ALG-A3", p=3) is not load_algebra("ALG-A3")
    assert load_algebra("ALG-A3", p=3).p == 3
    assert load_algebra("ALG-A3").name == "ALG-A3"


def test_module_fixture(t41):
    assert t41.dim_vector == (3, 1, 1, 3)
    assert t41.name == "T-41"
    assert load_module("T-41").algebra is load_algebra("ALG-HER4")


def test_module_errors(her4):
    with pytest.raises(ParseError) as err:
        parse_module("module X over ALG-HER4\ndims 1:1 2:1\nmap z = [[1]]", her4)
    assert err.value.line == 3
    with pytest.raises(ParseError):
        parse_module("module X over ALG-HER4\ndims 1:1 2:1\nmap b = [[1, 0]]", her4)
    with pytest.raises(ParseError):
        parse_module("module X over ALG-HER4\nmap b = [[1]]", her4)


def test_module_violating_relation():
    at3 = load_algebra("ALG-AT3")
    with pytest.raises(ParseError):
        parse_module("module X over ALG-AT3\ndims 1:1 2:1 3:1\nmap a = [[1]]\nmap b = [[1]]", at3)
    ok = parse_module("module X over ALG-AT3\ndims 2:1 3:1\nmap a = [[1]]", at3)
    assert ok.dim == 2


def test_complex_entry_direction(her4):
    text = "complex X over ALG-HER4\ndeg -1: P(4)\ndeg 0: P(3)\nd = [[c]]"
    with pytest.raises(ParseError) as err:
        parse_complex(text, her4)
    assert err.value.line == 4


def test_complex_missing_differential(her4):
    with pytest.raises(ParseError):
        parse_complex("complex X over ALG-HER4\ndeg -1: P(3)\ndeg 0: P(4)", her4)
    with pytest.raises(ParseError):
        parse_complex("complex X over ALG-HER4\ndeg -1: P(7)\ndeg 0: P(4)\nd = [[c]]", her4)


def test_idempotent_and_sum_entries(a3):
    cx = parse_complex("complex X over ALG-A3\ndeg -1: P(2)\ndeg 0: P(2)\nd = [[e(2)]]", a3)
    assert np.array_equal(cx.entries[0, 0], a3.idempotent("2"))
    cx = parse_complex("complex Y over ALG-A3\ndeg -1: P(1)\ndeg 0: P(3)\nd = [[a*b]]", a3)
    assert cx.h0().dim_vector == (0, 1, 1)


def test_describe_reads_back(p42, gen4):
    again = parse_complex(p42.describe(), gen4)
    assert again.label() == p42.label()
    assert again.deg_m1 == p42.deg_m1 and again.deg_0 == p42.deg_0
    assert np.array_equal(again.entries, p42.entries)
    assert len(again.parts) == 4
