from dataclasses import replace

import pytest

from modcheck import corpus_path, parse_cd, parse_mod

MS1 = ["mod1.1", "mod1.2", "mod1.3", "mod1.4", "mod1.5"]
MS2 = ["mod2.1", "mod2.2", "mod2.3", "mod2.4"]
MS3 = ["mod3.1", "mod3.2", "mod3.3"]


def load_cd(name):
    return parse_cd(corpus_path(f"{name}.cd").read_text(), f"{name}.cd")


def load_mod(folder, name):
    (mod,) = parse_mod(corpus_path(folder, f"{name}.od").read_text(), f"{name}.od")
    return mod


def partial(mod):
    return replace(mod, is_partial=True)


@pytest.fixture(scope="session")
def cds():
    return {n: load_cd(n) for n in ("cd1", "cd2", "cd3", "cda")}


@pytest.fixture(scope="session")
def ms1():
    return [load_mod("ms1", n) for n in MS1]


@pytest.fixture(scope="session")
def ms2():
    return [load_mod("ms2", n) for n in MS2]


@pytest.fixture(scope="session")
def ms3():
    return [load_mod("ms3", n) for n in MS3]


@pytest.fixture(scope="session")
def ni():
    return load_mod("msa", "ni")


# acceptance criteria report --------------------------------------------------

CRITERIA = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, title = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}")
