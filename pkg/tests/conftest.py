from pathlib import Path

import pytest

from strucres.program import parse_program

PROGRAMS_DIR = Path(__file__).resolve().parent.parent / "programs"


def load(name: str):
    program, signature = parse_program((PROGRAMS_DIR / name).read_text())
    return program


@pytest.fixture(scope="session")
def programs_dir():
    return PROGRAMS_DIR


@pytest.fixture(scope="session")
def p_nat():
    return load("nat.pl")


@pytest.fixture(scope="session")
def p_from():
    return load("from.pl")


@pytest.fixture(scope="session")
def p_bad():
    return load("bad.pl")


@pytest.fixture(scope="session")
def p_conn():
    return load("conn.pl")
