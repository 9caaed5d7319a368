import pathlib

import pytest

from posbp.sequents import check_proof, unsound_line

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def read_fixture(name: str) -> str:
    return (FIXTURES / name).read_text()


def vet(proof, sound=True, cap=16):
    """Assert a proof checks and (optionally) that every line is valid."""
    r = check_proof(proof)
    assert r.ok, str(r)
    if sound:
        bad = unsound_line(proof, cap=cap)
        assert bad is None, f"line {bad[0] if bad else '?'} refuted: {bad}"
    return proof


@pytest.fixture
def fixtures_dir():
    return FIXTURES
