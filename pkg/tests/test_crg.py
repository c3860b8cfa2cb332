import logging

import pytest
from hypothesis import given

from canonical_ramsey import crg
from canonical_ramsey.constructions import lexical_coloring

from conftest import colorings


def test_exact_layout():
    text = crg.dumps(lexical_coloring(3), ["provenance manual"])
    assert text == "crg 1\nn 3\n# provenance manual\n1 2 0\n1 3 0\n2 3 1\n"


@given(colorings(min_n=1))
def test_roundtrip(chi):
    back, comments = crg.loads(crg.dumps(chi, ["a", "b"]))
    assert back == chi and comments == ["a", "b"]


def test_renormalizes_with_warning(caplog):
    with caplog.at_level(logging.WARNING):
        chi, _ = crg.loads("crg 1\nn 3\n1 2 4\n1 3 4\n2 3 0\n")
    assert chi.colors == (0, 0, 1)
    assert "not normalized" in caplog.text


@pytest.mark.parametrize(
    "text, msg",
    [
        ("crg 2\nn 2\n1 2 0\n", "header"),
        ("crg 1\n", "missing 'n"),
        ("crg 1\nn x\n", "expected 'n <N>'"),
        ("crg 1\nn 3\n1 2 0\n2 3 0\n1 3 0\n", "colex order"),
        ("crg 1\nn 3\n1 2 0\n1 3 0\n", "expected 3 edge lines"),
        ("crg 1\nn 2\n1 2 red\n", "expected '<u> <v> <color>'"),
        ("crg 1\nn 2\n1 2 -1\n", "negative color"),
    ],
)
def test_rejects_malformed(text, msg):
    with pytest.raises(crg.CrgFormatError, match=msg):
        crg.loads(text)


def test_file_io(tmp_path):
    chi = lexical_coloring(5)
    crg.write(tmp_path / "l5.crg", chi, ["x"])
    assert crg.read(tmp_path / "l5.crg") == (chi, ["x"])
