import os
import stat

import pytest
from hypothesis import given, settings, strategies as st

from gdcodes import catalog, formats
from gdcodes.bounds import COMP21
from gdcodes.core import Codeword, Composition, VerificationError, make_code
from gdcodes.designs import SearchBudget, hill_climb_gdd
from gdcodes.formats import FormatError


def reemit(entry):
    text = entry.text()
    comments = formats._comments(text)
    if entry.kind == "Code":
        return formats.emit_code(formats.parse_code(text), comments)
    if entry.kind == "BaseCodewordSet":
        return formats.emit_bases(formats.parse_bases(text), comments)
    d, partial = formats.parse_design(text)
    return formats.emit_design(d, comments, partial)


@pytest.mark.parametrize("entry", catalog.entries(), ids=lambda e: f"{e.kind}:{e.id}")
def test_catalog_round_trip_is_byte_identical(entry):
    assert reemit(entry) == entry.text()


def test_table_code_round_trip():
    c = catalog.code(35, 4, COMP21)
    again = formats.parse_code(formats.emit_code(c))
    assert again.words == c.words and len(again) == 291


def test_emit_is_order_independent():
    c = catalog.code(11, 4, COMP21)
    shuffled = make_code(c.n, c.comp, list(reversed(c.words)), c.d_claimed)
    assert formats.emit_code(shuffled) == formats.emit_code(c)


def test_gdc_round_trip():
    g = catalog.gdc("3^5", 4, COMP21)
    text = formats.emit_code(g)
    assert "group" in text
    back = formats.parse_code(text)
    assert back.type == g.type and back.code.words == g.code.words


def test_parse_error_has_line_number():
    text = "CCC 1\n3 5 4 2 1\n0:1 1:1 2:2\n0:1 x:1 3:2\n"
    with pytest.raises(FormatError) as err:
        formats.parse_code(text)
    assert err.value.line == 4


def test_bad_magic():
    with pytest.raises(FormatError):
        formats.parse_code("CCC 2\n3 5 4 2 1\n")


def test_code_file_with_close_words_fails_verification():
    text = "CCC 1\n4 5 4 1 1 1\n0:1 1:2 2:3\n0:1 1:2 3:3\n"
    with pytest.raises(VerificationError):
        formats.parse_code(text)
    assert len(formats.parse_code(text, verify=False)) == 2


def test_repeated_block_reports_the_pair():
    text = "GDD 1\npoints 4\nK 3\ngroup 0\ngroup 1\ngroup 2\ngroup 3\nblock 0 1 2\nblock 0 1 3\n"
    with pytest.raises(VerificationError) as err:
        formats.parse_design(text)
    assert "(0, 1)" in str(err.value)


def test_hill_climbed_design_file_round_trip(tmp_path):
    pre = catalog.lookup("Prestructure", "5^3 6^1").payload
    d = hill_climb_gdd(None, (3, 4), pre.blocks, SearchBudget(seed=0), partition=pre.partition)
    path = tmp_path / "d.gdd"
    formats.write_design(path, d, ["hill climbed"])
    back = formats.read_design(path)
    assert back.blocks == d.blocks and back.partition == d.partition


def test_partial_design_needs_flag():
    pre = catalog.lookup("Prestructure", "5^3 6^1")
    text = pre.text().replace("partial\n", "")
    with pytest.raises(VerificationError):
        formats.parse_design(text)


def test_write_is_atomic_and_readable(tmp_path):
    c = catalog.code(7, 4, COMP21)
    path = tmp_path / "sub" / "c.ccc"
    formats.write_code(path, c, ["seven"])
    assert formats.read_code(path).words == c.words
    assert not [p for p in path.parent.iterdir() if p.name.startswith(".")]
    umask = os.umask(0)
    os.umask(umask)
    assert stat.S_IMODE(path.stat().st_mode) == 0o666 & ~umask


def test_bases_round_trip():
    e = catalog.lookup("BaseCodewordSet", 65, 4, Composition((1, 1, 1)))
    b = formats.parse_bases(e.text())
    assert len(b.bases) == 32
    assert formats.parse_bases(formats.emit_bases(b)) == b


def test_library_path_splits(monkeypatch, tmp_path):
    monkeypatch.setenv(formats.LIBRARY_ENV, os.pathsep.join([str(tmp_path), "", str(tmp_path / "x")]))
    assert formats.library_path() == [tmp_path, tmp_path / "x"]


def test_library_skips_bad_files(monkeypatch, tmp_path):
    (tmp_path / "junk").write_text("GDD 1\npoints 3\nK 3\nblock 0 1\n")
    catalog.seed_design_library(tmp_path)
    monkeypatch.setenv(formats.LIBRARY_ENV, str(tmp_path))
    types = sorted(str(d.type) for d in formats.library_designs())
    assert "17^5" in types and len(types) == 5


@st.composite
def small_codes(draw):
    # distance 1 only asks for distinct words, so any set will do
    n = draw(st.integers(4, 9))
    comp = draw(st.sampled_from([Composition((1, 1, 1)), COMP21, Composition((3,))]))
    tuples = draw(st.lists(st.permutations(range(n)), max_size=6))
    words = {Codeword.from_tuple(n, t[:3], comp) for t in tuples}
    return make_code(n, comp, words, 1)


@settings(max_examples=60)
@given(small_codes())
def test_code_round_trip_property(c):
    text = formats.emit_code(c, ["x"])
    back = formats.parse_code(text)
    assert back == c
    assert formats.emit_code(back, ["x"]) == text
