import pytest
from hypothesis import given, strategies as st

from freecurves.errors import DataError, FamilyNotFound
from freecurves.familydb import (blowup_invariants, data_dir, list_families, load_family,
                                 parse_family, serialize, validate)
from freecurves.templates import TEMPLATE_FAMILIES, render_template, template_family

IDS = list_families()

MINIMAL = """\
[meta]
schema = 1
id = 9.1
name = test family
kx3 = 30
tau = l

[bases]
curve = l, e
divisor = H, E

[pairing]
1, 0
0, -1

[anticanonical]
3H - E

[effective]
E
H - E

[mori]
e
l - e

[core]
l
l - e

[separating]
2

[census]
interior_conic = l - e
"""


def test_shipped_families():
    assert len(IDS) == 78
    assert IDS[:3] == ["2.1", "2.2", "2.3"]
    assert IDS == sorted(IDS, key=lambda s: tuple(map(int, s.split("."))))


@pytest.mark.parametrize("fid", IDS)
def test_round_trip_bit_exact(fid):
    text = (data_dir() / f"{fid}.fam").read_text(encoding="utf-8")
    rec = load_family(fid)
    assert serialize(rec) == text
    assert serialize(parse_family(serialize(rec))) == text


@pytest.mark.parametrize("fid", sorted(TEMPLATE_FAMILIES))
def test_template_files_match_renderer(fid):
    assert (data_dir() / f"{fid}.fam").read_text(encoding="utf-8") == render_template(fid)
    rec = template_family(fid)
    assert rec.kx3 == TEMPLATE_FAMILIES[fid][3]


def test_reduction_targets_load():
    for fid in IDS:
        rec = load_family(fid)
        while rec.is_reduction:
            target = load_family(rec.reduces_to)
            assert int(target.id.split(".")[0]) == int(rec.id.split(".")[0]) + 1
            rec = target
        assert rec.core


def test_authoring_form_parses():
    rec = parse_family(MINIMAL)
    assert rec.rank == 2 and rec.kx3 == 30
    assert [rec.degree(c) for c in rec.core] == [3, 2]
    assert rec.separating == (1,)
    assert parse_family(serialize(rec)) == rec


def test_degenerate_pairing_is_a_data_error():
    text = MINIMAL.replace("1, 0\n0, -1", "1, 0\n2, 0")
    with pytest.raises(DataError):
        parse_family(text)


@pytest.mark.parametrize("old,new,field", [
    ("[core]\nl\nl - e", "[core]\nl\nl - e\nl", "core"),
    ("[core]\nl\nl - e", "[core]\nl\n3l - e", "core"),
    ("[separating]\n2", "[separating]\n5", "separating"),
    ("schema = 1", "schema = 7", "schema"),
    ("[mori]", "[bogus]", "bogus"),
    ("3H - E", "3H - F", "anticanonical"),
])
def test_malformed_files(old, new, field):
    with pytest.raises(DataError) as info:
        validate(parse_family(MINIMAL.replace(old, new)))
    assert field in str(info.value) or info.value.path


def test_bad_relation_rejected():
    text = MINIMAL + "\n[relations]\n1 = 2\n"
    with pytest.raises(DataError):
        validate(parse_family(text))


def test_unknown_family():
    with pytest.raises(FamilyNotFound):
        load_family("9.99")


def test_data_dir_override(tmp_path, monkeypatch):
    (tmp_path / "9.1.fam").write_text(MINIMAL, encoding="utf-8")
    monkeypatch.setenv("FREECURVES_DATA", str(tmp_path))
    assert list_families() == ["9.1"]
    assert load_family("9.1").name == "test family"


def test_id_must_match_file_name(tmp_path):
    (tmp_path / "9.2.fam").write_text(MINIMAL, encoding="utf-8")
    with pytest.raises(DataError):
        load_family("9.2", tmp_path)


def test_blowup_invariants():
    assert blowup_invariants(48, 0, 5, 0) == (36, 0)
    assert blowup_invariants(64, 0, 4, 0) == (54, 0)       # line in P3 -> 2.33
    assert blowup_invariants(64, 0, 12, 1) == (40, 2)      # plane cubic in P3 -> 2.28
    with pytest.raises(ValueError):
        blowup_invariants(64, 0, -1, 0)


# Y of index r with H^3 = d; conic-type centres as (H-degree, genus)
_BASE = {"2.1": (2, 1), "2.3": (2, 2), "2.4": (4, 1), "2.5": (2, 3), "2.7": (3, 2),
         "2.10": (2, 4), "2.14": (2, 5), "2.9": (4, 1), "2.11": (2, 3), "2.13": (3, 2),
         "2.16": (2, 4), "2.20": (2, 5)}
_CONIC_CENTRES = {"2.9": (7, 5), "2.11": (1, 0), "2.13": (6, 2), "2.16": (2, 0), "2.20": (3, 0)}


@pytest.mark.parametrize("fid", sorted(TEMPLATE_FAMILIES))
def test_template_kx3_by_blowup(fid):
    kind, r, _, kx3 = TEMPLATE_FAMILIES[fid]
    r0, d = _BASE[fid]
    assert r0 == r
    if kind == "del_pezzo":
        # base curve of a pencil in |(r-1)H|: degree (r-1)^2 d, 2g - 2 = (r-2)(r-1)^2 d
        hdeg = (r - 1) ** 2 * d
        genus = (r - 2) * hdeg // 2 + 1
    else:
        hdeg, genus = _CONIC_CENTRES[fid]
    assert blowup_invariants(r ** 3 * d, 0, r * hdeg, genus)[0] == kx3
    assert template_family(fid).kx3 == kx3


@given(st.lists(st.tuples(st.integers(1, 3), st.integers(0, 2)), min_size=1, max_size=4,
                unique=True))
def test_round_trip_random_cores(pts):
    # l - e classes with degree in the window for -K = 3H - E: degree = 3a - b
    pts = [p for p in pts if 2 <= 3 * p[0] - p[1] <= 4]
    if not pts:
        return
    core = "\n".join(f"{a}, {-b}" for a, b in pts)
    text = MINIMAL.replace("[core]\nl\nl - e", "[core]\n" + core).replace(
        "[separating]\n2\n\n", "")
    rec = parse_family(text)
    assert parse_family(serialize(rec)) == rec
    assert serialize(parse_family(serialize(rec))) == serialize(rec)
