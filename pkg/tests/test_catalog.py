from fractions import Fraction

import pytest

from orbitlab.errors import ParseError, WrongLabel
from orbitlab.realform import (builtin_catalog, cayley_transform, classify_root, frame_properties,
                               get_group, inverse_cayley, load_catalog, real_weyl_group)
from orbitlab.realform.catalog import builtin_names, builtin_source

MINIMAL = """version = 1
[group]
name = toy
factors = A1
connected = true
[frame]
name = compact
sigma = -1
labels = N
kernel_lattice = 1
[frame]
name = split
sigma = +1
labels = R
"""


def test_builtin_names_all_load():
    cat = builtin_catalog()
    assert set(cat) == set(builtin_names())


@pytest.mark.parametrize("name,labels", [
    ("su2", {"compact": "C"}),
    ("sl2R", {"compact": "N", "split": "R"}),
    ("sp4R", {"F0": "CNNN", "F3": "RRRR"}),
    ("sl2Rsq_swap", {"cc": "NN", "cs": "NR", "ss": "RR"}),
])
def test_frame_labels(name, labels):
    g = get_group(name)
    for fname, labs in labels.items():
        f = g.frame(fname)
        assert "".join(f.labels[:g.datum.npos]) == labs


def test_sl2_vs_psl2_kernel_lattice():
    assert get_group("sl2R").frame("compact").kernel_lattice == ((Fraction(1),),)
    assert get_group("psl2R").frame("compact").kernel_lattice == ((Fraction(1, 2),),)


def test_fundamental_and_split_frames():
    g = get_group("sp4R")
    assert g.fundamental_frame.name == "F0"
    assert g.split_frame.name == "F3"
    assert frame_properties(g.frame("F3"))["no_imaginary"]


@pytest.mark.parametrize("group,frame,full,connected", [
    ("sl2R", "compact", 1, 1),
    ("sl2R", "split", 2, 2),
    ("gl2R", "compact", 2, 1),
    ("su2xsu2_swap", "compact", 8, 4),
    ("sl2Rsq_swap", "cc", 2, 1),
    ("sp4R", "F0", 2, 2),
    ("sp4R", "F3", 8, 8),
])
def test_real_weyl_group_orders(group, frame, full, connected):
    g = get_group(group)
    f = g.frame(frame)
    assert len(real_weyl_group(f, g)) == full
    assert len(real_weyl_group(f, g, connected_only=True)) == connected


def test_cayley_roundtrip_sl2():
    f = get_group("sl2R").frame("compact")
    c = cayley_transform(f, 0)
    assert c.matched.name == "split"
    assert inverse_cayley(c, 0).matched.name == "compact"


def test_cayley_in_sp4():
    f = get_group("sp4R").frame("F0")
    with pytest.raises(WrongLabel):
        cayley_transform(f, 0)
    assert cayley_transform(f, 1).matched.name == "F1"
    assert cayley_transform(f, 2).matched.name == "F2"


def test_classify_root_by_vector():
    f = get_group("sp4R").frame("F0")
    rd = f.datum
    assert classify_root(f, rd.roots[0]) == "C"


def test_minimal_document_parses():
    (g,) = load_catalog(MINIMAL)
    assert g.name == "toy" and g.connected


@pytest.mark.parametrize("patch", [
    ("labels = N", "labels = N\ncolour = red"),
    ("version = 1", "version = 2"),
    ("[frame]", "[frames]"),
    ("labels = N", "labels = Q"),
    ("kernel_lattice = 1", "kernel_lattice = 1/0"),
])
def test_malformed_documents_are_rejected(patch):
    assert patch[0] in MINIMAL
    with pytest.raises(ParseError):
        load_catalog(MINIMAL.replace(*patch))


def test_builtin_source_is_versioned():
    assert "version = 1" in builtin_source()
