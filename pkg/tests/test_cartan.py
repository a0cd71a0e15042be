"""Tests for Cartan classes, real Weyl groups, and the Cartan ordering."""

from __future__ import annotations

import pytest

from realred.cartan import (
    CartanClass,
    cartan_classes,
    cartan_hasse,
    format_cartan_block,
    format_cartan_report,
    format_real_weyl,
    real_weyl,
    system_type,
    weyl_order,
)
from realred.involution import inner_class
from realred.rootdata import (
    Root,
    adjoint_generators,
    build_root_datum,
    center_structure,
    parse_kernel_generator,
    parse_lie_type,
)


def context(text, letters, kernel=None):
    lt = parse_lie_type(text)
    if kernel is None:
        gens = ()
    elif kernel == "ad":
        gens = tuple(adjoint_generators(center_structure(lt)))
    else:
        cs = center_structure(lt)
        gens = tuple(parse_kernel_generator(line, cs) for line in kernel.split(";"))
    rd = build_root_datum(lt, gens)
    return inner_class(letters, rd, lt)


def quasisplit(ic):
    return len(ic.real_forms) - 1


def decompositions(ic):
    out = {}
    for cc in cartan_classes(ic, quasisplit(ic)):
        d = cc.decomposition
        out[cc.index] = (d.split, d.compact, d.complex_pairs)
    return out


# -- type recognition ------------------------------------------------------


def test_system_type_of_whole_systems():
    for text, expect in [
        ("A1", "A1"),
        ("A1.A1", "A1.A1"),
        ("A3", "A3"),
        ("B3", "B3"),
        ("C3", "C3"),
        ("D4", "D4"),
        ("G2", "G2"),
        ("F4", "F4"),
        ("E6", "E6"),
    ]:
        rd = build_root_datum(parse_lie_type(text), ())
        assert system_type(rd.positive_roots) == expect


def test_system_type_rank_two_double_bond_is_b2():
    rd = build_root_datum(parse_lie_type("C2"), ())
    assert system_type(rd.positive_roots) == "B2"


def test_system_type_orthogonal_pair_is_a1_a1():
    # shape of the rank-two even orthogonal system
    d2 = [
        Root((1, -1), (1, -1), (1, 0)),
        Root((1, 1), (1, 1), (0, 1)),
    ]
    assert system_type(d2) == "A1.A1"


def test_system_type_empty():
    assert system_type([]) == ""


def test_weyl_order():
    assert weyl_order("") == 1
    assert weyl_order("A1") == 2
    assert weyl_order("A2.B3") == 6 * 48
    assert weyl_order("C4") == 384
    assert weyl_order("D4") == 192
    assert weyl_order("E6") == 51840
    assert weyl_order("G2.F4") == 12 * 1152


# -- Cartan class reports --------------------------------------------------


def test_cartan_report_sl2r():
    ic = context("A1", "s")
    assert format_cartan_report(ic, 1) == [
        "Cartan #0:",
        "split: 0; compact: 1; complex: 0",
        "canonical twisted involution:",
        "twisted involution orbit size: 1;  fiber rank: 1;  #X_r: 2",
        "imaginary root system: A1",
        "real root system is empty",
        "complex factor is empty",
        "real form #1: [0] (1)",
        "real form #0: [1] (1)",
        "",
        "Cartan #1:",
        "split: 1; compact: 0; complex: 0",
        "canonical twisted involution: 1",
        "twisted involution orbit size: 1;  fiber rank: 0;  #X_r: 1",
        "imaginary root system is empty",
        "real root system: A1",
        "complex factor is empty",
        "real form #1: [0] (1)",
    ]


def test_cartan_report_su2():
    ic = context("A1", "s")
    assert format_cartan_report(ic, 0) == [
        "Cartan #0:",
        "split: 0; compact: 1; complex: 0",
        "canonical twisted involution:",
        "twisted involution orbit size: 1;  fiber rank: 1;  #X_r: 2",
        "imaginary root system: A1",
        "real root system is empty",
        "complex factor is empty",
        "real form #1: [0] (1)",
        "real form #0: [1] (1)",
    ]


def test_cartan_report_sl2c():
    ic = context("A1.A1", "C")
    assert format_cartan_report(ic, 0) == [
        "Cartan #0:",
        "split: 0; compact: 0; complex: 1",
        "canonical twisted involution:",
        "twisted involution orbit size: 2;  fiber rank: 0;  #X_r: 2",
        "imaginary root system is empty",
        "real root system is empty",
        "complex factor: A1",
        "real form #0: [0] (1)",
    ]


def test_cartan_report_sp4r():
    ic = context("C2", "s")
    assert format_cartan_report(ic, 2) == [
        "Cartan #0:",
        "split: 0; compact: 2; complex: 0",
        "canonical twisted involution:",
        "twisted involution orbit size: 1;  fiber rank: 2;  #X_r: 4",
        "imaginary root system: B2",
        "real root system is empty",
        "complex factor is empty",
        "real form #2: [0,1] (2)",
        "real form #1: [2] (1)",
        "real form #0: [3] (1)",
        "",
        "Cartan #1:",
        "split: 0; compact: 0; complex: 1",
        "canonical twisted involution: 2,1,2",
        "twisted involution orbit size: 2;  fiber rank: 0;  #X_r: 2",
        "imaginary root system: A1",
        "real root system: A1",
        "complex factor is empty",
        "real form #2: [0] (1)",
        "real form #1: [1] (1)",
        "",
        "Cartan #2:",
        "split: 1; compact: 1; complex: 0",
        "canonical twisted involution: 1,2,1",
        "twisted involution orbit size: 2;  fiber rank: 1;  #X_r: 4",
        "imaginary root system: A1",
        "real root system: A1",
        "complex factor is empty",
        "real form #2: [0] (1)",
        "",
        "Cartan #3:",
        "split: 2; compact: 0; complex: 0",
        "canonical twisted involution: 1,2,1,2",
        "twisted involution orbit size: 1;  fiber rank: 0;  #X_r: 1",
        "imaginary root system is empty",
        "real root system: B2",
        "complex factor is empty",
        "real form #2: [0] (1)",
    ]


def test_cartan_block_e6_f4():
    ic = context("E6", "s")
    block = format_cartan_block(cartan_classes(ic, 0)[0])
    assert block == [
        "Cartan #0:",
        "split: 0; compact: 2; complex: 2",
        "canonical twisted involution:",
        "twisted involution orbit size: 45;  fiber rank: 2;  #X_r: 180",
        "imaginary root system: D4",
        "real root system is empty",
        "complex factor: A2",
        "real form #1: [0,1,2] (3)",
        "real form #0: [3] (1)",
    ]


def test_cartan_blocks_spin66_middle():
    ic = context("D6", "s")
    blocks = {
        cc.index: format_cartan_block(cc)
        for cc in cartan_classes(ic, 5)
        if cc.index in (4, 5, 6)
    }
    assert blocks[4] == [
        "Cartan #4:",
        "split: 1; compact: 1; complex: 2",
        "canonical twisted involution:"
        " 3,4,5,6,4,3,2,3,4,5,6,4,3,1,2,3,4,5,6,4,3,2,1",
        "twisted involution orbit size: 180;  fiber rank: 1;  #X_r: 360",
        "imaginary root system: A1.A1.A1",
        "real root system: A1.A1.A1",
        "complex factor: A1",
        "real form #5: [0] (1)",
        "real form #4: [1] (1)",
    ]
    # the two mirror classes agree except for the involution and the
    # mirror-image form met in the fiber
    assert blocks[5] == [
        "Cartan #5:",
        "split: 1; compact: 1; complex: 2",
        "canonical twisted involution: 5,4,6,3,4,5,2,3,4,6,1,2,3,4,5",
        "twisted involution orbit size: 60;  fiber rank: 1;  #X_r: 120",
        "imaginary root system: A1.A1.A1",
        "real root system: A1.A1.A1",
        "complex factor: A2",
        "real form #5: [0] (1)",
        "real form #2: [1] (1)",
    ]
    assert blocks[6] == [
        "Cartan #6:",
        "split: 1; compact: 1; complex: 2",
        "canonical twisted involution: 6,4,5,3,4,6,2,3,4,5,1,2,3,4,6",
        "twisted involution orbit size: 60;  fiber rank: 1;  #X_r: 120",
        "imaginary root system: A1.A1.A1",
        "real root system: A1.A1.A1",
        "complex factor: A2",
        "real form #5: [0] (1)",
        "real form #3: [1] (1)",
    ]


def test_cartan_block_spin88_three_pair_class():
    ic = context("D8", "s")
    hits = [
        cc
        for cc in cartan_classes(ic, quasisplit(ic))
        if (cc.decomposition.split, cc.decomposition.compact,
            cc.decomposition.complex_pairs) == (0, 2, 3)
    ]
    assert len(hits) == 1
    cc = hits[0]
    assert cc.orbit_size == 3360
    assert cc.fiber_rank == 2
    assert cc.xr_count == 13440
    assert cc.imaginary_type == "A1.A1.A1.A1.A1"
    assert cc.real_type == "A1.A1.A1"
    assert cc.complex_type == "A2"


# -- class decompositions --------------------------------------------------


@pytest.mark.parametrize(
    "text,letters,kernel",
    [("B3", "s", "ad"), ("C3", "s", None), ("C2", "s", None)],
)
def test_rank_pairs_enumerate_classes(text, letters, kernel):
    # for the odd orthogonal and symplectic families every admissible
    # (split, complex) pair occurs exactly once, on a lattice where the
    # eigenlattices of each involution split off integrally
    ic = context(text, letters, kernel)
    n = ic.rd.semisimple_rank
    expected = {
        (a, n - a - 2 * c, c)
        for a in range(n + 1)
        for c in range((n - a) // 2 + 1)
    }
    found = list(decompositions(ic).values())
    assert len(found) == len(expected)
    assert set(found) == expected


def test_decomposition_depends_on_lattice():
    # on the spin weight lattice two involutions lose an integral
    # eigenvector pair and pick up a complex factor instead; the real
    # rank (split + complex) is unchanged
    sc = sorted(decompositions(context("B3", "s")).values())
    ad = sorted(decompositions(context("B3", "s", "ad")).values())
    assert ad == [
        (0, 1, 1), (0, 3, 0), (1, 0, 1), (1, 2, 0), (2, 1, 0), (3, 0, 0),
    ]
    assert sc == [
        (0, 1, 1), (0, 1, 1), (0, 3, 0), (1, 0, 1), (1, 0, 1), (3, 0, 0),
    ]
    assert sorted(a + c for a, _, c in sc) == sorted(a + c for a, _, c in ad)


def test_decomposition_ranks_add_up():
    for text, letters in [("A3", "c"), ("D6", "s"), ("E6", "s"), ("G2", "s")]:
        ic = context(text, letters)
        for d in decompositions(ic).values():
            assert d[0] + d[1] + 2 * d[2] == ic.rd.semisimple_rank


def test_quasisplit_form_meets_every_cartan_class():
    for text, letters in [
        ("A3", "c"),
        ("C2", "s"),
        ("D6", "s"),
        ("E6", "s"),
        ("B3", "s"),
        ("G2", "s"),
    ]:
        ic = context(text, letters)
        indices = [cc.index for cc in cartan_classes(ic, quasisplit(ic))]
        assert indices == list(range(len(ic.table.classes)))


def test_gl_duality_of_cartan_decompositions():
    # the equal-rank and split unitary-style groups built on the same
    # lattice have dual Cartan inventories: split and compact parts swap
    for n in (2, 3, 4):
        kernel = f"1/{n},1/{n}"
        cc = context(f"A{n - 1}.T1", "cc", kernel)
        ss = context(f"A{n - 1}.T1", "ss", kernel)
        cc_triples = set(decompositions(cc).values())
        ss_triples = set(decompositions(ss).values())
        assert cc_triples == {(0, n - 2 * c, c) for c in range(n // 2 + 1)}
        assert ss_triples == {(n - 2 * c, 0, c) for c in range(n // 2 + 1)}
        assert {(b, a, c) for a, b, c in cc_triples} == ss_triples


def test_group_order_factors_over_every_class():
    # |W| = orbit size x |W_im| x |W_re| x |complex factor| at each class
    for text, letters, kernel in [
        ("A2", "s", None),
        ("C2", "s", None),
        ("C2", "s", "ad"),
        ("A3", "c", None),
        ("A3.A3", "C", None),
        ("D6", "s", None),
        ("D6", "c", "1/2,0/2"),
        ("E6", "s", None),
        ("D5", "c", None),
        ("B3", "s", None),
        ("G2", "s", None),
        ("F4", "s", None),
    ]:
        ic = context(text, letters, kernel)
        full = weyl_order(system_type(ic.rd.positive_roots))
        for cc in cartan_classes(ic, quasisplit(ic)):
            prod = (
                cc.orbit_size
                * weyl_order(cc.imaginary_type)
                * weyl_order(cc.real_type)
                * weyl_order(cc.complex_type)
            )
            assert prod == full


# -- real Weyl groups ------------------------------------------------------


def test_real_weyl_sl2r():
    ic = context("A1", "s")
    assert format_real_weyl(real_weyl(ic, 1, 0)) == [
        "real weyl group is W^C.((A.W_ic) x W^R), where:",
        "W^C is trivial",
        "A is trivial",
        "W_ic is trivial",
        "W^R is trivial",
    ]
    assert format_real_weyl(real_weyl(ic, 1, 1)) == [
        "real weyl group is W^C.((A.W_ic) x W^R), where:",
        "W^C is trivial",
        "A is trivial",
        "W_ic is trivial",
        "W^R is a Weyl group of type A1",
        "",
        "generators for W^R:",
        "1",
    ]


def test_real_weyl_su2_is_full_weyl_group():
    ic = context("A1", "s")
    dec = real_weyl(ic, 0, 0)
    assert dec.compact_type == "A1"
    assert dec.order == 2


def test_real_weyl_pgl2r_compact_cartan():
    ic = context("A1", "s", "ad")
    assert format_real_weyl(real_weyl(ic, 1, 0)) == [
        "real weyl group is W^C.((A.W_ic) x W^R), where:",
        "W^C is trivial",
        "A is an elementary abelian 2-group of rank 1",
        "W_ic is trivial",
        "W^R is trivial",
        "",
        "generators for A:",
        "1",
    ]


def test_real_weyl_e6_f4():
    ic = context("E6", "s")
    dec = real_weyl(ic, 0, 0)
    assert dec.order == 1152
    assert format_real_weyl(dec) == [
        "real weyl group is W^C.((A.W_ic) x W^R), where:",
        "W^C is isomorphic to a Weyl group of type A2",
        "A is trivial",
        "W_ic is a Weyl group of type D4",
        "W^R is trivial",
        "",
        "generators for W^C:",
        "1,6",
        "3,5",
        "",
        "generators for W_ic:",
        "4",
        "2",
        "3,4,5,4,3",
        "1,3,4,5,6,5,4,3,1",
    ]


def test_real_weyl_e6_split_fundamental_cartan():
    ic = context("E6", "s")
    dec = real_weyl(ic, 1, 0)
    assert dec.complex_type == "A2"
    assert dec.a_rank == 2
    assert dec.compact_type == "A1.A1.A1.A1"
    assert dec.real_type == ""
    assert dec.order == 6 * 4 * 16


def test_real_weyl_sl4c():
    ic = context("A3.A3", "C")
    dec = real_weyl(ic, 0, 0)
    assert dec.complex_type == "A3"
    assert dec.a_rank == 0
    assert dec.compact_type == ""
    assert dec.real_type == ""
    assert dec.order == 24
    assert sorted(dec.complex_generators) == [(0, 3), (1, 4), (2, 5)]


def test_real_weyl_spin88_three_pair_class():
    ic = context("D8", "s")
    target = [
        cc.index
        for cc in cartan_classes(ic, quasisplit(ic))
        if (cc.decomposition.split, cc.decomposition.compact,
            cc.decomposition.complex_pairs) == (0, 2, 3)
    ]
    dec = real_weyl(ic, quasisplit(ic), target[0])
    assert dec.complex_type == "A2"
    assert dec.a_rank == 3
    assert dec.compact_type == ""
    assert dec.real_type == "A1.A1.A1"
    assert dec.order == 6 * 8 * 8


def test_real_weyl_compact_form_is_full_weyl_group():
    # at the unique Cartan of the compact form everything is compact
    # imaginary, so the real Weyl group is all of W
    for text, letters in [("C2", "s"), ("A3", "c"), ("G2", "s")]:
        ic = context(text, letters)
        dec = real_weyl(ic, 0, 0)
        assert dec.a_rank == 0
        assert dec.complex_type == "" and dec.real_type == ""
        assert dec.order == weyl_order(system_type(ic.rd.positive_roots))


# -- ordering of Cartan classes --------------------------------------------


def test_hasse_sl2r():
    ic = context("A1", "s")
    h = cartan_hasse(ic, 1)
    assert h.nodes == (0, 1)
    assert h.edges == ((0, 1),)
    assert h.most_split == (0, 1)


def test_hasse_sp4r():
    ic = context("C2", "s")
    h = cartan_hasse(ic, 2)
    assert h.nodes == (0, 1, 2, 3)
    assert h.edges == ((0, 1), (0, 2), (1, 3), (2, 3))
    assert h.most_split == (0, 1, 3)


def real_rank_rows(ic, h):
    dec = decompositions(ic)
    rows = {}
    for node in h.nodes:
        a, _, c = dec[node]
        rows.setdefault(a + c, []).append(node)
    return rows


@pytest.mark.parametrize(
    "text,letters,sizes,flag_rows",
    [
        ("B6", "s", [1, 2, 3, 4, 3, 2, 1], [0, 1, 2, 3, 4, 5, 6]),
        ("C6", "s", [1, 2, 3, 4, 3, 2, 1], [0, 1, 2, 3, 6]),
        ("D6", "s", [1, 1, 2, 3, 2, 1, 1], [0, 2, 3, 3, 4, 6]),
        ("D6", "u", [1, 1, 2, 1, 1], [1, 3, 5]),
    ],
)
def test_hasse_shape_rank_six(text, letters, sizes, flag_rows):
    ic = context(text, letters)
    h = cartan_hasse(ic, quasisplit(ic))
    rows = real_rank_rows(ic, h)
    low = min(rows)
    assert [len(rows[r]) for r in sorted(rows)] == sizes
    assert sorted(rows) == list(range(low, low + len(sizes)))
    dec = decompositions(ic)
    flagged = sorted(dec[n][0] + dec[n][2] for n in h.most_split)
    assert flagged == flag_rows
    # each covering relation increases the real rank by one
    for a, b in h.edges:
        assert (dec[b][0] + dec[b][2]) - (dec[a][0] + dec[a][2]) == 1


def test_hasse_most_split_count_matches_forms():
    # one flagged class per real form, except that forms can share one
    for text, letters, nflags in [
        ("B6", "s", 7),
        ("C6", "s", 5),
        ("D6", "s", 6),
        ("D6", "u", 3),
    ]:
        ic = context(text, letters)
        h = cartan_hasse(ic, quasisplit(ic))
        assert len(h.most_split) == nflags
        assert len(ic.real_forms) == nflags


def test_hasse_of_smaller_form_is_lower_set():
    # each real form's diagram sits inside the quasisplit one
    ic = context("D6", "s")
    full = cartan_hasse(ic, quasisplit(ic))
    for form in range(len(ic.real_forms)):
        h = cartan_hasse(ic, form)
        assert set(h.nodes) <= set(full.nodes)
        assert set(h.edges) <= set(full.edges)
        assert set(h.most_split) <= set(h.nodes)
