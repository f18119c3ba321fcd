"""Group tables, closure, identification, vee groups, factor theorem."""

import random

import pytest

from cliffork.core_algebra import GaussianScalar, SignatureSpec, blade_mask
from cliffork.finite_groups import (
    GroupTable,
    direct_product,
    generate_group_from_blades,
    generate_group_from_matrices,
    group_center_type,
    identify_small_group,
    vee_factor_check,
    vee_group,
    _catalog,
    _cyclic,
    _two_generator,
)
from cliffork.spinor_repr import MAT_A, MAT_B, MAT_J, SpinMatrix


# ---------------------------------------------------------------------------
# basic table machinery


def test_cyclic_tables():
    z4 = _cyclic(4)
    z4.validate()
    assert z4.order_structure() == {1: 1, 2: 1, 4: 2}
    assert z4.is_abelian()
    assert z4.inverse(1) == 3
    assert z4.element_order(1) == 4


def test_direct_product():
    t = direct_product(_cyclic(2), _cyclic(2))
    t.validate()
    assert t.order == 4
    assert t.order_structure() == {1: 1, 2: 3}


def test_two_generator_presentations():
    d4 = _two_generator(4, -1, 0)
    q4 = _two_generator(4, -1, 2)
    assert d4.order_structure() == {1: 1, 2: 5, 4: 2}
    assert q4.order_structure() == {1: 1, 2: 1, 4: 6}
    assert not d4.is_abelian() and not q4.is_abelian()
    assert len(q4.center()) == 2


def test_order16_presentation_fingerprints():
    cat = _catalog()
    assert cat["D8"].order_structure() == {1: 1, 2: 9, 4: 2, 8: 4}
    assert cat["Q16"].order_structure() == {1: 1, 2: 1, 4: 10, 8: 4}
    assert cat["SD16"].order_structure() == {1: 1, 2: 5, 4: 6, 8: 4}
    assert cat["M16"].order_structure() == {1: 1, 2: 3, 4: 4, 8: 8}
    assert len(cat["M16"].center()) == 4
    assert len(cat["D8"].center()) == 2
    pauli = cat["D4oZ4"]
    assert pauli.order == 16
    assert not pauli.is_abelian()
    assert pauli.order_structure() == {1: 1, 2: 7, 4: 8}
    assert len(pauli.center()) == 4


def test_quotient_rejects_non_normal_subgroup():
    d4 = _two_generator(4, -1, 0)
    # {e, b} is not normal in D4
    b_idx = d4.elements.index("a0b")
    with pytest.raises(ValueError):
        d4.quotient_by([d4.neutral, b_idx])


def test_quotient_of_center():
    q4 = _two_generator(4, -1, 2)
    quo = q4.quotient_by(q4.center())
    assert quo.order == 4
    assert quo.order_structure() == {1: 1, 2: 3}


# ---------------------------------------------------------------------------
# closure generation


def test_generate_from_blades_examples():
    s10 = SignatureSpec(1, 0)
    t = generate_group_from_blades(s10, [(0, -1), (blade_mask([1]), 1)])
    assert t.order == 4
    assert identify_small_group(t) == "Z2xZ2"

    s01 = SignatureSpec(0, 1)
    t2 = generate_group_from_blades(s01, [(0, -1), (blade_mask([1]), 1)])
    assert identify_small_group(t2) == "Z4"

    trivial = generate_group_from_blades(s10, [(0, 1)])
    assert trivial.order == 1
    assert identify_small_group(trivial) == "1"


def test_generate_from_matrices():
    t = generate_group_from_matrices([MAT_A, MAT_B])
    assert t.order == 8
    assert identify_small_group(t) == "D4"
    tq = generate_group_from_matrices([MAT_J, MAT_A * GaussianScalar.I])
    assert identify_small_group(tq) == "Q4"
    assert generate_group_from_matrices([SpinMatrix.identity(2)]).order == 1


def test_closure_bound():
    # a fake mul that never closes: integers under addition
    from cliffork.finite_groups import generate_group

    with pytest.raises(ValueError):
        generate_group([1], lambda a, b: a + b, neutral=0, max_order=50)


# ---------------------------------------------------------------------------
# identification


def test_catalog_self_identification():
    for name, table in _catalog().items():
        assert identify_small_group(table) == name


def _relabeled(t: GroupTable, rng: random.Random) -> GroupTable:
    perm = list(range(t.order))
    rng.shuffle(perm)
    table = [[0] * t.order for _ in range(t.order)]
    for i in range(t.order):
        for j in range(t.order):
            table[perm[i]][perm[j]] = perm[t.table[i][j]]
    elements = ["?"] * t.order
    for i, name in enumerate(t.elements):
        elements[perm[i]] = name
    return GroupTable(elements, table, perm[t.neutral])


def test_identification_invariant_under_relabeling():
    rng = random.Random(7)
    names = list(_catalog())
    for k in range(100):
        name = names[k % len(names)]
        shuffled = _relabeled(_catalog()[name], rng)
        assert identify_small_group(shuffled) == name


def test_identify_rejects_unknown_and_large():
    z3 = _cyclic(3)
    with pytest.raises(ValueError):
        identify_small_group(z3)
    with pytest.raises(ValueError):
        identify_small_group(vee_group(SignatureSpec(4, 0)))


# ---------------------------------------------------------------------------
# vee groups


def test_vee_group_identities():
    assert identify_small_group(vee_group(SignatureSpec(0, 0))) == "Z2"
    assert identify_small_group(vee_group(SignatureSpec(1, 0))) == "Z2xZ2"
    assert identify_small_group(vee_group(SignatureSpec(0, 1))) == "Z4"
    assert identify_small_group(vee_group(SignatureSpec(2, 0))) == "D4"
    assert identify_small_group(vee_group(SignatureSpec(1, 1))) == "D4"
    assert identify_small_group(vee_group(SignatureSpec(0, 2))) == "Q4"


def test_vee_group_order():
    for n in range(0, 6):
        for p in range(n + 1):
            sig = SignatureSpec(p, n - p)
            assert vee_group(sig).order == 1 << (n + 1)


def test_center_type_predictions():
    assert group_center_type(2, 0) == "Z2"
    assert group_center_type(1, 0) == "Z2xZ2"
    assert group_center_type(0, 1) == "Z4"
    assert group_center_type(0, 3) == "Z2xZ2"
    assert group_center_type(3, 0) == "Z4"


def test_vee_factor_check_examples():
    r = vee_factor_check(SignatureSpec(2, 0))
    assert r.passed and r.quotient_order == 4 and r.two_rank == 1

    # G(1,0) is abelian: the center is everything, quotient is trivial
    r10 = vee_factor_check(SignatureSpec(1, 0))
    assert r10.passed
    assert r10.quotient_order == 1 and r10.two_rank == 0
    assert r10.center_type == "Z2xZ2"

    r00 = vee_factor_check(SignatureSpec(0, 0))
    assert r00.passed and r00.quotient_order == 1


def test_vee_factor_theorem_up_to_n6():
    for n in range(0, 7):
        for p in range(n + 1):
            sig = SignatureSpec(p, n - p)
            report = vee_factor_check(sig)
            assert report.passed, (str(sig), report.failures)
            assert report.quotient_order == 1 << (2 * report.two_rank)
            # 2-rank matches floor(n/2) when the center sits in grade {0, n}
            assert report.two_rank == (sig.n - (sig.n % 2)) // 2
