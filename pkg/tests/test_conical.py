import pytest

from robinson.conical import (
    CopointClass,
    NoAdmissibleHole,
    NotEquidistant,
    RepresentedBlock,
    admissible_holes,
    classify_copoint,
    separate_if_separable,
)
from robinson.core import diameter, is_robinson_order, restrict, validate
from robinson.recognizer import find_compatible_order, recognize
from robinson.refinement import copoint_partition
from robinson.testkit import GeneratorSpec, KINDS, generate
from support import zb


def test_classify_running_example(example):
    assert classify_copoint(example, 0, zb(11, 13, 14)) is CopointClass.NON_SEPARABLE
    assert classify_copoint(example, 1, zb(5, 12, 19)) is CopointClass.SEPARABLE
    assert classify_copoint(example, 0, zb(7)) is CopointClass.NON_SEPARABLE


def test_classify_tight_and_zero_distance():
    sp = validate([[0, 2, 2], [2, 0, 2], [2, 2, 0]])
    assert classify_copoint(sp, 0, [1, 2]) is CopointClass.TIGHT
    sp0 = validate([[0, 0], [0, 0]])
    assert classify_copoint(sp0, 0, [1]) is CopointClass.TIGHT


def test_classify_rejects_non_copoint(example):
    with pytest.raises(NotEquidistant):
        classify_copoint(example, 0, zb(2, 9))
    with pytest.raises(ValueError):
        classify_copoint(example, 0, [])


def test_separate_halves_5_12_19(example):
    out = separate_if_separable(example, 1, zb(19, 5, 12))
    assert out == [RepresentedBlock(18, tuple(zb(19, 5))), RepresentedBlock(11, (11,))]


def test_separate_not_needed(example):
    out = separate_if_separable(example, 0, zb(13, 14, 11))
    assert out == [RepresentedBlock(12, tuple(zb(13, 14, 11)))]
    assert separate_if_separable(example, 0, [4]) == [RepresentedBlock(4, (4,))]


def test_separate_raises_without_hole():
    # apex 0 at distance 1; block 1,2,3 is too wide but has no usable gap
    sp = validate([[0, 1, 1, 1], [1, 0, 0, 3], [1, 0, 0, 0], [1, 3, 0, 0]])
    with pytest.raises(NoAdmissibleHole) as info:
        separate_if_separable(sp, 0, [1, 2, 3])
    assert info.value.p == 0 and info.value.block == (1, 2, 3)
    assert admissible_holes(sp, 0, [1, 2, 3]) == []


def test_holes_of_5_12_19(example):
    holes = admissible_holes(example, 1, zb(19, 5, 12))
    assert holes == [tuple(zb(5, 12))]


def test_holes_conical_subspace_apex_7(example):
    # {1,6,9,10} around apex 7: delta = 9 equals the diameter, so p can go
    # past either end, and inside only where consecutive points are 9 apart
    block = find_compatible_order(example, zb(1, 6, 9, 10))
    assert {example.d(6, x) for x in block} == {9}
    assert diameter(example, block) == 9
    holes = admissible_holes(example, 6, block)
    assert holes[-1] == (block[-1], block[0])
    inner = [(block[i], block[i + 1]) for i in range(len(block) - 1) if example.d(block[i], block[i + 1]) == 9]
    assert holes[:-1] == inner


def test_two_point_block_at_delta():
    sp = validate([[0, 2, 2], [2, 0, 2], [2, 2, 0]])
    assert admissible_holes(sp, 0, [1, 2]) == [(1, 2), (2, 1)]


def _robinson_copoints(count):
    for seed in range(count):
        space = generate(GeneratorSpec(KINDS[seed % 4], 2 + seed % 9, seed))
        if not recognize(space):
            continue
        for p in range(space.n):
            for C in copoint_partition(space, p).copoints:
                yield space, p, find_compatible_order(space, C)


def test_separation_properties_on_generated_copoints():
    splits = 0
    for space, p, block in _robinson_copoints(800):
        out = separate_if_separable(space, p, block)
        flat = [x for b in out for x in b.members]
        assert flat == list(block)
        delta = space.d(p, block[0])
        if len(out) == 1:
            assert out[0].rep == block[0]
            assert is_robinson_order(restrict(space, [p, *block]), list(range(len(block) + 1)))
            continue
        splits += 1
        left, right = out
        assert left.rep == left.members[0] and right.rep == right.members[-1]
        assert diameter(space, left.members) <= delta
        assert diameter(space, right.members) <= delta
        assert min(space.d(x, y) for x in left.members for y in right.members) >= delta
        sub = restrict(space, [*left.members, p, *right.members])
        assert is_robinson_order(sub, list(range(sub.n)))
        assert (left.members[-1], right.members[0]) in admissible_holes(space, p, block)
        assert classify_copoint(space, p, block) is CopointClass.SEPARABLE
    assert splits > 20
