import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from evensearch.criteria import (
    F2_NAMES,
    BitString,
    ItemList,
    SearchSpec,
    apply_f2,
    as_indexed_function,
    f1,
    f2_values,
    f3,
    format_items,
    gen_instance,
    load_items,
    load_spec,
    match_mask,
    parse_items,
    save_spec,
)
from evensearch.errors import FormatError, GenerationError, IndexRangeError
from evensearch.indexcore import SignedIndex


def B(text):
    return BitString.parse(text)


def test_apply_f2_examples():
    assert apply_f2(SearchSpec("identity", B("000")), B("101")) == B("101")
    assert apply_f2(SearchSpec("truncate", B("00"), {"l": 2}), B("101")) == B("10")
    assert apply_f2(SearchSpec("parity", B("0")), B("110")) == B("0")


def test_xor_fold_and_affine_by_hand():
    # 10110 padded to 101100 -> 10 ^ 11 ^ 00 = 01
    assert apply_f2(SearchSpec("xor_fold", B("00"), {"l": 2}), B("10110")) == B("01")
    # (3*5 + 1) mod 8 = 0
    spec = SearchSpec("affine_mod", B("000"), {"multiplier": 3, "addend": 1, "l": 3})
    assert apply_f2(spec, B("0101")) == B("000")


def test_spec_validation():
    with pytest.raises(FormatError):
        SearchSpec("square", B("1"))
    with pytest.raises(FormatError):
        SearchSpec("truncate", B("101"), {"l": 2})
    with pytest.raises(FormatError):
        SearchSpec("truncate", B("10"), {})
    with pytest.raises(FormatError):
        SearchSpec("identity", B("10")).check_item_width(3)
    with pytest.raises(FormatError):
        apply_f2(SearchSpec("identity", B("101")), B("1010"), m=3)


def test_f1_f3_on_instance_r(instance_r):
    spec, items = instance_r
    assert f1(spec, items, 2) == 1
    assert f1(spec, items, 0) == 0
    assert f3(spec, items, SignedIndex.parse("010")) == 1
    assert f3(spec, items, SignedIndex.parse("110")) == 0
    assert f3(spec, items, SignedIndex.parse("100")) == 0
    with pytest.raises(IndexRangeError):
        f1(spec, items, 4)
    with pytest.raises(FormatError):
        f3(spec, items, SignedIndex.parse("0010"))


def test_padding_region_never_matches():
    items = ItemList.from_strings(["101", "010", "110"])
    spec = SearchSpec("identity", B("110"))
    assert items.n == 2 and items.size == 4
    assert f1(spec, items, 3) == 0
    assert list(match_mask(spec, items)) == [0, 0, 1, 0]


def test_indexed_function(instance_r):
    spec, items = instance_r
    f = as_indexed_function(spec, items)
    assert f.width == 3 and f.out_width == 1
    assert f(SignedIndex.parse("010")) == B("1")
    assert f(SignedIndex.parse("111")) == B("0")


@pytest.mark.parametrize("n", range(1, 9))
def test_f3_vanishes_on_negatives_and_extends_f1(n, rng):
    planted = sorted(set(rng.integers(0, 1 << n, size=3).tolist()))
    items, spec = gen_instance(int(rng.integers(1 << 30)), n, 6, planted)
    f = as_indexed_function(spec, items)
    for p in range(1 << n):
        assert f3(spec, items, SignedIndex(n, 1, p)) == 0
        assert f3(spec, items, SignedIndex(n, 0, p)) == f1(spec, items, p)
        assert int(f.values(np.array([p, p | (1 << n)]))[1]) == 0


def _spec_strategy(m):
    l = st.integers(1, m)
    return st.one_of(
        st.just(("identity", {})),
        st.just(("parity", {})),
        l.map(lambda v: ("truncate", {"l": v})),
        l.map(lambda v: ("xor_fold", {"l": v})),
        st.tuples(st.integers(0, 2**70), st.integers(0, 2**70), l).map(
            lambda t: ("affine_mod", {"multiplier": t[0], "addend": t[1], "l": t[2]})
        ),
    )


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 64).flatmap(lambda m: st.tuples(
    st.just(m), _spec_strategy(m), st.lists(st.integers(0, 2**m - 1), min_size=1, max_size=20))))
def test_vectorised_f2_agrees_with_scalar(args):
    m, (name, params), values = args
    width = m if name == "identity" else 1 if name == "parity" else params["l"]
    spec = SearchSpec(name, BitString(width, 0), params)
    got = f2_values(spec, np.array(values, dtype=np.uint64), m)
    want = [apply_f2(spec, BitString(m, v)).value for v in values]
    assert [int(g) for g in got] == want


def test_wide_items_use_python_ints():
    m = 80
    items = ItemList(m, [1 << 79, 5])
    spec = SearchSpec("truncate", B("10"), {"l": 2})
    assert list(match_mask(spec, items)) == [1, 0]


def test_items_file_roundtrip(tmp_path, instance_r):
    spec, items = instance_r
    path = tmp_path / "items.txt"
    path.write_text(format_items(items))
    back = load_items(path)
    assert back.logical_size == 4 and back.item_width == 3
    assert [str(x) for x in back.items] == ["101", "010", "110", "011"]
    save_spec(spec, tmp_path / "spec.json")
    assert load_spec(tmp_path / "spec.json") == spec
    assert json.loads((tmp_path / "spec.json").read_text()) == {"f2": "identity", "params": {}, "z": "110"}


@pytest.mark.parametrize("text", ["", "x\n101\n", "3\n1010\n", "3\n1a1\n", "0\n"])
def test_items_file_rejects_malformed(text):
    with pytest.raises(FormatError):
        parse_items(text)


def test_gen_instance_examples():
    items, spec = gen_instance(1, 3, 8, {5})
    assert [p for p in range(8) if f1(spec, items, p)] == [5]
    items, spec = gen_instance(1, 3, 8, set())
    assert not any(f1(spec, items, p) for p in range(8))


@pytest.mark.parametrize("f2", F2_NAMES)
def test_gen_instance_each_transform(f2, rng):
    for _ in range(10):
        n = int(rng.integers(1, 7))
        planted = sorted(set(rng.integers(0, 1 << n, size=int(rng.integers(0, 4))).tolist()))
        items, spec = gen_instance(int(rng.integers(1 << 30)), n, int(rng.integers(1, 12)), planted, f2=f2)
        assert spec.f2 == f2
        assert [p for p in range(items.size) if f1(spec, items, p)] == planted


def test_gen_instance_is_seeded():
    a = gen_instance(9, 4, 8, [3, 7])
    b = gen_instance(9, 4, 8, [3, 7])
    assert a[1] == b[1] and np.array_equal(a[0].values, b[0].values)


def test_gen_instance_errors():
    with pytest.raises(GenerationError):
        gen_instance(1, 2, 8, [4])
    # parity on 1-bit items: exactly one value is non-matching, still satisfiable
    items, spec = gen_instance(3, 2, 1, [0], f2="parity")
    assert [p for p in range(4) if f1(spec, items, p)] == [0]


def test_gen_instance_unsatisfiable(monkeypatch):
    import evensearch.criteria as c

    def constant_spec(rng, m, target, f2=None):
        # multiplier 0: every item maps to the addend, so nothing can avoid matching
        return SearchSpec("affine_mod", BitString(2, 1), {"multiplier": 0, "addend": 1, "l": 2})

    monkeypatch.setattr(c, "random_spec", constant_spec)
    with pytest.raises(GenerationError):
        c.gen_instance(1, 2, 4, [1])
