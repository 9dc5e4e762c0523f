from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blockmap.errors import CapExceededError, DataValidationError
from blockmap.models import (
    ArchSystem,
    MeanderSystem,
    block_decomposition,
    brute_force_weighted_counts,
    catalan,
    closed_form_count,
    connected_components,
    enumerate_arch_systems,
    enumerate_meander_systems,
    is_irreducible,
    load_external_counts,
    model_spec,
    noncrossing_matchings,
    open_core,
    u1_counts,
)
from blockmap.series import Poly, extract_block_coefficients

import oracles


def _enumerate(family, n):
    if family == "meander":
        return list(enumerate_meander_systems(n))
    return list(enumerate_arch_systems(n, bicolored=family == "bicubic", open=family == "open"))


@pytest.mark.parametrize("m", range(0, 13, 2))
def test_noncrossing_matching_count(m):
    rows = list(noncrossing_matchings(m))
    assert len(rows) == catalan(m // 2)
    assert len(set(rows)) == len(rows)


@pytest.mark.parametrize("family", ["cubic", "open", "meander"])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_enumeration_totals_match_closed_forms(family, n):
    assert len(_enumerate(family, n)) == closed_form_count(family, n)


@pytest.mark.parametrize("family", ["cubic", "bicubic", "open", "meander"])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_python_decomposition_matches_kernels(family, n):
    hist = Counter(len(block_decomposition(s)) for s in _enumerate(family, n))
    expected = brute_force_weighted_counts(family, n)[n]
    assert Poly({(k,): c for k, c in hist.items()}) == expected


def test_meander_loops_match_kernels():
    n = 3
    hist = Counter((len(block_decomposition(s)), connected_components(s))
                   for s in enumerate_meander_systems(n))
    assert Poly(dict(hist), ("u", "q")) == brute_force_weighted_counts("meander-q", n)[n]


@pytest.mark.parametrize("family", ["cubic", "meander", "bicubic"])
def test_irreducible_counts_are_block_counts(family):
    N = 5 if family != "meander" else 4
    counts = [c(u=1) for c in brute_force_weighted_counts(family, N)]
    b = extract_block_coefficients(counts)
    for j in range(1, N + 1):
        assert sum(is_irreducible(s) for s in _enumerate(family, j)) == b[j - 1]


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_blocks_are_irreducible_and_partition_the_size(data):
    family = data.draw(st.sampled_from(["cubic", "bicubic", "open", "meander"]))
    n = data.draw(st.integers(min_value=1, max_value=4))
    systems = _enumerate(family, n)
    system = systems[data.draw(st.integers(min_value=0, max_value=len(systems) - 1))]
    blocks = block_decomposition(system)
    assert all(is_irreducible(b) for b in blocks)
    sizes = sum(b.n for b in blocks)
    if family == "open":
        core = open_core(system)
        sizes += core.n if core is not None else 0
    assert sizes == n


def test_meander_components_at_size_two():
    hist = Counter(connected_components(s) for s in enumerate_meander_systems(2))
    assert dict(hist) == oracles.MEANDER_COMPONENTS_N2


def test_named_configurations():
    nested = ArchSystem.from_pairs([(1, 4, "above"), (2, 3, "above")])
    assert not is_irreducible(nested)
    assert [b.n for b in block_decomposition(nested)] == [1, 1]
    interleaved = ArchSystem.from_pairs([(1, 3, "above"), (2, 4, "below")])
    assert is_irreducible(interleaved)
    side_by_side = ArchSystem.from_pairs([(1, 2, "above"), (3, 4, "above")])
    assert not is_irreducible(side_by_side)
    assert len(block_decomposition(side_by_side)) == 2
    meander = MeanderSystem.from_pairs([(1, 2), (3, 4)], [(1, 4), (2, 3)])
    assert connected_components(meander) == 1
    assert is_irreducible(meander)


def test_invalid_configurations_rejected():
    with pytest.raises(ValueError, match="cross"):
        ArchSystem.from_pairs([(1, 3, "above"), (2, 4, "above")])
    with pytest.raises(ValueError, match="winding"):
        ArchSystem.from_pairs([(1, 2, ("above", "below"))])
    with pytest.raises(ValueError):
        ArchSystem.from_pairs([(1, 3, "above"), (2, 4, "below")], bicolored=True)


def test_caps_enforced():
    with pytest.raises(CapExceededError):
        brute_force_weighted_counts("cubic", 13)
    with pytest.raises(CapExceededError):
        brute_force_weighted_counts("meander", 11)
    with pytest.raises(CapExceededError):
        next(enumerate_meander_systems(11))


def test_quadrangulations_have_no_brute_force():
    with pytest.raises(ValueError):
        brute_force_weighted_counts("quad", 3)


def test_bicubic_has_no_closed_form():
    with pytest.raises(ValueError):
        closed_form_count("bicubic", 3)
    with pytest.raises(DataValidationError):
        u1_counts("bicubic", 5)
    assert model_spec("bicubic").count_source == "external-file"


def test_unknown_model():
    with pytest.raises(ValueError):
        model_spec("hexagons")


# -- coefficient files -------------------------------------------------------


def _write(tmp_path, text, name="counts.txt"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_external_file_round_trip(tmp_path):
    counts = [closed_form_count("cubic", n) for n in range(1, 11)]
    path = _write(tmp_path, "# cubic\n" + "".join(f"{n} {c}\n" for n, c in enumerate(counts, 1)))
    assert load_external_counts(path, "cubic") == [1] + counts


def test_external_file_component_resolved(tmp_path):
    rows = brute_force_weighted_counts("meander-q", 4)
    lines = []
    for n in range(1, 5):
        by_loops = Counter()
        for (_, k), c in rows[n].terms.items():
            by_loops[k] += c
        lines += [f"{n} {k} {c}" for k, c in sorted(by_loops.items())]
    table = load_external_counts(_write(tmp_path, "\n".join(lines)), "meander-q")
    assert table[4](q=1) == catalan(4) ** 2


def test_external_file_empty(tmp_path):
    with pytest.raises(DataValidationError, match="insufficient data"):
        load_external_counts(_write(tmp_path, "# nothing\n"))


@pytest.mark.parametrize("text, message", [
    ("1 2\n2 10\n3 71\n", "enumeration gives"),
    ("1 2\n3 70\n", "missing sizes"),
    ("1 2\n2 -10\n", "negative"),
    ("1 2\n1 2\n", "increase"),
    ("1 2\n2 1 4\n", "mixes"),
    ("1 two\n", "cannot parse"),
])
def test_external_file_errors(tmp_path, text, message):
    with pytest.raises(DataValidationError, match=message):
        load_external_counts(_write(tmp_path, text), "cubic")


def test_external_file_too_short_for_order(tmp_path):
    path = _write(tmp_path, "1 2\n2 10\n")
    with pytest.raises(DataValidationError):
        u1_counts("cubic", 5, path=path)


def test_small_enumeration_examples():
    assert len(_enumerate("cubic", 1)) == 2
    assert len(_enumerate("open", 2)) == 32
    assert len(_enumerate("bicubic", 1)) == 2
    single = MeanderSystem.from_pairs([(1, 2)], [(1, 2)])
    assert connected_components(single) == 1 and is_irreducible(single)
    rainbow = [(1, 4), (2, 3)]
    assert connected_components(MeanderSystem.from_pairs(rainbow, rainbow)) == 2
    assert connected_components(MeanderSystem.from_pairs(rainbow, [(1, 2), (3, 4)])) == 1
    assert brute_force_weighted_counts("meander-q", 1)[1] == Poly({(1, 1): 1}, ("u", "q"))


def test_irreducible_system_is_its_own_block():
    system = ArchSystem.from_pairs([(1, 3, "above"), (2, 4, "below")])
    assert block_decomposition(system) == [system]


def test_weighted_coefficients_nonnegative():
    from blockmap.pipeline import weighted_series

    for family in ("quad", "cubic", "open", "meander"):
        for poly in weighted_series(family, 20):
            assert poly.nonnegative()


def test_meander_file_disagreeing_with_brute_force(tmp_path):
    path = _write(tmp_path, "".join(f"{n} {catalan(n) ** 2 + (n == 6)}\n" for n in range(1, 9)))
    with pytest.raises(DataValidationError, match="size 6"):
        load_external_counts(path, "meander")
