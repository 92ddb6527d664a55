import math

import numpy as np
import pytest

from entdepth.errors import LevelError, NoNeighborError, RangeError
from entdepth.genfun import (
    DEC,
    EXP,
    HEIGHT,
    INC,
    LN,
    NEGATE,
    RANK,
    RECIPROCAL,
    SHANNON,
    SQUAREABILITY,
    TOUGHNESS,
    WIDTH,
    DownSet,
    GenFun,
    MonotoneTransform,
    affine,
    compose,
    evaluate,
    extend_to_downset,
    level_classes,
    lookup,
    neighbor_level,
    parse_genfun,
    parse_transform,
    sublevel_downset,
    value_range,
    verify_dominance_monotone,
    verify_refinement_monotone,
)
from entdepth.partitions import Partition, conjugate, down_closure, enumerate_partitions

P = Partition


def naive(family, q, xi):
    """Textbook formulas on the normalised distribution x/n, no log-domain tricks."""
    x = np.array(xi.parts, dtype=float)
    n = x.sum()
    p = x / n
    if family == "power_sum_q":
        return np.sum(x ** q)
    if family == "q_sum":
        return np.sum(x ** q) ** (1 / q)
    if family == "q_mean":
        return np.mean(x ** q) ** (1 / q)
    if family == "tsallis_q":
        return (np.sum(p ** q) - 1) / (1 - q)
    if family == "renyi_q":
        return np.log(np.sum(p ** q)) / (1 - q)
    if family == "p_q":
        return np.exp(np.log(np.sum(p ** q)) / (1 - q))
    raise ValueError(family)


@pytest.mark.parametrize("family", ["power_sum_q", "q_sum", "tsallis_q", "renyi_q", "p_q"])
@pytest.mark.parametrize("q", [-3, -0.5, 0.5, 2, 3.5])
def test_q_families_match_naive_formulas(family, q):
    f = GenFun(family, q)
    for xi in enumerate_partitions(8):
        np.testing.assert_allclose(evaluate(f, xi), naive(family, q, xi), rtol=1e-10)


@pytest.mark.parametrize("q", [1, 1.5, 2, 4])
def test_q_mean_matches_naive_formula(q):
    for xi in enumerate_partitions(8):
        np.testing.assert_allclose(evaluate(GenFun("q_mean", q), xi), naive("q_mean", q, xi), rtol=1e-10)


def test_shannon_matches_distribution_entropy():
    for xi in enumerate_partitions(8):
        p = np.array(xi.parts) / 8
        np.testing.assert_allclose(evaluate(SHANNON, xi), -np.sum(p * np.log(p)), rtol=1e-12, atol=1e-15)


def test_evaluate_examples():
    s2 = SQUAREABILITY
    assert evaluate(s2, P([2, 2, 2])) == 12 == evaluate(s2, P([3, 1, 1, 1]))
    assert evaluate(s2, P([4, 3, 2, 1])) == 30 == evaluate(s2, P([5, 1, 1, 1, 1, 1]))
    assert [evaluate(TOUGHNESS, P(x)) for x in ([2, 1, 1], [2, 2], [3, 1])] == [1, 2, 1]
    for n in (3, 7):
        bot, top = P.bottom(n), P.top(n)
        for q in (0.5, 2, 3):
            np.testing.assert_allclose(evaluate(GenFun("power_sum_q", q), bot), n)
            np.testing.assert_allclose(evaluate(GenFun("power_sum_q", q), top), n ** q)
        for q in (-2, 0, 0.5, 1, 2, math.inf):
            np.testing.assert_allclose(evaluate(GenFun("renyi_q", q), bot), math.log(n))
            assert evaluate(GenFun("renyi_q", q), top) == pytest.approx(0.0, abs=1e-12)
        assert evaluate(GenFun("dim_b", 2), bot) == 2 * n
        assert evaluate(GenFun("dim_b", 2), top) == 2 ** n


def test_special_parameter_values():
    xi = P([4, 2, 1, 1])
    n, h = xi.n, xi.height
    assert evaluate(GenFun("power_sum_q", 0), xi) == h
    assert evaluate(GenFun("power_sum_q", -math.inf), xi) == 2
    assert evaluate(GenFun("tsallis_q", 1), xi) == evaluate(SHANNON, xi)
    assert evaluate(GenFun("renyi_q", 1), xi) == evaluate(SHANNON, xi)
    assert evaluate(GenFun("p_q", 1), xi) == pytest.approx(math.exp(evaluate(SHANNON, xi)))
    assert evaluate(GenFun("tsallis_q", math.inf), xi) == 0.0
    assert evaluate(GenFun("q_sum", math.inf), xi) == 4
    assert evaluate(GenFun("q_sum", -math.inf), xi) == 1
    assert evaluate(GenFun("q_mean", math.inf), xi) == 4
    assert evaluate(GenFun("q_mean", 0, checked=False), xi) == pytest.approx(8 ** 0.25)
    assert evaluate(GenFun("renyi_q", math.inf), xi) == pytest.approx(math.log(n / 4))
    assert evaluate(GenFun("renyi_q", -math.inf), xi) == pytest.approx(math.log(n))
    assert evaluate(GenFun("p_q", math.inf), xi) == 2.0
    assert evaluate(GenFun("p_q", 0), xi) == h
    assert evaluate(GenFun("dimp_b", 3), xi) == 81 + 9 + 3 + 3 - 4 + 1
    assert evaluate(GenFun("dof_b", 2), xi) == pytest.approx(math.log2(16 + 4 + 2 + 2))
    assert evaluate(GenFun("w_m", 2), xi) == 6
    assert evaluate(GenFun("t_m", 3), xi) == 4
    assert evaluate(GenFun("t_m", 9), xi) == n
    assert evaluate(GenFun("avg"), xi) == 22 / 8


def test_exact_families_return_integers():
    xi = P([5, 3, 3, 1])
    for f in (HEIGHT, WIDTH, RANK, TOUGHNESS, SQUAREABILITY, GenFun("w_m", 2), GenFun("t_m", 2),
              GenFun("power_sum_q", 3), GenFun("dim_b", 2), GenFun("dimp_b", 3)):
        assert f.exact_integer
        assert type(evaluate(f, xi)) is int
    assert not GenFun("power_sum_q", 2.5).exact_integer
    assert not GenFun("renyi_q", 2).exact_integer
    assert evaluate(GenFun("power_sum_q", 5), P([40])) == 40 ** 5


@pytest.mark.parametrize(
    "family,param",
    [("q_mean", 0.5), ("q_mean", -1), ("dofp_b", 1), ("dofp_b", 0.5), ("q_sum", 0),
     ("dim_b", 1.5), ("dof_b", 1.5), ("dof_b", 1), ("power_sum_q", math.inf),
     ("tsallis_q", -math.inf), ("w_m", 0), ("w_m", 1.5), ("dim_b", 0), ("dim_b", -2)],
)
def test_range_errors(family, param):
    with pytest.raises(RangeError):
        GenFun(family, param)


def test_unchecked_mode_only_lifts_monotonicity_guards():
    assert GenFun("q_mean", 0.5, checked=False).param == 0.5
    assert GenFun("dim_b", 1.5, checked=False).direction == INC
    with pytest.raises(RangeError):
        GenFun("q_sum", 0, checked=False)
    with pytest.raises(RangeError):
        GenFun("dof_b", 1, checked=False)


def test_parameter_presence():
    with pytest.raises(RangeError):
        GenFun("width", 2)
    with pytest.raises(RangeError):
        GenFun("renyi_q")


def test_directions_and_dominance_flags():
    assert HEIGHT.direction == DEC and WIDTH.direction == INC
    assert GenFun("power_sum_q", 0.5).direction == DEC
    assert GenFun("power_sum_q", 2).direction == INC
    assert GenFun("q_sum", -1).direction == INC
    assert GenFun("q_sum", 0.5).direction == DEC
    assert GenFun("q_sum", 3).direction == INC
    assert GenFun("tsallis_q", -3).direction == DEC
    assert GenFun("dim_b", 0.5).direction == DEC
    assert not TOUGHNESS.dominance_monotone
    assert not GenFun("t_m", 2).dominance_monotone
    assert GenFun("power_sum_q", 0).dominance_monotone
    assert not GenFun("power_sum_q", -1).dominance_monotone
    assert not GenFun("dim_b", 0.5).dominance_monotone
    assert GenFun("renyi_q", math.inf).dominance_monotone
    assert not GenFun("renyi_q", -math.inf).dominance_monotone


def test_value_range_examples():
    assert value_range(WIDTH, 5) == [1, 2, 3, 4, 5]
    assert value_range(HEIGHT, 5) == [1, 2, 3, 4, 5]
    ranks = value_range(RANK, 5)
    assert len(ranks) == 2 * 5 - 3
    assert 4 in ranks and -4 in ranks and 3 not in ranks and -3 not in ranks
    assert value_range(TOUGHNESS, 8) == [1, 2, 3, 4, 8]


@pytest.mark.parametrize("n", range(1, 11))
def test_value_range_extremes(n):
    for f in (WIDTH, HEIGHT, SQUAREABILITY, GenFun("renyi_q", 2), GenFun("q_sum", 0.5)):
        rng = value_range(f, n)
        ends = sorted([evaluate(f, P.bottom(n)), evaluate(f, P.top(n))])
        assert rng[0] == pytest.approx(ends[0]) and rng[-1] == pytest.approx(ends[-1])


def test_value_range_collapses_float_ties():
    # s2({2,2,2}) = s2({3,1,1,1}) also makes R_2 tie; floating values must merge
    rng = value_range(GenFun("renyi_q", 2), 6)
    assert len(rng) == len(value_range(SQUAREABILITY, 6))


def test_extend_to_downset_examples():
    everything = DownSet(frozenset(enumerate_partitions(6)))
    assert extend_to_downset(WIDTH, everything) == 6
    ds = DownSet(down_closure([P([2, 2, 1]), P([3, 1, 1])]))
    assert extend_to_downset(HEIGHT, ds) == 3
    for k in value_range(SQUAREABILITY, 7):
        assert extend_to_downset(SQUAREABILITY, sublevel_downset(SQUAREABILITY, k, 7)) == k
    for xi in enumerate_partitions(6):
        for f in (WIDTH, HEIGHT, TOUGHNESS):
            assert extend_to_downset(f, DownSet(down_closure([xi]))) == evaluate(f, xi)
    with pytest.raises(ValueError):
        extend_to_downset(WIDTH, [])


def test_downset_rejects_non_closed_sets():
    with pytest.raises(ValueError):
        DownSet(frozenset([P([2, 2]), P([1, 1, 1, 1])]))
    with pytest.raises(ValueError):
        DownSet(frozenset())


def test_sublevel_downset_examples():
    assert sublevel_downset(WIDTH, 4, 4).members == frozenset(enumerate_partitions(4))
    got = sublevel_downset(WIDTH, 3, 4)
    assert got.members == {P([3, 1]), P([2, 2]), P([2, 1, 1]), P([1, 1, 1, 1])}
    tough = sublevel_downset(TOUGHNESS, 1, 6)
    assert P([5, 1]) in tough
    assert tough.members == {p for p in enumerate_partitions(6) if 1 in p.parts}
    with pytest.raises(LevelError):
        sublevel_downset(RANK, 3, 5)


@pytest.mark.parametrize("f", [WIDTH, HEIGHT, RANK, SQUAREABILITY, GenFun("renyi_q", 0.5)])
def test_sublevel_chain(f):
    n = 8
    rng = value_range(f, n)
    if f.direction == DEC:
        rng = rng[::-1]
    sets = [sublevel_downset(f, k, n).members for k in rng]
    assert all(a <= b for a, b in zip(sets, sets[1:]))
    assert sets[0] == {P.bottom(n)} or P.bottom(n) in sets[0]
    assert sets[-1] == set(enumerate_partitions(n))


def test_neighbor_level_examples():
    for k in range(2, 8):
        assert neighbor_level(WIDTH, 7, k) == k - 1
    assert neighbor_level(SQUAREABILITY, 10, 32) == 30
    assert neighbor_level(RANK, 5, 4) == 2
    assert neighbor_level(HEIGHT, 5, 2) == 3
    with pytest.raises(NoNeighborError):
        neighbor_level(WIDTH, 5, 1)
    with pytest.raises(NoNeighborError):
        neighbor_level(HEIGHT, 5, 5)


def test_monotonicity_examples():
    for n in range(1, 13):
        assert verify_refinement_monotone(WIDTH, n).ok
    for n in range(1, 11):
        assert verify_refinement_monotone(GenFun("tsallis_q", -3), n).ok
        assert verify_dominance_monotone(GenFun("power_sum_q", 3), n).ok
        assert verify_dominance_monotone(HEIGHT, n).ok


def test_toughness_dominance_violation():
    rep = verify_dominance_monotone(TOUGHNESS, 4)
    assert not rep.ok
    assert (P([2, 2]), P([3, 1]), 2, 1) in rep.violations
    assert (P([2, 1, 1]), P([2, 2]), 1, 2) not in rep.violations
    assert verify_refinement_monotone(TOUGHNESS, 4).ok


def test_q_mean_below_one_witnesses():
    # found by exhaustive search over refinement covers; q = 0.5 is clean up to n = 15
    half = GenFun("q_mean", 0.5, checked=False)
    assert verify_refinement_monotone(half, 4).ok
    rep = verify_refinement_monotone(half, 16)
    assert [(u.parts, x.parts) for u, x, _, _ in rep.violations] == [
        ((5, 5, 1, 1, 1, 1, 1, 1), (10, 1, 1, 1, 1, 1, 1))
    ]
    u, x, a, b = rep.violations[0]
    assert a > b + 3e-4
    neg = verify_refinement_monotone(GenFun("q_mean", -2, checked=False), 5)
    assert (P([2, 2, 1]), P([4, 1])) in [(u, x) for u, x, _, _ in neg.violations]


def test_report_as_dict():
    d = verify_dominance_monotone(TOUGHNESS, 4).as_dict()
    assert d["ok"] is False and d["order"] == "dominance"
    assert {"lower": [2, 2], "upper": [3, 1], "f_lower": 2, "f_upper": 1} in d["violations"]


def test_compose_examples():
    n = 6
    ident = compose(affine(1, 0), RANK)
    r2 = GenFun("renyi_q", 2)
    t2 = GenFun("tsallis_q", 2)
    neglog = compose(parse_transform("neglog2", n), SQUAREABILITY)
    one_minus = compose(affine(-1 / n ** 2, 1), SQUAREABILITY)
    for xi in enumerate_partitions(n):
        assert evaluate(ident, xi) == evaluate(RANK, xi)
        assert evaluate(neglog, xi) == pytest.approx(evaluate(r2, xi), abs=1e-12)
        assert evaluate(one_minus, xi) == pytest.approx(evaluate(t2, xi), abs=1e-12)
    assert neglog.direction == DEC and one_minus.direction == DEC
    assert compose(NEGATE, HEIGHT).direction == INC
    assert compose(EXP, HEIGHT).direction == DEC
    assert compose(LN, TOUGHNESS).dominance_monotone is False


def test_transform_tags():
    assert LN.convexity == "concave" and EXP.convexity == "convex"
    assert RECIPROCAL.direction == DEC and RECIPROCAL.convexity == "convex"
    assert NEGATE.convexity == "affine"
    assert MonotoneTransform("power", (0.5,)).convexity == "concave"
    assert MonotoneTransform("power", (2,)).convexity == "convex"
    assert MonotoneTransform("power", (-1,)).direction == DEC
    assert not MonotoneTransform("floor", (2,)).strict
    for bad in [("affine", (0, 1)), ("power", (0,)), ("floor", (0,)), ("neglog", (-1,))]:
        with pytest.raises(ValueError):
            MonotoneTransform(*bad)
    with pytest.raises(ValueError):
        lookup([(1, 3), (2, 1), (3, 5)])
    with pytest.raises(TypeError):
        compose(lambda u: u, WIDTH)


def test_lookup_direction():
    assert lookup([(1, 10), (2, 20)]).direction == INC
    assert lookup([(1, 20), (2, 10)]).direction == DEC
    with pytest.raises(LevelError):
        lookup([(1, 10)])(2)


STRICT = [affine(2, -1), affine(-0.5, 3), LN, EXP, NEGATE, RECIPROCAL, MonotoneTransform("power", (3,))]


@pytest.mark.parametrize("g", STRICT, ids=lambda g: g.spec)
@pytest.mark.parametrize("f", [WIDTH, SQUAREABILITY, GenFun("p_q", 2)], ids=lambda f: f.spec)
def test_strict_composition_keeps_classification(g, f):
    for n in range(2, 11):
        gf = compose(g, f)
        for k in value_range(f, n):
            gk = g(k)
            assert sublevel_downset(gf, gk, n).members == sublevel_downset(f, k, n).members


def test_floor_transform_coarsens():
    g = MonotoneTransform("floor", (10,))
    gf = compose(g, SQUAREABILITY)
    assert value_range(gf, 6) == [0, 10, 20, 30]
    assert gf.exact_integer
    assert verify_refinement_monotone(gf, 8).ok


@pytest.mark.parametrize("n", range(1, 11))
def test_level_classes_tile(n):
    ps = enumerate_partitions(n)
    for f in (WIDTH, HEIGHT, RANK, TOUGHNESS, SQUAREABILITY, GenFun("q_sum", 0.5), SHANNON):
        classes = level_classes(f, n)
        flat = [p for members in classes.values() for p in members]
        assert sorted(flat, key=lambda p: p.parts) == sorted(ps, key=lambda p: p.parts)
        assert all(members for members in classes.values())


@pytest.mark.parametrize("n", range(1, 11))
def test_height_width_conjugation(n):
    for xi in enumerate_partitions(n):
        assert evaluate(HEIGHT, xi) == evaluate(WIDTH, conjugate(xi))
        assert evaluate(WIDTH, xi) == evaluate(HEIGHT, conjugate(xi))


@pytest.mark.parametrize("n", range(1, 11))
def test_w_m_t_m_complement(n):
    for xi in enumerate_partitions(n):
        for m in range(1, xi.height):
            assert evaluate(GenFun("w_m", m), xi) + evaluate(GenFun("t_m", xi.height - m), xi) == n


@pytest.mark.parametrize(
    "text,family,param",
    [("width", "width", None), ("s_q:q=2", "power_sum_q", 2), ("renyi:q=2", "renyi_q", 2),
     ("dim:b=2", "dim_b", 2), ("w_m:m=2", "w_m", 2), ("q_sum:q=inf", "q_sum", math.inf),
     ("renyi:q=-inf", "renyi_q", -math.inf), ("tsallis:q=-3", "tsallis_q", -3), ("h", "height", None),
     ("s2", "squareability", None), ("q_mean:q=1.5", "q_mean", 1.5)],
)
def test_parse_genfun(text, family, param):
    f = parse_genfun(text)
    assert (f.family, f.param) == (family, param)
    assert parse_genfun(f.spec) == f


def test_parse_composed():
    f = parse_genfun("compose:neglog2:s_q:q=2", 6)
    assert f.family == "composed" and f.inner == GenFun("power_sum_q", 2)
    assert f.transform == MonotoneTransform("neglog", (36.0,))
    assert parse_genfun(f.spec) == f
    assert parse_genfun("compose:affine(2,1):width").transform == affine(2, 1)


@pytest.mark.parametrize("bad", ["nope", "s_q:z=2", "s_q:q=", "compose:neglog2", "compose:sin:width"])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        parse_genfun(bad, 4)


def test_parse_respects_range_guard():
    with pytest.raises(RangeError):
        parse_genfun("q_mean:q=0.5")
    assert parse_genfun("q_mean:q=0.5", checked=False).param == 0.5
