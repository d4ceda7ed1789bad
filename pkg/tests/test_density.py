import itertools
from collections import Counter
from fractions import Fraction

import pytest

from conftest import FIELD_TABLES
from reduction_scope.classify import ReductionType
from reduction_scope.config import builtin_field
from reduction_scope.density import (
    BUILTIN_TABLES,
    GroupClassTable,
    chebotarev_tolerance,
    empirical_scan,
    gtr_density,
    ordinary_density,
    split_class_densities,
)
from reduction_scope.errors import ConsistencyError
from reduction_scope.numberfield import SplitClass


# --- oracle: conjugacy classes of a permutation group generated by explicit permutations


def _compose(a, b):
    return tuple(a[i] for i in b)


def _cycle(n, *cycles):
    perm = list(range(n))
    for c in cycles:
        for i, x in enumerate(c):
            perm[x - 1] = c[(i + 1) % len(c)] - 1
    return tuple(perm)


def _generate(gens):
    n = len(gens[0])
    group = {tuple(range(n))}
    frontier = list(group)
    while frontier:
        g = frontier.pop()
        for h in gens:
            k = _compose(g, h)
            if k not in group:
                group.add(k)
                frontier.append(k)
    return group


def _cycle_type(perm):
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        out.append(length)
    return tuple(sorted(out, reverse=True))


def _class_table(gens):
    group = _generate(gens)
    inverse = {g: tuple(sorted(range(len(g)), key=lambda i: g[i])) for g in group}
    remaining, classes = set(group), []
    while remaining:
        g = next(iter(remaining))
        cls = {_compose(_compose(h, g), inverse[h]) for h in group}
        remaining -= cls
        classes.append((len(cls), _cycle_type(g)))
    return len(group), Counter(classes)


GENERATORS = {
    "C2": [_cycle(2, (1, 2))],
    "C4": [_cycle(4, (1, 2, 3, 4))],
    "V4": [_cycle(4, (1, 2), (3, 4)), _cycle(4, (1, 3), (2, 4))],
    "D4": [_cycle(4, (1, 2, 3, 4)), _cycle(4, (1, 3))],
    "S3": [_cycle(3, (1, 2)), _cycle(3, (1, 2, 3))],
    "S4": [_cycle(4, (1, 2)), _cycle(4, (1, 2, 3, 4))],
}


@pytest.mark.parametrize("name", sorted(BUILTIN_TABLES))
def test_builtin_table_matches_enumerated_group(name):
    order, classes = _class_table(GENERATORS[name])
    t = BUILTIN_TABLES[name]
    assert t.order == order
    assert Counter(t.classes) == classes


@pytest.mark.parametrize("name", sorted(BUILTIN_TABLES))
def test_density_inequalities(name):
    t = BUILTIN_TABLES[name]
    assert gtr_density(t) >= ordinary_density(t) >= Fraction(1, t.order)
    dens = split_class_densities(t)
    assert sum(dens.values()) == 1 and all(v >= 0 for v in dens.values())


@pytest.mark.parametrize(
    "name,gtr,ord_",
    [("D4", Fraction(3, 8), Fraction(1, 8)), ("C4", Fraction(1, 4), Fraction(1, 4)), ("C2", Fraction(1, 2), Fraction(1, 2))],
)
def test_density_examples(name, gtr, ord_):
    t = BUILTIN_TABLES[name]
    assert gtr_density(t) == gtr
    assert ordinary_density(t) == ord_


def test_d4_brute_force_gtr():
    group = _generate(GENERATORS["D4"])
    hits = sum(1 for g in group if _cycle_type(g) in ((1, 1, 1, 1), (2, 1, 1)))
    assert Fraction(hits, len(group)) == Fraction(3, 8)


def test_table_validation():
    with pytest.raises(ConsistencyError):
        GroupClassTable(4, 4, ((1, (1, 1, 1, 1)), (2, (4,))))
    with pytest.raises(ConsistencyError):
        GroupClassTable(2, 2, ((1, (2,)), (1, (2,))))
    with pytest.raises(ConsistencyError):
        GroupClassTable(2, 2, ((1, (1, 1)), (1, (3,))))


def test_table_dict_round_trip():
    for t in BUILTIN_TABLES.values():
        assert GroupClassTable.from_dict(t.to_dict()) == t


# --- scans


def test_zeta5_small_scan():
    desc = builtin_field("zeta5")
    rep = empirical_scan(desc.field, 10**4, other_rule=desc.other_rule)
    assert abs(rep.split_fraction(SplitClass.CompletelySplit) - Fraction(1, 4)) <= Fraction(3, 100)
    assert rep.excluded == (5,)


def test_qi_small_scan():
    rep = empirical_scan(builtin_field("qi").field, 10**4)
    assert abs(float(rep.split_fraction(SplitClass.CompletelySplit)) - 0.5) < chebotarev_tolerance(rep.total)
    assert rep.excluded == (2,)


def test_counts_sum_to_unexcluded_primes():
    desc = builtin_field("d4")
    rep = empirical_scan(desc.field, 20000, desc.k0)
    assert rep.total == len(rep.rows) - len(rep.excluded)
    assert sum(rep.reduction_counts.values()) == rep.total
    assert rep.excluded == (2, 5, 11, 89)


@pytest.mark.parametrize("name", ["d4", "zeta5"])
def test_scan_determinism_across_workers(name):
    desc = builtin_field(name)
    reports = [empirical_scan(desc.field, 30000, desc.k0, desc.other_rule, workers=w) for w in (1, 4, 8)]
    for r in reports[1:]:
        assert r.rows == reports[0].rows
        assert r.to_summary() == reports[0].to_summary()


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(FIELD_TABLES))
def test_empirical_matches_theory_at_1e6(scans_1e6, name):
    rep = scans_1e6[name]
    tol = chebotarev_tolerance(rep.total)
    for sc, expected in split_class_densities(BUILTIN_TABLES[FIELD_TABLES[name]]).items():
        assert abs(float(rep.split_fraction(sc) - expected)) < tol, (sc, rep.split_fraction(sc), expected)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["zeta5", "qi", "qzeta3"])
def test_galois_fields_have_no_almost_split_primes(scans_1e6, name):
    assert scans_1e6[name].split_counts[SplitClass.AlmostNotCompletely] == 0


@pytest.mark.slow
def test_zeta5_verdicts_at_1e6(scans_1e6):
    rep = scans_1e6["zeta5"]
    assert rep.reduction_counts[ReductionType.Undetermined] == 0
    for row in rep.rows:
        if not row.excluded:
            assert (row.reduction is ReductionType.Ordinary) == (row.p % 5 == 1)


@pytest.mark.slow
def test_d4_hodge_witt_at_least_gtr(scans_1e6):
    rep = scans_1e6["d4"]
    tol = chebotarev_tolerance(rep.total)
    assert float(rep.hodge_witt_fraction()) > 3 / 8 - tol
    assert abs(float(rep.reduction_fraction(ReductionType.Ordinary)) - 1 / 8) < tol


def test_table_orders_small_exhaustive():
    # every built-in group really acts transitively on its points
    for name, gens in GENERATORS.items():
        group = _generate(gens)
        n = len(gens[0])
        assert {g[0] for g in group} == set(range(n)), name
    assert all(len(_generate(g)) == BUILTIN_TABLES[k].order for k, g in GENERATORS.items())
    assert len(list(itertools.permutations(range(4)))) == BUILTIN_TABLES["S4"].order
