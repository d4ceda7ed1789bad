import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reduction_scope.config import builtin_field
from reduction_scope.errors import ConsistencyError, DomainError
from reduction_scope.numberfield import (
    NumberField,
    SplitClass,
    SplittingPattern,
    classify_split,
    inert_count_over_p,
    poly_discriminant,
    resultant,
    splitting_pattern,
)
from reduction_scope.primes import is_prime, primes_in_range, primes_up_to

QI = NumberField((1, 0, 1))
ZETA5 = NumberField((1, 1, 1, 1, 1))
D4 = NumberField((89, 0, 134, 0, 1))
K0_D4 = NumberField((-11, 0, 1))
PRIMES_1E4 = primes_up_to(10**4)


def legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


# --- examples


@pytest.mark.parametrize(
    "K,p,degrees",
    [(QI, 5, (1, 1)), (QI, 3, (2,)), (ZETA5, 7, (4,)), (ZETA5, 11, (1, 1, 1, 1))],
)
def test_splitting_pattern_examples(K, p, degrees):
    pat = splitting_pattern(K, p)
    assert not pat.ramified
    assert tuple(sorted(pat.degrees)) == degrees


def test_ramified_prime_flagged():
    pat = splitting_pattern(QI, 2)
    assert pat.ramified and pat.degrees == ()
    assert classify_split(pat, 2) is SplitClass.RamifiedOrBad


def test_composite_rejected():
    with pytest.raises(DomainError):
        splitting_pattern(QI, 15)


@pytest.mark.parametrize(
    "degrees,n,expected",
    [
        ((1, 1, 1, 1), 4, SplitClass.CompletelySplit),
        ((1, 1, 2), 4, SplitClass.AlmostNotCompletely),
        ((2, 2), 4, SplitClass.Other),
        ((2,), 2, SplitClass.Other),
        ((1, 1), 2, SplitClass.CompletelySplit),
    ],
)
def test_classify_split_examples(degrees, n, expected):
    assert classify_split(SplittingPattern(7, degrees), n) is expected


def test_classify_split_degree_mismatch():
    with pytest.raises(ConsistencyError):
        classify_split(SplittingPattern(7, (1, 1)), 4)


def test_inert_count_examples():
    assert inert_count_over_p(SplittingPattern(7, (1,) * 6), SplittingPattern(7, (1, 1, 1))) == 0
    assert inert_count_over_p(SplittingPattern(7, (1, 1, 1, 1, 2)), SplittingPattern(7, (1, 1, 1))) == 1
    assert inert_count_over_p(SplittingPattern(7, (2, 2)), SplittingPattern(7, (1, 1))) == 2


def test_inert_count_rejects_inconsistent():
    with pytest.raises(ConsistencyError):
        inert_count_over_p(SplittingPattern(7, (1, 1, 1, 1)), SplittingPattern(7, (2,)))
    with pytest.raises(ConsistencyError):
        inert_count_over_p(SplittingPattern(7, (1, 1)), SplittingPattern(11, (1,)))
    with pytest.raises(ConsistencyError):
        inert_count_over_p(SplittingPattern(7, (), True), SplittingPattern(7, (1,)))


# --- discriminants


def test_discriminants():
    assert poly_discriminant((1, 0, 1)) == -4
    assert poly_discriminant((1, 1, 1, 1, 1)) == 125
    # biquadratic x^4 + a x^2 + b: 16 b (a^2 - 4b)^2
    assert D4.disc_poly == 16 * 89 * (134**2 - 4 * 89) ** 2 == 441098240000
    assert resultant((1, 0, 1), (-1, 1)) == 2


def test_field_validation():
    with pytest.raises(DomainError):
        NumberField((2, 0, 2))  # not monic
    with pytest.raises(DomainError):
        NumberField((-1, 0, 1))  # rational roots
    with pytest.raises(DomainError):
        NumberField((4, 0, 4, 0, 1))  # (x^2+2)^2


# --- quadratic reciprocity oracle


def test_quadratic_reciprocity_oracle():
    rng = random.Random(11)
    pairs = 0
    while pairs < 100:
        d = rng.choice([-1, 1]) * rng.randint(2, 500)
        if any(d % (q * q) == 0 for q in range(2, 23)):
            continue
        p = rng.choice(PRIMES_1E4[1:])
        if (2 * d) % p == 0:
            continue
        K = NumberField((-d, 0, 1))
        sc = classify_split(splitting_pattern(K, p), 2)
        assert (sc is SplitClass.CompletelySplit) == (legendre(d, p) == 1), (d, p)
        assert sc is not SplitClass.AlmostNotCompletely
        pairs += 1


# --- degree conservation on random fields


def _try_field(coeffs):
    try:
        return NumberField(tuple(coeffs) + (1,))
    except DomainError:
        return None


fields = (
    st.integers(2, 6)
    .flatmap(lambda d: st.lists(st.integers(-20, 20), min_size=d, max_size=d))
    .map(_try_field)
    .filter(lambda K: K is not None)
)


@settings(max_examples=60, deadline=None)
@given(fields, st.sampled_from(PRIMES_1E4))
def test_degree_conservation(K, p):
    pat = splitting_pattern(K, p)
    if pat.ramified:
        assert K.disc_poly % p == 0
    else:
        assert sum(pat.degrees) == K.degree


# --- the structure of splitting in a CM field over its real subfield


def _d4_scan(bound):
    for p in primes_in_range(3, bound):
        pk, pk0 = splitting_pattern(D4, p), splitting_pattern(K0_D4, p)
        if pk.ramified or pk0.ramified:
            continue
        yield p, pk, pk0


def test_completely_split_descends_to_k0():
    for p, pk, pk0 in _d4_scan(20000):
        if classify_split(pk, 4) is SplitClass.CompletelySplit:
            assert classify_split(pk0, 2) is SplitClass.CompletelySplit


def test_almost_split_has_one_inert_prime():
    seen = 0
    for p, pk, pk0 in _d4_scan(20000):
        if classify_split(pk, 4) is SplitClass.AlmostNotCompletely:
            seen += 1
            assert classify_split(pk0, 2) is SplitClass.CompletelySplit
            assert inert_count_over_p(pk, pk0) == 1
    assert seen > 100


def _inert_oracle(p):
    """Primes of Q(sqrt 11) over p that stay inert in K = K0(sqrt(-67 + 20 sqrt 11)).

    x^4 + 134x^2 + 89 has roots x^2 = -67 +- 20 sqrt 11; a prime of K0 is inert
    in K iff the image of -67 + 20 sqrt 11 in its residue field is a non-square.
    """
    if legendre(11, p) == 1:
        roots = [r for r in range(p) if (r * r - 11) % p == 0]
        return sum(1 for r in roots if legendre(-67 + 20 * r, p) == -1)
    # residue field F_{p^2}: alpha is a square iff its norm 67^2 - 400*11 = 89 is a square in F_p
    return 1 if legendre(89, p) == -1 else 0


def test_inert_count_matches_relative_factorization():
    for p, pk, pk0 in _d4_scan(3000):
        assert inert_count_over_p(pk, pk0) == _inert_oracle(p), p


def test_d4_sample_prime_with_two_inert():
    hits = [p for p, pk, pk0 in _d4_scan(3000) if sorted(pk.degrees) == [2, 2] and pk0.degrees == (1, 1)]
    assert hits
    p = hits[0]
    assert _inert_oracle(p) == 2
    assert inert_count_over_p(splitting_pattern(D4, p), splitting_pattern(K0_D4, p)) == 2


@pytest.mark.parametrize("name", ["zeta5", "qi", "qzeta3"])
def test_galois_fields_never_almost_split(name):
    K = builtin_field(name).field
    for p in primes_in_range(2, 10**5):
        pat = splitting_pattern(K, p)
        assert classify_split(pat, K.degree) is not SplitClass.AlmostNotCompletely


def test_cyclotomic_splitting_law():
    for p in primes_in_range(7, 3000):
        order = next(k for k in range(1, 5) if pow(p, k, 5) == 1)
        assert splitting_pattern(ZETA5, p).degrees == (order,) * (4 // order)


def test_excluded_primes_d4():
    bad = [p for p in primes_up_to(1000) if D4.is_excluded(p) or K0_D4.is_excluded(p)]
    assert bad == [2, 5, 11, 89]
    assert all(is_prime(p) for p in bad)
