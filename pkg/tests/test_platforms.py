"""Constructor validation and per-platform structure checks."""

import numpy as np
import pytest

import sdpke.matrices as mx
from sdpke.errors import ParameterError
from sdpke.groups import load_group
from sdpke.holomorph import sdp_exp
from sdpke.permutations import Permutation
from sdpke.platforms import (
    GLParams,
    GroupRingParams,
    MakeParams,
    MobsParams,
    TropicalParams,
    cycle_permutation,
    params_from_obj,
    random_gl_params,
    random_groupring_params,
    random_make_params,
    random_mobs_params,
    random_tropical_params,
)
from sdpke.semirings import BitStrings, GroupRingScalars, IntegersMod, TropicalIntegers

S3 = load_group("s3")


# ---------------------------------------------------------------------------
# group ring platform


def test_groupring_phi_fixes_identity(rng):
    p = random_groupring_params(rng).build()
    eye = mx.identity(p.g.ring, 3)
    assert p.phi(eye) == eye


def test_groupring_a5_platform_works(rng):
    # the slow bundled configuration: 540-dimensional ambient space
    from sdpke.protocol import run_exchange

    params = random_groupring_params(rng, group="a5")
    p = params.build()
    assert mx.flatten(p.g).shape == (540,)
    _, agreed = run_exchange(p, rng, exponent_bits=16)
    assert agreed


def test_groupring_singular_conjugator_rejected(rng):
    ring = GroupRingScalars(S3, 7)
    params = GroupRingParams(
        modulus=7, group=S3, size=3, conjugator=mx.zeros(ring, 3, 3), base=mx.identity(ring, 3)
    )
    with pytest.raises(ParameterError, match="singular"):
        params.build()


def test_groupring_commuting_base_rejected(rng):
    good = random_groupring_params(rng)
    bad = GroupRingParams(
        modulus=7, group=S3, size=3, conjugator=good.conjugator, base=good.conjugator
    )
    with pytest.raises(ParameterError, match="commutes"):
        bad.build()
    # explicitly allowed when requested (for experiments)
    assert bad.build(allow_commuting=True).name == "groupring"


def test_groupring_composite_modulus_rejected(rng):
    ring = GroupRingScalars(S3, 6)
    params = GroupRingParams(
        modulus=6, group=S3, size=3, conjugator=mx.identity(ring, 3), base=mx.identity(ring, 3)
    )
    with pytest.raises(ParameterError, match="prime"):
        params.build()


# ---------------------------------------------------------------------------
# GL platform


@pytest.mark.parametrize("gen", [random_groupring_params, random_gl_params], ids=["groupring", "gl"])
def test_conjugation_power_rep_matches_explicit_powers(gen, rng):
    from sdpke.platforms import groupring_inverse

    params = gen(rng)
    p = params.build()
    h = params.conjugator
    h_inv = mx.inverse(h) if params.kind == "gl" else groupring_inverse(h)
    h_x, h_inv_x = h, h_inv
    for x in range(1, 65):
        assert p.phi.power(x)(p.g) == h_inv_x @ p.g @ h_x
        h_x, h_inv_x = h_x @ h, h_inv_x @ h_inv


def test_gl_default_size_is_3(rng):
    params = random_gl_params(rng)
    assert params.size == 3 and params.prime == 1009
    p = params.build()
    assert p.g.shape == (3, 3)
    assert mx.try_inverse(params.base) is not None


def test_gl_singular_conjugator_rejected():
    ring = IntegersMod(1009)
    params = GLParams(prime=1009, size=3, conjugator=mx.zeros(ring, 3, 3), base=mx.identity(ring, 3))
    with pytest.raises(ParameterError, match="singular"):
        params.build()


def test_gl_composite_modulus_rejected(rng):
    ring = IntegersMod(1000)
    params = GLParams(prime=1000, size=2, conjugator=mx.identity(ring, 2), base=mx.identity(ring, 2))
    with pytest.raises(ParameterError, match="prime"):
        params.build()


# ---------------------------------------------------------------------------
# tropical platform


def test_tropical_phi_respects_min(rng):
    p = random_tropical_params(rng, size=4).build()
    for _ in range(20):
        g1 = p.random_element(rng)
        g2 = p.random_element(rng)
        assert p.phi(g1 + g2) == p.phi(g1) + p.phi(g2)


def test_tropical_1x1_sequence():
    ring = TropicalIntegers()
    params = TropicalParams(
        size=1,
        entry_lo=-10,
        entry_hi=10,
        star_matrix=mx.from_rows(ring, [[-1]]),
        base=mx.from_rows(ring, [[5]]),
    )
    p = params.build()
    assert [int(sdp_exp(p, n).value.data[0, 0]) for n in (1, 2, 3)] == [5, -1, -2]


def test_tropical_sequence_entrywise_nonincreasing(rng):
    from sdpke.holomorph import HolomorphPower, holo_mul

    p = random_tropical_params(rng).build()
    base = HolomorphPower(p.g, p.phi, 1)
    cur = base
    for _ in range(500):
        nxt = holo_mul(p, cur, base)
        assert np.all(nxt.value.data <= cur.value.data)
        cur = nxt


# ---------------------------------------------------------------------------
# additive platform


def test_make_exponent_one_is_base(rng):
    params = random_make_params(rng, prime=101)
    p = params.build()
    assert sdp_exp(p, 1).value == params.base


def test_make_matches_summation_oracle(rng):
    params = random_make_params(rng, prime=101)
    p = params.build()
    h1, h2, m = params.left_factor, params.right_factor, params.base
    acc = m
    h1_i, h2_i = h1, h2
    for n in range(1, 21):
        assert sdp_exp(p, n).value == acc
        acc = acc + (h1_i @ m @ h2_i)
        h1_i, h2_i = h1_i @ h1, h2_i @ h2


def test_make_invertible_factor_rejected(rng):
    ring = IntegersMod(101)
    good = random_make_params(rng, prime=101)
    bad = MakeParams(
        prime=101,
        size=3,
        left_factor=mx.identity(ring, 3),
        right_factor=good.right_factor,
        base=good.base,
    )
    with pytest.raises(ParameterError, match="non-invertible"):
        bad.build()


def test_make_op_commutative_and_linear_in_base(rng):
    params = random_make_params(rng, prime=101)
    p = params.build()
    a, b = p.random_element(rng), p.random_element(rng)
    assert p.op(a, b) == p.op(b, a)
    # a_n is linear in the base element
    ring = params.ring()
    m1 = mx.random_matrix(rng, ring, 3, 3)
    m2 = mx.random_matrix(rng, ring, 3, 3)
    n = 17

    def a_n(base):
        q = MakeParams(
            prime=101, size=3, left_factor=params.left_factor,
            right_factor=params.right_factor, base=base,
        ).build()
        return sdp_exp(q, n).value

    assert a_n(m1 + m2) == a_n(m1) + a_n(m2)


# ---------------------------------------------------------------------------
# OR/AND platform


def test_mobs_identity_permutation_degenerates_to_dh(rng):
    ring = BitStrings(4)
    params = MobsParams(
        size=2, bits=4, bit_permutation=Permutation.identity(4),
        base=mx.random_matrix(rng, ring, 2, 2),
    )
    p = params.build()
    v = p.random_element(rng)
    assert p.phi(v) == v


def test_mobs_automorphism_order_is_product_of_primes(rng):
    params = random_mobs_params(rng)
    assert params.bit_permutation.order() == 2 * 3 * 5 * 7 * 11


def test_mobs_nonprime_cycle_rejected(rng):
    ring = BitStrings(4)
    params = MobsParams(
        size=2, bits=4, bit_permutation=cycle_permutation((4,)),
        base=mx.random_matrix(rng, ring, 2, 2),
    )
    with pytest.raises(ParameterError, match="prime"):
        params.build()


def test_mobs_key_agreement_10bit(rng):
    from sdpke.protocol import run_exchange

    params = random_mobs_params(rng, size=3, cycle_lengths=(2, 3, 5))
    assert params.bits == 10
    p = params.build()
    for _ in range(100):
        _, agreed = run_exchange(p, rng, exponent_bits=16)
        assert agreed


def test_mobs_or_monotonicity(rng):
    # ORing more bits into the base can only add bits to every sequence term
    params = random_mobs_params(rng, size=2, cycle_lengths=(2, 3))
    extra = mx.random_matrix(rng, params.ring(), 2, 2)
    richer = MobsParams(
        size=2, bits=params.bits, bit_permutation=params.bit_permutation,
        base=params.base + extra,
    )
    p0, p1 = params.build(), richer.build()
    for n in (1, 2, 3, 5, 9, 17):
        lo = sdp_exp(p0, n).value
        hi = sdp_exp(p1, n).value
        assert hi + lo == hi


# ---------------------------------------------------------------------------
# serialization


@pytest.mark.parametrize(
    "gen",
    [
        random_groupring_params,
        random_gl_params,
        random_tropical_params,
        lambda rng: random_make_params(rng, prime=101),
        random_mobs_params,
    ],
    ids=["groupring", "gl", "tropical", "make", "mobs"],
)
def test_params_round_trip(gen, rng):
    params = gen(rng)
    again = params_from_obj(params.to_obj())
    assert again == params
    assert again.build().g == params.build().g


def test_groupring_params_with_inline_group_table(rng):
    from sdpke.groups import cyclic_group

    c5 = cyclic_group(5)
    ring = GroupRingScalars(c5, 7)
    params = random_groupring_params(rng, group=c5, size=2)
    obj = params.to_obj()
    assert isinstance(obj["group"], dict)  # not a bundled name
    again = params_from_obj(obj)
    assert again.group == c5


def test_unknown_kind_rejected():
    with pytest.raises(ParameterError, match="unknown platform kind"):
        params_from_obj({"kind": "nope"})
