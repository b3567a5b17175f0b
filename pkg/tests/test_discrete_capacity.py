import json
import math

import numpy as np
import pytest

from bdrelay.channel_model import Protocol
from bdrelay.discrete_capacity import (
    DiscreteChannel,
    InputGrid,
    ResourceLimitError,
    mabc_capacity_region,
    mabc_fixed_inputs_region,
    mutual_information,
    mutual_information_cond,
)
from bdrelay.protocol_bounds import PhaseSchedule
from bdrelay.rate_region import RatePair, contains, exists_point_outside
from channels import adder_mac_channel, bsc_uplinks_channel, noiseless_binary_channel

EQUAL_SPLIT = PhaseSchedule(protocol=Protocol.MABC, durations=(0.5, 0.5))

# 1 + 0.11*log2(0.11) + 0.89*log2(0.89), frozen from a direct evaluation
BSC_011_MI = 0.500084041835472


# ---------------------------------------------------------------------------
# mutual information


def test_mi_noiseless_binary():
    w = [[1.0, 0.0], [0.0, 1.0]]
    assert mutual_information([0.5, 0.5], w) == pytest.approx(1.0, abs=1e-12)


def test_mi_bsc():
    e = 0.11
    w = [[1 - e, e], [e, 1 - e]]
    assert mutual_information([0.5, 0.5], w) == pytest.approx(BSC_011_MI, abs=1e-12)


def test_mi_point_mass_input_is_zero():
    w = [[0.9, 0.1], [0.2, 0.8]]
    assert mutual_information([1.0, 0.0], w) == 0.0


def test_mi_useless_channel_is_zero():
    w = [[0.5, 0.5], [0.5, 0.5]]
    assert mutual_information([0.3, 0.7], w) == pytest.approx(0.0, abs=1e-12)


def test_mi_nonuniform_binary_entropy():
    # noiseless channel: I = H(X)
    w = [[1.0, 0.0], [0.0, 1.0]]
    p = 0.2
    h = -p * math.log2(p) - (1 - p) * math.log2(1 - p)
    assert mutual_information([p, 1 - p], w) == pytest.approx(h, abs=1e-12)


def test_mi_validation():
    with pytest.raises(ValueError):
        mutual_information([0.6, 0.6], [[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        mutual_information([0.5, 0.5], [[1, 0]])


def test_mac_mi_adder_uniform():
    ch = adder_mac_channel()
    mac = mutual_information_cond([0.5, 0.5], [0.5, 0.5], ch.uplink_active())
    assert mac.i_a_given_b == pytest.approx(1.0, abs=1e-12)
    assert mac.i_b_given_a == pytest.approx(1.0, abs=1e-12)
    assert mac.i_joint == pytest.approx(1.5, abs=1e-12)  # H(1/4, 1/2, 1/4)


def test_mac_mi_bsc_uplinks():
    e = 0.11
    mac = mutual_information_cond([0.5, 0.5], [0.5, 0.5], bsc_uplinks_channel(e).uplink_active())
    assert mac.i_a_given_b == pytest.approx(BSC_011_MI, abs=1e-12)
    assert mac.i_b_given_a == pytest.approx(BSC_011_MI, abs=1e-12)
    assert mac.i_joint == pytest.approx(2 * BSC_011_MI, abs=1e-12)


def test_mac_mi_joint_dominates_conditionals_randomly():
    rng = np.random.default_rng(40)
    for _ in range(20):
        w = rng.dirichlet(np.ones(3), size=(2, 2))
        pa = rng.dirichlet(np.ones(2))
        pb = rng.dirichlet(np.ones(2))
        mac = mutual_information_cond(pa, pb, w)
        # chain rule with independent inputs: the joint exceeds each
        # conditional term alone and never their sum
        assert mac.i_joint >= max(mac.i_a_given_b, mac.i_b_given_a) - 1e-9
        assert mac.i_joint <= mac.i_a_given_b + mac.i_b_given_a + 1e-9


# ---------------------------------------------------------------------------
# channel container


def test_channel_validates_stochastic_rows():
    ch = noiseless_binary_channel()
    up = ch.uplink.copy()
    up[1, 1, 1] += 0.5
    with pytest.raises(ValueError, match="uplink row"):
        DiscreteChannel(
            alphabets=ch.alphabets, silence_index=ch.silence_index, uplink=up, downlink=ch.downlink
        )


def test_channel_validates_half_duplex():
    ch = noiseless_binary_channel()
    up = ch.uplink.copy()
    up[1, 1] = 0.0
    up[1, 1, 0] = 1.0  # active inputs landing on the silent relay output
    with pytest.raises(ValueError, match="silent"):
        DiscreteChannel(
            alphabets=ch.alphabets, silence_index=ch.silence_index, uplink=up, downlink=ch.downlink
        )


def test_channel_validates_shapes():
    ch = noiseless_binary_channel()
    with pytest.raises(ValueError, match="shape"):
        DiscreteChannel(
            alphabets=ch.alphabets,
            silence_index=ch.silence_index,
            uplink=ch.uplink[:, :, :3],
            downlink=ch.downlink,
        )


def test_channel_json_roundtrip():
    ch = bsc_uplinks_channel(0.11)
    back = DiscreteChannel.from_json(ch.to_json())
    assert back.alphabets == ch.alphabets
    assert back.silence_index == ch.silence_index
    np.testing.assert_array_equal(back.uplink, ch.uplink)
    np.testing.assert_array_equal(back.downlink, ch.downlink)


def test_channel_json_missing_field():
    obj = json.loads(noiseless_binary_channel().to_json())
    del obj["uplink"]
    with pytest.raises(ValueError, match="missing field"):
        DiscreteChannel.from_json(json.dumps(obj))


# ---------------------------------------------------------------------------
# input grid


def test_grid_enumeration_matches_count():
    for k, n in [(1, 2), (4, 2), (3, 3), (5, 4)]:
        grid = InputGrid(resolution=k)
        dists = list(grid.distributions(n))
        assert len(dists) == grid.count(n)
        for d in dists:
            assert d.sum() == pytest.approx(1.0, abs=1e-12)
            assert np.all(d >= 0)
        # all distinct
        assert len({tuple(d) for d in dists}) == len(dists)


def test_grid_k1_is_point_masses():
    dists = {tuple(d) for d in InputGrid(resolution=1).distributions(3)}
    assert dists == {(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)}


def test_grid_rejects_bad_resolution():
    with pytest.raises(ValueError):
        InputGrid(resolution=0)


# ---------------------------------------------------------------------------
# regions


def test_noiseless_fixed_inputs_square():
    ch = noiseless_binary_channel()
    r = mabc_fixed_inputs_region(ch, [0.5, 0.5], [0.5, 0.5], [0.5, 0.5], EQUAL_SPLIT)
    # uplink sum capacity 2 bits never binds: the region is the half-bit box
    assert r.vertices == (
        RatePair(0.0, 0.0),
        RatePair(0.5, 0.0),
        RatePair(0.5, 0.5),
        RatePair(0.0, 0.5),
    )


def test_adder_fixed_inputs_pentagon():
    ch = adder_mac_channel()
    r = mabc_fixed_inputs_region(ch, [0.5, 0.5], [0.5, 0.5], [0.5, 0.5], EQUAL_SPLIT)
    assert len(r.vertices) == 5
    assert max(v.r_a + v.r_b for v in r.vertices) == pytest.approx(0.75, abs=1e-12)


def test_point_mass_input_collapses_one_rate():
    ch = noiseless_binary_channel()
    r = mabc_fixed_inputs_region(ch, [1.0, 0.0], [0.5, 0.5], [0.5, 0.5], EQUAL_SPLIT)
    assert max(v.r_a for v in r.vertices) == 0.0
    assert max(v.r_b for v in r.vertices) == pytest.approx(0.5, abs=1e-12)


def test_fixed_inputs_validates_sizes():
    ch = noiseless_binary_channel()
    with pytest.raises(ValueError):
        mabc_fixed_inputs_region(ch, [0.5, 0.25, 0.25], [0.5, 0.5], [0.5, 0.5], EQUAL_SPLIT)


def test_capacity_region_noiseless_square():
    ch = noiseless_binary_channel()
    r = mabc_capacity_region(ch, EQUAL_SPLIT, InputGrid(resolution=4))
    assert max(v.r_a for v in r.vertices) == pytest.approx(0.5, abs=1e-12)
    assert max(v.r_b for v in r.vertices) == pytest.approx(0.5, abs=1e-12)
    assert contains(r, RatePair(0.5, 0.5))


def test_capacity_region_contains_every_fixed_input_region():
    ch = adder_mac_channel()
    grid = InputGrid(resolution=3)
    cap = mabc_capacity_region(ch, EQUAL_SPLIT, grid)
    for pxa in grid.distributions(2):
        for pxb in grid.distributions(2):
            for pxr in grid.distributions(2):
                fixed = mabc_fixed_inputs_region(ch, pxa, pxb, pxr, EQUAL_SPLIT)
                assert exists_point_outside(fixed, cap) is None


def test_capacity_region_grows_with_resolution():
    ch = bsc_uplinks_channel(0.11)
    coarse = mabc_capacity_region(ch, EQUAL_SPLIT, InputGrid(resolution=2))
    fine = mabc_capacity_region(ch, EQUAL_SPLIT, InputGrid(resolution=4))
    assert exists_point_outside(coarse, fine) is None


def test_capacity_region_bsc_symmetric_corner():
    ch = bsc_uplinks_channel(0.11)
    r = mabc_capacity_region(ch, EQUAL_SPLIT, InputGrid(resolution=4))
    # uniform uplink inputs and a noiseless downlink support this corner
    corner = RatePair(BSC_011_MI / 2, BSC_011_MI / 2)
    assert contains(r, corner)


def test_enumeration_guard():
    ch = noiseless_binary_channel()
    with pytest.raises(ResourceLimitError):
        mabc_capacity_region(ch, EQUAL_SPLIT, InputGrid(resolution=220))
