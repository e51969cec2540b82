import random

import pytest

from latcoh import (Chain, LatcohError, RegionTooSmallError, c_exponent_closed,
                    c_exponent_def, faults, is_in_D, map_A, map_B, r_value,
                    triangle_context, verify_ses)
from latcoh import default_region
from latcoh.lattice import get_engine
from latcoh.suites import random_graph_with_classes
from latcoh.triangle import c_window, chain_map_commutes

from conftest import chain, vertex


@pytest.fixture
def ctx1(rp3):
    return triangle_context(rp3, "a")


@pytest.fixture
def ctx2():
    return triangle_context(chain(-2, -2), "v0")


# --- r ------------------------------------------------------------------

def test_r_single_vertex(ctx1):
    # q(K, {}) - q(K + 2E_v, {}) at t = 0 is 0 - 1.
    assert r_value(ctx1, (0,), "a") == -1
    with pytest.raises(LatcohError):
        r_value(ctx1, (0,), [])


def test_r_shift_law(ctx1, ctx2):
    for ctx, k0 in ((ctx1, (0,)), (ctx2, (0, 0)), (ctx2, (0, 2))):
        vi = ctx.v_index
        smask = (1 << vi) | (1 << (1 - vi) if ctx.graph.n > 1 else 0) or (1 << vi)
        base = r_value(ctx, k0, 1 << vi)
        for j in range(-4, 5):
            k = tuple(x + (2 * j if i == vi else 0) for i, x in enumerate(k0))
            assert r_value(ctx, k, 1 << vi) == base + j


def test_r_zero_when_corners_match(ctx1):
    # t = 2 balances the two corners of the edge cube.
    assert r_value(ctx1, (2,), "a") == 0


# --- the exponent c -------------------------------------------------------

def test_c_without_v_is_quadratic(ctx2):
    for i in range(-6, 7):
        for smask in (0, 2):  # subsets avoiding v0
            assert c_exponent_def(ctx2, i, (0, 0), smask) == i * (i + 1) // 2
            assert c_exponent_closed(ctx2, i, (0, 0), smask) == i * (i + 1) // 2


def test_c_examples_with_v(ctx1):
    k = (6,)  # r = 2
    assert r_value(ctx1, k, "a") == 2
    assert c_exponent_def(ctx1, -4, k, "a") == 5
    assert c_exponent_closed(ctx1, -4, k, "a") == 5
    k0 = (2,)  # r = 0
    zeros = [i for i in range(-8, 9) if c_exponent_closed(ctx1, i, k0, "a") == 0]
    assert zeros == [-2, -1, 0]
    k2 = (6,)  # r = 2 >= max{0, -1}
    assert c_exponent_closed(ctx1, 0, k2, "a") == 0


def test_c_zero_set_matches_case_analysis(ctx1):
    # v in S: c = 0 iff (i = 0 and r >= 0) or i = -1 or (i = -2 and r <= 0).
    for t in range(-6, 10, 2):
        r = r_value(ctx1, (t,), "a")
        for i in range(-6, 7):
            expected = (i == 0 and r >= 0) or i == -1 or (i == -2 and r <= 0)
            assert (c_exponent_closed(ctx1, i, (t,), "a") == 0) == expected


def test_c_def_equals_closed_sweep(ctx2):
    for t in range(-6, 8, 2):
        for kb in range(-6, 8, 2):
            for smask in range(4):
                for i in range(-8, 9):
                    a = c_exponent_def(ctx2, i, (t, kb), smask)
                    b = c_exponent_closed(ctx2, i, (t, kb), smask)
                    assert a == b and a >= 0


def test_c_window_bound(ctx1):
    # Every i with c(i) <= m lies in the precomputed window.
    for m in range(6):
        window = set(c_window(m))
        for t in range(-4, 8, 2):
            for i in range(-12, 13):
                if c_exponent_closed(ctx1, i, (t,), "a") <= m:
                    assert i in window


def test_qprime_vs_q_corner_relation():
    # Relative weights on the raised graph differ from those on G by
    # (i + 1) exactly when the distinguished vertex enters the corner set.
    rng = random.Random(13)
    for _ in range(12):
        g = random_graph_with_classes(rng, 3, det_cap=50)
        v = g.vertices[rng.randrange(g.n)]
        ctx = triangle_context(g, v)
        vi = ctx.v_index
        eng_g = get_engine(ctx.graph)
        eng_p = get_engine(ctx.plus)
        k = tuple(w + 2 * rng.randint(-2, 2) for w in g.weights)
        for i in range(-3, 4):
            kp = tuple(x + (2 * i + 1 if j == vi else 0) for j, x in enumerate(k))
            for tmask in range(1 << g.n):
                x = tuple(1 if (tmask >> j) & 1 else 0 for j in range(g.n))
                lhs = eng_p.rel_weight(kp, x)
                rhs = eng_g.rel_weight(k, x) - (i + 1) * ((tmask >> vi) & 1)
                assert lhs == rhs


# --- the chain maps -------------------------------------------------------

def test_map_a_pair_formula(ctx2):
    # v not in S at filtration 0: the image is the adjacent pair.
    reg = default_region(ctx2, 3)
    img = map_A(ctx2, Chain.dual((1, 0), 0, 0), reg)
    assert img.terms == {((0, 0), 0, 0), ((2, 0), 0, 0)}
    assert not img.escaped


def test_map_a_three_case_display(ctx1):
    reg = default_region(ctx1, 3)
    t = 2  # r((K,t),{v}) = 0
    for i in range(-4, 5):
        img = map_A(ctx1, Chain.dual((t + 2 * i + 1,), 1, 0), reg)
        ts = sorted(term[0][0] for term in img.terms)
        if i >= 0:
            assert ts == [t + 2 * i, t + 2 * i + 2]
        elif i == -1:
            assert ts == [t]
        else:
            assert ts == [t + 2 * i + 2, t + 2 * i + 4]


def test_map_a_u_equivariance(ctx2):
    reg = default_region(ctx2, 4)
    for t0 in (1, 3, -1):
        for m in (1, 2, 4):
            e = Chain.dual((t0, 0), 1, m)
            lhs = map_A(ctx2, e.times_u(), reg)
            rhs = map_A(ctx2, e, reg).times_u()
            assert lhs.terms == rhs.terms


def test_map_b(ctx2):
    reg = default_region(ctx2, 3)
    img = map_B(ctx2, Chain.dual((0, 2), 0, 2), reg)
    assert img.terms == {((2,), 0, 2)}
    assert not map_B(ctx2, Chain.dual((0, 2), 1, 2), reg)  # v in S dies
    pair = Chain(frozenset([((0, 0), 2, 1), ((2, 0), 2, 1)]))
    assert not map_B(ctx2, pair, reg)  # equal images cancel over GF(2)


def test_is_in_d(ctx2):
    assert is_in_D(ctx2, Chain.dual((0, 0), 1, 0))          # v in S
    pair = Chain(frozenset([((0, 0), 2, 1), ((2, 0), 2, 1)]))
    assert is_in_D(ctx2, pair)
    assert not is_in_D(ctx2, Chain.dual((0, 0), 2, 1))      # odd fiber count
    mixed = pair + Chain.dual((0, 0), 1, 3)
    assert is_in_D(ctx2, mixed)


def test_kernel_membership_matches_b():
    rng = random.Random(31)
    g = chain(-2, -3)
    ctx = triangle_context(g, "v1")
    for _ in range(60):
        terms = set()
        for _ in range(rng.randint(1, 6)):
            t = g.weights[1] + 2 * rng.randint(-3, 3)
            kb = g.weights[0] + 2 * rng.randint(-2, 2)
            terms.add(((kb, t), rng.randrange(4), rng.randint(0, 3)))
        e = Chain(frozenset(terms))
        assert is_in_D(ctx, e) == (not map_B(ctx, e, None))


# --- chain-map identities and the short exact sequence ---------------------

def test_chain_maps_commute_samples(ctx2):
    reg = default_region(ctx2, 3)
    vi = ctx2.v_index
    checked = 0
    for s_off in range(-3, 4):
        for smask in range(4):
            for m in (0, 2, 3):
                kg = tuple(b + 2 * (s_off if j == vi else 0)
                           for j, b in enumerate(ctx2.base_g))
                kp = tuple(x + 1 if j == vi else x for j, x in enumerate(kg))
                for which, k in (("A", kp), ("B", kg)):
                    try:
                        assert chain_map_commutes(ctx2, reg, k, smask, m, which)
                        checked += 1
                    except ValueError:
                        pass
    assert checked > 50


def test_verify_ses_single_vertex(ctx1):
    rep = verify_ses(ctx1, default_region(ctx1, 3))
    assert rep.passed
    assert rep.dim_ker_A == 0
    assert rep.dim_im_A == rep.dim_domain
    assert rep.dim_ker_B > 0
    assert rep.b_surjective and rep.ba_zero
    assert rep.ker_b_equals_im_a and rep.ker_b_equals_d


def test_verify_ses_chain_both_vertices():
    g = chain(-2, -2)
    for v in ("v0", "v1"):
        ctx = triangle_context(g, v)
        rep = verify_ses(ctx, default_region(ctx, 3))
        assert rep.passed, rep.to_json()


def test_verify_ses_region_too_small(ctx1):
    from latcoh.triangle import TriangleRegion
    tiny = TriangleRegion(ctx1, (-3,), (3,), 3)
    with pytest.raises(RegionTooSmallError):
        verify_ses(ctx1, tiny)


def test_verify_ses_catches_b_parity_fault(ctx1):
    with faults.injected("b-parity-skip"):
        rep = verify_ses(ctx1, default_region(ctx1, 3))
    assert not rep.ba_zero
    assert not rep.passed


def test_verify_ses_report_json_round_trip(ctx1):
    import json
    rep = verify_ses(ctx1, default_region(ctx1, 3))
    doc = json.dumps(rep.to_json(), sort_keys=True)
    assert json.loads(doc)["passed"] is True


def test_map_b_u_equivariance(ctx2):
    reg = default_region(ctx2, 3)
    for t in (0, 2, -2):
        for m in (1, 3):
            e = Chain.dual((t, 0), 2, m)
            assert map_B(ctx2, e.times_u(), reg).terms == \
                map_B(ctx2, e, reg).times_u().terms
