"""Translation machinery: presentations, tau in both directions, orbits."""

import pytest

from tauforge.artrans import (
    NotIndecomposable,
    classify_module,
    default_window,
    is_tau_locally_free,
    is_zero_rep,
    minimal_presentation,
    tau,
    tau_inverse,
    tau_orbit,
    tau_period,
    tau_power,
)
from tauforge.linalg import Field
from tauforge.modrep import (
    direct_sum,
    free_simple,
    image_dims,
    rank_vector,
    rep_equal,
    is_isomorphic,
)
from tauforge.pathalg import build_injective, build_projective
from tauforge.cartan import delta
from tauforge.rootsys import coxeter_data
from tauforge.zoo import build_named, named_datum

Q = Field.rational()


def b3():
    return named_datum("Bn", n=3)


# ---------------------------------------------------------------------------
# Projectives and injectives are the orbit endpoints


def test_tau_kills_projectives():
    cd = b3()
    for v in cd.vertices:
        P = build_projective(cd, Q, v)
        assert tau(P).is_zero


def test_tau_inverse_kills_injectives():
    cd = b3()
    for v in cd.vertices:
        I = build_injective(cd, Q, v)
        assert tau_inverse(I).is_zero


def test_tau_round_trip_on_non_projective():
    cd = b3()
    E2 = free_simple(cd, Q, 2)
    T = tau(E2).module
    back = tau_inverse(T).module
    assert is_isomorphic(back, E2).verdict == "yes"


# ---------------------------------------------------------------------------
# Rank transport agrees with the Coxeter transformation


def test_tau_rank_is_coxeter_image():
    cd = b3()
    cox = coxeter_data(cd)
    E2 = free_simple(cd, Q, 2)
    seen = rank_vector(E2)
    cur = E2
    for k in range(1, 4):
        cur = tau(cur).module
        assert not is_zero_rep(cur)
        assert rank_vector(cur) == cox.c_apply(seen, k)
    # period three: back to the start
    assert rank_vector(cur) == rank_vector(E2)


def test_tau_power_matches_iteration():
    _, Z = build_named("G21.Z")
    one = tau(Z).module
    two = tau(one).module
    assert rep_equal(tau_power(Z, 2), two)
    assert is_isomorphic(two, Z).verdict == "yes"


# ---------------------------------------------------------------------------
# Minimal presentations


def test_minimal_presentation_is_presentation():
    cd = b3()
    E2 = free_simple(cd, Q, 2)
    pres = minimal_presentation(E2)
    assert pres.cover.is_valid()
    # surjective cover
    assert image_dims(pres.cover) == E2.dims
    f = pres.p1_morphism()
    assert f.is_valid()
    # composite P1 -> P0 -> M vanishes
    comp = {v: pres.cover.blocks[v] @ f.blocks[v] for v in cd.vertices}
    assert all(m.is_zero() for m in comp.values())


def test_presentation_of_projective_has_no_relations():
    cd = b3()
    P = build_projective(cd, Q, 3)
    pres = minimal_presentation(P)
    assert pres.gens0 == (3,)
    assert pres.gens1 == ()


# ---------------------------------------------------------------------------
# Orbits, periods, local freeness


def test_tau_orbit_period_and_ranks():
    cd, Z = build_named("G21.Z")
    orbit = tau_orbit(Z)
    assert orbit.period == 2
    assert orbit.member(0).rank == delta(cd)
    assert orbit.member(1) is not None
    assert orbit.member(1).rank == coxeter_data(cd).c_apply(delta(cd), 1)


def test_orbit_of_projective_terminates():
    cd = b3()
    P1 = build_projective(cd, Q, 1)
    orbit = tau_orbit(P1, window=6)
    assert orbit.member(1) is None          # tau P = 0, forward stops
    assert orbit.member(-1) is not None     # tau^- P lives
    assert orbit.period is None


def test_is_tau_locally_free_verified_with_period():
    cd = b3()
    E2 = free_simple(cd, Q, 2)
    report = is_tau_locally_free(E2)
    assert report.status == "verified"
    assert report.period == 3


def test_is_tau_locally_free_rejects_decomposable():
    _, Z = build_named("G21.Z")
    with pytest.raises(NotIndecomposable):
        is_tau_locally_free(direct_sum([Z, Z]))


def test_tau_period_values():
    _, Z3 = build_named("Bn.Z", n=3)
    assert tau_period(Z3, cap=4) == 3
    _, ZG = build_named("G21.Z")
    assert tau_period(ZG, cap=3) == 2
    cd = b3()
    assert tau_period(build_projective(cd, Q, 1), cap=3) is None


def test_default_window_positive():
    assert default_window(b3()) > 0
    assert default_window(named_datum("G21")) > 0


# ---------------------------------------------------------------------------
# Classification through rank vectors


def test_classify_module_kinds():
    cd, Z = build_named("G21.Z")
    reg = classify_module(Z)
    assert reg.kind == "regular"
    assert reg.period == 1          # delta is Coxeter-fixed
    P = build_projective(cd, Q, 1)
    pp = classify_module(P)
    assert pp.kind == "preprojective"
    assert pp.r == 0 and pp.vertex == 1
    I = build_injective(cd, Q, 3)
    pi = classify_module(I)
    assert pi.kind == "preinjective"
    assert pi.r == 0 and pi.vertex == 3
