from __future__ import annotations

import itertools
import json

import pytest

from m2codes.chainring import ChainElem
from m2codes.errors import NotInImage
from m2codes.exactalg import Fp2Elem
from m2codes.matring import Mat2, all_matrices
from m2codes.structure import (
    chain_ideal_lattice,
    check_tau_homomorphism,
    decompose_u,
    decompose_v,
    frobenius_conjugation_check,
    phi,
    phi_inv,
    special_matrices,
    tau,
    tau_inv,
    u_matrix,
    verify_isometry,
)
from m2codes.weights import bachoc_weight, lee_weight

from oracles import b_set, det, matrices


def M(rows, p):
    return Mat2.from_rows(rows, p)


def test_tau_examples():
    assert tau(Fp2Elem(2, 1, 3)) == M([[2, 1], [1, 1]], 3)
    assert tau(Fp2Elem.one(7)) == Mat2.identity(7)
    assert tau(Fp2Elem.omega(2)) == M([[0, 1], [1, 1]], 2)


def test_tau_inv():
    assert tau_inv(M([[1, 2], [2, 2]], 3)) == Fp2Elem(1, 2, 3)
    assert tau_inv(Mat2.identity(7)) == Fp2Elem.one(7)
    with pytest.raises(NotInImage):
        tau_inv(M([[1, 0], [0, 0]], 2))


@pytest.mark.parametrize("p", [2, 3, 7, 13])
def test_tau_homomorphism(p):
    assert check_tau_homomorphism(p)


@pytest.mark.parametrize("p", [2, 3])
def test_tau_against_oracle(p):
    from oracles import fp2_mul
    for x, y in itertools.product(itertools.product(range(p), repeat=2), repeat=2):
        lhs = tau(Fp2Elem(*x, p)) @ tau(Fp2Elem(*y, p))
        assert lhs == tau(Fp2Elem(*fp2_mul(x, y, p), p))


@pytest.mark.parametrize("p", [2, 3, 7, 13])
def test_special_matrices(p):
    s = special_matrices(p)
    I, Z = Mat2.identity(p), Mat2.zero(p)
    assert s.v @ s.v == I
    assert s.u @ s.u == Z
    assert s.u == s.v + s.i == u_matrix(p)
    tw = tau(Fp2Elem.omega(p))
    assert tw @ tw + tw + Mat2.scalar(p - 1, p) == Z


@pytest.mark.parametrize("p", [2, 3, 7, 13])
def test_frobenius_conjugation(p):
    assert frobenius_conjugation_check(p)
    assert tau(Fp2Elem.omega(p)) ** p == M([[p - 1, p - 1], [p - 1, 0]], p)


def test_decompose_u_examples():
    d = decompose_u(M([[1, 1], [0, 1]], 3))
    assert (d.x, d.y) == (Fp2Elem(1, 1, 3), Fp2Elem(1, 2, 3))
    x = Fp2Elem(3, 5, 7)
    d = decompose_u(tau(x))
    assert (d.x, d.y) == (x, Fp2Elem.zero(7))
    d = decompose_u(u_matrix(2))
    assert (d.x, d.y) == (Fp2Elem.zero(2), Fp2Elem.one(2))


def test_decompose_v_examples():
    x = Fp2Elem(4, 1, 7)
    assert decompose_v(tau(x)) == (x, Fp2Elem.zero(7))
    assert decompose_v(special_matrices(2).v) == (Fp2Elem.zero(2), Fp2Elem.one(2))


@pytest.mark.parametrize("p", [2, 3, 7])
def test_decompositions_are_bijections(p):
    s = special_matrices(p)
    us, vs = set(), set()
    for A in all_matrices(p):
        d = decompose_u(A)
        assert d.reassemble() == A
        us.add(d)
        x, y = decompose_v(A)
        assert tau(x) + s.v @ tau(y) == A
        vs.add((x, y))
    assert len(us) == len(vs) == p ** 4


def test_phi_examples():
    assert phi(M([[1, 1], [1, 0]], 2)) == ChainElem.make(1, 1, 0, 0, 2)
    assert phi(M([[1, 1], [0, 1]], 3)) == ChainElem.make(1, 1, 1, 2, 3)
    assert phi(Mat2.zero(7)) == ChainElem.zero(7)
    assert phi_inv(ChainElem.make(1, 1, 1, 2, 3)) == M([[1, 1], [0, 1]], 3)
    assert phi_inv(ChainElem.u(7)) == u_matrix(7)


@pytest.mark.parametrize("p", [2, 3])
def test_phi_linearity(p):
    mats = list(all_matrices(p))
    for A, B in itertools.product(mats, repeat=2):
        assert phi(A + B) == phi(A) + phi(B)
    for A in mats:
        assert phi_inv(phi(A)) == A
        for lam in range(p):
            assert phi(tau(Fp2Elem(lam, 0, p)) @ A) == phi(A) * lam


@pytest.mark.parametrize("p", [2, 3, 7])
def test_phi_of_u_decomposition(p):
    u = u_matrix(p)
    for z in ChainElem.all(p):
        assert phi(tau(z.x) + u @ tau(z.y)) == z


def test_isometry_p2():
    rep = verify_isometry(2)
    assert rep.isometric and rep.agree == 16
    assert rep.b_set_size == rep.gl_size == rep.preimage_size == 6


@pytest.mark.parametrize("p", [3, 7])
def test_isometry_report_consistent(p):
    rep = verify_isometry(p)
    # oracle: recount mismatches straight from the definitions
    B = b_set(p)
    expected = []
    for A in matrices(p):
        Ap = M(A, p)
        z = phi(Ap).coords
        wl = 0 if z == (0, 0, 0, 0) else (1 if z in B else p)
        wb = 0 if Ap.is_zero() else (1 if det(A, p) else p)
        if wb != wl:
            expected.append(Ap)
    assert [A for A, _, _ in rep.mismatches] == sorted(expected, key=lambda A: A.index)
    assert rep.agree + len(rep.mismatches) == p ** 4
    assert rep.b_set_size == p * (p * p - 1)
    assert rep.gl_size == p * (p - 1) * (p * p - 1)
    assert json.dumps(rep.to_json()) == json.dumps(verify_isometry(p).to_json())


def test_isometry_p3_not_isometric():
    rep = verify_isometry(3)
    assert not rep.isometric
    A, wb, wl = rep.mismatches[0]
    assert (wb, wl) == (bachoc_weight(A), lee_weight(phi(A)))


@pytest.mark.parametrize("p", [2, 3])
def test_chain_ideal_lattice(p):
    rep = chain_ideal_lattice(p)
    assert rep["sizes"] == [1, p * p, p ** 4]
    assert rep["verified_by_enumeration"] is True
    u_ideal = rep["ideals"][1]
    assert all(a * b == ChainElem.zero(p) for a in u_ideal for b in u_ideal)


@pytest.mark.parametrize("p", [2, 3])
def test_chain_multiplication_against_matrix_free_oracle(p):
    from oracles import fp2_mul
    for z1, z2 in itertools.product(ChainElem.all(p), repeat=2):
        (a, b, c, d), (e, f, g, h) = z1.coords, z2.coords
        x = fp2_mul((a, b), (e, f), p)
        y1, y2 = fp2_mul((a, b), (g, h), p), fp2_mul((c, d), (e, f), p)
        assert (z1 * z2).coords == (*x, (y1[0] + y2[0]) % p, (y1[1] + y2[1]) % p)
