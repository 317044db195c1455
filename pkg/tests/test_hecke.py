from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bisemi.exactalg import Mat2Q, QuadNum, eigen_quad
from bisemi.hecke import (
    HeckeParams,
    coset_matrix,
    decomposition_element,
    eigenvalues,
    frobenius_eigenvalues,
    split_cartan,
    translate_to_origin,
    unipotent,
)


def test_coset_matrix_examples():
    assert coset_matrix(HeckeParams(2, 1, 1)) == Mat2Q(2, 4, 1, 4)
    assert coset_matrix(HeckeParams(7, 0, 1)) == Mat2Q.diag(1, 49)
    assert coset_matrix(HeckeParams(3, 2, 1)) == Mat2Q(5, 18, 2, 9)


def test_coset_matrix_is_explicit_product():
    # (u(b) u(b)^T) diag(1, q^2) written out entrywise
    for q, b, N in [(2, 1, 1), (3, 2, 4), (5, 0, 2)]:
        qn, bn = q * N, b * N
        assert coset_matrix(HeckeParams(q, b, N)) == Mat2Q(1 + bn**2, bn * qn**2, bn, qn**2)


def test_eigenvalue_examples():
    e = eigenvalues(HeckeParams(2, 1, 1))
    assert (e.plus, e.minus, e.trace, e.det) == (QuadNum(3, 1, 5), QuadNum(3, -1, 5), 6, 4)
    e = eigenvalues(HeckeParams(6, 0, 1))
    assert (e.plus, e.minus) == (36, 1)
    e = eigenvalues(HeckeParams(1, 0, 1))
    assert e.plus == e.minus == 1


def test_frobenius_examples():
    e = frobenius_eigenvalues(2, 0)
    assert (e.plus, e.minus) == (4, 1)
    assert tuple(frobenius_eigenvalues(2, 1)) == (QuadNum(3, 1, 5), QuadNum(3, -1, 5))
    e = frobenius_eigenvalues(5, 2)
    assert (e.trace, e.det) == (30, 25)
    assert (e.plus, e.minus) == (QuadNum(15, 10, 2), QuadNum(15, -10, 2))


def test_decomposition_element_examples():
    assert decomposition_element(1) == Mat2Q(2, 1, 1, 1)
    assert decomposition_element(0) == Mat2Q.identity()
    assert decomposition_element(3) == Mat2Q(10, 3, 3, 1)
    assert all(decomposition_element(b).det() == 1 for b in (0, 1, 3))


def test_translate_examples():
    r, cent = translate_to_origin(eigenvalues(HeckeParams(2, 1, 1)))
    assert (r, cent) == (3, QuadNum(0, 1, 5))
    assert translate_to_origin(eigenvalues(HeckeParams(1, 0, 1))) == (1, 0)
    assert translate_to_origin(eigenvalues(HeckeParams(3, 0, 1))) == (5, 4)


def test_params_validation():
    with pytest.raises(ValueError):
        HeckeParams(0)
    with pytest.raises(ValueError):
        HeckeParams(1, -1)
    p = HeckeParams(3, 2, 5)
    assert (p.q_N, p.b_N) == (15, 10)


params = st.builds(HeckeParams, st.integers(1, 60), st.integers(0, 60), st.sampled_from([1, 2, 3, 5, 10]))


@given(params)
def test_closed_form_matches_matrix_route(p):
    e = eigenvalues(p)
    assert (e.plus, e.minus) == eigen_quad(coset_matrix(p))
    assert e.trace == 1 + p.b_N**2 + p.q_N**2
    assert e.det == p.q_N**2
    assert e.plus + e.minus == e.trace and e.plus * e.minus == e.det


@given(st.integers(0, 10**6))
def test_decomposition_unimodular(b):
    assert decomposition_element(b).det() == 1


@given(params)
def test_decomposition_acts_on_cartan(p):
    # D @ alpha reproduces the coset representative and keeps det = q_N^2
    m = decomposition_element(p.b_N) @ split_cartan(p.q_N**2)
    assert m == coset_matrix(p)
    assert m.det() == p.q_N**2
    assert unipotent(p.b_N) @ unipotent(p.b_N).transpose() == decomposition_element(p.b_N)


@given(params)
def test_translate_round_trip(p):
    e = eigenvalues(p)
    r, cent = translate_to_origin(e)
    assert r == F(e.trace) / 2
    assert (r + cent, r - cent) == (e.plus, e.minus)


@given(st.integers(1, 80), st.integers(0, 80))
def test_frobenius_char_poly(q, b):
    e = frobenius_eigenvalues(q, b)
    for lam in e:
        assert lam * lam - e.trace * lam + q * q == 0
