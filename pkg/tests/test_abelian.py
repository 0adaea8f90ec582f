"""Finitely generated abelian groups and twisted class counts."""

import pytest

from bstwist.abelian import (
    AbelianGroup, AbelianMap, fixed_functional, twisted_class_count,
)
from bstwist.errors import ShapeMismatch


class TestAbelianGroup:
    def test_orders_with_free_slot(self):
        g = AbelianGroup(torsion=(0,), rank=1)
        assert g.orders() == (0, 0)
        assert g.describe() == "Z + Z"

    def test_reduce(self):
        g = AbelianGroup(torsion=(4,), rank=1)
        assert g.reduce((7, -3)) == (3, -3)

    def test_presentation(self):
        g = AbelianGroup(torsion=(4,), rank=1)
        assert g.presentation().entries == ((4, 0), (0, 0))


class TestAbelianMap:
    def test_from_columns_reduces(self):
        g = AbelianGroup(torsion=(3,), rank=1)
        f = AbelianMap.from_columns(g, [(5, 0), (1, 2)])
        assert f.column(0) == (2, 0)

    def test_apply(self):
        g = AbelianGroup(torsion=(), rank=2)
        f = AbelianMap.from_columns(g, [(2, 0), (1, 1)])
        assert f.apply((1, 1)) == (3, 1)

    def test_equality_mod_torsion(self):
        g = AbelianGroup(torsion=(3,), rank=1)
        f1 = AbelianMap.from_columns(g, [(1, 0), (0, 1)])
        f2 = AbelianMap.from_columns(g, [(4, 0), (3, 1)])
        assert f1 == f2

    def test_shape_check(self):
        g = AbelianGroup(torsion=(3,), rank=1)
        with pytest.raises(ShapeMismatch):
            AbelianMap.from_columns(g, [(1, 0)])


class TestTwistedCount:
    def test_multiplication_on_Z(self):
        # alpha ~ alpha + (k - 1) tau on Z: |k - 1| classes
        g = AbelianGroup(rank=1)
        identity = AbelianMap.identity(g)
        for k in (-2, 0, 3, 5):
            f = AbelianMap.from_columns(g, [(k,)])
            assert twisted_class_count(f, identity) == abs(k - 1)

    def test_identity_on_Z_is_infinite(self):
        g = AbelianGroup(rank=1)
        identity = AbelianMap.identity(g)
        assert twisted_class_count(identity, identity) is None

    def test_torsion_contributes(self):
        # on Z_4 + Z, f = 3 on each: (g - f) = diag(-2, -2);
        # classes: gcd(4, 2) * 2 = 4
        g = AbelianGroup(torsion=(4,), rank=1)
        f = AbelianMap.from_columns(g, [(3, 0), (0, 3)])
        identity = AbelianMap.identity(g)
        assert twisted_class_count(f, identity) == 4

    def test_identity_on_finite_group_counts_elements(self):
        g = AbelianGroup(torsion=(6,), rank=0)
        identity = AbelianMap.identity(g)
        assert twisted_class_count(identity, identity) == 6

    def test_symmetric_in_arguments(self):
        g = AbelianGroup(torsion=(4,), rank=1)
        f = AbelianMap.from_columns(g, [(1, 0), (2, 5)])
        h = AbelianMap.from_columns(g, [(3, 0), (0, 1)])
        assert twisted_class_count(f, h) == twisted_class_count(h, f)


class TestFixedFunctional:
    def test_certifies_infinite(self):
        g = AbelianGroup(torsion=(4,), rank=1)
        identity = AbelianMap.identity(g)
        assert twisted_class_count(identity, identity) is None
        functional = fixed_functional(identity, identity)
        assert functional is not None and any(functional)
        # lam must kill torsion and the difference map (here zero)
        assert functional[0] % 1 == 0
        lam_of_torsion = functional[0] * 4
        assert lam_of_torsion % 4 == 0

    def test_functional_kills_difference(self):
        g = AbelianGroup(rank=2)
        f = AbelianMap.from_columns(g, [(1, 0), (2, 1)])
        identity = AbelianMap.identity(g)
        assert twisted_class_count(f, identity) is None
        lam = fixed_functional(f, identity)
        assert lam is not None
        diff = identity.matrix - f.matrix
        for j in range(2):
            assert sum(lam[i] * diff[i, j] for i in range(2)) == 0

    def test_none_when_finite(self):
        g = AbelianGroup(rank=1)
        f = AbelianMap.from_columns(g, [(3,)])
        identity = AbelianMap.identity(g)
        assert twisted_class_count(f, identity) == 2
        assert fixed_functional(f, identity) is None
