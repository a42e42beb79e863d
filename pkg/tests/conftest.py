"""
Shared fixtures: fields and the small bialgebras most tests use.
"""
import pytest

from hopfkit.exact import QQ, PrimeField
from hopfkit.services.bialgebra_service import (
    chain_monoid_table,
    cyclic_group_table,
    group_algebra,
    monoid_algebra,
    product_table,
    symmetric_group_table,
    trivial_bialgebra,
)


@pytest.fixture
def qq():
    return QQ


@pytest.fixture
def f2():
    return PrimeField(2)


@pytest.fixture
def f3():
    return PrimeField(3)


@pytest.fixture
def z2():
    return group_algebra(cyclic_group_table(2), QQ, ("g0", "g1"), "Z2")


@pytest.fixture
def z3():
    return group_algebra(cyclic_group_table(3), QQ, ("g0", "g1", "g2"), "Z3")


@pytest.fixture
def klein():
    z = cyclic_group_table(2)
    return group_algebra(product_table(z, z), QQ, (), "Z2xZ2")


@pytest.fixture
def s3():
    table, labels = symmetric_group_table(3)
    return group_algebra(table, QQ, labels, "S3")


@pytest.fixture
def idem():
    """k{1, z} with z * z = z."""
    return monoid_algebra(chain_monoid_table(2), QQ, ("1", "z"), "idem")


@pytest.fixture
def trivial():
    return trivial_bialgebra(QQ)


@pytest.fixture
def corpus_dir(tmp_path, monkeypatch):
    """Point CORPUS_DIR at an empty directory so only built-in entries resolve."""
    from hopfkit.config import settings

    monkeypatch.setattr(settings, "CORPUS_DIR", str(tmp_path / "corpus"))
    return tmp_path / "corpus"
