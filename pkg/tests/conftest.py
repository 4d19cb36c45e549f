"""Shared fixtures: the expensive product catalog is built once per session."""
import pytest

from discdeg.bessel import ModeTable
from discdeg.burnside import BurnsideRing
from discdeg.catalog import ProductCatalog
from discdeg.elliptic import (PipelineContext, cube_problem,
                              existence_report, isotypic_spectrum)
from discdeg.permgroup import (SubgroupClassTable, cyclic_group,
                               direct_product, symmetric_group)
from discdeg.reps import RepContext

CUBE_HEADS = [1, 2, 3, 4, 6, 8, 9, 12, 18]


@pytest.fixture(scope="session")
def s4z2():
    return direct_product(symmetric_group(4), cyclic_group(2))


@pytest.fixture(scope="session")
def s4z2_table(s4z2):
    from discdeg.naming import name_subgroup_classes
    table = SubgroupClassTable(s4z2)
    name_subgroup_classes(table)
    return table


@pytest.fixture(scope="session")
def cube_pipeline(s4z2, s4z2_table):
    cat = ProductCatalog(s4z2, CUBE_HEADS, ktable=s4z2_table)
    return PipelineContext(catalog=cat, ring=BurnsideRing(cat),
                           ctx=RepContext(cat, symmetric_group(4)))


@pytest.fixture(scope="session")
def cube41():
    return cube_problem(4, 1)


@pytest.fixture(scope="session")
def cube41_spectrum(cube41):
    return isotypic_spectrum(cube41)


@pytest.fixture(scope="session")
def cube41_modes():
    return ModeTable(7.0)


@pytest.fixture(scope="session")
def cube41_report(cube41, cube_pipeline):
    return existence_report(cube41, pipeline=cube_pipeline)
