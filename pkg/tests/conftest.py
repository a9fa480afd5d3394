import pytest

from hvdihedral.hvcli.pipelines import classes_for


@pytest.fixture(scope="session")
def classes():
    return classes_for
