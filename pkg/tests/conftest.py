import hypothesis
import pytest

from cycloskew import build_field

hypothesis.settings.register_profile("ci", max_examples=60, deadline=None)
hypothesis.settings.load_profile("ci")


@pytest.fixture(scope="session")
def gf13():
    return build_field(13, 1, generator=2)


@pytest.fixture(scope="session")
def gf13_7():
    return build_field(13, 1, generator=7)


@pytest.fixture(scope="session")
def gf9():
    # alpha is a root of x^2 + x + 2
    return build_field(3, 2, poly=[2, 1, 1])


@pytest.fixture(scope="session")
def gf9_alt():
    # alpha is a root of x^2 + 2x + 2
    return build_field(3, 2, poly=[2, 2, 1])


@pytest.fixture(scope="session")
def gf17():
    return build_field(17, 1, generator=3)


@pytest.fixture(scope="session")
def gf25():
    # alpha is a root of x^2 + 2x + 3
    return build_field(5, 2, poly=[3, 2, 1])


@pytest.fixture(scope="session")
def gf81():
    return build_field(3, 4)


@pytest.fixture(scope="session")
def gf361():
    return build_field(19, 2)
