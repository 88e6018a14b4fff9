import pytest
from fastapi.testclient import TestClient

from hyperlib.service import create_app


@pytest.fixture(scope="session")
def client():
    return TestClient(create_app())


def norm_inf(z) -> float:
    return max(abs(z.x), abs(z.y))


def assert_close_z(a, b, rel: float, scale: float | None = None):
    """Componentwise |a - b| <= rel * scale.

    Scale defaults to the larger operand magnitude; error bounds of products
    pass conditioning-aware scales (e.g. ||a||*||b||) explicitly so that
    points near the null cone are judged against the size of the terms that
    produced them, not against a catastrophically cancelled result.
    """
    if scale is None:
        scale = max(norm_inf(a), norm_inf(b))
    bound = rel * max(scale, 1e-300)
    assert abs(a.x - b.x) <= bound and abs(a.y - b.y) <= bound, (
        f"{a} != {b} within {rel} * {scale}"
    )
