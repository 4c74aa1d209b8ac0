import pytest

from collisionlab import collision

# The seven collision values below 25000 with their representation sets,
# frozen from the first oracle enumeration and cross-checked by hand
# against C(x, a) evaluations.
EXPECTED_TABLE = {
    120: [(16, 2), (10, 3)],
    210: [(21, 2), (10, 4)],
    1540: [(56, 2), (22, 3)],
    3003: [(78, 2), (15, 5), (14, 6)],
    7140: [(120, 2), (36, 3)],
    11628: [(153, 2), (19, 5)],
    24310: [(221, 2), (17, 8)],
}


@pytest.fixture(scope="session")
def records_25k():
    return collision.enumerate_collisions(25000)
