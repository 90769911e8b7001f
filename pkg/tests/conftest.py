import random

import pytest

from equidist.rationals import Q
from equidist.surfaces import SurfaceJet, SurfacePair

CUBIC_QUARTIC_KEYS = [(3, 0), (2, 1), (1, 2), (0, 3), (4, 0), (3, 1), (2, 2), (1, 3), (0, 4)]


def random_pair(seed, square_cubics=False, versal=True) -> SurfacePair:
    """A random valid surface pair in the adapted frame.

    square_cubics forces f030 and g030 to be rational squares so that
    the special ratios come out exactly rational."""
    rng = random.Random(seed)

    def r():
        return Q(rng.randint(-4, 4), rng.randint(1, 3))

    f = {(i, j, 0): r() for i, j in CUBIC_QUARTIC_KEYS}
    g = {(i, j, 0): r() for i, j in CUBIC_QUARTIC_KEYS}
    f[(2, 0, 0)] = r() or Q(1)
    g[(2, 0, 0)] = r() or Q(2)
    while g[(2, 0, 0)] == f[(2, 0, 0)]:
        g[(2, 0, 0)] += 1
    if square_cubics:
        f[(0, 3, 0)] = Q(rng.randint(1, 4)) ** 2
        g[(0, 3, 0)] = Q(rng.randint(1, 4), rng.randint(1, 3)) ** 2
    else:
        if f[(0, 3, 0)] <= 0:
            f[(0, 3, 0)] = Q(1)
        if not g[(0, 3, 0)]:
            g[(0, 3, 0)] = Q(-2, 3)
    if versal:
        g[(0, 1, 1)] = Q(1)
    return SurfacePair(SurfaceJet(f, side="m"), SurfaceJet(g, side="n"))


@pytest.fixture
def pair_factory():
    return random_pair
