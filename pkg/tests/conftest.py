import pytest

from projfif import InterpolationData, ProjPoint, build_ifs

ZIGZAG_XY = [(-2.0, 1.0), (-1.0, -1.0), (0.0, 1.0), (1.0, -1.0), (2.0, 1.0)]

# near-flat nodes whose certificate succeeds (theta_max = 1.8 at d = 0.2)
GENTLE_XY = [(0.0, 0.0), (1.0, 0.1), (2.0, -0.1), (3.0, 0.05), (4.0, 0.0)]


@pytest.fixture
def zigzag_points():
    return [ProjPoint(x, y, 1.0) for x, y in ZIGZAG_XY]


@pytest.fixture
def zigzag_data(zigzag_points):
    return InterpolationData(zigzag_points)


@pytest.fixture
def make_zigzag_ifs(zigzag_data):
    def make(scales):
        if isinstance(scales, (int, float)):
            scales = [float(scales)] * zigzag_data.n_maps
        return build_ifs(zigzag_data, scales)

    return make


@pytest.fixture
def gentle_ifs():
    data = InterpolationData([ProjPoint(x, y, 1.0) for x, y in GENTLE_XY])
    return build_ifs(data, [0.2] * 4)
