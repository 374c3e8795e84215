import numpy as np
import pytest

from fuzzymark import codec, image_io


@pytest.fixture(scope="session")
def bundled_host():
    return image_io.load_image(image_io.bundled_host_path())


@pytest.fixture(scope="session")
def bundled_watermark():
    return image_io.load_watermark(image_io.bundled_watermark_path())


@pytest.fixture(scope="session")
def default_params():
    return codec.EmbedParams()


@pytest.fixture(scope="session")
def default_fs(default_params):
    return default_params.make_system()


@pytest.fixture
def rng():
    return np.random.default_rng(0xF17)


def random_watermark(rng) -> np.ndarray:
    return rng.choice(np.array([-1, 1], dtype=np.int8), size=(64, 64))
