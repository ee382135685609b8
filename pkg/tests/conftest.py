# type: ignore

import logging

import pytest

from icx import ZFunction, ZSet, init_icx
from icx.cli import main
from icx.generators import generate_batch
from icx.instances import corpus
from icx.utils import box_points

logger = logging.getLogger(__name__)


@pytest.fixture(autouse=True)
def icx_config(monkeypatch):
    """Every test starts from the default configuration, whatever the shell exports."""

    for var in ["ICX_THREADS", "ICX_MAX_ATTEMPTS", "ICX_BICONJUGATE_DOUBLINGS", "ICX_INTEGER_SEARCH_LIMIT"]:
        monkeypatch.delenv(var, raising=False)

    monkeypatch.setattr("icx.config.load_dotenv", lambda *args, **kwargs: False)

    yield init_icx()


@pytest.fixture(scope="session")
def corpus_entries():
    entries = corpus()
    logger.info("Loaded %d corpus entries.", len(entries))
    return entries


@pytest.fixture(scope="session")
def corpus_by_name(corpus_entries):
    return {entry.name: entry for entry in corpus_entries}


@pytest.fixture
def half_vertex_f():
    """0 at the origin and 1 at (1,1,0), (0,1,1), (1,0,1): IC with a half-integral real subdifferential vertex."""

    return ZFunction.from_items([((0, 0, 0), 0), ((1, 1, 0), 1), ((0, 1, 1), 1), ((1, 0, 1), 1)])


@pytest.fixture
def exla1():
    """(x1 + x2 + x3) / 2 on the origin and ±(1,1,0), ±(0,1,1), ±(1,0,1)."""

    points = [(0, 0, 0), (1, 1, 0), (-1, -1, 0), (0, 1, 1), (0, -1, -1), (1, 0, 1), (-1, 0, -1)]
    return ZFunction.from_items((p, sum(p) // 2) for p in points)


@pytest.fixture
def square_1d():
    return ZFunction.from_items(((x,), x * x) for x in range(-2, 3))


@pytest.fixture
def square_2d():
    return ZFunction.from_items((x, x[0] ** 2 + x[1] ** 2) for x in box_points((-2, -2), (2, 2)))


@pytest.fixture
def abs_2d():
    return ZFunction.from_items((x, abs(x[0]) + abs(x[1])) for x in box_points((-3, -3), (3, 3)))


@pytest.fixture
def parallelogram():
    """Integral hull with {-1, 0, +1} edge directions, yet not integrally convex."""

    return ZSet.from_points([(0, 0, 0), (1, 0, 1), (1, 1, -1), (2, 1, 0)])


@pytest.fixture
def four_point_set():
    return ZSet.from_points([(1, 1, 0, 0), (0, 1, 1, 0), (1, 0, 1, 0), (0, 0, 0, 1)])


@pytest.fixture(
    scope="session",
    params=[
        pytest.param("separable", id="separable"),
        pytest.param("lnat", id="lnat"),
        pytest.param("random", id="random"),
    ],
)
def generated_batch(request):
    return generate_batch(request.param, 3, 2, width=2, seed=11)


@pytest.fixture
def write_instance_file(tmp_path):
    """Write instance text to a temporary .icx file and return its path."""

    def _write(text, name="instance.icx"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write


@pytest.fixture
def cli_runner(capsys):
    """Run the CLI in-process; returns (exit code, stdout)."""

    def _run(*argv):
        code = main([str(a) for a in argv])
        captured = capsys.readouterr()
        return code, captured.out

    return _run
