import numpy as np
import pytest

from icx.checker import is_integrally_convex_function
from icx.config import init_icx
from icx.errors import GenerationError
from icx.generators import (
    gen_lnat_style,
    gen_random_ic,
    gen_separable,
    generate_batch,
    is_convex_sequence,
    random_convex_sequence,
)
from icx.utils import box_points


def test_is_convex_sequence():
    assert is_convex_sequence([4, 1, 0, 1, 4])
    assert is_convex_sequence([3])
    assert not is_convex_sequence([0, 2, 0])


def test_random_convex_sequence_is_convex():
    rng = np.random.default_rng(5)

    for length in range(1, 8):
        sequence = random_convex_sequence(length, rng)
        assert len(sequence) == length
        assert is_convex_sequence(sequence)


def test_separable_from_given_sequences():
    f = gen_separable(2, (0, -1), (2, 1), sequences=[[0, 1, 3], [1, 0, 1]])

    assert f.get((0, -1)) == 1
    assert f.get((2, 0)) == 3
    assert len(f.table) == 9


@pytest.mark.parametrize(
    "sequences",
    [
        [[0, 2, 0], [0, 0, 0]],
        [[0, 1], [0, 0, 0]],
        [[0, 1, 2]],
    ],
)
def test_separable_rejects_bad_sequences(sequences):
    with pytest.raises(ValueError):
        gen_separable(2, (0, 0), (2, 2), sequences=sequences)


def test_separable_is_seeded():
    assert gen_separable(2, (0, 0), (3, 3), seed=4) == gen_separable(2, (0, 0), (3, 3), seed=4)


def test_lnat_style_with_given_weights():
    weights = [[0, 1], [0, 0]]
    zeros = [[0, 0, 0], [0, 0, 0]]

    f = gen_lnat_style(2, (0, 0), (2, 2), weights=weights, sequences=zeros)

    assert f.get((0, 2)) == 2
    assert f.get((1, 1)) == 0


def test_lnat_style_rejects_negative_weights():
    with pytest.raises(ValueError):
        gen_lnat_style(2, (0, 0), (1, 1), weights=[[0, -1], [0, 0]])


def test_random_ic_in_a_unit_cube():
    f = gen_random_ic(3, (0, 0, 0), (1, 1, 1), seed=2)

    assert set(f.domain_points) <= set(box_points((0, 0, 0), (1, 1, 1)))
    assert is_integrally_convex_function(f).is_ic


def test_random_ic_on_a_wider_box():
    f = gen_random_ic(2, (0, 0), (3, 3), seed=9)

    assert len(f.table) == 16
    assert is_integrally_convex_function(f).is_ic


def test_random_ic_limits():
    with pytest.raises(ValueError):
        gen_random_ic(5, (0,) * 5, (1,) * 5)

    with pytest.raises(ValueError):
        gen_random_ic(1, (0,), (6,))


def test_random_ic_gives_up(monkeypatch):
    init_icx(max_generator_attempts=1)
    # no sample is ever accepted
    monkeypatch.setattr(
        "icx.generators.is_integrally_convex_function",
        lambda f: type("Verdict", (), {"is_ic": False})(),
    )

    with pytest.raises(GenerationError):
        gen_random_ic(1, (0,), (3,), seed=0)


def test_generated_batches_are_ic(generated_batch):
    assert len(generated_batch) == 3
    for f in generated_batch:
        assert f.dim == 2
        assert is_integrally_convex_function(f).is_ic


def test_generate_batch_seeds_consecutively():
    batch = generate_batch("separable", 2, 2, width=2, seed=7)

    assert batch[0] == gen_separable(2, (0, 0), (2, 2), seed=7)
    assert batch[1] == gen_separable(2, (0, 0), (2, 2), seed=8)
