"""Smoke test for the cosmeasure extension module."""

import math
import tempfile

import cosmeasure


def main() -> None:
    square = [[1, 0], [-1, 0], [0, 1], [0, -1]]
    assert cosmeasure.is_positive_spanning(square)
    for method in cosmeasure.methods():
        res = cosmeasure.solve(square, method=method, lp_iterations=50)
        assert abs(res.value - math.sqrt(0.5)) < 1e-12, (method, res)

    case = cosmeasure.generate("canonical_max", 3)
    assert abs(cosmeasure.cosine_measure(case) - 1 / math.sqrt(3)) < 1e-12

    delta = cosmeasure.delta_for_target("min_delta_shift", 4, 0.1)
    shifted = cosmeasure.generate("min_delta_shift", 4, delta=delta)
    moved = cosmeasure.permute(cosmeasure.rotate(shifted, 1), 2)
    res = cosmeasure.solve(moved, method="basis_enum")
    assert abs(res.value - 0.1) < 1e-10, res
    assert res.status == "exact" and res.completed

    grown = cosmeasure.augment(shifted, 16, 3)
    assert len(grown) == len(shifted) + 16
    assert abs(cosmeasure.cosine_measure(grown) - 0.1) < 1e-10

    with tempfile.TemporaryDirectory() as root:
        path = cosmeasure.save_case(shifted, root)
        again = cosmeasure.load_case(path)
        assert again.vectors == shifted.vectors
        assert again.known_cm == shifted.known_cm

    try:
        cosmeasure.solve([[1, 0], [0, 1]])
    except ValueError:
        pass
    else:
        raise AssertionError("non-spanning set accepted")

    print("smoke test passed:", res)


if __name__ == "__main__":
    main()
