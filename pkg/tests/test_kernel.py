from fractions import Fraction

import pytest

from cdindex import _kernel_py, kernel


def dense_fraction_rank(entries, nrows, ncols):
    """Textbook Gaussian elimination over Fraction, the independent oracle."""
    m = [[Fraction(0)] * ncols for _ in range(nrows)]
    for r, c, v in entries:
        m[r][c] += v
    rank = 0
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, nrows) if m[i][col]), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        pv = m[row][col]
        for i in range(nrows):
            if i != row and m[i][col]:
                f = m[i][col] / pv
                for j in range(col, ncols):
                    m[i][j] -= f * m[row][j]
        row += 1
        rank += 1
    return rank


def random_entries(rng, nrows, ncols, density, lo=-3, hi=3):
    entries = []
    for r in range(nrows):
        for c in range(ncols):
            if rng.random() < density:
                v = rng.randint(lo, hi)
                if v:
                    entries.append((r, c, v))
    return entries


def test_empty_and_trivial():
    assert kernel.sparse_rank([]) == 0
    assert _kernel_py.sparse_rank([]) == 0
    assert kernel.sparse_rank([(0, 0, 5)]) == 1
    assert kernel.sparse_rank([(0, 0, 1), (0, 0, -1)]) == 0  # duplicates sum


def test_known_small():
    entries = [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)]
    assert kernel.sparse_rank(entries) == 1
    entries = [(0, 0, 2), (1, 1, 3), (2, 2, -4)]
    assert kernel.sparse_rank(entries) == 3


def test_matches_fraction_oracle(rng):
    for _ in range(60):
        nrows = rng.randint(1, 12)
        ncols = rng.randint(1, 12)
        entries = random_entries(rng, nrows, ncols, rng.choice([0.15, 0.4, 0.8]))
        expected = dense_fraction_rank(entries, nrows, ncols)
        assert _kernel_py.sparse_rank(entries) == expected
        assert kernel.sparse_rank(entries) == expected


def test_implementations_agree_on_structured_matrices(rng):
    # boundary-like matrices: each column has k nonzeros of alternating sign
    for _ in range(20):
        nrows = rng.randint(5, 40)
        ncols = rng.randint(5, 40)
        entries = []
        for c in range(ncols):
            supp = rng.sample(range(nrows), min(nrows, rng.randint(2, 5)))
            entries += [
                (r, c, 1 if i % 2 == 0 else -1) for i, r in enumerate(supp)
            ]
        assert _kernel_py.sparse_rank(entries) == kernel.sparse_rank(entries)


def test_larger_values(rng):
    for _ in range(20):
        entries = random_entries(rng, 8, 8, 0.5, lo=-50, hi=50)
        expected = dense_fraction_rank(entries, 8, 8)
        assert _kernel_py.sparse_rank(entries) == expected
        assert kernel.sparse_rank(entries) == expected


def test_compiled_kernel_present():
    # the build in this repository compiles the extension; the dispatcher
    # may still report "pure" when CDINDEX_PURE_KERNEL is set
    import os

    if os.environ.get("CDINDEX_PURE_KERNEL"):
        assert kernel.IMPL == "pure"
    else:
        assert kernel.IMPL in ("compiled", "pure")


def test_big_int_path():
    # values engineered to overflow the compiled guard get exact treatment
    big = 1 << 62
    entries = [(0, 0, big), (0, 1, 1), (1, 0, big - 1), (1, 1, 1)]
    assert kernel.sparse_rank(entries) == 2
    assert _kernel_py.sparse_rank(entries) == 2


def test_overflow_during_elimination_falls_back(rng):
    # inputs fit the 64-bit guard but the update products do not; the
    # dispatcher must land on the exact big-int path with the same rank
    big = (1 << 35) + 1
    for trial in range(10):
        nrows = ncols = 6
        entries = []
        for r in range(nrows):
            for c in range(ncols):
                v = rng.randint(1, 5) * big + rng.randint(-4, 4)
                entries.append((r, c, v))
        expected = dense_fraction_rank(entries, nrows, ncols)
        assert kernel.sparse_rank(entries) == expected
        assert _kernel_py.sparse_rank(entries) == expected
