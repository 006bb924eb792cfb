"""Benchmark the compiled rank kernel against the pure Python fallback.

Builds the boundary matrices of order complexes from the standard corpus and
times exact rank computation through both implementations, then times a full
Gorenstein* certification each way.

    python benchmarks/bench_kernel.py [--quick]
"""

import argparse
import os
import sys
import time

from cdindex import _kernel_py
from cdindex.homology import order_complex
from cdindex.poset import build_pyramid, crosspoly_fan, cube_fan, simplex_fan

try:
    from cdindex import _kernel
except ImportError:
    _kernel = None


def boundary_entries(complex_):
    """All boundary matrices of a complex as (name, triples) pairs."""
    faces = complex_.faces_by_dim()
    index = [{f: i for i, f in enumerate(level)} for level in faces]
    out = []
    for k in range(2, len(faces)):
        entries = []
        for j, face in enumerate(faces[k]):
            for drop in range(len(face)):
                sub = face[:drop] + face[drop + 1 :]
                entries.append(
                    (index[k - 1][sub], j, 1 if drop % 2 == 0 else -1)
                )
        out.append((f"d_{k - 1} ({len(faces[k - 1])}x{len(faces[k])})", entries))
    return out


def timed(fn, *args):
    t0 = time.perf_counter()
    result = fn(*args)
    return result, time.perf_counter() - t0


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="small corpus only")
    args = parser.parse_args(argv)

    if _kernel is None:
        print("compiled kernel not built; showing pure timings only")

    posets = [
        ("simplex_fan(4)", simplex_fan(4)),
        ("cube_fan(3)", cube_fan(3)),
    ]
    if not args.quick:
        posets += [
            ("crosspoly_fan(4)", crosspoly_fan(4)),
            ("simplex_fan(5)", simplex_fan(5)),
            ("pyramid(simplex_fan(5))", build_pyramid(simplex_fan(5))),
        ]

    print(f"{'matrix':46} {'rank':>6} {'pure':>9} {'compiled':>9} {'speedup':>8}")
    for name, poset in posets:
        complex_ = order_complex(poset)
        for label, entries in boundary_entries(complex_):
            rank_pure, t_pure = timed(_kernel_py.sparse_rank, entries)
            row = f"{name + ' ' + label:46} {rank_pure:>6} {t_pure:>8.3f}s"
            if _kernel is not None:
                rank_fast, t_fast = timed(_kernel.sparse_rank, entries)
                assert rank_fast == rank_pure, (name, label)
                row += f" {t_fast:>8.3f}s {t_pure / t_fast:>7.1f}x"
            print(row)

    # end-to-end: the heaviest certification in the acceptance corpus
    if not args.quick:
        from cdindex.homology import is_gorenstein_star

        target = build_pyramid(simplex_fan(5))
        print()
        os.environ["CDINDEX_PURE_KERNEL"] = "1"
        _reload_kernel()
        cert, t_pure = timed(is_gorenstein_star, target)
        assert cert
        del os.environ["CDINDEX_PURE_KERNEL"]
        _reload_kernel()
        cert, t_fast = timed(is_gorenstein_star, target)
        assert cert
        print(
            f"{'is_gorenstein_star(pyramid(simplex_fan(5)))':46} "
            f"{'':>6} {t_pure:>8.3f}s {t_fast:>8.3f}s {t_pure / t_fast:>7.1f}x"
        )
    return 0


def _reload_kernel():
    import importlib

    from cdindex import kernel

    importlib.reload(kernel)


if __name__ == "__main__":
    sys.exit(main())
