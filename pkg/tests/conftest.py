import random

import pytest

from cdindex import poset as poset_mod
from cdindex.poset import GradedPoset, induced_subposet, star


def random_graded_poset(rng, max_rank=3, max_width=4):
    """A random valid graded poset: random layer sizes and a random bipartite
    cover relation between consecutive layers, patched so that every element
    has something above and below it."""
    rank = rng.randint(1, max_rank)
    layers = [
        [f"e{d}_{i}" for i in range(rng.randint(1, max_width))]
        for d in range(1, rank + 1)
    ]
    degrees = {"_bot": 0, "_top": rank + 1}
    for d, layer in enumerate(layers, start=1):
        for e in layer:
            degrees[e] = d
    covers = [("_bot", e) for e in layers[0]]
    covers += [(e, "_top") for e in layers[-1]]
    for low, high in zip(layers, layers[1:]):
        linked_low = set()
        for h in high:
            picks = rng.sample(low, rng.randint(1, len(low)))
            covers += [(l, h) for l in picks]
            linked_low.update(picks)
        for l in low:
            if l not in linked_low:
                covers.append((l, rng.choice(high)))
    return GradedPoset(rank, degrees, sorted(set(covers)))


def relabeled(p, rng):
    """The same poset with shuffled opaque ids."""
    names = list(p.elements())
    perm = names[:]
    rng.shuffle(perm)
    rename = dict(zip(names, perm))
    degrees = {rename[e]: p.degree(e) for e in names}
    covers = [(rename[a], rename[b]) for a, b in p.covers()]
    return GradedPoset(p.rank, degrees, covers)


def polygon_minus_facet(k=4):
    """polygon(k) with one maximal cone removed: the standard quasi-convex
    but non-complete example."""
    p = poset_mod.polygon(k)
    members = set(p.elements()) - {p.top, f"f{k}"}
    return induced_subposet(p, members, adjoin_top=True).poset


def pyramid_without_apex_star():
    """Square pyramid with the open star of its apex deleted (a 3-ball's
    face poset: not Gorenstein*)."""
    p = poset_mod.build_pyramid(poset_mod.polygon(4))
    members = set(p.proper_elements()) - star(p, "a:_bot") | {p.bottom}
    return induced_subposet(p, members, adjoin_top=True).poset


@pytest.fixture
def rng():
    return random.Random(20240811)
