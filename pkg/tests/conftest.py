import random

import pytest

from pathmorse import Digraph, MorseFunction, parse_digraph

SQUARE = "v0 v1\nv0 v2\nv1 v3\nv2 v3\n"
EX11 = "v0 -> v3\nv1 -> v2\nv2 -> v3\n"
# the four-cycle-shaped digraph used for the restriction and counterexample fixtures
CYCLE4 = "v0 v1\nv1 v2\nv2 v3\nv0 v3\n"
SIX = "v0 v1\nv0 v2\nv1 v3\nv1 v4\nv2 v3\nv2 v4\nv5 v3\nv5 v4\n"
HEXAGON = "v0 v1\nv1 v2\nv2 v3\nv3 v4\nv0 v5\nv5 v4\n"


def labelled(text, values):
    g = parse_digraph(text)
    return g, MorseFunction.from_values(g, values)


@pytest.fixture
def square():
    return labelled(SQUARE, {"v0": 1, "v1": 0, "v2": 2, "v3": 3})


@pytest.fixture
def ex11():
    return labelled(EX11, {"v0": 0, "v1": 0, "v2": 1, "v3": 2})


@pytest.fixture
def cycle4_zero_v0():
    return labelled(CYCLE4, {"v0": 0, "v1": 1, "v2": 2, "v3": 3})


@pytest.fixture
def cycle4_zero_v2():
    return labelled(CYCLE4, {"v0": 1, "v1": 2, "v2": 0, "v3": 3})


@pytest.fixture
def six():
    return labelled(SIX, {"v0": 0, "v1": 1, "v2": 2, "v3": 3, "v4": 4, "v5": 5})


def random_digraph(rng, n, density):
    edges = frozenset((u, v) for u in range(n) for v in range(n) if u != v and rng.random() < density)
    return Digraph(tuple(f"v{i}" for i in range(n)), edges)


def random_function(rng, n, p_zero=0.3):
    return MorseFunction(tuple(0 if rng.random() < p_zero else rng.randint(1, 4) for _ in range(n)))


def instances(seed, count, max_n=6, density=0.3, p_zero=0.3):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, max_n)
        yield random_digraph(rng, n, density), random_function(rng, n, p_zero)


def walk_count(g, length):
    """Number of allowed paths of dimension <= length, by dynamic programming."""
    cur, total = [1] * g.n, g.n
    for _ in range(length):
        nxt = [0] * g.n
        for u, v in g.edges:
            nxt[v] += cur[u]
        cur = nxt
        total += sum(cur)
    return total


def oracle_length(g, floor, budget=20000):
    """Longest enumeration depth up to 2|V| that stays within the path budget, but at least floor."""
    best = floor
    for L in range(floor, 2 * g.n + 1):
        if walk_count(g, L) > budget:
            break
        best = L
    return best


def planted_star_failures(seed, count):
    """Morse functions that are likely to break Condition (*): two zeros
    reaching a common vertex, one of them through an intermediate vertex."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        n = rng.randint(4, 7)
        g = random_digraph(rng, n, 0.12)
        z1, z2, w, v = rng.sample(range(n), 4)
        edges = set(g.edges) | {(z1, v), (z2, w), (w, v)}
        g = Digraph(g.labels, frozenset(edges))
        vals = [rng.randint(1, 4) for _ in range(n)]
        vals[z1] = vals[z2] = 0
        f = MorseFunction(tuple(vals))
        from pathmorse import is_morse
        if is_morse(g, f):
            made += 1
            yield g, f
