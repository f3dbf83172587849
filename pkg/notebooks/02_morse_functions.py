# %% [markdown]
# # Morse functions on digraphs
#
# A function on the vertices extends to paths by summing vertex values.
# It is Morse when every path has at most one equal-value face and at most
# one equal-value coface. In practice this means the zeros must sit off
# every directed cycle and must not interfere with each other.

# %%
from pathmorse import (MorseFunction, condition_star_witness, critical_paths, extend_to_closure, is_morse,
                       morse_violation, parse_digraph, single_zero_morse, transitive_closure)
from pathmorse.morse import ConditionStarError

square = parse_digraph("v0 v1\nv0 v2\nv1 v3\nv2 v3")
f = MorseFunction.from_values(square, {"v0": 1, "v1": 0, "v2": 2, "v3": 3})
print(is_morse(square, f))

# %% [markdown]
# Critical paths on the closure are the ones with no equal-value face or
# coface.

# %%
gb = transitive_closure(square)
fb = extend_to_closure(square, f)
for n in range(3):
    print(n, [gb.label_path(p) for p in critical_paths(gb, fb, n)])

# %% [markdown]
# Two zeros can be harmless on G and still collide once the closure adds
# shortcuts. Here v0 and v1 both reach v3.

# %%
g = parse_digraph("v0 -> v3\nv1 -> v2\nv2 -> v3")
f2 = MorseFunction.from_values(g, {"v0": 0, "v1": 0, "v2": 1, "v3": 2})
print("Morse on G:", is_morse(g, f2))
print(condition_star_witness(g, f2).message)
try:
    extend_to_closure(g, f2)
except ConditionStarError as exc:
    print("extension refused:", exc)
print(morse_violation(transitive_closure(g), f2).message)

# %% [markdown]
# A single zero off every cycle always works, whatever the other values.

# %%
h = parse_digraph("a b\nb c\nc a\nc p\nq a")
f3 = single_zero_morse(h, "q", {"a": 3, "b": 1, "c": 2, "p": "1/2"})
print([str(x) for x in f3.values], is_morse(h, f3))
