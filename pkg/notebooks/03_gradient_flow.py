# %% [markdown]
# # Gradient field and flow
#
# The gradient pairs each path with its unique equal-value coface. The flow
# Phi = Id + dV + Vd is a chain map; its stable power projects onto the
# span of the critical paths.

# %%
from pathmorse import (MorseFunction, flow, flow_invariant_space, gradient, parse_digraph, stabilize,
                       transitive_closure)
from pathmorse.paths import vector_to_chain

g = parse_digraph("v0 v1\nv0 v2\nv1 v3\nv2 v3")
gb = transitive_closure(g)
f = MorseFunction.from_values(g, {"v0": 1, "v1": 0, "v2": 2, "v3": 3})
V = gradient(gb, f, 2)
for p, (s, q) in sorted(V.pairs.items()):
    print(f"V({gb.label_path(p)}) = {'-' if s < 0 else ''}{gb.label_path(q)}")

# %% [markdown]
# Matrices use the row convention: row i holds the image of the i-th basis
# path.

# %%
fl = stabilize(flow(V))
for n, m in enumerate(fl.matrices):
    print(f"Phi_{n} on", fl.bases[n].labels(gb))
    for row in m.to_strings():
        print("   ", row)
print("exponents", fl.exponents)

# %%
for n in range(3):
    fixed = flow_invariant_space(fl, n)
    print(n, [vector_to_chain(v, fl.bases[n]).format(gb) for v in fixed.vectors()])

# %% [markdown]
# On G itself the gradient can miss pairings the closure sees. With the
# zero at v2 of the four-cycle, v0v3 has a coface through v2 only in the
# closure.

# %%
from pathmorse import Chain

c4 = parse_digraph("v0 v1\nv1 v2\nv2 v3\nv0 v3")
f4 = MorseFunction.from_values(c4, {"v0": 1, "v1": 2, "v2": 0, "v3": 3})
p = (c4.index("v0"), c4.index("v3"))
print("on G:", gradient(c4, f4, 1).apply(Chain.path(p)).format(c4) or "0")
c4b = transitive_closure(c4)
print("on the closure:", gradient(c4b, f4, 1).apply(Chain.path(p)).format(c4b))
