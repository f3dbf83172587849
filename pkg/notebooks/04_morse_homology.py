# %% [markdown]
# # Morse homology against direct homology
#
# The Morse pipeline replaces Omega_n(G) by its image under the stable
# flow, which is usually much smaller. When Omega(G) is invariant under the
# closure gradient both pipelines give the same Betti numbers. When it is
# not, they may or may not agree, and the tool reports rather than decides.

# %%
from pathmorse import MorseFunction, compare, morse_complex, parse_digraph


def show(text, values, max_dim):
    g = parse_digraph(text)
    f = MorseFunction.from_values(g, values)
    r = compare(g, f, max_dim)
    print("direct", r.betti, "morse", r.morse_betti, "invariance", r.invariance, "agreement", r.agreement)
    print("Omega dims", r.dims[:max_dim + 1], "Morse dims", r.morse_dims[:max_dim + 1])
    for n, gens in enumerate(r.morse_basis):
        print(f"  M_{n}:", gens)
    for w in r.warnings:
        print("  warning:", w)


# %% [markdown]
# The square: invariance holds and the Morse complex has total dimension 5
# instead of 9.

# %%
show("v0 v1\nv0 v2\nv1 v3\nv2 v3", {"v0": 1, "v1": 0, "v2": 2, "v3": 3}, 2)

# %% [markdown]
# Six vertices: invariance fails, yet the answers agree.

# %%
show("v0 v1\nv0 v2\nv1 v3\nv1 v4\nv2 v3\nv2 v4\nv5 v3\nv5 v4",
     {f"v{i}": i for i in range(6)}, 2)

# %% [markdown]
# The four-cycle with the zero at its source: invariance fails and the
# Morse complex loses the 1-cycle.

# %%
show("v0 v1\nv1 v2\nv2 v3\nv0 v3", {"v0": 0, "v1": 1, "v2": 2, "v3": 3}, 1)

# %%
g = parse_digraph("v0 v1\nv1 v2\nv2 v3\nv0 v3")
mc = morse_complex(g, MorseFunction.from_values(g, {"v0": 0, "v1": 1, "v2": 2, "v3": 3}), 1)
for w in mc.invariance.witnesses:
    print(w.dim, w.chain.format(mc.gbar), "->", w.image.format(mc.gbar), "|", w.reason)
