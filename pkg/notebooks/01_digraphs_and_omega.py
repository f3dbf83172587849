# %% [markdown]
# # Digraphs, allowed paths and Omega
#
# Path homology lives on the subspace Omega_n of allowed n-paths whose
# boundary is again allowed. This script builds a small digraph, lists its
# allowed paths and computes Omega and the Betti numbers directly.

# %%
from pathmorse import (direct_homology, omega_basis, parse_digraph, path_bases, transitive_closure)
from pathmorse.paths import vector_to_chain

square = parse_digraph("""
v0 v1
v0 v2
v1 v3
v2 v3
""")
print(square.to_text())

# %% [markdown]
# Allowed paths follow edges. The square has no allowed path from v0 to v3
# of length one, so v0v1v3 alone is not in Omega_2, but the difference of
# the two routes is.

# %%
bases = path_bases(square, 3)
for n, b in enumerate(bases):
    print(n, b.labels(square))

# %%
for n in range(3):
    om = omega_basis(square, n, bases=bases)
    print(f"Omega_{n}:", [vector_to_chain(v, bases[n]).format(square) for v in om.vectors()])

# %% [markdown]
# The square is contractible, so only H_0 survives.

# %%
rep = direct_homology(square, 2)
print("dims", rep.dims, "ranks", rep.ranks, "betti", rep.betti)

# %% [markdown]
# Without the diagonal shortcut a four-cycle-shaped digraph with two
# routes of different lengths carries a 1-cycle.

# %%
c4 = parse_digraph("v0 v1\nv1 v2\nv2 v3\nv0 v3")
print(direct_homology(c4, 1).betti)
print(transitive_closure(c4).to_text())
print(direct_homology(transitive_closure(c4), 1).betti)
