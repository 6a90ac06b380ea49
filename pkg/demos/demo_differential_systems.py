"""
Structural analysis of ordinary differential systems
====================================================

From a polynomial differential system we read off its order matrix, bound
the order of the system by the tropical determinant of that matrix, decide
whether the bound is reached, and plan how often each equation must be
differentiated to reach a normal form.
"""

import json

from jacobibound.analysis import (
    analyze,
    block_decompose,
    first_order_reduce,
    jacobi_bound,
    nabla_nonzero,
    profile,
    reduction_plan,
    system_cover,
    truncated_jacobian,
)
from jacobibound.diffpoly import format_poly, operator_determinant, parse_system, symbolic_det
from jacobibound.trop_core import format_matrix

# %%
# Systems are written one equation per line; x1'' and x1^(2) both denote the
# second derivative of x1, while x1^2 is its square.
system = parse_system(
    """
    x1^(5) + x2'' + x3^(3)
    x2'
    x1''' - x3'
    """
)
for p in system:
    print("  ", format_poly(p), "= 0")

# %%
# Entry (i, j) of the order matrix is the highest derivative of x_j in
# equation i, or -inf if x_j does not occur (the "weak" variant uses 0).
prof = profile(system)
print("order matrix:\n" + format_matrix(prof.order_matrix), end="")
print("bound:", jacobi_bound(prof), " weak bound:", jacobi_bound(profile(system, "weak")))

# %%
# The cover (α, β) attaining the bound says which derivative of each
# unknown is decisive in each equation: x_j^(α_i + β_j) in equation i.
cover = system_cover(prof)
print("alpha:", cover.alpha, " beta:", cover.beta)

# %%
# The bound is the actual order when the determinant of the partial
# derivatives at those decisive derivatives does not vanish identically.
tj = truncated_jacobian(system, prof)
print("decisive positions:", sorted(tj.support))
print("determinant:", format_poly(symbolic_det(tj.matrix())))
print("certificate:", nabla_nonzero(tj, seed=1).status)

# %%
# For linear systems with constant coefficients the order is the degree of
# the determinant of the operator matrix, so the two can be compared.
linear = parse_system("x1'' + x2'\nx1\n")
print("operator determinant:", operator_determinant(linear), " bound:", jacobi_bound(profile(linear)))
degenerate = parse_system("x1 + x1'' + x2'\nx1' + x2\n")
print(
    "degenerate system: determinant",
    operator_determinant(degenerate),
    "of degree",
    operator_determinant(degenerate).degree,
    "below the bound",
    jacobi_bound(profile(degenerate)),
    "->",
    nabla_nonzero(truncated_jacobian(degenerate)).status,
)

# %%
# The minimal canon tells how many times each equation must be
# differentiated; the cover splits equations into nested stages.
plan = reduction_plan(prof)
print("differentiate equation i λ_i times:", plan.lam)
for k, stage in enumerate(plan.stage_sets):
    print(f"  stage {k}: equations {sorted(i + 1 for i in stage)}")

# %%
# Rewriting in first-order form keeps the bound and the differentiation
# counts of the original equations.
red = first_order_reduce(prof, system)
print("first-order unknowns u_{j,k} = x_j^(k):", red.var_map)
print("reduced order matrix:\n" + format_matrix(red.B), end="")

# %%
# Independent groups of equations can be solved one after the other.
print("blocks (rows, unknowns):", block_decompose(prof))

# %%
# Everything at once, as the JSON report printed by `jacobibound analyze --json`.
print(json.dumps(analyze(system)))
