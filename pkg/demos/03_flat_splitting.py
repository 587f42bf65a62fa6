# On the Heisenberg group every operator built from the frame {Z, Zb, T} can be
# normal ordered, so DR o Gamma can be compared with its predicted principal
# part as an exact operator.

from crscalar.splitting import compose_drgamma_flat, principal_coefficients, residual, sublaplacian_operator

for n in (1, 2, 3):
    b, c, a2 = principal_coefficients(n)
    op = compose_drgamma_flat(n)
    res = residual(n)
    print(f"n = {n}: {len(op.terms)} normal-ordered words, Heisenberg order {op.heisenberg_order()}")
    print(f"       model operator {b} Delta_b^2 - {c} T^2, a^2 = {a2}")
    print(f"       residual: {'zero operator' if res.is_zero else res.operator}")

print("\nDelta_b on H^1 =", sublaplacian_operator(1))
