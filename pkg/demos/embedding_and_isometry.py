"""
From matrices to the chain ring
===============================

tau embeds F_{p^2} in M_2(F_p); every matrix splits uniquely as
tau(x) + u tau(y), which identifies it with x + u*y in F_{p^2}+uF_{p^2}.
This script checks the split and compares Bachoc and Lee weights.
"""

from m2codes.exactalg import Fp2Elem
from m2codes.matring import Mat2
from m2codes.structure import decompose_u, phi, phi_inv, tau, u_matrix, verify_isometry

for p in (2, 3):
    w = Fp2Elem.omega(p)
    print(f"p={p}: tau(w) = {tau(w).rows()}, u = {u_matrix(p).rows()}")
    A = Mat2.from_rows([[1, 1], [0, 1]], p)
    d = decompose_u(A)
    print(f"  {A.rows()} = tau({d.x}) + u tau({d.y}); phi = {phi(A)}; round trip ok: {phi_inv(phi(A)) == A}")

# Bachoc weight against Lee weight of the image, for every matrix.
for p in (2, 3, 7):
    rep = verify_isometry(p)
    print(f"p={p}: weights agree on {rep.agree}/{rep.total} matrices; "
          f"|B_p minus 0| = {rep.b_set_size}, |GL| = {rep.gl_size}")
    for A, wb, wl in rep.mismatches[:3]:
        print(f"    {A.rows()}: w_B={wb}, w_L={wl}")
