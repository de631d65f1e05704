"""
Factoring x^n - 1 and building a code
=====================================

Factors x^n - 1 over F_{p^2}, assigns each factor to one of three
classes and builds the left module code generated by the lifted
cofactors.  Distances are found by enumerating every codeword.
"""

from m2codes.codes import CodeSpec, build_code, image_code, image_min_lee, min_distances
from m2codes.errors import CardinalityMismatch
from m2codes.polyfactor import factor_xn_minus_1

fs = factor_xn_minus_1(3, 4)
print("x^4 - 1 over F_9:", " * ".join(f"({f})" for f in fs.factors))

spec = CodeSpec(3, 4, fs, (0, 0, 2, 1))
print("F0 =", spec.F0, " F1 =", spec.F1, " F2 =", spec.F2, " s =", spec.s)

G = build_code(spec)
m = min_distances(G)
img = image_code(G)
print(f"|C| = {m.cardinality}, d_Ham = {m.d_ham}, d_B = {m.d_b}, d_nhom = {m.d_nhom}")
print(f"image: size {img.size}, additive {img.additive}, cyclic {img.cyclic}, d_L = {image_min_lee(img)}")

# When F2 is not closed under Frobenius the module is larger than p^(2s).
spec = CodeSpec.from_assignment(2, 3, (1, 0, 2))
try:
    build_code(spec)
except CardinalityMismatch as exc:
    print(f"assignment {spec.label()} at p=2, n=3: rank {exc.generator.rank}, 2s = {exc.expected_rank}, "
          f"predicted module rank {spec.module_rank}")
