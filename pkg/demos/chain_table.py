"""
Growing a chain of cyclic codes from a small BCH code
=====================================================

Start from the (3,1) repetition code over GF(4) and derive C^1..C^4.
"""

from bchchain import construct_bch, derive_code, rate_table
from bchchain.gf2m import default_field

# GF(4) from 1 + x + x^2; exp table lists powers of the primitive element
F = default_field(2)
print("GF(4) powers:", [F.power(e) for e in range(F.order)])

seed = construct_bch(2, c=1, delta=3)
print("seed", seed.label, "g =", seed.g.format("x"))

# each level doubles the length and squares the generator: G_j = g(y^(2^j))
for j in range(1, 5):
    code = derive_code(seed, j)
    print(f"j={j}", code.label, "G =", code.generator.format("y"), "R =", code.rate)

# R_0 = 1/3, every later level sits at 2/3
print("rates:", [str(r) for r in rate_table(seed, 4)])

# a bigger seed: BCH(15,7) with two cyclotomic cosets in its generator
seed = construct_bch(4, delta=5)
print("seed", seed.label, "g =", seed.g.format("x"))
print("rates:", [str(r) for r in rate_table(seed, 3)])
