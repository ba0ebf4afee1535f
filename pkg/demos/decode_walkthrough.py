"""
Decoding a BCH word through the (12,8) chain code
=================================================

Lift a corrupted (3,1) word into C^1_12, syndrome-decode there, project back.
"""

import numpy as np

from bchchain import construct_bch, derive_code, generator_matrix, parity_check_matrix
from bchchain.codec import build_syndrome_table, trace_decode_via_chain

seed = construct_bch(2, 1, 3)
c1 = derive_code(seed, 1)

G = generator_matrix(c1).rows
H = parity_check_matrix(c1).rows
print("G^1 =\n", G)
print("H^1 =\n", H)
print("G H^T mod 2 is zero:", not ((G.astype(int) @ H.T) % 2).any())

# 16 cosets, one leader each; weights 0, 1 and 2
table = build_syndrome_table(parity_check_matrix(c1))
for leader, syn in table.entries():
    print(leader, syn)

# 111 was sent, the middle bit flipped on the way
res = trace_decode_via_chain("101", c1)
print("lifted   ", res.lifted)
print("syndrome ", res.syndrome)
print("corrected", res.corrected)
print("projected", res.projected)

# H^1 columns repeat every 6 positions, so an error at i and at i+6 look alike
cols = H.T
print("period-6 columns:", all(np.array_equal(cols[i], cols[i + 6]) for i in range(6)))
