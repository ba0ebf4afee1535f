"""
How much spectrum does the chain path save
==========================================

W = w R_u / (m R) for the seed code and for every chain level.
"""

from fractions import Fraction

from bchchain import LinkBudget, bandwidth_table, construct_bch
from bchchain.bandwidth import format_table, saving_ratio

budget = LinkBudget(ru=64, w=Fraction(6, 5))
seed = construct_bch(2, 1, 3)

rows = bandwidth_table(seed, 4, budget, [1, 2, 3, 4, 6])
print(format_table(rows, printed=True))

# rate 1/3 vs 2/3: riding a chain channel needs half the band
print("W^j / W^0 =", saving_ratio(seed))

# the ratio shrinks less for higher-rate seeds
for s, delta in [(3, 3), (4, 3), (4, 5), (5, 5)]:
    code = construct_bch(s, delta=delta)
    print(code.label, "->", saving_ratio(code))
