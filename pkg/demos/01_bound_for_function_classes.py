"""How close does each function class sit to the 1 - H(p) bound?

Builds the structured truth tables, runs the exact joint-table engine
and prints MI, bound and margin across a small p grid.  The r = 1
subcube (the dictator) sits exactly on the bound; everything else
stays strictly below for 0 < p < 1/2.
"""

from fractions import Fraction

from bfmi import Class1, Class2, Class3, Class4, Dictator, joint_yz, make_class, mutual_information

N = 4
P_GRID = [Fraction(k, 8) for k in range(5)]

classes = [
    ("single one", Class1(0)),
    ("single zero", Class2(0)),
    ("subcube r=1 (dictator)", Class3(1)),
    ("subcube r=2", Class3(2)),
    ("co-subcube r=2", Class4(2)),
    ("dictator x_2", Dictator(2)),
]

print(f"n = {N}")
header = f"{'class':<24}" + "".join(f"{str(p):>12}" for p in P_GRID)
print(header)
print("-" * len(header))

for label, cls in classes:
    table = make_class(N, cls)
    margins = []
    for p in P_GRID:
        result = mutual_information(joint_yz(table, p))
        margins.append(result.margin_bits)
    print(f"{label:<24}" + "".join(f"{m:>12.6f}" for m in margins))

print()
print("margin = (1 - H(p)) - MI(f(X); Y), in bits; zero means the bound is attained")
