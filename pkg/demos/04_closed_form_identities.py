"""The closed forms and exact identities behind the MI engine.

Three checks, each pitting an explicit formula against independent
evaluation: the marginal identity (a sum of 2^k channel terms that
always equals 1/2^k), the shell-sum identity for sum q*log2(q), and
the closed-form MI of single-one functions against the generic
double-sum engine.
"""

from fractions import Fraction

from bfmi import (
    Class1,
    joint_yz,
    make_class,
    marginal_sum,
    mi_class1_closed,
    mutual_information,
    qlogq_identity_check,
)

print("marginal identity: sum over all x of p(x, y) = 1/2^k, any y, any p")
for k, y, p in [(3, 0, Fraction(1, 4)), (8, 0b10110001, Fraction(3, 8)), (12, 1234, Fraction(1, 8))]:
    value = marginal_sum(y, k, p)
    print(f"  k = {k:>2}, y = {y:>4}, p = {p}:  sum = {value}  (= 1/{2 ** k}: {value == Fraction(1, 2 ** k)})")
print()

print("shell-sum identity: sum q*log2(q) = -n/2^n - (n/2^n) H(p)")
for n in (2, 6, 12):
    lhs, rhs = qlogq_identity_check(n, Fraction(5, 32))
    print(f"  n = {n:>2}: lhs = {lhs:+.12f}, rhs = {rhs:+.12f}, |diff| = {abs(lhs - rhs):.2e}")
print()

print("closed-form MI for single-one tables vs the generic engine")
for n in (2, 5, 10):
    table = make_class(n, Class1(0))
    for p in (Fraction(1, 64), Fraction(1, 4)):
        closed = mi_class1_closed(n, p)
        generic = mutual_information(joint_yz(table, p)).mi_bits
        print(f"  n = {n:>2}, p = {str(p):>4}: closed = {closed:.12f}, |diff| = {abs(closed - generic):.2e}")
