"""Smoke test for the addbasis extension module."""

import addbasis
from addbasis import EventuallyPeriodicSet as EPS

# {1} ∪ 2N
a = EPS([0, 1], 2, 2, [0])
assert 1 in a and 4 in a and 3 not in a
assert addbasis.order(a) == 2
assert addbasis.remove_and_order(a, [2]) == 2
assert addbasis.removal_parameters(a, [2]) == {"k": 1, "d": 0, "eta": 1, "mu": 1}
assert addbasis.decomposition_check(a, [2], 2)

try:
    addbasis.remove_and_order(a, [1])
except addbasis.NotABasisError:
    pass
else:
    raise AssertionError("removing 1 leaves the even numbers")

try:
    addbasis.order(EPS([0, 1], 2, 10, [0]), cap=5)
except addbasis.CapExceededError:
    pass
else:
    raise AssertionError("order 10 exceeds cap 5")

assert [addbasis.nash_general(2, 1), addbasis.farhi_d(2, 0), addbasis.farhi_eta(2, 1), addbasis.farhi_mu(2, 1)] == [5, 5, 6, 5]
assert addbasis.nash_general(60, 30) > 2**64
assert addbasis.compare_all(2, 1, 0, 1, 1)[0] == ("nash", 5)

s = a + EPS.finite([0, 1])
assert s.is_cofinite()
assert a.nfold(2) == s
assert a.lower_density() == (1, 2)
assert EPS.from_json(a.to_json()) == a
assert a.saturate_mod(2).window(0, 3) == [0, 1, 2, 3]
assert a.remove([1]).saturate_mod(2).window(0, 5) == [0, 2, 4]

w = addbasis.kneser_witness(6, [0, 1], [0, 2])
assert w["holds"] and w["sum_size"] == 4 and w["stabilizer"] == 6
assert addbasis.stabilizer(6, [0, 2, 4]) == 2

suites = addbasis.verify(seed=1, max_modulus=4)
assert all(passed for _, passed, _, _ in suites), suites

print(f"ok: {a!r}, {len(suites)} suites passed")
