"""
A {1,2} continued fraction with a prescribed exponent
=====================================================

Every partial coefficient is 1 or 2, yet the value can have any
irrationality exponent s >= 2.  The plan carries both the {1,2} word and
the equivalent simple continued fraction, so each can check the other.
"""
from gcfx import cfcore, constructions

plan = constructions.prescribed_stream(3, 6)
print("big quotients:", [b.c for b in plan.blocks])
print("word (run-length):", plan.word_rle()[:12], "...")

simple, gcf = plan.simple_enclosure(), plan.gcf_enclosure()
print("value:", simple.decimal(30))
print("two representations agree:", simple.intersects(gcf))

# |tau - A_n/B_n| sits between B_n^-s / 5 and B_n^-s
for n in (1, 5, 9, 13):
    rec = constructions.approximation_audit(plan, n)
    print(n, rec.B, rec.upper_holds, rec.lower_holds)

# s = infinity: a Liouville-type number with coefficients in {1, 2}
liouville = constructions.prescribed_stream("inf", 3)
print(constructions.approximation_audit(liouville, 5))

# the nine-level identity behind the block expansion
print(constructions.verify_lasku(1, 0), constructions.expand_block(2).matches_simple())
